// mrdkit: construct rank-metric codes, compute duals and invariants, and run
// the machine-checked verification suite. All file formats are the JSON
// schemas from json_io.hpp.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mrdkit/json_io.hpp"
#include "mrdkit/verify.hpp"

using namespace mrdkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitImpossible = 1;
constexpr int kExitError = 2;
constexpr int kExitTooLarge = 3;

struct Options {
    std::string format = "text";
    bool canonical = false;
    u64 max_work = 0;  // 0 = defaults

    WorkBudget budget() const {
        WorkBudget b;
        if (max_work) {
            b.max_codewords = max_work;
            b.max_group_pairs = max_work;
        }
        return b;
    }
};

std::pair<u64, unsigned> prime_power(u64 q) {
    if (q < 2) throw MrdError(errc::bad_argument, "q must be at least 2");
    u64 p = q;
    for (u64 d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    unsigned e = 0;
    u64 rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw MrdError(errc::bad_argument, "q = " + std::to_string(q) + " is not a prime power");
    return {p, e};
}

std::shared_ptr<const FieldCtx> make_ctx(u64 q, unsigned n) {
    auto [p, e] = prime_power(q);
    return FieldCtx::create(p, e, n);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw MrdError(errc::bad_argument, "cannot write " + path);
    out << content;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MrdError(errc::bad_argument, "cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw MrdError(errc::bad_argument, std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

void emit(const Options& opt, const json& machine, const std::string& human) {
    if (opt.format == "json")
        std::cout << machine.dump(2) << "\n";
    else
        std::cout << human;
}

// ---------------------------------------------------------------- commands

int cmd_construct(const Options& opt, u64 q, unsigned n, std::optional<unsigned> ell,
                  const std::string& out, bool structure) {
    auto ctx = make_ctx(q, n);
    auto g = GabidulinCtx::make(ctx);
    const unsigned l = ell.value_or(std::max(1u, n / 2));
    RankMetricCode code = gab_code(g, l);

    json j = code_to_json(code);
    if (!out.empty()) write_file(out, j.dump(2) + "\n");

    std::string dist = "beyond budget";
    json jd = nullptr;
    try {
        const int d = min_distance(code, opt.budget());
        dist = std::to_string(d);
        jd = d;
    } catch (const TooLargeError&) {
    }
    std::ostringstream os;
    os << "gabidulin code: q=" << q << " n=" << n << " ell=" << l << "\n"
       << "dimension " << code.dim() << ", min distance " << dist << "\n";
    if (!out.empty()) os << "written to " << out << "\n";
    json machine{{"q", q}, {"n", n}, {"ell", l}, {"dimension", code.dim()}, {"min_distance", jd},
                 {"out", out.empty() ? json(nullptr) : json(out)}};
    if (structure) {
        machine["T"] = mat_to_json(g.gram());
        machine["A"] = mat_to_json(g.shift());
        machine["S"] = mat_to_json(g.singer());
        os << "T = " << mat_to_json(g.gram()).dump() << "\n"
           << "A = " << mat_to_json(g.shift()).dump() << "\n"
           << "S = " << mat_to_json(g.singer()).dump() << "\n";
    }
    emit(opt, machine, os.str());
    return kExitOk;
}

int cmd_dual(const Options& opt, const std::string& in, const std::string& out) {
    LoadedCode lc = code_from_json(read_json_file(in));
    RankMetricCode d = dual(lc.code);
    json j = code_to_json(d);
    if (!out.empty()) write_file(out, j.dump(2) + "\n");
    std::ostringstream os;
    os << "dual code: dimension " << d.dim() << " in " << d.m() << "x" << d.n() << "\n";
    if (!out.empty()) os << "written to " << out << "\n";
    emit(opt, json{{"dimension", d.dim()}, {"m", d.m()}, {"n", d.n()}}, os.str());
    return kExitOk;
}

int cmd_distance(const Options& opt, const std::string& in) {
    LoadedCode lc = code_from_json(read_json_file(in));
    const int d = min_distance(lc.code, opt.budget());
    emit(opt, json{{"min_distance", d}}, "min distance " + std::to_string(d) + "\n");
    return kExitOk;
}

int cmd_is_mrd(const Options& opt, const std::string& in) {
    LoadedCode lc = code_from_json(read_json_file(in));
    const bool v = is_mrd(lc.code, opt.budget());
    emit(opt, json{{"is_mrd", v}}, std::string("is_mrd ") + (v ? "true" : "false") + "\n");
    return kExitOk;
}

int cmd_is_selfdual(const Options& opt, const std::string& in) {
    LoadedCode lc = code_from_json(read_json_file(in));
    const bool sd = is_self_dual(lc.code);
    const bool so = is_self_orthogonal(lc.code);
    emit(opt, json{{"is_self_dual", sd}, {"is_self_orthogonal", so}},
         std::string("is_self_dual ") + (sd ? "true" : "false") + ", is_self_orthogonal " +
             (so ? "true" : "false") + "\n");
    return kExitOk;
}

int cmd_automorphisms(const Options& opt, u64 q, unsigned n, unsigned ell, bool exhaustive) {
    auto ctx = make_ctx(q, n);
    auto g = GabidulinCtx::make(ctx);
    const auto gens = aut_generators(g, ell);
    const u64 order = aut_order(g, ell);

    json jgens = json::array();
    for (const auto& f : gens)
        jgens.push_back(json{{"kind", f.kind() == EquivMap::Kind::proper ? "proper" : "improper"},
                             {"X", mat_to_json(f.X())},
                             {"Y", mat_to_json(f.Y())}});
    json j{{"q", q}, {"n", n}, {"ell", ell}, {"order", order}, {"generators", jgens}};
    std::ostringstream os;
    os << "automorphism group of G_{" << ell << "}: order " << order << " (4 generators verified)\n";
    if (exhaustive) {
        const auto maps = brute_equivalences(gab_code(g, ell), gab_code(g, ell), true, opt.budget());
        j["exhaustive_count"] = maps.size();
        os << "exhaustive count " << maps.size() << (maps.size() == order ? " = formula" : " != formula!")
           << "\n";
        if (maps.size() != order) {
            emit(opt, j, os.str());
            return kExitError;
        }
    }
    emit(opt, j, os.str());
    return kExitOk;
}

int cmd_selfdualize(const Options& opt, u64 q, unsigned n, const std::string& cert_out) {
    auto ctx = make_ctx(q, n);
    if (n % 2 != 0) {
        emit(opt, json{{"possible", false}, {"reason", "n is odd: self-dual codes in k^{nxn} need n^2 even"}},
             "impossible: n is odd, so k^{nxn} has odd dimension and admits no self-dual code\n");
        return kExitImpossible;
    }
    auto g = GabidulinCtx::make(ctx);
    auto result = gabisd_selfdualize(g, opt.budget());

    if (auto* cert = std::get_if<SelfDualCertificate>(&result)) {
        json j = certificate_to_json(*cert);
        if (!cert_out.empty()) write_file(cert_out, j.dump(2) + "\n");
        std::string dist = "beyond budget";
        try {
            dist = std::to_string(min_distance(cert->code, opt.budget()));
        } catch (const TooLargeError&) {
        }
        std::ostringstream os;
        os << "self-dual code constructed: (i,h,j) = (" << cert->i << "," << cert->h << "," << cert->j
           << ")\n"
           << "dimension " << cert->code.dim() << ", self-dual " << (is_self_dual(cert->code) ? "yes" : "NO")
           << ", min distance " << dist << "\n";
        if (!cert_out.empty()) os << "certificate written to " << cert_out << "\n";
        emit(opt,
             json{{"possible", true},
                  {"params", json{{"i", cert->i}, {"h", cert->h}, {"j", cert->j}}},
                  {"dimension", cert->code.dim()},
                  {"self_dual", is_self_dual(cert->code)}},
             os.str());
        return kExitOk;
    }

    const auto& imp = std::get<Impossible>(result);
    json j{{"possible", false}, {"reason", imp.reason}, {"scanned", imp.scanned}};
    std::ostringstream os;
    os << "impossible: " << imp.reason << "\n";
    if (imp.scanned) {
        json per_j = json::array();
        for (size_t k = 0; k < imp.per_j_valid.size(); ++k)
            per_j.push_back(json{{"j", k},
                                 {"valid_i", imp.per_j_valid[k].first},
                                 {"valid_h", imp.per_j_valid[k].second}});
        j["triples"] = imp.triples;
        j["per_j"] = per_j;
        os << "exhaustive scan over " << imp.triples << " triples (i,h,j): no j admits both a symmetric\n"
           << "square-determinant X_{i,j} and Y_{h,j}; per-j valid counts:";
        for (size_t k = 0; k < imp.per_j_valid.size(); ++k)
            os << " j=" << k << ":(" << imp.per_j_valid[k].first << "," << imp.per_j_valid[k].second << ")";
        os << "\n";
    }
    emit(opt, j, os.str());
    return kExitImpossible;
}

int cmd_classify2x2(const Options& opt, u64 q, const std::string& out) {
    auto ctx = make_ctx(q, 1);
    const auto codes = classify_2x2(*ctx);
    json jcodes = json::array();
    for (const auto& c : codes) jcodes.push_back(code_to_json(c));
    if (!out.empty()) write_file(out, jcodes.dump(2) + "\n");
    std::ostringstream os;
    os << codes.size() << " self-dual MRD codes in " << q << "^{2x2}";
    if (codes.empty()) os << " (none exist: q = " << q % 4 << " mod 4)";
    os << "\n";
    if (!out.empty()) os << "written to " << out << "\n";
    emit(opt, json{{"q", q}, {"count", codes.size()}}, os.str());
    return kExitOk;
}

int cmd_verify_certificate(const Options& opt, const std::string& in) {
    LoadedCertificate cert = certificate_from_json(read_json_file(in));
    auto g = GabidulinCtx::make(cert.ctx);
    const unsigned n = cert.ctx->n();

    Report rep;
    rep.command = "verify-certificate " + in;
    rep.ctx_summary = "q=" + std::to_string(cert.ctx->q()) + ", n=" + std::to_string(n);
    auto check = [&](const std::string& name, bool ok) {
        rep.checks.push_back({name, "", ok ? CheckStatus::pass : CheckStatus::fail, "", 0.0});
    };

    check("params-reproduce-A_sym", cert.A_sym == sandwich_x(g, cert.i, cert.j));
    check("params-reproduce-B_sym", cert.B_sym == sandwich_y(g, cert.h, cert.j));
    check("A_sym-symmetric-square-det", cert.A_sym.is_symmetric() && is_square_det(cert.A_sym));
    check("B_sym-symmetric-square-det", cert.B_sym.is_symmetric() && is_square_det(cert.B_sym));
    check("A_sym-factors", cert.P.transposed() * cert.P == cert.A_sym);
    check("B_sym-factors", cert.Q * cert.Q.transposed() == cert.B_sym);
    RankMetricCode base = gab_code(g, n / 2);
    check("dual-is-sandwich", eqsd_check(base, cert.A_sym, cert.B_sym));
    RankMetricCode mapped = apply(EquivMap::proper(cert.P, cert.Q), base);
    check("code-is-P-G-Q", mapped == cert.code);
    check("code-self-dual", is_self_dual(cert.code));

    if (opt.format == "json")
        std::cout << render_json(rep, opt.canonical);
    else
        std::cout << render_text(rep, opt.canonical);
    return rep.all_ok() ? kExitOk : kExitError;
}

int cmd_verify_theorems(const Options& opt, u64 q, unsigned n, std::optional<unsigned> ell,
                        const std::vector<std::string>& lemmas) {
    auto ctx = make_ctx(q, n);
    Report rep = run_theorem_suite(ctx, ell, opt.budget());
    rep.command = "verify-theorems q=" + std::to_string(q) + " n=" + std::to_string(n) +
                  (ell ? " ell=" + std::to_string(*ell) : "");
    if (!lemmas.empty()) {
        std::vector<CheckResult> kept;
        for (auto& c : rep.checks)
            for (const auto& want : lemmas)
                if (c.name == want) {
                    kept.push_back(c);
                    break;
                }
        if (kept.empty()) throw MrdError(errc::bad_argument, "no check matches the given --lemma names");
        rep.checks = std::move(kept);
    }
    if (opt.format == "json")
        std::cout << render_json(rep, opt.canonical);
    else
        std::cout << render_text(rep, opt.canonical);
    return rep.all_ok() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-metric code toolkit: Gabidulin codes, duals, automorphisms, self-dualization"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("MRDKIT_MAX_WORK")) opt.max_work = std::strtoull(env, nullptr, 10);
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--canonical", opt.canonical, "strip timing from reports (byte-stable output)");
    app.add_option("--max-work", opt.max_work, "cap enumerations (codewords and group pairs)");

    u64 q = 0;
    unsigned n = 0;
    std::optional<unsigned> ell;
    unsigned ell_req = 0;
    std::string in_file, out_file;
    bool exhaustive = false;

    auto* construct = app.add_subcommand("construct", "build a Gabidulin code and write it as JSON");
    construct->add_option("--q", q, "field size (prime power)")->required();
    construct->add_option("--n", n, "extension degree / matrix size")->required();
    unsigned construct_ell = 0;
    auto* construct_ell_opt = construct->add_option("--ell", construct_ell, "layer count (default n/2)");
    construct->add_option("--out", out_file, "output code file");
    bool structure = false;
    construct->add_flag("--structure", structure, "also dump the T, A, S matrices");

    auto* dualc = app.add_subcommand("dual", "dual of a code file");
    dualc->add_option("--in", in_file, "code file")->required();
    dualc->add_option("--out", out_file, "output code file");

    auto* dist = app.add_subcommand("distance", "exact minimum rank distance");
    dist->add_option("--in", in_file, "code file")->required();

    auto* ismrd = app.add_subcommand("is-mrd", "test equality in the rank-distance bound");
    ismrd->add_option("--in", in_file, "code file")->required();

    auto* issd = app.add_subcommand("is-selfdual", "test C = dual(C)");
    issd->add_option("--in", in_file, "code file")->required();

    auto* aut = app.add_subcommand("automorphisms", "automorphism group generators and order");
    aut->add_option("--q", q)->required();
    aut->add_option("--n", n)->required();
    aut->add_option("--ell", ell_req, "layer count")->required();
    aut->add_flag("--exhaustive", exhaustive, "also count equivalences by brute force");

    auto* sdz = app.add_subcommand("selfdualize", "transport G_{n/2} to a self-dual code when possible");
    sdz->add_option("--q", q)->required();
    sdz->add_option("--n", n)->required();
    sdz->add_option("--emit-certificate", out_file, "write the certificate JSON here");

    auto* cls = app.add_subcommand("classify2x2", "all self-dual MRD codes in k^{2x2}");
    cls->add_option("--q", q)->required();
    cls->add_option("--out", out_file, "write the codes as a JSON array");

    auto* vc = app.add_subcommand("verify-certificate", "re-verify a self-dualization certificate");
    vc->add_option("--in", in_file, "certificate file")->required();

    auto* vt = app.add_subcommand("verify-theorems", "run the full verification suite");
    vt->add_option("--q", q)->required();
    vt->add_option("--n", n)->required();
    unsigned vt_ell = 0;
    auto* vt_ell_opt = vt->add_option("--ell", vt_ell, "layer count (default n/2)");
    std::vector<std::string> lemmas;
    vt->add_option("--lemma", lemmas, "run only the named checks (repeatable)");

    // global options (--format, --canonical, --max-work) may follow the subcommand
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (construct->parsed()) {
            if (*construct_ell_opt) ell = construct_ell;
            return cmd_construct(opt, q, n, ell, out_file, structure);
        }
        if (dualc->parsed()) return cmd_dual(opt, in_file, out_file);
        if (dist->parsed()) return cmd_distance(opt, in_file);
        if (ismrd->parsed()) return cmd_is_mrd(opt, in_file);
        if (issd->parsed()) return cmd_is_selfdual(opt, in_file);
        if (aut->parsed()) return cmd_automorphisms(opt, q, n, ell_req, exhaustive);
        if (sdz->parsed()) return cmd_selfdualize(opt, q, n, out_file);
        if (cls->parsed()) return cmd_classify2x2(opt, q, out_file);
        if (vc->parsed()) return cmd_verify_certificate(opt, in_file);
        if (vt->parsed()) {
            if (*vt_ell_opt) ell = vt_ell;
            return cmd_verify_theorems(opt, q, n, ell, lemmas);
        }
    } catch (const TooLargeError& e) {
        std::cerr << "skipped: " << e.what() << "\n";
        return kExitTooLarge;
    } catch (const MrdError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
