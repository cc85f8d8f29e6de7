#include "mrdkit/json_io.hpp"

namespace mrdkit {

json ctx_to_json(const FieldCtx& ctx) {
    return json{{"p", ctx.p()},
                {"e", ctx.e()},
                {"n", ctx.n()},
                {"base_poly", ctx.base_poly()},
                {"ext_poly", ctx.ext_poly()}};
}

std::shared_ptr<const FieldCtx> ctx_from_json(const json& j) {
    if (!j.is_object()) throw MrdError(errc::bad_argument, "context must be a JSON object");
    std::optional<std::vector<u64>> base, ext;
    if (j.contains("base_poly")) base = j.at("base_poly").get<std::vector<u64>>();
    if (j.contains("ext_poly")) ext = j.at("ext_poly").get<std::vector<u64>>();
    return FieldCtx::create(j.at("p").get<u64>(), j.at("e").get<unsigned>(), j.at("n").get<unsigned>(),
                            std::move(base), std::move(ext));
}

json mat_to_json(const MatFq& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"m", m.rows()}, {"n", m.cols()}, {"entries", std::move(rows)}};
}

MatFq mat_from_json(const FieldCtx& ctx, const json& j) {
    const int rows = j.at("m").get<int>();
    const int cols = j.at("n").get<int>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || int(entries.size()) != rows)
        throw MrdError(errc::bad_argument, "matrix entries must hold one array per row");
    std::vector<u64> flat;
    flat.reserve(size_t(rows) * size_t(cols));
    for (const auto& row : entries) {
        if (!row.is_array() || int(row.size()) != cols)
            throw MrdError(errc::bad_argument, "matrix row has the wrong length");
        for (const auto& v : row) flat.push_back(v.get<u64>());
    }
    return MatFq::from_rows(ctx, rows, cols, std::move(flat));
}

json elem_to_json(const FieldElem& a) {
    const FieldCtx& F = a.ctx();
    if (a.level() == Level::K) {
        json out = json::array();
        for (u64 c : a.kvec()) out.push_back(F.fq_coeffs(c));
        return out;
    }
    if (a.level() == Level::Fq) return json(F.fq_coeffs(a.code()));
    return json::array({a.code()});
}

json code_to_json(const RankMetricCode& c) {
    json gens = json::array();
    for (const MatFq& g : c.generators()) gens.push_back(mat_to_json(g));
    return json{{"ctx", ctx_to_json(c.field())}, {"m", c.m()}, {"n", c.n()}, {"generators", std::move(gens)}};
}

LoadedCode code_from_json(const json& j) {
    auto ctx = ctx_from_json(j.at("ctx"));
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    std::vector<MatFq> gens;
    for (const auto& g : j.at("generators")) gens.push_back(mat_from_json(*ctx, g));
    RankMetricCode code = RankMetricCode::from_generators(*ctx, m, n, gens);
    return LoadedCode{std::move(ctx), std::move(code)};
}

json certificate_to_json(const SelfDualCertificate& cert) {
    return json{{"params", json{{"i", cert.i}, {"h", cert.h}, {"j", cert.j}}},
                {"A_sym", mat_to_json(cert.A_sym)},
                {"B_sym", mat_to_json(cert.B_sym)},
                {"P", mat_to_json(cert.P)},
                {"Q", mat_to_json(cert.Q)},
                {"code", code_to_json(cert.code)}};
}

LoadedCertificate certificate_from_json(const json& j) {
    LoadedCode lc = code_from_json(j.at("code"));
    const auto& params = j.at("params");
    return LoadedCertificate{lc.ctx,
                             params.at("i").get<u64>(),
                             params.at("h").get<u64>(),
                             params.at("j").get<unsigned>(),
                             mat_from_json(*lc.ctx, j.at("A_sym")),
                             mat_from_json(*lc.ctx, j.at("B_sym")),
                             mat_from_json(*lc.ctx, j.at("P")),
                             mat_from_json(*lc.ctx, j.at("Q")),
                             std::move(lc.code)};
}

}  // namespace mrdkit
