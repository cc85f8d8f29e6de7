#include "mrdkit/ffield.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "mrdkit/matfq.hpp"

namespace mrdkit {

namespace {

constexpr u64 kScanCap = u64(1) << 24;  // iteration cap for deterministic scans
constexpr u64 kQnCap = u64(1) << 63;

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 a, u64 k, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (k) {
        if (k & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        k >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 x) {
    if (x < 2) return false;
    for (u64 s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (x % s == 0) return x == s;
    }
    u64 d = x - 1;
    int r = 0;
    while ((d & 1) == 0) d >>= 1, ++r;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 y = powmod(a, d, x);
        if (y == 1 || y == x - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            y = mulmod(y, y, x);
            if (y == x - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 pollard_rho(u64 x) {
    if ((x & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, z = 2, d = 1;
        while (d == 1) {
            y = (mulmod(y, y, x) + c) % x;
            z = (mulmod(z, z, x) + c) % x;
            z = (mulmod(z, z, x) + c) % x;
            d = std::gcd(y > z ? y - z : z - y, x);
        }
        if (d != x) return d;
    }
}

void factorize_into(u64 x, std::vector<std::pair<u64, unsigned>>& out) {
    if (x <= 1) return;
    if (is_prime_u64(x)) {
        for (auto& f : out)
            if (f.first == x) {
                ++f.second;
                return;
            }
        out.emplace_back(x, 1);
        return;
    }
    u64 d = pollard_rho(x);
    factorize_into(d, out);
    factorize_into(x / d, out);
}

std::vector<std::pair<u64, unsigned>> factorize(u64 x) {
    std::vector<std::pair<u64, unsigned>> out;
    factorize_into(x, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- generic dense polynomial arithmetic over a coefficient field ----
// Ops is any type exposing add/sub/mul/inv/neg on u64 codes plus zero()==0.
template <class Ops>
struct Poly {
    // coefficients constant-first, trailing zeros trimmed
    static void trim(std::vector<u64>& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    static std::vector<u64> mul(const Ops& F, const std::vector<u64>& a, const std::vector<u64>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<u64> c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
        }
        trim(c);
        return c;
    }

    // a mod m, m monic-normalizable (leading coeff invertible)
    static std::vector<u64> mod(const Ops& F, std::vector<u64> a, const std::vector<u64>& m) {
        trim(a);
        const size_t dm = m.size() - 1;
        const u64 lead_inv = F.inv(m.back());
        while (a.size() > dm) {
            const u64 c = F.mul(a.back(), lead_inv);
            const size_t shift = a.size() - 1 - dm;
            if (c != 0)
                for (size_t i = 0; i < m.size(); ++i)
                    a[shift + i] = F.sub(a[shift + i], F.mul(c, m[i]));
            a.pop_back();
            trim(a);
        }
        return a;
    }

    static std::vector<u64> mulmod(const Ops& F, const std::vector<u64>& a, const std::vector<u64>& b,
                                   const std::vector<u64>& m) {
        return mod(F, mul(F, a, b), m);
    }

    static std::vector<u64> powmod(const Ops& F, std::vector<u64> a, u64 k, const std::vector<u64>& m) {
        std::vector<u64> r = {1};
        a = mod(F, std::move(a), m);
        while (k) {
            if (k & 1) r = mulmod(F, r, a, m);
            a = mulmod(F, a, a, m);
            k >>= 1;
        }
        return r;
    }

    static std::vector<u64> gcd(const Ops& F, std::vector<u64> a, std::vector<u64> b) {
        trim(a);
        trim(b);
        while (!b.empty()) {
            a = mod(F, std::move(a), b);
            std::swap(a, b);
        }
        return a;
    }

    // Irreducibility of monic f of degree d >= 1 over the field of order Q:
    // x^(Q^d) = x mod f, and gcd(x^(Q^(d/r)) - x, f) = 1 for all prime r | d.
    static bool irreducible(const Ops& F, u64 Q, const std::vector<u64>& f) {
        const size_t d = f.size() - 1;
        if (d == 0) return false;
        if (d == 1) return true;
        std::vector<u64> x = {0, 1};
        // x^(Q^j) by iterated Q-th powers
        auto frob_iter = [&](std::vector<u64> g, size_t times) {
            for (size_t t = 0; t < times; ++t) g = powmod(F, std::move(g), Q, f);
            return g;
        };
        std::vector<u64> xqd = frob_iter(x, d);
        if (xqd.size() != 2 || xqd[0] != 0 || xqd[1] != 1) return false;
        for (auto [r, mult] : factorize(u64(d))) {
            (void)mult;
            std::vector<u64> g = frob_iter(x, d / r);
            // g - x
            std::vector<u64> diff = g;
            if (diff.size() < 2) diff.resize(2, 0);
            diff[1] = F.sub(diff[1], 1);
            trim(diff);
            auto gc = gcd(F, f, diff);
            if (gc.size() != 1) return false;
        }
        return true;
    }
};

struct FpOps {
    u64 p;
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    u64 mul(u64 a, u64 b) const { return mulmod(a, b, p); }
    u64 inv(u64 a) const { return powmod(a, p - 2, p); }
};

struct FqOps {
    const FieldCtx* F;
    u64 add(u64 a, u64 b) const { return F->add(a, b); }
    u64 sub(u64 a, u64 b) const { return F->sub(a, b); }
    u64 neg(u64 a) const { return F->neg(a); }
    u64 mul(u64 a, u64 b) const { return F->mul(a, b); }
    u64 inv(u64 a) const { return F->inv(a); }
};

}  // namespace

// ---------------------------------------------------------------- FieldCtx

std::shared_ptr<const FieldCtx> FieldCtx::create(u64 p, unsigned e, unsigned n,
                                                 std::optional<std::vector<u64>> base_poly,
                                                 std::optional<std::vector<u64>> ext_poly) {
    if (!is_prime_u64(p)) throw MrdError(errc::not_prime, "p = " + std::to_string(p));
    if (e < 1 || n < 1) throw MrdError(errc::bad_argument, "extension degrees must be >= 1");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->e_ = e;
    ctx->n_ = n;

    // q = p^e and q^n, both capped at 2^63
    u128 q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > kQnCap) throw MrdError(errc::overflow, "q = p^e exceeds 2^63");
    }
    ctx->q_ = u64(q);
    u128 qn = 1;
    for (unsigned i = 0; i < n; ++i) {
        qn *= ctx->q_;
        if (qn > kQnCap) throw MrdError(errc::overflow, "q^n exceeds 2^63");
    }
    ctx->qn_ = u64(qn);

    ctx->pow_p_.resize(e + 1);
    ctx->pow_p_[0] = 1;
    for (unsigned i = 1; i <= e; ++i) ctx->pow_p_[i] = ctx->pow_p_[i - 1] * p;

    // base polynomial over F_p
    FpOps fp{p};
    auto validate_base = [&](const std::vector<u64>& f) {
        if (f.size() != size_t(e) + 1 || f.back() != 1)
            throw MrdError(errc::bad_argument, "base_poly must be monic of degree e");
        for (u64 c : f)
            if (c >= p) throw MrdError(errc::bad_argument, "base_poly coefficient out of range");
        if (!Poly<FpOps>::irreducible(fp, p, f))
            throw MrdError(errc::reducible, "base_poly is reducible over F_p");
    };
    if (base_poly) {
        validate_base(*base_poly);
        ctx->base_poly_ = std::move(*base_poly);
    } else {
        // smallest monic irreducible, coefficients compared constant-first
        std::vector<u64> f(e + 1, 0);
        f[e] = 1;
        u64 iters = 0;
        for (;;) {
            if (Poly<FpOps>::irreducible(fp, p, f)) break;
            // odometer with the constant term as the most significant digit
            int pos = int(e) - 1;
            while (pos >= 0 && f[pos] == p - 1) f[pos--] = 0;
            if (pos < 0) throw MrdError(errc::internal, "no irreducible base polynomial found");
            ++f[pos];
            if (++iters > kScanCap) throw TooLargeError(iters, kScanCap, "base polynomial scan");
        }
        ctx->base_poly_ = std::move(f);
    }

    // extension polynomial over F_q
    FqOps fq{ctx.get()};
    auto validate_ext = [&](const std::vector<u64>& f) {
        if (f.size() != size_t(n) + 1 || f.back() != 1)
            throw MrdError(errc::bad_argument, "ext_poly must be monic of degree n");
        for (u64 c : f)
            if (c >= ctx->q_) throw MrdError(errc::bad_argument, "ext_poly coefficient out of range");
        if (!Poly<FqOps>::irreducible(fq, ctx->q_, f))
            throw MrdError(errc::reducible, "ext_poly is reducible over F_q");
    };
    if (ext_poly) {
        validate_ext(*ext_poly);
        ctx->ext_poly_ = std::move(*ext_poly);
    } else {
        std::vector<u64> f(n + 1, 0);
        f[n] = 1;
        u64 iters = 0;
        for (;;) {
            if (Poly<FqOps>::irreducible(fq, ctx->q_, f)) break;
            int pos = int(n) - 1;
            while (pos >= 0 && f[pos] == ctx->q_ - 1) f[pos--] = 0;
            if (pos < 0) throw MrdError(errc::internal, "no irreducible extension polynomial found");
            ++f[pos];
            if (++iters > kScanCap) throw TooLargeError(iters, kScanCap, "ext polynomial scan");
        }
        ctx->ext_poly_ = std::move(f);
    }

    // Frobenius matrix: column i = coordinates of (x^i)^q mod ext_poly
    ctx->frob_mat_.assign(n, std::vector<u64>(n, 0));
    for (unsigned i = 0; i < n; ++i) {
        std::vector<u64> xi(i + 1, 0);
        xi[i] = 1;
        auto fi = Poly<FqOps>::powmod(fq, xi, ctx->q_, ctx->ext_poly_);
        for (unsigned r = 0; r < n; ++r) ctx->frob_mat_[r][i] = r < fi.size() ? fi[r] : 0;
    }

    ctx->fac_qn1_ = factorize(ctx->qn_ - 1);
    ctx->fac_q1_ = factorize(ctx->q_ - 1);
    return ctx;
}

bool FieldCtx::operator==(const FieldCtx& o) const {
    return p_ == o.p_ && e_ == o.e_ && n_ == o.n_ && base_poly_ == o.base_poly_ && ext_poly_ == o.ext_poly_;
}

bool same_field(const FieldCtx& a, const FieldCtx& b) { return &a == &b || a == b; }

std::vector<u64> FieldCtx::fq_coeffs(u64 code) const {
    std::vector<u64> c(e_);
    for (unsigned i = 0; i < e_; ++i) {
        c[i] = code % p_;
        code /= p_;
    }
    return c;
}

u64 FieldCtx::fq_from_coeffs(const std::vector<u64>& c) const {
    u64 code = 0;
    for (unsigned i = 0; i < e_; ++i) code += (i < c.size() ? c[i] % p_ : 0) * pow_p_[i];
    return code;
}

u64 FieldCtx::add(u64 a, u64 b) const {
    if (e_ == 1) return (a + b) % p_;
    u64 r = 0;
    for (unsigned i = 0; i < e_; ++i) {
        r += ((a % p_ + b % p_) % p_) * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

u64 FieldCtx::sub(u64 a, u64 b) const {
    if (e_ == 1) return (a + p_ - b) % p_;
    u64 r = 0;
    for (unsigned i = 0; i < e_; ++i) {
        r += ((a % p_ + p_ - b % p_) % p_) * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

u64 FieldCtx::neg(u64 a) const { return sub(0, a); }

u64 FieldCtx::mul(u64 a, u64 b) const {
    if (e_ == 1) return mulmod(a, b, p_);
    // schoolbook product of the coefficient vectors, reduced by base_poly
    std::array<u64, 128> prod{};
    std::array<u64, 64> ca{}, cb{};
    for (unsigned i = 0; i < e_; ++i) {
        ca[i] = a % p_;
        a /= p_;
        cb[i] = b % p_;
        b /= p_;
    }
    for (unsigned i = 0; i < e_; ++i) {
        if (ca[i] == 0) continue;
        for (unsigned j = 0; j < e_; ++j)
            if (cb[j]) prod[i + j] = (prod[i + j] + mulmod(ca[i], cb[j], p_)) % p_;
    }
    for (int d = int(2 * e_ - 2); d >= int(e_); --d) {
        const u64 c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        const int shift = d - int(e_);
        for (unsigned i = 0; i < e_; ++i)
            prod[shift + i] = (prod[shift + i] + (p_ - mulmod(c, base_poly_[i], p_))) % p_;
    }
    u64 r = 0;
    for (unsigned i = 0; i < e_; ++i) r += prod[i] * pow_p_[i];
    return r;
}

u64 FieldCtx::pow(u64 a, u64 k) const {
    u64 r = 1;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

u64 FieldCtx::inv(u64 a) const {
    if (a == 0) throw MrdError(errc::bad_argument, "inverse of 0 in F_q");
    return pow(a, q_ - 2);
}

bool FieldCtx::is_square(u64 a) const {
    if (p_ == 2) throw MrdError(errc::char_two, "square test needs odd q");
    if (a == 0) return false;
    return pow(a, (q_ - 1) / 2) == 1;
}

std::optional<u64> FieldCtx::sqrt(u64 a) const {
    if (p_ == 2) throw MrdError(errc::char_two, "square root needs odd q");
    if (a == 0) return 0;
    // extension point: a Tonelli-Shanks style root finder would slot in here
    // for q >= 2^16, where the scan stops being reasonable
    if (q_ >= (u64(1) << 16))
        throw MrdError(errc::unsupported, "square-root scan is limited to q < 2^16");
    // exhaustive scan; roots come in +-pairs
    for (u64 s = 1; s < q_; ++s) {
        if (mul(s, s) == a) {
            const u64 t = neg(s);
            // lexicographically smaller coefficient vector, constant term first
            const auto cs = fq_coeffs(s), ct = fq_coeffs(t);
            return cs <= ct ? s : t;
        }
    }
    return std::nullopt;
}

FieldCtx::KVec FieldCtx::k_one() const {
    KVec v(n_, 0);
    v[0] = 1;
    return v;
}

FieldCtx::KVec FieldCtx::k_add(const KVec& a, const KVec& b) const {
    KVec r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = add(a[i], b[i]);
    return r;
}

FieldCtx::KVec FieldCtx::k_sub(const KVec& a, const KVec& b) const {
    KVec r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = sub(a[i], b[i]);
    return r;
}

FieldCtx::KVec FieldCtx::k_neg(const KVec& a) const {
    KVec r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = neg(a[i]);
    return r;
}

FieldCtx::KVec FieldCtx::k_mul(const KVec& a, const KVec& b) const {
    std::vector<u64> prod(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < n_; ++j)
            if (b[j]) prod[i + j] = add(prod[i + j], mul(a[i], b[j]));
    }
    for (int d = int(2 * n_ - 2); d >= int(n_); --d) {
        const u64 c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        const int shift = d - int(n_);
        for (unsigned i = 0; i < n_; ++i)
            prod[shift + i] = sub(prod[shift + i], mul(c, ext_poly_[i]));
    }
    prod.resize(n_);
    return prod;
}

bool FieldCtx::k_is_zero(const KVec& a) const {
    for (u64 c : a)
        if (c) return false;
    return true;
}

FieldCtx::KVec FieldCtx::k_pow(const KVec& a, u64 k) const {
    KVec r = k_one();
    KVec base = a;
    while (k) {
        if (k & 1) r = k_mul(r, base);
        base = k_mul(base, base);
        k >>= 1;
    }
    return r;
}

FieldCtx::KVec FieldCtx::k_inv(const KVec& a) const {
    if (k_is_zero(a)) throw MrdError(errc::bad_argument, "inverse of 0 in K");
    return k_pow(a, qn_ - 2);
}

FieldCtx::KVec FieldCtx::k_frob(const KVec& a, unsigned i) const {
    KVec r = a;
    for (unsigned t = 0; t < i % n_; ++t) {
        KVec next(n_, 0);
        for (unsigned row = 0; row < n_; ++row)
            for (unsigned col = 0; col < n_; ++col)
                if (r[col]) next[row] = add(next[row], mul(frob_mat_[row][col], r[col]));
        r = std::move(next);
    }
    return r;
}

u64 FieldCtx::k_trace(const KVec& a) const {
    KVec acc(n_, 0);
    KVec conj = a;
    for (unsigned i = 0; i < n_; ++i) {
        acc = k_add(acc, conj);
        if (i + 1 < n_) conj = k_frob(conj, 1);
    }
    for (unsigned i = 1; i < n_; ++i)
        if (acc[i] != 0) throw MrdError(errc::internal, "trace left the base field");
    return acc[0];
}

u64 FieldCtx::k_index(const KVec& a) const {
    u64 idx = 0;
    for (unsigned i = n_; i-- > 0;) idx = idx * q_ + a[i];
    return idx;
}

FieldCtx::KVec FieldCtx::k_from_index(u64 idx) const {
    KVec v(n_);
    for (unsigned i = 0; i < n_; ++i) {
        v[i] = idx % q_;
        idx /= q_;
    }
    return v;
}

FieldElem FieldCtx::zero_k() const { return FieldElem(*this, Level::K, k_zero()); }
FieldElem FieldCtx::one_k() const { return FieldElem(*this, Level::K, k_one()); }
FieldElem FieldCtx::elem_fq(u64 code) const { return FieldElem(*this, Level::Fq, {code}); }
FieldElem FieldCtx::elem_k(const KVec& coeffs) const { return FieldElem(*this, Level::K, coeffs); }
FieldElem FieldCtx::elem_k_from_index(u64 idx) const { return elem_k(k_from_index(idx)); }

// --------------------------------------------------------------- FieldElem

FieldElem::FieldElem(const FieldCtx& ctx, Level lvl, std::vector<u64> data)
    : ctx_(&ctx), lvl_(lvl), data_(std::move(data)) {
    switch (lvl_) {
        case Level::Fp:
            if (data_.size() != 1 || data_[0] >= ctx.p())
                throw MrdError(errc::bad_argument, "bad F_p element");
            break;
        case Level::Fq:
            if (data_.size() != 1 || data_[0] >= ctx.q())
                throw MrdError(errc::bad_argument, "bad F_q element");
            break;
        case Level::K:
            if (data_.size() != ctx.n()) throw MrdError(errc::bad_argument, "bad K element");
            for (u64 c : data_)
                if (c >= ctx.q()) throw MrdError(errc::bad_argument, "K coefficient out of range");
            break;
    }
}

u64 FieldElem::code() const {
    if (lvl_ == Level::K) throw MrdError(errc::bad_argument, "code() on a K element");
    return data_[0];
}

const std::vector<u64>& FieldElem::kvec() const {
    if (lvl_ != Level::K) throw MrdError(errc::bad_argument, "kvec() below level K");
    return data_;
}

bool FieldElem::is_zero() const {
    for (u64 c : data_)
        if (c) return false;
    return true;
}

namespace {
void check_compatible(const FieldElem& a, const FieldElem& b) {
    if (a.level() != b.level() || !same_field(a.ctx(), b.ctx()))
        throw MrdError(errc::bad_argument, "mixed-level or mixed-field arithmetic");
}
}  // namespace

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_compatible(*this, o);
    if (lvl_ == Level::K) return FieldElem(*ctx_, lvl_, ctx_->k_add(data_, o.data_));
    if (lvl_ == Level::Fp) return FieldElem(*ctx_, lvl_, {(data_[0] + o.data_[0]) % ctx_->p()});
    return FieldElem(*ctx_, lvl_, {ctx_->add(data_[0], o.data_[0])});
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_compatible(*this, o);
    if (lvl_ == Level::K) return FieldElem(*ctx_, lvl_, ctx_->k_sub(data_, o.data_));
    if (lvl_ == Level::Fp)
        return FieldElem(*ctx_, lvl_, {(data_[0] + ctx_->p() - o.data_[0]) % ctx_->p()});
    return FieldElem(*ctx_, lvl_, {ctx_->sub(data_[0], o.data_[0])});
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_compatible(*this, o);
    if (lvl_ == Level::K) return FieldElem(*ctx_, lvl_, ctx_->k_mul(data_, o.data_));
    if (lvl_ == Level::Fp) return FieldElem(*ctx_, lvl_, {mulmod(data_[0], o.data_[0], ctx_->p())});
    return FieldElem(*ctx_, lvl_, {ctx_->mul(data_[0], o.data_[0])});
}

FieldElem FieldElem::operator-() const {
    if (lvl_ == Level::K) return FieldElem(*ctx_, lvl_, ctx_->k_neg(data_));
    if (lvl_ == Level::Fp) return FieldElem(*ctx_, lvl_, {data_[0] ? ctx_->p() - data_[0] : 0});
    return FieldElem(*ctx_, lvl_, {ctx_->neg(data_[0])});
}

FieldElem FieldElem::inverse() const {
    if (lvl_ == Level::K) return FieldElem(*ctx_, lvl_, ctx_->k_inv(data_));
    if (lvl_ == Level::Fp) {
        if (data_[0] == 0) throw MrdError(errc::bad_argument, "inverse of 0");
        return FieldElem(*ctx_, lvl_, {powmod(data_[0], ctx_->p() - 2, ctx_->p())});
    }
    return FieldElem(*ctx_, lvl_, {ctx_->inv(data_[0])});
}

FieldElem FieldElem::pow(u64 k) const {
    if (lvl_ == Level::K) return FieldElem(*ctx_, lvl_, ctx_->k_pow(data_, k));
    if (lvl_ == Level::Fp) return FieldElem(*ctx_, lvl_, {powmod(data_[0], k, ctx_->p())});
    return FieldElem(*ctx_, lvl_, {ctx_->pow(data_[0], k)});
}

bool FieldElem::operator==(const FieldElem& o) const {
    return lvl_ == o.lvl_ && same_field(*ctx_, *o.ctx_) && data_ == o.data_;
}

FieldElem FieldElem::lifted_to_k() const {
    if (lvl_ == Level::K) return *this;
    FieldCtx::KVec v = ctx_->k_zero();
    v[0] = data_[0];  // F_p codes are F_q codes for constants
    return FieldElem(*ctx_, Level::K, v);
}

std::optional<FieldElem> FieldElem::coerced_to_fq() const {
    if (lvl_ != Level::K) return FieldElem(*ctx_, Level::Fq, data_);
    for (unsigned i = 1; i < ctx_->n(); ++i)
        if (data_[i] != 0) return std::nullopt;
    return FieldElem(*ctx_, Level::Fq, {data_[0]});
}

// --------------------------------------------------------- free operations

FieldElem frobenius(const FieldElem& alpha, u64 i) {
    if (alpha.level() != Level::K) throw MrdError(errc::bad_argument, "frobenius needs a K element");
    const FieldCtx& F = alpha.ctx();
    return F.elem_k(F.k_frob(alpha.kvec(), unsigned(i % F.n())));
}

FieldElem rel_trace(const FieldElem& alpha) {
    if (alpha.level() != Level::K) throw MrdError(errc::bad_argument, "rel_trace needs a K element");
    const FieldCtx& F = alpha.ctx();
    return F.elem_fq(F.k_trace(alpha.kvec()));
}

Basis find_normal_basis(const FieldCtx& ctx) {
    const unsigned n = ctx.n();
    const u64 qn = ctx.q_pow_n();
    for (u64 idx = 1; idx < qn; ++idx) {
        if (idx > kScanCap) throw TooLargeError(idx, kScanCap, "normal basis scan");
        FieldCtx::KVec g = ctx.k_from_index(idx);
        MatFq coords(ctx, int(n), int(n));
        FieldCtx::KVec conj = g;
        for (unsigned j = 0; j < n; ++j) {
            for (unsigned r = 0; r < n; ++r) coords(int(r), int(j)) = conj[r];
            if (j + 1 < n) conj = ctx.k_frob(conj, 1);
        }
        if (coords.rank() == int(n)) {
            std::vector<FieldElem> elems;
            FieldCtx::KVec c = g;
            for (unsigned j = 0; j < n; ++j) {
                elems.push_back(ctx.elem_k(c));
                if (j + 1 < n) c = ctx.k_frob(c, 1);
            }
            return Basis{std::move(elems), Basis::Kind::normal};
        }
    }
    throw MrdError(errc::internal, "no normal basis found");
}

Basis dual_basis(const Basis& b) {
    const FieldCtx& F = b.ctx();
    const unsigned n = F.n();
    if (b.elements.size() != n) throw MrdError(errc::bad_argument, "basis has wrong size");
    MatFq gram(F, int(n), int(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            gram(int(i), int(j)) = F.k_trace(F.k_mul(b.elements[i].kvec(), b.elements[j].kvec()));
    MatFq ginv = gram.inverse();
    std::vector<FieldElem> dual_elems;
    for (unsigned j = 0; j < n; ++j) {
        FieldCtx::KVec acc = F.k_zero();
        for (unsigned m = 0; m < n; ++m) {
            u64 c = ginv(int(m), int(j));
            if (c == 0) continue;
            FieldCtx::KVec term = b.elements[m].kvec();
            for (unsigned t = 0; t < n; ++t) term[t] = F.mul(term[t], c);
            acc = F.k_add(acc, term);
        }
        dual_elems.push_back(F.elem_k(acc));
    }
    // every duality equation must hold exactly
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            u64 t = F.k_trace(F.k_mul(b.elements[i].kvec(), dual_elems[j].kvec()));
            if (t != (i == j ? 1u : 0u)) throw MrdError(errc::internal, "dual basis equations violated");
        }
    return Basis{std::move(dual_elems), Basis::Kind::dual};
}

FieldElem primitive_element(const FieldCtx& ctx) {
    const u64 qn = ctx.q_pow_n();
    const u64 order = qn - 1;
    for (u64 idx = 1; idx < qn; ++idx) {
        if (idx > kScanCap) throw TooLargeError(idx, kScanCap, "primitive element scan");
        FieldCtx::KVec a = ctx.k_from_index(idx);
        bool primitive = true;
        for (auto [r, mult] : ctx.factors_qn_minus_1()) {
            (void)mult;
            if (ctx.k_is_zero(ctx.k_sub(ctx.k_pow(a, order / r), ctx.k_one()))) {
                primitive = false;
                break;
            }
        }
        if (primitive) return ctx.elem_k(a);
    }
    throw MrdError(errc::internal, "no primitive element found");
}

std::optional<FieldElem> sqrt_fq(const FieldElem& a) {
    if (a.level() == Level::K) throw MrdError(errc::bad_argument, "sqrt_fq needs an F_q element");
    auto r = a.ctx().sqrt(a.code());
    if (!r) return std::nullopt;
    return a.ctx().elem_fq(*r);
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::reducible: return "Reducible";
        case errc::overflow: return "Overflow";
        case errc::char_two: return "CharTwo";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::wrong_orientation: return "WrongOrientation";
        case errc::singular: return "Singular";
        case errc::singular_input: return "SingularInput";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::non_square_det: return "NonSquareDet";
        case errc::too_large: return "TooLarge";
        case errc::bad_ell: return "BadEll";
        case errc::odd_n: return "OddN";
        case errc::bad_argument: return "BadArgument";
        case errc::unsupported: return "Unsupported";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace mrdkit
