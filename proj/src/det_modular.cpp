#include "sblob/linalg.hpp"

#include <gmp.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace sblob {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Exps = std::array<int, 4>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 residue(const mpz_class& c, u64 p) {
    mpz_class r = c % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

struct Term {
    Exps e;
    mpz_class c;
};

struct ModTerm {
    Exps e;
    u64 c;
};
using ModPoly = std::vector<ModTerm>;

u64 det_mod(std::vector<std::vector<u64>>& a, u64 p) {
    const size_t n = a.size();
    u64 det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = p - det;
        }
        det = mulmod(det, a[k][k], p);
        const u64 inv = invmod(a[k][k], p);
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const u64 f = mulmod(a[i][k], inv, p);
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] + p - mulmod(f, a[k][j], p)) % p;
        }
    }
    return det % p;
}

constexpr long kForbidden = 1L << 40;

// Minimum total cost of a perfect matching rows -> columns (Hungarian
// method). Costs of at least kForbidden mark missing entries; the result is
// then at least kForbidden if every matching uses one.
long min_assignment(const std::vector<std::vector<long>>& a) {
    const size_t n = a.size();
    const long inf = std::numeric_limits<long>::max() / 4;
    std::vector<long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (size_t i = 1; i <= n; ++i) {
        p[0] = i;
        size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const size_t i0 = p[j0];
            long delta = inf;
            size_t j1 = 0;
            for (size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const long cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    long total = 0;
    for (size_t j = 1; j <= n; ++j) total += a[p[j] - 1][j - 1];
    return total;
}

// Values of det on the grid {1, ..., D_v + 1} over the active variables,
// modulo one prime.
class GridEvaluator {
public:
    GridEvaluator(const std::vector<std::vector<ModPoly>>& m, const std::vector<int>& vars, const std::vector<int>& deg,
                  const std::vector<int>& low, const std::vector<size_t>& stride, u64 p)
        : vars_(vars), deg_(deg), low_(low), stride_(stride), p_(p) {
        size_t total = 1;
        for (int v : vars) total *= static_cast<size_t>(deg[static_cast<size_t>(v)] + 1);
        values_.assign(total, 0);
        fill(m, 0, 0, 1);
    }
    std::vector<u64>& values() { return values_; }

private:
    // `factor` collects x^{-low} for the variables substituted so far.
    void fill(const std::vector<std::vector<ModPoly>>& m, size_t level, size_t offset, u64 factor) {
        const size_t n = m.size();
        if (level == vars_.size()) {
            std::vector<std::vector<u64>> a(n, std::vector<u64>(n, 0));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    for (const auto& t : m[i][j]) a[i][j] = (a[i][j] + t.c) % p_;
            values_[offset] = mulmod(det_mod(a, p_), factor, p_);
            return;
        }
        const int v = vars_[level];
        int maxe = 0;
        for (const auto& row : m)
            for (const auto& x : row)
                for (const auto& t : x) maxe = std::max(maxe, t.e[static_cast<size_t>(v)]);
        std::vector<u64> pw(static_cast<size_t>(maxe) + 1);
        std::vector<std::vector<ModPoly>> sub(n, std::vector<ModPoly>(n));
        for (int k = 0; k <= deg_[static_cast<size_t>(v)]; ++k) {
            pw[0] = 1;
            for (size_t e = 1; e < pw.size(); ++e) pw[e] = mulmod(pw[e - 1], static_cast<u64>(k + 1), p_);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    ModPoly& out = sub[i][j];
                    out.clear();
                    for (const auto& t : m[i][j]) {
                        ModTerm s{t.e, mulmod(t.c, pw[static_cast<size_t>(t.e[static_cast<size_t>(v)])], p_)};
                        s.e[static_cast<size_t>(v)] = 0;
                        out.push_back(s);
                    }
                    combine(out);
                }
            const u64 f = mulmod(factor, powmod(invmod(static_cast<u64>(k + 1), p_), static_cast<u64>(low_[static_cast<size_t>(v)]), p_), p_);
            fill(sub, level + 1, offset + static_cast<size_t>(k) * stride_[level], f);
        }
    }

    void combine(ModPoly& x) const {
        if (x.size() < 2) return;
        std::sort(x.begin(), x.end(), [](const ModTerm& a, const ModTerm& b) { return a.e < b.e; });
        size_t w = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            if (w > 0 && x[w - 1].e == x[i].e) x[w - 1].c = (x[w - 1].c + x[i].c) % p_;
            else x[w++] = x[i];
        }
        x.resize(w);
    }

    const std::vector<int>& vars_;
    const std::vector<int>& deg_;
    const std::vector<int>& low_;
    const std::vector<size_t>& stride_;
    u64 p_;
    std::vector<u64> values_;
};

// Turns grid values at x = 1..g along one axis into monomial coefficients,
// in place, by Newton divided differences.
void interpolate_axis(std::vector<u64>& vals, size_t stride, size_t g, u64 p) {
    std::vector<u64> inv(g + 1, 1);
    for (size_t j = 1; j <= g; ++j) inv[j] = invmod(j, p);
    std::vector<u64> c(g), poly(g);
    const size_t block = stride * g;
    for (size_t base = 0; base < vals.size(); base += block)
        for (size_t off = 0; off < stride; ++off) {
            for (size_t i = 0; i < g; ++i) c[i] = vals[base + off + i * stride];
            for (size_t j = 1; j < g; ++j)
                for (size_t i = g - 1; i >= j; --i) c[i] = mulmod((c[i] + p - c[i - 1]) % p, inv[j], p);
            // Horner on the Newton form with nodes x_i = i + 1.
            std::fill(poly.begin(), poly.end(), 0);
            poly[0] = c[g - 1];
            size_t len = 1;
            for (size_t i = g - 1; i-- > 0;) {
                const u64 node = static_cast<u64>(i + 1) % p;
                for (size_t k = len; k > 0; --k) poly[k] = (poly[k - 1] + p - mulmod(poly[k], node, p)) % p;
                poly[0] = (p - mulmod(poly[0], node, p)) % p;
                poly[0] = (poly[0] + c[i]) % p;
                ++len;
            }
            for (size_t i = 0; i < g; ++i) vals[base + off + i * stride] = poly[i];
        }
}

}  // namespace

RingElem det_modular(const Matrix& in, const Ring* r) {
    if (!r->field()->is_rationals()) throw std::invalid_argument("det_modular: coefficients must be rational");
    const size_t n = in.size();
    if (n == 0) return RingElem::one(r);
    for (const auto& row : in)
        if (row.size() != n) throw std::invalid_argument("det_modular: matrix is not square");

    Matrix a = in;
    const std::map<DenKey, int> cleared = clear_row_denominators(a, r);

    // Integer entries with nonnegative exponents: scale each row by the lcm
    // of its coefficient denominators and shift rows, then columns, by
    // monomials.
    std::vector<std::vector<std::vector<Term>>> m(n, std::vector<std::vector<Term>>(n));
    mpz_class scale = 1;
    Exps shift{0, 0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        Exps lo{};
        bool any = false;
        for (const auto& x : a[i])
            for (const auto& [e, c] : x.num()) {
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational_value().get_den_mpz_t());
                for (int v = 0; v < 4; ++v) lo[static_cast<size_t>(v)] = any ? std::min(lo[static_cast<size_t>(v)], e[v]) : e[v];
                any = true;
            }
        if (!any) return RingElem::zero(r);
        scale *= l;
        for (int v = 0; v < 4; ++v) shift[static_cast<size_t>(v)] += lo[static_cast<size_t>(v)];
        for (size_t j = 0; j < n; ++j)
            for (const auto& [e, c] : a[i][j].num()) {
                mpq_class q = c.rational_value() * l;
                Term t{{}, q.get_num()};
                for (int v = 0; v < 4; ++v) t.e[static_cast<size_t>(v)] = e[v] - lo[static_cast<size_t>(v)];
                m[i][j].push_back(t);
            }
    }
    for (size_t j = 0; j < n; ++j) {
        Exps lo{};
        bool any = false;
        for (size_t i = 0; i < n; ++i)
            for (const auto& t : m[i][j]) {
                for (size_t v = 0; v < 4; ++v) lo[v] = any ? std::min(lo[v], t.e[v]) : t.e[v];
                any = true;
            }
        if (!any) return RingElem::zero(r);
        for (size_t v = 0; v < 4; ++v) shift[v] += lo[v];
        for (size_t i = 0; i < n; ++i)
            for (auto& t : m[i][j])
                for (size_t v = 0; v < 4; ++v) t.e[v] -= lo[v];
    }

    // Degree bounds: in each variable the degree of every term of the
    // determinant lies between the cheapest assignment of entry valuations
    // and the dearest assignment of entry degrees. Only that span is
    // interpolated. The coefficient bound is prod_i sum_j |a_ij|_1.
    std::vector<int> deg(4, 0), low(4, 0);
    std::vector<std::vector<long>> cost(n, std::vector<long>(n));
    for (size_t v = 0; v < 4; ++v) {
        for (int dir : {1, -1}) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    if (m[i][j].empty()) {
                        cost[i][j] = kForbidden;
                        continue;
                    }
                    int best = m[i][j].front().e[v];
                    for (const auto& t : m[i][j]) best = dir > 0 ? std::min(best, t.e[v]) : std::max(best, t.e[v]);
                    cost[i][j] = dir * best;
                }
            const long c = min_assignment(cost);
            if (c >= kForbidden) return RingElem::zero(r);
            if (dir > 0) low[v] = static_cast<int>(c);
            else deg[v] = static_cast<int>(-c) - low[v];
        }
    }
    mpz_class bound = 1;
    for (size_t i = 0; i < n; ++i) {
        mpz_class norm = 0;
        for (size_t j = 0; j < n; ++j)
            for (const auto& t : m[i][j]) norm += abs(t.c);
        bound *= norm;
    }

    // Active variables, the one with the most grid points innermost.
    std::vector<int> vars;
    for (int v = 0; v < 4; ++v)
        if (deg[static_cast<size_t>(v)] > 0) vars.push_back(v);
    std::stable_sort(vars.begin(), vars.end(),
                     [&](int x, int y) { return deg[static_cast<size_t>(x)] < deg[static_cast<size_t>(y)]; });
    std::vector<size_t> stride(vars.size(), 1);
    for (size_t k = vars.size(); k-- > 1;) stride[k - 1] = stride[k] * static_cast<size_t>(deg[static_cast<size_t>(vars[k])] + 1);

    // Primes below 2^62 until their product exceeds twice the bound.
    std::vector<mpz_class> coeff;
    mpz_class modulus = 1, p = mpz_class(1) << 62;
    p -= mpz_class(1) << 40;
    const mpz_class target = 2 * bound;
    while (modulus <= target) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        const u64 pp = p.get_ui();
        std::vector<std::vector<ModPoly>> mm(n, std::vector<ModPoly>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (const auto& t : m[i][j]) mm[i][j].push_back({t.e, residue(t.c, pp)});
        GridEvaluator ev(mm, vars, deg, low, stride, pp);
        std::vector<u64>& vals = ev.values();
        for (size_t k = 0; k < vars.size(); ++k)
            interpolate_axis(vals, stride[k], static_cast<size_t>(deg[static_cast<size_t>(vars[k])] + 1), pp);
        if (coeff.empty()) coeff.assign(vals.size(), 0);
        // Incremental Chinese remaindering.
        const u64 minv = invmod(residue(modulus, pp), pp);
        for (size_t k = 0; k < vals.size(); ++k) {
            const u64 cur = residue(coeff[k], pp);
            const u64 t = mulmod((vals[k] + pp - cur) % pp, minv, pp);
            coeff[k] += modulus * static_cast<unsigned long>(t);
        }
        modulus *= p;
    }

    const mpz_class half = modulus / 2;
    std::map<Exp, FElem> terms;
    for (size_t k = 0; k < coeff.size(); ++k) {
        mpz_class c = coeff[k];
        if (c > half) c -= modulus;
        if (c == 0) continue;
        Exp e;
        size_t rest = k;
        for (size_t a2 = 0; a2 < vars.size(); ++a2) {
            e[vars[a2]] = static_cast<int>(rest / stride[a2]);
            rest %= stride[a2];
        }
        for (int v = 0; v < 4; ++v) e[v] += shift[static_cast<size_t>(v)] + low[static_cast<size_t>(v)];
        mpq_class q(c, scale);
        q.canonicalize();
        terms.emplace(e, r->felem(q));
    }
    RingElem d = RingElem::from_terms(r, std::move(terms));
    for (const auto& [k, mult] : cleared)
        for (int i = 0; i < mult; ++i) d = d.div_binomial(k.mu, k.d);
    return d.normalize();
}

}  // namespace sblob
