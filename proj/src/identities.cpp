#include "sblob/identities.hpp"

#include "sblob/errors.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace sblob {

// ---------------------------------------------------------------- QLin

QLin QLin::var(int i) {
    QLin x;
    x.a2[static_cast<size_t>(i)] = 2;
    return x;
}

QLin QLin::operator+(const QLin& o) const {
    QLin x = *this;
    x.c2 += o.c2;
    for (int i = 0; i < kMaxVars; ++i) x.a2[static_cast<size_t>(i)] += o.a2[static_cast<size_t>(i)];
    return x;
}

QLin QLin::operator-(const QLin& o) const { return *this + (-o); }

QLin QLin::operator-() const { return *this * -1; }

QLin QLin::operator*(int k) const {
    QLin x = *this;
    x.c2 *= k;
    for (auto& a : x.a2) a *= k;
    return x;
}

QLin QLin::half() const {
    QLin x = *this;
    if (x.c2 % 2 != 0) throw std::logic_error("QLin::half: odd constant");
    x.c2 /= 2;
    for (auto& a : x.a2) {
        if (a % 2 != 0) throw std::logic_error("QLin::half: odd coefficient");
        a /= 2;
    }
    return x;
}

// ---------------------------------------------------------------- context

IdentityContext::IdentityContext(std::vector<int> symbol, std::vector<int> values)
    : ring_(Ring::generic()), symbol_(std::move(symbol)), values_(std::move(values)) {
    if (symbol_.size() != values_.size() || symbol_.size() > static_cast<size_t>(QLin::kMaxVars))
        throw std::invalid_argument("IdentityContext: bad variable count");
}

int IdentityContext::value(int var) const {
    if (symbolic(var)) throw std::logic_error("IdentityContext: variable is symbolic");
    return values_[static_cast<size_t>(var)];
}

RingElem IdentityContext::br(const QLin& x) const {
    Exp e;
    e[VS] = x.c2;
    for (size_t i = 0; i < symbol_.size(); ++i) {
        if (symbol_[i] >= 0)
            e[symbol_[i]] += x.a2[i];
        else
            e[VS] += x.a2[i] * values_[i];
    }
    for (size_t i = symbol_.size(); i < x.a2.size(); ++i)
        if (x.a2[i] != 0) throw std::logic_error("IdentityContext: unknown variable");
    const FElem one(ring_->field(), 1);
    RingElem num = RingElem::mono(ring_, {one, e}) - RingElem::mono(ring_, {one, -e});
    RingElem den = RingElem::mono(ring_, {one, Exp::unit(VS, 2)}) - RingElem::mono(ring_, {one, Exp::unit(VS, -2)});
    return num * den.inv();
}

RingElem IdentityContext::inv(const QLin& x) const {
    RingElem b = br(x);
    if (b.is_zero()) throw DivisionByZero("bracket vanishes");
    return b.inv();
}

// ---------------------------------------------------------------- battery

namespace {

QLin v(int i) { return QLin::var(i); }

std::vector<Identity> build_battery() {
    std::vector<Identity> out;

    out.push_back({"product-to-sum", "[a][b] = [a+b-1] + [a+b-3] + ... + [a-b+1]", {"a", "b"}, 1, 3,
                   [](const IdentityContext& c) {
                       QLin a = v(0), b = v(1);
                       RingElem r = c.br(a) * c.br(b);
                       for (int j = 0; j < c.value(1); ++j) r -= c.br(a + b - (1 + 2 * j));
                       return r;
                   }});

    out.push_back({"recurrence", "f(n) = [s+n] solves f(n) = [2] f(n-1) - f(n-2)", {"s", "n"}, 0, 3,
                   [](const IdentityContext& c) {
                       QLin x = v(0) + v(1);
                       return c.br(2) * c.br(x - 1) - c.br(x - 2) - c.br(x);
                   }});

    out.push_back({"four-term", "[s+a+b][a][b+r] + [a+b+r][b][s+a] - [a+b+r+s][a][b] - [a+b][s+a][b+r] = 0",
                   {"s", "a", "b", "r"}, 0, 3, [](const IdentityContext& c) {
                       QLin s = v(0), a = v(1), b = v(2), r = v(3);
                       return c.br(s + a + b) * c.br(a) * c.br(b + r) + c.br(a + b + r) * c.br(b) * c.br(s + a) -
                              c.br(a + b + r + s) * c.br(a) * c.br(b) - c.br(a + b) * c.br(s + a) * c.br(b + r);
                   }});

    out.push_back({"left-decoration",
                   "[s+a+b][a][w1-s-a] + [s+a][w1-s][b] - [w1][a][b] - [a+b][s+a][w1-s-a] = 0",
                   {"s", "a", "b", "w1"}, 0, 3, [](const IdentityContext& c) {
                       QLin s = v(0), a = v(1), b = v(2), w1 = v(3);
                       return c.br(s + a + b) * c.br(a) * c.br(w1 - s - a) + c.br(s + a) * c.br(w1 - s) * c.br(b) -
                              c.br(w1) * c.br(a) * c.br(b) - c.br(a + b) * c.br(s + a) * c.br(w1 - s - a);
                   }});

    out.push_back({"left-decoration-fractions",
                   "1/([s+a][w1-s][b]) + 1/([a][s+a+b][w1-s-a]) - [w1]/([s+a][w1-s][s+a+b][w1-s-a]) "
                   "- [a+b]/([s+a+b][w1-s][b][a]) = 0",
                   {"s", "a", "b", "w1"}, 0, 3, [](const IdentityContext& c) {
                       QLin s = v(0), a = v(1), b = v(2), w1 = v(3);
                       return c.inv(s + a) * c.inv(w1 - s) * c.inv(b) +
                              c.inv(a) * c.inv(s + a + b) * c.inv(w1 - s - a) -
                              c.br(w1) * c.inv(s + a) * c.inv(w1 - s) * c.inv(s + a + b) * c.inv(w1 - s - a) -
                              c.br(a + b) * c.inv(s + a + b) * c.inv(w1 - s) * c.inv(b) * c.inv(a);
                   }});

    out.push_back({"right-decoration",
                   "[w2-m+s+a+b][a][m-s-a] + [w2-m+s+a][m-s][b] - [w2][a][b] - [a+b][w2-m+s+a][m-s-a] = 0",
                   {"w2", "m", "s", "a", "b"}, 0, 3, [](const IdentityContext& c) {
                       QLin w2 = v(0), m = v(1), s = v(2), a = v(3), b = v(4);
                       QLin t = w2 - m + s;
                       return c.br(t + a + b) * c.br(a) * c.br(m - s - a) + c.br(t + a) * c.br(m - s) * c.br(b) -
                              c.br(w2) * c.br(a) * c.br(b) - c.br(a + b) * c.br(t + a) * c.br(m - s - a);
                   }});

    out.push_back({"doubling", "[2][G+1] = [G+2] + [G]", {"G"}, 0, 3, [](const IdentityContext& c) {
                       QLin g = v(0);
                       return c.br(2) * c.br(g + 1) - c.br(g + 2) - c.br(g);
                   }});

    out.push_back({"bracket-difference", "[F+1][G+2] - [F][G+1] = [F+G+2]", {"F", "G"}, 0, 3,
                   [](const IdentityContext& c) {
                       QLin f = v(0), g = v(1);
                       return c.br(f + 1) * c.br(g + 2) - c.br(f) * c.br(g + 1) - c.br(f + g + 2);
                   }});

    out.push_back({"cd-nested",
                   "-[2][F+1][G+1][K-G-1] + [F+1][G][K-G-1] + [F][G+1][K-G-1] + [F+1][K] + [G+1][K-F-G-2] = 0",
                   {"F", "G", "K"}, 0, 3, [](const IdentityContext& c) {
                       QLin f = v(0), g = v(1), k = v(2);
                       return -c.br(2) * c.br(f + 1) * c.br(g + 1) * c.br(k - g - 1) +
                              c.br(f + 1) * c.br(g) * c.br(k - g - 1) + c.br(f) * c.br(g + 1) * c.br(k - g - 1) +
                              c.br(f + 1) * c.br(k) + c.br(g + 1) * c.br(k - f - g - 2);
                   }});

    out.push_back({"cd-nested-fractions",
                   "-[2]/([F][G][K][K-F-G-2]) + 1/([F][G][G+1][K-F-G-2][K-G-1]) + 1/([F][G+1][K][K-F-G-2]) "
                   "+ 1/([F+1][G][K][K-F-G-2]) + 1/([F][F+1][G][K][K-G-1]) = 0",
                   {"F", "G", "K"}, 0, 3, [](const IdentityContext& c) {
                       QLin f = v(0), g = v(1), k = v(2);
                       RingElem kfg = c.inv(k - f - g - 2);
                       return -c.br(2) * c.inv(f) * c.inv(g) * c.inv(k) * kfg +
                              c.inv(f) * c.inv(g) * c.inv(g + 1) * kfg * c.inv(k - g - 1) +
                              c.inv(f) * c.inv(g + 1) * c.inv(k) * kfg + c.inv(f + 1) * c.inv(g) * c.inv(k) * kfg +
                              c.inv(f) * c.inv(f + 1) * c.inv(g) * c.inv(k) * c.inv(k - g - 1);
                   }});

    out.push_back({"cd-blob",
                   "-[2][F+1][G+1][w1-G] + [F+1][w1+1] + [F+1][G][w1-G] + [F][G+1][w1-G] + [G+1][H] = 0, "
                   "H = w1-G-F-1",
                   {"F", "G", "w1"}, 0, 3, [](const IdentityContext& c) {
                       QLin f = v(0), g = v(1), w1 = v(2), h = w1 - g - f - 1;
                       return -c.br(2) * c.br(f + 1) * c.br(g + 1) * c.br(w1 - g) + c.br(f + 1) * c.br(w1 + 1) +
                              c.br(f + 1) * c.br(g) * c.br(w1 - g) + c.br(f) * c.br(g + 1) * c.br(w1 - g) +
                              c.br(g + 1) * c.br(h);
                   }});

    out.push_back({"cd-blob-fractions",
                   "-[2]/([F][G][H]) + [w1+1]/([F][G][G+1][H][w1-G]) + 1/([F][G+1][H]) + 1/([F+1][G][H]) "
                   "+ 1/([F][F+1][G][w1-G]) = 0, H = w1-G-F-1",
                   {"F", "G", "w1"}, 0, 3, [](const IdentityContext& c) {
                       QLin f = v(0), g = v(1), w1 = v(2), h = w1 - g - f - 1;
                       RingElem ih = c.inv(h);
                       return -c.br(2) * c.inv(f) * c.inv(g) * ih +
                              c.br(w1 + 1) * c.inv(f) * c.inv(g) * c.inv(g + 1) * ih * c.inv(w1 - g) +
                              c.inv(f) * c.inv(g + 1) * ih + c.inv(f + 1) * c.inv(g) * ih +
                              c.inv(f) * c.inv(f + 1) * c.inv(g) * c.inv(w1 - g);
                   }});

    out.push_back({"cd-mirror",
                   "-[2][F+1][G+1][H+F+1][w2-F] + [F+1][H+G+F+2][w2-F] + [F+1][G][H+F+1][w2-F] "
                   "+ [F][G+1][H+F+1][w2-F] + [w2+1][G+1][H+F+1] = [w1+w2-l+1][F+1][G+1], H = w1-l",
                   {"F", "w1", "w2", "G", "l"}, 0, 3, [](const IdentityContext& c) {
                       QLin f = v(0), w1 = v(1), w2 = v(2), g = v(3), l = v(4), h = w1 - l;
                       RingElem x = c.br(w2 - f);
                       return -c.br(2) * c.br(f + 1) * c.br(g + 1) * c.br(h + f + 1) * x +
                              c.br(f + 1) * c.br(h + g + f + 2) * x + c.br(f + 1) * c.br(g) * c.br(h + f + 1) * x +
                              c.br(f) * c.br(g + 1) * c.br(h + f + 1) * x +
                              c.br(w2 + 1) * c.br(g + 1) * c.br(h + f + 1) -
                              c.br(w1 + w2 - l + 1) * c.br(f + 1) * c.br(g + 1);
                   }});

    out.push_back({"cd-mirror-fractions",
                   "-[2]/([F][G][H+G+F+2]) + [1]/([F][G][G+1][H+F+1]) + 1/([F][G+1][H+G+F+2]) "
                   "+ 1/([F+1][G][H+G+F+2]) + [w2+1]/([F][F+1][G][H+G+F+2][w2-F]) "
                   "= [w1+w2-l+1][F+1][G+1] / ([F][F+1][G][G+1][H+G+F+2][H+F+1][w2-F]), H = w1-l",
                   {"F", "w1", "w2", "G", "l"}, 0, 3, [](const IdentityContext& c) {
                       QLin f = v(0), w1 = v(1), w2 = v(2), g = v(3), l = v(4), h = w1 - l;
                       RingElem if_ = c.inv(f), ig = c.inv(g), ihgf = c.inv(h + g + f + 2);
                       RingElem lhs = -c.br(2) * if_ * ig * ihgf + c.br(1) * if_ * ig * c.inv(g + 1) * c.inv(h + f + 1) +
                                      if_ * c.inv(g + 1) * ihgf + c.inv(f + 1) * ig * ihgf +
                                      c.br(w2 + 1) * if_ * c.inv(f + 1) * ig * ihgf * c.inv(w2 - f);
                       RingElem rhs = c.br(w1 + w2 - l + 1) * c.br(f + 1) * c.br(g + 1) * if_ * c.inv(f + 1) * ig *
                                      c.inv(g + 1) * ihgf * c.inv(h + f + 1) * c.inv(w2 - f);
                       return lhs - rhs;
                   }});

    out.push_back({"mirror-reduction", "-[w1-l][w2-F] + [w2+1][w1-l+F+1] = [w1+w2-l+1][F+1]",
                   {"w1", "w2", "F", "l"}, 0, 3, [](const IdentityContext& c) {
                       QLin w1 = v(0), w2 = v(1), f = v(2), l = v(3);
                       return -c.br(w1 - l) * c.br(w2 - f) + c.br(w2 + 1) * c.br(w1 - l + f + 1) -
                              c.br(w1 + w2 - l + 1) * c.br(f + 1);
                   }});

    out.push_back({"kappa-swap",
                   "with kappa = -[(w1-w2+theta)/2][(w1-w2-theta)/2] and w1 = -w1'-1: "
                   "-kappa = [(-w1'-w2+theta-1)/2][(-w1'-w2-theta-1)/2]",
                   {"w1'", "w2", "theta"}, 0, 3, [](const IdentityContext& c) {
                       QLin w1p = v(0), w2 = v(1), th = v(2), w1 = -w1p - 1;
                       RingElem kappa = -c.br((w1 - w2 + th).half()) * c.br((w1 - w2 - th).half());
                       return -kappa - c.br((-w1p - w2 + th - 1).half()) * c.br((-w1p - w2 - th - 1).half());
                   }});

    out.push_back({"kappa-swap-even",
                   "[(-w1'-w2+theta-1)/2][(-w1'-w2-theta-1)/2] = [(w1'+w2-theta+1)/2][(w1'+w2+theta+1)/2]",
                   {"w1'", "w2", "theta"}, 0, 3, [](const IdentityContext& c) {
                       QLin w1p = v(0), w2 = v(1), th = v(2);
                       return c.br((-w1p - w2 + th - 1).half()) * c.br((-w1p - w2 - th - 1).half()) -
                              c.br((w1p + w2 - th + 1).half()) * c.br((w1p + w2 + th + 1).half());
                   }});
    return out;
}

}  // namespace

const std::vector<Identity>& identity_battery() {
    static const std::vector<Identity> battery = build_battery();
    return battery;
}

const Identity& find_identity(const std::string& name) {
    for (const auto& id : identity_battery())
        if (id.name == name) return id;
    throw std::invalid_argument("unknown identity: " + name);
}

namespace {

bool residual_zero(const Identity& id, const std::vector<int>& symbol, const std::vector<int>& values) {
    IdentityContext ctx(symbol, values);
    return id.residual(ctx).is_zero();
}

std::string describe(const Identity& id, const std::vector<int>& symbol, const std::vector<int>& values) {
    std::ostringstream o;
    o << id.name << " at";
    for (size_t i = 0; i < id.vars.size(); ++i) {
        o << ' ' << id.vars[i] << '=';
        if (symbol[i] >= 0)
            o << "symbolic";
        else
            o << values[i];
    }
    return o.str();
}

}  // namespace

bool verify_identity(const Identity& id, const std::vector<std::vector<int>>& substitutions) {
    const std::vector<int> concrete(id.vars.size(), -1);
    for (const auto& sub : substitutions) {
        if (sub.size() != id.vars.size()) throw std::invalid_argument("substitution has the wrong number of values");
        try {
            if (!residual_zero(id, concrete, sub)) return false;
        } catch (const std::domain_error&) {
            return false;
        }
    }
    return true;
}

IdentityReport check_identity(const Identity& id, int random_substitutions, unsigned seed) {
    IdentityReport rep;
    rep.name = id.name;
    rep.requested = random_substitutions;
    const int nv = static_cast<int>(id.vars.size());
    const int free_vars = nv - id.length_vars;

    // Symbolic pass: the first three free variables are formal.
    std::vector<int> symbol(static_cast<size_t>(nv), -1);
    const int ring_vars[3] = {VQ1, VQ2, VK};
    for (int i = 0; i < std::min(3, free_vars); ++i) symbol[static_cast<size_t>(i)] = ring_vars[i];
    std::vector<int> lo(static_cast<size_t>(nv), 0), hi(static_cast<size_t>(nv), 0);
    for (int i = 0; i < nv; ++i) {
        if (symbol[static_cast<size_t>(i)] >= 0) continue;
        if (i >= free_vars) {
            lo[static_cast<size_t>(i)] = 1;
            hi[static_cast<size_t>(i)] = 6;
        } else {
            lo[static_cast<size_t>(i)] = -id.grid;
            hi[static_cast<size_t>(i)] = id.grid;
        }
    }
    std::vector<int> values = lo;
    rep.symbolic_ok = true;
    for (bool more = true; more;) {
        try {
            if (!residual_zero(id, symbol, values)) {
                rep.symbolic_ok = false;
                if (rep.failure.empty()) rep.failure = describe(id, symbol, values);
            }
            ++rep.symbolic_cases;
        } catch (const std::domain_error&) {
            // A grid value makes a denominator vanish.
        }
        more = false;
        for (int i = nv - 1; i >= 0; --i) {
            if (symbol[static_cast<size_t>(i)] >= 0) continue;
            if (values[static_cast<size_t>(i)] < hi[static_cast<size_t>(i)]) {
                ++values[static_cast<size_t>(i)];
                more = true;
                break;
            }
            values[static_cast<size_t>(i)] = lo[static_cast<size_t>(i)];
        }
    }
    if (rep.symbolic_cases == 0) rep.symbolic_ok = false;

    // Random integer substitutions.
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> free_dist(-12, 12), len_dist(1, 10);
    const std::vector<int> concrete(static_cast<size_t>(nv), -1);
    for (int attempts = 0; rep.substitutions < random_substitutions && attempts < 100 * random_substitutions;
         ++attempts) {
        std::vector<int> sub(static_cast<size_t>(nv));
        for (int i = 0; i < nv; ++i) sub[static_cast<size_t>(i)] = i >= free_vars ? len_dist(rng) : free_dist(rng);
        bool ok;
        try {
            ok = residual_zero(id, concrete, sub);
        } catch (const std::domain_error&) {
            continue;
        }
        ++rep.substitutions;
        if (ok)
            ++rep.substitutions_ok;
        else if (rep.failure.empty())
            rep.failure = describe(id, concrete, sub);
    }
    if (rep.substitutions < random_substitutions && rep.failure.empty())
        rep.failure = "only " + std::to_string(rep.substitutions) + " admissible substitutions found";
    return rep;
}

}  // namespace sblob
