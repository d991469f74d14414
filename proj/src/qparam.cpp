#include "sblob/qparam.hpp"

#include "sblob/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <tuple>

namespace sblob {

// ---------------------------------------------------------------- BracketExpr

int BracketExpr::normalize() {
    int lead = beta ? beta : gamma ? gamma : alpha2;
    if (lead < 0) {
        *this = negated();
        return -1;
    }
    return 1;
}

std::string BracketExpr::str() const {
    std::string out;
    auto append = [&out](long coef, const std::string& sym) {
        if (coef == 0) return;
        std::string mag = sym.empty() ? std::to_string(std::labs(coef))
                          : std::labs(coef) == 1 ? sym
                                                 : std::to_string(std::labs(coef)) + "*" + sym;
        if (out.empty()) out = coef < 0 ? "-" + mag : mag;
        else out += (coef < 0 ? " - " : " + ") + mag;
    };
    if (alpha2 % 2 == 0) {
        append(alpha2 / 2, "");
    } else {
        std::string frac = std::to_string(std::abs(alpha2)) + "/2";
        out = alpha2 < 0 ? "-" + frac : frac;
    }
    append(beta, "w1");
    append(gamma, "w2");
    return "[" + (out.empty() ? std::string("0") : out) + "]";
}

BracketExpr BracketExpr::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("bracket must look like [alpha + beta*w1 + gamma*w2]: " + text);
    s = s.substr(1, s.size() - 2);
    BracketExpr b;
    size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (any) {
            throw ParseError("expected '+' or '-' in bracket: " + text);
        }
        long coef = 1;
        long den = 1;
        bool has_num = false;
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) {
            coef = std::stol(s.substr(start, i - start));
            has_num = true;
        }
        if (has_num && i < s.size() && s[i] == '/') {
            ++i;
            size_t ds = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (ds == i) throw ParseError("bad fraction in bracket: " + text);
            den = std::stol(s.substr(ds, i - ds));
            if (den != 1 && den != 2) throw ParseError("bracket constants must lie in (1/2)Z: " + text);
        }
        if (has_num && i < s.size() && s[i] == '*') ++i;
        if (s.compare(i, 2, "w1") == 0) {
            if (den != 1) throw ParseError("w coefficients must be integers: " + text);
            b.beta += sign * static_cast<int>(coef);
            i += 2;
        } else if (s.compare(i, 2, "w2") == 0) {
            if (den != 1) throw ParseError("w coefficients must be integers: " + text);
            b.gamma += sign * static_cast<int>(coef);
            i += 2;
        } else {
            if (!has_num) throw ParseError("malformed bracket term: " + text);
            b.alpha2 += sign * static_cast<int>(den == 2 ? coef : 2 * coef);
        }
        any = true;
    }
    return b;
}

// ---------------------------------------------------------------- evaluation

namespace {

Mono bracket_x(const BracketExpr& b, const Ring* r) {
    Mono x{FElem(r->field(), 1), Exp{}};
    if (b.alpha2) x = x * r->image(VS).pow(b.alpha2);
    if (b.beta) x = x * r->image(VQ1).pow(b.beta);
    if (b.gamma) x = x * r->image(VQ2).pow(b.gamma);
    return x;
}

using CacheKey = std::tuple<const Ring*, int, int, int, bool>;

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<CacheKey, RingElem>& cache() {
    static std::map<CacheKey, RingElem> c;
    return c;
}

RingElem compute_bracket(const BracketExpr& b, const Ring* r, bool inverse) {
    const Mono x = bracket_x(b, r);
    const Mono s2 = r->image(VS).pow(2);
    // Fast path: integral bracket with q formal is a Laurent polynomial.
    if (!inverse && x.e[VQ1] == 0 && x.e[VQ2] == 0 && r->formal(VS) && b.integral() &&
        b.alpha2 % 2 == 0) {
        int k = b.alpha2 / 2;
        RingElem out(r);
        int sg = k < 0 ? -1 : 1;
        int m = std::abs(k);
        for (int j = 0; j < m; ++j)
            out += RingElem::mono(r, {FElem(r->field(), sg), Exp::unit(VS, 2 * (m - 1 - 2 * j))});
        return out;
    }
    RingElem nx = RingElem::mono(r, x) - RingElem::mono(r, x.inv());
    RingElem nq = RingElem::mono(r, s2) - RingElem::mono(r, s2.inv());
    if (!inverse) return (nx * nq.inv()).normalize();
    return (nq * nx.inv()).normalize();
}

RingElem cached_bracket(const BracketExpr& b, const Ring* r, bool inverse) {
    CacheKey key{r, b.alpha2, b.beta, b.gamma, inverse};
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    RingElem v = compute_bracket(b, r, inverse);
    std::lock_guard<std::mutex> lock(cache_mutex());
    cache().emplace(key, v);
    return v;
}

}  // namespace

RingElem bracket_eval(const BracketExpr& b, const Ring* r) { return cached_bracket(b, r, false); }

RingElem bracket_inv(const BracketExpr& b, const Ring* r) { return cached_bracket(b, r, true); }

// ---------------------------------------------------------------- products

BracketProduct& BracketProduct::operator*=(const BracketProduct& o) {
    sign *= o.sign;
    num.insert(num.end(), o.num.begin(), o.num.end());
    den.insert(den.end(), o.den.begin(), o.den.end());
    return *this;
}

BracketProduct BracketProduct::operator*(const BracketProduct& o) const {
    BracketProduct p(*this);
    p *= o;
    return p;
}

BracketProduct BracketProduct::inverse() const {
    BracketProduct p;
    p.sign = sign;
    p.num = den;
    p.den = num;
    return p;
}

std::string BracketProduct::str() const {
    std::string out = sign < 0 ? "-" : "";
    if (num.empty()) out += "1";
    for (const auto& b : num) out += b.str();
    if (!den.empty()) {
        out += "/(";
        for (const auto& b : den) out += b.str();
        out += ")";
    }
    return out;
}

BracketProduct falling_factorial(const BracketExpr& b, int m) {
    BracketProduct p;
    for (int i = 0; i < m; ++i) p.num.push_back(b.shifted(-2 * i));
    return p;
}

BracketProduct qfactorial(int m) {
    BracketProduct p;
    for (int i = 1; i <= m; ++i) p.num.push_back(BracketExpr::integer(i));
    return p;
}

int rewrite_bracket(BracketExpr& b, const Specialization& s) {
    int sign = 1;
    // Eliminate w2 through the linked relations.
    if (b.gamma != 0 && (s.w2.mode == WMode::Linked || s.w2.mode == WMode::LinkedDiff)) {
        const int g = b.gamma;
        if (s.w2.sign < 0 && (std::abs(g) % 2 == 1)) sign = -sign;
        if (s.w2.mode == WMode::Linked) {
            // Q2 = sign Q1^{-1} q^{-m}
            b.beta -= g;
            b.alpha2 -= 2 * g * s.w2.m;
        } else {
            // Q2 = sign Q1 q^{m}
            b.beta += g;
            b.alpha2 += 2 * g * s.w2.m;
        }
        b.gamma = 0;
    }
    auto subst_fixed = [&](int& coef, const WSpec& w) {
        if (coef == 0 || w.mode != WMode::Fixed) return;
        if (w.c != 1 && w.c != -1) return;
        if (w.c == -1 && (std::abs(coef) % 2 == 1)) sign = -sign;
        b.alpha2 += 2 * coef * w.w;
        coef = 0;
    };
    subst_fixed(b.beta, s.w1);
    subst_fixed(b.gamma, s.w2);
    sign *= b.normalize();
    if (s.q.mode == QMode::Root) {
        const int per = 2 * s.q.l;  // l in doubled units
        const bool vanishing = b.integral() && b.alpha2 % per == 0;
        if (!vanishing) {
            int k = b.alpha2 >= 0 ? b.alpha2 / per : -((-b.alpha2 + per - 1) / per);
            b.alpha2 -= k * per;
            if (k % 2 != 0) sign = -sign;
            if (b.integral() && b.alpha2 > s.q.l) b.alpha2 = per - b.alpha2;  // [l - y] = [y]
        }
        sign *= b.normalize();
    }
    return sign;
}

BracketProduct cancel(const BracketProduct& p, const Specialization& s) {
    BracketProduct out;
    out.sign = p.sign;
    std::map<BracketExpr, int> count;
    for (auto b : p.num) {
        out.sign *= rewrite_bracket(b, s);
        ++count[b];
    }
    for (auto b : p.den) {
        out.sign *= rewrite_bracket(b, s);
        --count[b];
    }
    for (const auto& [b, c] : count) {
        for (int i = 0; i < c; ++i) out.num.push_back(b);
        for (int i = 0; i < -c; ++i) out.den.push_back(b);
    }
    return out;
}

RingElem evaluate(const BracketProduct& p, const Ring* r) {
    const BracketProduct c = cancel(p, r->spec());
    for (const auto& b : c.num)
        if (b.integral() && b.alpha2 == 0) return RingElem::zero(r);
    const Ring* gen = Ring::generic();
    RingElem integral = RingElem::one(gen);
    RingElem formal = RingElem::constant(r, mpq_class(c.sign));
    bool has_integral = false;
    try {
        for (const auto& b : c.num) {
            if (b.integral()) {
                integral *= bracket_eval(b, gen);
                has_integral = true;
            } else {
                formal *= bracket_eval(b, r);
            }
        }
        for (const auto& b : c.den) {
            if (b.integral()) {
                integral *= bracket_inv(b, gen);
                has_integral = true;
            } else {
                formal *= bracket_inv(b, r);
            }
        }
    } catch (const DivisionByZero&) {
        throw HookUndefined("denominator of " + c.str() + " vanishes under " + r->spec().key());
    }
    if (!has_integral) return formal.normalize();
    RingElem mapped = integral.normalize().map_to(r);
    return (formal * mapped).normalize();
}

// ---------------------------------------------------------------- parameters

const RingElem& Params::operator[](int i) const {
    switch (i) {
        case 0: return delta;
        case 1: return deltaL;
        case 2: return deltaR;
        case 3: return kappaL;
        case 4: return kappaR;
        default: return kappaLR;
    }
}

const char* Params::name(int i) {
    static const char* names[] = {"delta", "delta_L", "delta_R", "kappa_L", "kappa_R", "kappa_LR"};
    return names[i];
}

Params parametrisation(Parametrisation tag, const Ring* r) {
    const RingElem two = qint(2, r);
    const RingElem w1 = bracket_eval(BracketExpr::w1(0), r);
    const RingElem w2 = bracket_eval(BracketExpr::w2(0), r);
    const RingElem w1p = bracket_eval(BracketExpr::w1(1), r);
    const RingElem w2p = bracket_eval(BracketExpr::w2(1), r);
    switch (tag) {
        case Parametrisation::GMP1: return {two, w1, w2, w1p, w2p, r->kappa()};
        case Parametrisation::GMP2: return {-two, -w1, -w2, w1p, w2p, r->kappa()};
        case Parametrisation::DN: {
            RingElem one = RingElem::one(r);
            return {two, (w1 / w1p).normalize(), (w2 / w2p).normalize(), one, one, r->kappa()};
        }
    }
    throw std::logic_error("unknown parametrisation");
}

Params gram_normalisation(const Ring* r) {
    const RingElem one = RingElem::one(r);
    BracketProduct kl, kr;
    kl.num = {BracketExpr::w1(0)};
    kl.den = {BracketExpr::w1(1)};
    kr.num = {BracketExpr::w2(0)};
    kr.den = {BracketExpr::w2(1)};
    return {qint(2, r), one, one, evaluate(kl, r), evaluate(kr, r), r->kappa()};
}

}  // namespace sblob
