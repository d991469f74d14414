#include "sblob/ring.hpp"

#include "sblob/errors.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace sblob {

// ---------------------------------------------------------------- Exp, Mono

Exp Exp::operator+(const Exp& o) const {
    Exp r;
    for (int i = 0; i < 4; ++i) r[i] = v[i] + o[i];
    return r;
}

Exp Exp::operator-(const Exp& o) const {
    Exp r;
    for (int i = 0; i < 4; ++i) r[i] = v[i] - o[i];
    return r;
}

Exp Exp::operator-() const {
    Exp r;
    for (int i = 0; i < 4; ++i) r[i] = -v[i];
    return r;
}

Exp Exp::operator*(int k) const {
    Exp r;
    for (int i = 0; i < 4; ++i) r[i] = v[i] * k;
    return r;
}

int Exp::lead_sign() const {
    for (int x : v)
        if (x) return x > 0 ? 1 : -1;
    return 0;
}

Mono Mono::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    return {c.pow(k), e * k};
}

// ---------------------------------------------------------------- Ring

const Ring* Ring::get(const Specialization& s) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Ring>> cache;
    const std::string key = s.key();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();

    std::unique_ptr<Ring> r(new Ring());
    r->spec_ = s;
    if (s.q.mode == QMode::Root) {
        if (s.q.l < 1) throw std::invalid_argument("root order l must be positive");
        r->field_ = Field::cyclotomic(4 * s.q.l);
    } else {
        r->field_ = Field::rationals();
    }
    const Field* F = r->field_;
    r->formal_ = {s.q.mode == QMode::Formal, s.w1.mode == WMode::Formal,
                  s.w2.mode == WMode::Formal, s.kappa.mode == KMode::Formal};

    Mono& ms = r->img_[VS];
    switch (s.q.mode) {
        case QMode::Formal: ms = {FElem(F, 1), Exp::unit(VS)}; break;
        case QMode::Root: ms = {F->zeta_pow(1), Exp{}}; break;
        case QMode::Value:
            if (s.q.s0 == 0) throw std::invalid_argument("q^{1/2} value must be nonzero");
            ms = {FElem(F, s.q.s0), Exp{}};
            break;
    }
    Mono& m1 = r->img_[VQ1];
    switch (s.w1.mode) {
        case WMode::Formal: m1 = {FElem(F, 1), Exp::unit(VQ1)}; break;
        case WMode::Fixed: m1 = Mono{FElem(F, s.w1.c), Exp{}} * ms.pow(2 * s.w1.w); break;
        default: throw std::invalid_argument("linked modes apply to w2 only");
    }
    Mono& m2 = r->img_[VQ2];
    switch (s.w2.mode) {
        case WMode::Formal: m2 = {FElem(F, 1), Exp::unit(VQ2)}; break;
        case WMode::Fixed: m2 = Mono{FElem(F, s.w2.c), Exp{}} * ms.pow(2 * s.w2.w); break;
        case WMode::Linked:
            m2 = Mono{FElem(F, s.w2.sign), Exp{}} * m1.inv() * ms.pow(-2 * s.w2.m);
            break;
        case WMode::LinkedDiff:
            m2 = Mono{FElem(F, s.w2.sign), Exp{}} * m1 * ms.pow(2 * s.w2.m);
            break;
    }

    const Ring* rp = r.get();
    switch (s.kappa.mode) {
        case KMode::Formal:
            r->kappa_ = std::make_unique<RingElem>(
                RingElem::mono(rp, {FElem(F, s.kappa.sign), Exp::unit(VK)}));
            break;
        case KMode::Value:
            r->kappa_ = std::make_unique<RingElem>(RingElem::constant(rp, s.kappa.value));
            break;
        case KMode::Theta: {
            // even n: ( X + X^{-1} - q^theta - q^{-theta} ) / (q - q^{-1})^2, X = Q1 Q2 q
            // odd n: -( Y + Y^{-1} - q^theta - q^{-theta} ) / (q - q^{-1})^2, Y = Q1 / Q2
            Mono x = s.kappa.parity == 0 ? m1 * m2 * ms.pow(2) : m1 * m2.inv();
            RingElem num = RingElem::mono(rp, x) + RingElem::mono(rp, x.inv()) -
                           RingElem::mono(rp, ms.pow(s.kappa.theta2)) -
                           RingElem::mono(rp, ms.pow(-s.kappa.theta2));
            RingElem d = RingElem::mono(rp, ms.pow(2)) - RingElem::mono(rp, ms.pow(-2));
            RingElem k = num / (d * d);
            int sg = s.kappa.sign * (s.kappa.parity == 0 ? 1 : -1);
            if (sg < 0) k = -k;
            r->kappa_ = std::make_unique<RingElem>(k.normalize());
            break;
        }
    }
    cache.emplace(key, std::move(r));
    return rp;
}

const RingElem& Ring::kappa() const { return *kappa_; }

// ---------------------------------------------------------------- RingElem basics

RingElem RingElem::constant(const Ring* r, const mpq_class& v) {
    return constant(r, FElem(r->field(), v));
}

RingElem RingElem::constant(const Ring* r, const FElem& v) {
    RingElem x(r);
    if (!v.is_zero()) x.num_.emplace(Exp{}, v);
    return x;
}

RingElem RingElem::mono(const Ring* r, const Mono& m) {
    RingElem x(r);
    if (!m.c.is_zero()) x.num_.emplace(m.e, m.c);
    return x;
}

RingElem RingElem::from_terms(const Ring* r, std::map<Exp, FElem> terms) {
    std::erase_if(terms, [](const auto& t) { return t.second.is_zero(); });
    RingElem x(r);
    x.num_ = std::move(terms);
    return x;
}

RingElem RingElem::s_pow(const Ring* r, int k) { return mono(r, r->image(VS).pow(k)); }

RingElem RingElem::var(const Ring* r, int v, int k) {
    if (v == VK) {
        if (k < 0) return r->kappa().pow(-k).inv();
        return r->kappa().pow(k);
    }
    return mono(r, r->image(v).pow(k));
}

bool RingElem::is_constant() const {
    if (!den_.empty()) return false;
    return num_.empty() || (num_.size() == 1 && num_.begin()->first.is_zero());
}

FElem RingElem::to_felem() const {
    if (!is_constant()) {
        RingElem n = normalize();
        if (!n.is_constant()) throw std::logic_error("ring element is not a constant: " + str());
        return n.to_felem();
    }
    if (num_.empty()) return FElem(r_->field(), 0);
    return num_.begin()->second;
}

const Ring* RingElem::common(const RingElem& a, const RingElem& b) {
    if (a.r_ == b.r_) return a.r_;
    if (!a.r_) return b.r_;
    if (!b.r_) return a.r_;
    throw std::logic_error("ring mismatch: " + a.r_->spec().key() + " vs " + b.r_->spec().key());
}

void RingElem::add_term(const Exp& e, const FElem& c) {
    auto it = num_.find(e);
    if (it == num_.end()) {
        if (!c.is_zero()) num_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) num_.erase(it);
}

void RingElem::mul_num_binomial(const FElem& mu, const Exp& d, int k) {
    for (int i = 0; i < k; ++i) {
        std::map<Exp, FElem> old = num_;
        for (const auto& [e, c] : old) add_term(e + d, -(mu * c));
    }
}

void RingElem::add_den(const FElem& mu, const Exp& d, int mult) {
    if (mult == 0) return;
    if (mult < 0) throw std::logic_error("negative denominator multiplicity");
    const Field* F = r_->field();
    if (d.is_zero()) {
        FElem c = FElem(F, 1) - mu;
        if (c.is_zero()) throw DivisionByZero("division by zero constant");
        *this = scale(c.inv().pow(mult));
        return;
    }
    if (mu.is_zero()) return;
    if (d.lead_sign() < 0) {
        // 1 - mu x^d = -mu x^d (1 - mu^{-1} x^{-d})
        Mono pre{(-mu).inv(), -d};
        *this = mul_mono(pre.pow(mult));
        add_den(mu.inv(), -d, mult);
        return;
    }
    if (num_.empty()) return;
    den_[DenKey{d, mu}] += mult;
}

RingElem RingElem::scale(const FElem& c) const {
    RingElem x(r_);
    if (c.is_zero()) return x;
    x.den_ = den_;
    for (const auto& [e, v] : num_) x.num_.emplace(e, v * c);
    return x;
}

RingElem RingElem::mul_mono(const Mono& m) const {
    RingElem x(r_);
    if (m.c.is_zero()) return x;
    x.den_ = den_;
    for (const auto& [e, v] : num_) x.num_.emplace(e + m.e, v * m.c);
    return x;
}

RingElem RingElem::operator-() const {
    RingElem x(*this);
    for (auto& [e, v] : x.num_) v = -v;
    return x;
}

RingElem RingElem::operator+(const RingElem& o) const {
    const Ring* r = common(*this, o);
    if (o.is_zero()) {
        RingElem x(*this);
        x.r_ = r;
        return x;
    }
    if (is_zero()) {
        RingElem x(o);
        x.r_ = r;
        return x;
    }
    RingElem a(*this), b(o);
    a.r_ = b.r_ = r;
    std::map<DenKey, int> den = a.den_;
    for (const auto& [k, m] : b.den_) {
        int& cur = den[k];
        if (m > cur) cur = m;
    }
    for (const auto& [k, m] : den) {
        auto ia = a.den_.find(k);
        int ma = ia == a.den_.end() ? 0 : ia->second;
        auto ib = b.den_.find(k);
        int mb = ib == b.den_.end() ? 0 : ib->second;
        a.mul_num_binomial(k.mu, k.d, m - ma);
        b.mul_num_binomial(k.mu, k.d, m - mb);
    }
    for (const auto& [e, c] : b.num_) a.add_term(e, c);
    a.den_ = a.num_.empty() ? std::map<DenKey, int>{} : den;
    return a;
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator*(const RingElem& o) const {
    const Ring* r = common(*this, o);
    RingElem x(r);
    if (is_zero() || o.is_zero()) return x;
    for (const auto& [ea, ca] : num_)
        for (const auto& [eb, cb] : o.num_) x.add_term(ea + eb, ca * cb);
    if (x.num_.empty()) return x;
    x.den_ = den_;
    for (const auto& [k, m] : o.den_) x.den_[k] += m;
    return x;
}

RingElem RingElem::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    RingElem acc = one(r_);
    RingElem base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

RingElem RingElem::denominator() const {
    RingElem x = one(r_);
    for (const auto& [k, m] : den_) x.mul_num_binomial(k.mu, k.d, m);
    return x;
}

RingElem RingElem::numerator() const {
    RingElem x(r_);
    x.num_ = num_;
    return x;
}

RingElem RingElem::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    RingElem out = denominator();
    if (num_.size() == 1) {
        Mono m{num_.begin()->second, num_.begin()->first};
        return out.mul_mono(m.inv());
    }
    if (num_.size() == 2) {
        auto it = num_.begin();
        Mono a{it->second, it->first};
        ++it;
        Mono b{it->second, it->first};
        // a + b = a (1 + (b/a) x^{eb-ea})
        out = out.mul_mono(a.inv());
        return out.div_binomial(-(b.c * a.c.inv()), b.e - a.e);
    }
    throw InexactDivision("cannot invert a numerator with " + std::to_string(num_.size()) +
                          " terms: " + str());
}

RingElem RingElem::div_binomial(const FElem& mu, const Exp& d) const {
    RingElem x(*this);
    x.add_den(mu, d, 1);
    return x;
}

// ---------------------------------------------------------------- division

bool RingElem::try_div_num(const FElem& mu, const Exp& d) {
    int axis = 0;
    while (d[axis] == 0) ++axis;
    const int step = d[axis];
    // Group terms by cosets of the lattice Z*d; within a coset the numerator
    // is a Laurent polynomial in y = x^d to be divided by (1 - mu y).
    std::map<Exp, std::map<int, FElem>> cosets;
    for (const auto& [e, c] : num_) {
        int k = e[axis] >= 0 ? e[axis] / step : -((-e[axis] + step - 1) / step);
        cosets[e - d * k].emplace(k, c);
    }
    std::map<Exp, FElem> out;
    const FElem zero(r_->field());
    for (const auto& [rep, terms] : cosets) {
        int kmin = terms.begin()->first, kmax = terms.rbegin()->first;
        FElem prev = zero;
        for (int k = kmin; k <= kmax; ++k) {
            auto it = terms.find(k);
            FElem cur = mu * prev;
            if (it != terms.end()) cur += it->second;
            if (k == kmax) {
                if (!cur.is_zero()) return false;
            } else if (!cur.is_zero()) {
                out.emplace(rep + d * k, cur);
            }
            prev = cur;
        }
    }
    num_ = std::move(out);
    return true;
}

RingElem RingElem::normalize() const {
    RingElem x(*this);
    if (x.num_.empty()) {
        x.den_.clear();
        return x;
    }
    for (auto it = x.den_.begin(); it != x.den_.end();) {
        while (it->second > 0 && x.try_div_num(it->first.mu, it->first.d)) --it->second;
        if (it->second == 0) it = x.den_.erase(it);
        else ++it;
    }
    return x;
}

RingElem RingElem::exact_div(const RingElem& a, const RingElem& b) {
    if (!a.den_.empty() || !b.den_.empty())
        throw std::logic_error("exact_div expects denominator-free operands");
    if (b.is_zero()) throw DivisionByZero("exact_div by zero");
    const Ring* r = common(a, b);
    RingElem q(r);
    if (a.is_zero()) return q;
    Exp amin, amax, bmin, bmax;
    bool first = true;
    for (const auto& [e, c] : a.num_) {
        for (int i = 0; i < 4; ++i) {
            if (first || e[i] < amin[i]) amin[i] = e[i];
            if (first || e[i] > amax[i]) amax[i] = e[i];
        }
        first = false;
    }
    first = true;
    for (const auto& [e, c] : b.num_) {
        for (int i = 0; i < 4; ++i) {
            if (first || e[i] < bmin[i]) bmin[i] = e[i];
            if (first || e[i] > bmax[i]) bmax[i] = e[i];
        }
        first = false;
    }
    const Exp lo = amin - bmin, hi = amax - bmax;
    const Exp blead = b.num_.rbegin()->first;
    const FElem binv = b.num_.rbegin()->second.inv();
    RingElem rem(a);
    rem.r_ = r;
    while (!rem.num_.empty()) {
        const auto& [ea, ca] = *rem.num_.rbegin();
        Exp t = ea - blead;
        for (int i = 0; i < 4; ++i)
            if (t[i] < lo[i] || t[i] > hi[i]) throw InexactDivision("polynomial division is not exact");
        Mono m{ca * binv, t};
        q.add_term(m.e, m.c);
        RingElem sub = b.mul_mono(m);
        for (const auto& [e, c] : sub.num_) rem.add_term(e, -c);
    }
    return q;
}

// ---------------------------------------------------------------- map_to

RingElem RingElem::map_to(const Ring* target) const {
    if (r_ == target || !r_) {
        RingElem x(*this);
        x.r_ = target;
        return x;
    }
    const Field* src = r_->field();
    const Field* dst = target->field();
    if (src != dst && !src->is_rationals())
        throw std::logic_error("map_to needs a rational or identical coefficient field");
    auto coef = [&](const FElem& c) {
        return src == dst ? c : FElem(dst, c.rational_value());
    };
    auto mono_image = [&](const FElem& c, const Exp& e) {
        Mono m{coef(c), Exp{}};
        for (int v = 0; v < 3; ++v)
            if (e[v]) m = m * target->image(v).pow(e[v]);
        return m;
    };
    const int ksign = r_->spec().kappa.sign;
    std::map<int, RingElem> by_k;
    for (const auto& [e, c] : num_) {
        auto it = by_k.try_emplace(e[VK], RingElem(target)).first;
        it->second = it->second + RingElem::mono(target, mono_image(c, e));
    }
    RingElem out(target);
    for (auto& [k, part] : by_k) {
        if (k == 0) {
            out += part;
            continue;
        }
        // K_src = sign_src * kappa
        RingElem kap = target->kappa();
        if (ksign < 0) kap = -kap;
        out += part * kap.pow(k);
    }
    for (const auto& [key, m] : den_) {
        if (key.d[VK] != 0) throw std::logic_error("kappa in a denominator is not supported by map_to");
        Mono img = mono_image(key.mu, key.d);
        if (img.e.is_zero()) {
            FElem c = FElem(dst, 1) - img.c;
            if (c.is_zero()) throw HookUndefined("denominator vanishes under " + target->spec().key());
            out = out.scale(c.inv().pow(m));
        } else {
            for (int i = 0; i < m; ++i) out = out.div_binomial(img.c, img.e);
        }
    }
    return out;
}

// ---------------------------------------------------------------- printing

namespace {

std::string q_exp_str(int s_exp) {
    if (s_exp % 2 == 0) {
        int k = s_exp / 2;
        if (k == 1) return "q";
        return "q^" + std::to_string(k);
    }
    return "q^(" + std::to_string(s_exp) + "/2)";
}

std::string var_str(const char* name, int k) {
    if (k == 1) return name;
    return std::string(name) + "^" + std::to_string(k);
}

std::string term_str(const mpq_class& c, int s_exp, const Exp& e) {
    std::string out = c.get_str();
    if (s_exp) out += "*" + q_exp_str(s_exp);
    if (e[VQ1]) out += "*" + var_str("Q1", e[VQ1]);
    if (e[VQ2]) out += "*" + var_str("Q2", e[VQ2]);
    if (e[VK]) out += "*" + var_str("K", e[VK]);
    return out;
}

}  // namespace

std::string RingElem::poly_str(const Ring* r, const std::map<Exp, FElem>& p) {
    std::vector<std::string> terms;
    const bool cyc = !r->field()->is_rationals();
    for (const auto& [e, c] : p) {
        const auto& cs = c.coeffs();
        for (size_t j = 0; j < cs.size(); ++j) {
            if (cs[j] == 0) continue;
            int sexp = e[VS] + (cyc ? static_cast<int>(j) : 0);
            terms.push_back(term_str(cs[j], sexp, e));
        }
    }
    if (terms.empty()) return "0";
    std::string out = terms[0];
    for (size_t i = 1; i < terms.size(); ++i) {
        if (terms[i][0] == '-') out += " - " + terms[i].substr(1);
        else out += " + " + terms[i];
    }
    return out;
}

std::string RingElem::str() const {
    if (num_.empty()) return "0";
    std::string n = poly_str(r_, num_);
    if (den_.empty()) return n;
    std::string out = num_.size() == 1 && n.find(' ') == std::string::npos ? n : "(" + n + ")";
    for (const auto& [k, m] : den_) {
        std::map<Exp, FElem> b;
        b.emplace(Exp{}, FElem(r_->field(), 1));
        b.emplace(k.d, -k.mu);
        out += "*(" + poly_str(r_, b) + ")^-" + std::to_string(m);
    }
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(const Ring* r, const std::string& s) : r_(r), s_(s) {}

    RingElem run() {
        RingElem x = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return x;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("ring element parse error at offset " + std::to_string(pos_) + ": " + why +
                         " in '" + s_ + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    // Exponent as a rational num/den.
    std::pair<long, long> exponent() {
        if (eat('(')) {
            bool neg = eat('-');
            long a = integer();
            long b = 1;
            if (eat('/')) b = integer();
            if (!eat(')')) fail("expected ')' in exponent");
            return {neg ? -a : a, b};
        }
        bool neg = eat('-');
        long a = integer();
        return {neg ? -a : a, 1};
    }

    RingElem expr() {
        RingElem x = term();
        for (;;) {
            if (eat('+')) x = x + term();
            else if (eat('-')) x = x - term();
            else return x;
        }
    }

    RingElem term() {
        RingElem x = unary();
        for (;;) {
            if (eat('*')) x = x * unary();
            else if (eat('/')) x = x / unary();
            else return x;
        }
    }

    RingElem unary() {
        if (eat('-')) return -unary();
        return power();
    }

    RingElem power() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == 'q') {
            ++pos_;
            long num = 1, den = 1;
            if (eat('^')) std::tie(num, den) = exponent();
            long twice = 2 * num;
            if (twice % den != 0) fail("q exponent must be a multiple of 1/2");
            return RingElem::s_pow(r_, static_cast<int>(twice / den));
        }
        RingElem base(r_);
        if (c == '(') {
            ++pos_;
            base = expr();
            if (!eat(')')) fail("expected ')'");
        } else if (c == 'Q' || c == 'K') {
            int v = VK;
            ++pos_;
            if (c == 'Q') {
                if (eat('1')) v = VQ1;
                else if (eat('2')) v = VQ2;
                else fail("expected Q1 or Q2");
            }
            base = v == VK ? (r_->spec().kappa.sign < 0 ? -r_->kappa() : r_->kappa())
                           : RingElem::var(r_, v);
            if (v == VK && r_->spec().kappa.mode != KMode::Formal)
                fail("K is not an indeterminate under " + r_->spec().key());
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            base = RingElem::constant(r_, mpq_class(mpz_class(s_.substr(start, pos_ - start))));
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        if (eat('^')) {
            auto [num, den] = exponent();
            if (den != 1) fail("only q admits fractional exponents");
            return base.pow(static_cast<int>(num));
        }
        return base;
    }

    const Ring* r_;
    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

RingElem RingElem::parse(const Ring* r, const std::string& text) { return Parser(r, text).run(); }

}  // namespace sblob
