#include "sblob/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace sblob {

namespace {

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// Long division a = q*b + r.
void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    trim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    const mpq_class& lead = b.back();
    while (a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        mpq_class c = a.back() / lead;
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    r = a;
}

}  // namespace

std::vector<mpq_class> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    Poly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        Poly q, r;
        poly_divmod(num, cyclotomic_polynomial(d), q, r);
        num = q;
    }
    return num;
}

// ---------------------------------------------------------------- Field

const Field* Field::rationals() {
    static const Field* q = [] {
        auto* f = new Field();
        f->order_ = 0;
        f->deg_ = 1;
        f->phi_ = {0, 1};
        return f;
    }();
    return q;
}

const Field* Field::cyclotomic(int order) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second.get();
    std::unique_ptr<Field> f(new Field());
    f->order_ = order;
    f->phi_ = cyclotomic_polynomial(order);
    f->deg_ = static_cast<int>(f->phi_.size()) - 1;
    f->zpow_.reserve(order);
    for (int k = 0; k < order; ++k) {
        Poly p(k + 1, 0);
        p[k] = 1;
        f->reduce(p);
        FElem e(f.get());
        for (size_t i = 0; i < p.size(); ++i) e.coeffs()[i] = p[i];
        f->zpow_.push_back(e);
    }
    const Field* out = f.get();
    cache.emplace(order, std::move(f));
    return out;
}

const FElem& Field::zeta_pow(long k) const {
    if (order_ == 0) throw std::logic_error("zeta_pow on the rational field");
    long r = k % order_;
    if (r < 0) r += order_;
    return zpow_[static_cast<size_t>(r)];
}

void Field::reduce(std::vector<mpq_class>& p) const {
    trim(p);
    const size_t d = static_cast<size_t>(deg_);
    while (p.size() > d) {
        size_t shift = p.size() - 1 - d;
        mpq_class c = p.back();
        for (size_t i = 0; i <= d; ++i) p[i + shift] -= c * phi_[i];
        trim(p);
    }
}

// ---------------------------------------------------------------- FElem

FElem::FElem(const Field* f) : f_(f), c_(static_cast<size_t>(f->degree())) {}

FElem::FElem(const Field* f, const mpq_class& r) : FElem(f) { c_[0] = r; }

bool FElem::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FElem::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

mpq_class FElem::rational_value() const {
    if (!is_rational()) throw std::logic_error("field element is not rational");
    return c_.empty() ? mpq_class(0) : c_[0];
}

FElem FElem::operator+(const FElem& o) const {
    FElem r(*this);
    r += o;
    return r;
}

FElem FElem::operator-(const FElem& o) const {
    FElem r(*this);
    r -= o;
    return r;
}

FElem& FElem::operator+=(const FElem& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

FElem& FElem::operator-=(const FElem& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

FElem FElem::operator-() const {
    FElem r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

FElem FElem::operator*(const FElem& o) const {
    if (c_.size() == 1) return FElem(f_, c_[0] * o.c_[0]);
    Poly p = poly_mul(c_, o.c_);
    f_->reduce(p);
    FElem r(f_);
    for (size_t i = 0; i < p.size(); ++i) r.c_[i] = p[i];
    return r;
}

FElem& FElem::operator*=(const FElem& o) {
    *this = *this * o;
    return *this;
}

FElem FElem::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    if (c_.size() == 1) return FElem(f_, 1 / c_[0]);
    // Extended Euclid on (a, phi): track s with s*a == r (mod phi).
    Poly r0 = f_->modulus(), r1 = c_;
    trim(r1);
    Poly s0, s1 = {1};
    while (!(r1.size() == 1)) {
        Poly q, r;
        poly_divmod(r0, r1, q, r);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        if (r1.empty()) throw std::domain_error("non-invertible element (modulus not irreducible)");
    }
    mpq_class scale = 1 / r1[0];
    for (auto& x : s1) x *= scale;
    f_->reduce(s1);
    FElem out(f_);
    for (size_t i = 0; i < s1.size(); ++i) out.c_[i] = s1[i];
    return out;
}

FElem FElem::pow(long e) const {
    FElem base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FElem acc(f_, 1);
    while (k) {
        if (k & 1) acc *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return acc;
}

bool FElem::operator==(const FElem& o) const { return c_ == o.c_; }

int FElem::compare(const FElem& o) const {
    for (size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::string FElem::str(const std::string& var) const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::string coef = c_[i].get_str();
        if (!out.empty()) {
            if (coef[0] == '-') {
                out += " - ";
                coef = coef.substr(1);
            } else {
                out += " + ";
            }
        }
        if (i == 0) {
            out += coef;
        } else {
            if (coef == "-1") out += "-";
            else if (coef != "1") out += coef + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace sblob
