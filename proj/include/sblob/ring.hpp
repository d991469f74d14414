#pragma once

#include "sblob/field.hpp"
#include "sblob/specialization.hpp"

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <string>

namespace sblob {

// Exponent vector over (s, Q1, Q2, K) with s = q^{1/2}.
struct Exp {
    std::array<int, 4> v{0, 0, 0, 0};

    int& operator[](int i) { return v[static_cast<size_t>(i)]; }
    int operator[](int i) const { return v[static_cast<size_t>(i)]; }
    bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0; }
    Exp operator+(const Exp& o) const;
    Exp operator-(const Exp& o) const;
    Exp operator-() const;
    Exp operator*(int k) const;
    // Sign of the first nonzero entry (0 for the zero vector).
    int lead_sign() const;
    auto operator<=>(const Exp&) const = default;

    static Exp unit(int i, int k = 1) {
        Exp e;
        e[i] = k;
        return e;
    }
};

enum Var { VS = 0, VQ1 = 1, VQ2 = 2, VK = 3 };

// Coefficient times exponent vector.
struct Mono {
    FElem c;
    Exp e;
    Mono operator*(const Mono& o) const { return {c * o.c, e + o.e}; }
    Mono inv() const { return {c.inv(), -e}; }
    Mono pow(int k) const;
};

class RingElem;

// The coefficient ring attached to a Specialization: Laurent polynomials in
// the variables left formal, over Q or Q(zeta_{4l}), localised at binomials.
// Rings are interned; pointers stay valid for the process lifetime.
class Ring {
public:
    static const Ring* get(const Specialization& s);
    static const Ring* generic() { return get(Specialization::generic()); }

    const Specialization& spec() const { return spec_; }
    const Field* field() const { return field_; }
    bool formal(int var) const { return formal_[static_cast<size_t>(var)]; }

    // Images of s, Q1, Q2 as monomials of this ring.
    const Mono& image(int var) const { return img_[static_cast<size_t>(var)]; }
    // kappa_LR as an element of this ring.
    const RingElem& kappa() const;

    FElem felem(const mpq_class& r) const { return FElem(field_, r); }

private:
    Ring() = default;
    Specialization spec_;
    const Field* field_ = nullptr;
    std::array<bool, 4> formal_{};
    std::array<Mono, 3> img_;
    std::unique_ptr<RingElem> kappa_;
};

// Denominator factor (1 - mu * x^d), normalised so that d has positive
// leading sign.
struct DenKey {
    Exp d;
    FElem mu;
    bool operator<(const DenKey& o) const {
        if (d != o.d) return d < o.d;
        return mu.compare(o.mu) < 0;
    }
};

// Exact element of a Ring: a Laurent polynomial numerator over a product of
// binomial denominator factors. Zero is the empty numerator with no
// denominator. Equality is exact; the representation of nonzero elements is
// not unique unless normalize() has been applied.
class RingElem {
public:
    RingElem() = default;
    explicit RingElem(const Ring* r) : r_(r) {}

    static RingElem zero(const Ring* r) { return RingElem(r); }
    static RingElem one(const Ring* r) { return constant(r, mpq_class(1)); }
    static RingElem constant(const Ring* r, const mpq_class& v);
    static RingElem constant(const Ring* r, const FElem& v);
    static RingElem mono(const Ring* r, const Mono& m);
    // s^k, Q1^k, Q2^k in this ring (using the images).
    static RingElem s_pow(const Ring* r, int k);
    static RingElem var(const Ring* r, int var, int k = 1);
    // Denominator-free element with the given terms; zero coefficients are
    // dropped.
    static RingElem from_terms(const Ring* r, std::map<Exp, FElem> terms);

    const Ring* ring() const { return r_; }
    const std::map<Exp, FElem>& num() const { return num_; }
    const std::map<DenKey, int>& den() const { return den_; }

    bool is_zero() const { return num_.empty(); }
    bool is_constant() const;
    FElem to_felem() const;
    // A single term with no denominator.
    bool is_monomial() const { return num_.size() == 1 && den_.empty(); }

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator/(const RingElem& o) const { return *this * o.inv(); }
    RingElem operator-() const;
    RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
    RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
    RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
    RingElem scale(const FElem& c) const;
    RingElem mul_mono(const Mono& m) const;
    RingElem pow(int k) const;

    // Inverse. Supported when the numerator has one or two terms; other
    // numerators throw InexactDivision.
    RingElem inv() const;
    // Divide by the binomial (1 - mu x^d).
    RingElem div_binomial(const FElem& mu, const Exp& d) const;

    bool operator==(const RingElem& o) const { return (*this - o).is_zero(); }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    // Cancels every denominator factor that divides the numerator exactly.
    RingElem normalize() const;
    // The product of all denominator factors, as a denominator-free element.
    RingElem denominator() const;
    // The numerator as a denominator-free element.
    RingElem numerator() const;
    // Exact quotient of denominator-free elements; throws InexactDivision.
    static RingElem exact_div(const RingElem& a, const RingElem& b);

    // Ring homomorphism into a target ring whose specialization refines this
    // one. Throws HookUndefined when a denominator factor maps to zero.
    RingElem map_to(const Ring* target) const;

    std::string str() const;
    static RingElem parse(const Ring* r, const std::string& text);

private:
    void add_term(const Exp& e, const FElem& c);
    void add_den(const FElem& mu, const Exp& d, int mult);
    static const Ring* common(const RingElem& a, const RingElem& b);
    // Multiply the numerator by (1 - mu x^d)^k.
    void mul_num_binomial(const FElem& mu, const Exp& d, int k);
    // Try to divide the numerator by (1 - mu x^d); returns false if inexact.
    bool try_div_num(const FElem& mu, const Exp& d);
    static std::string poly_str(const Ring* r, const std::map<Exp, FElem>& p);

    const Ring* r_ = nullptr;
    std::map<Exp, FElem> num_;
    std::map<DenKey, int> den_;
};

}  // namespace sblob
