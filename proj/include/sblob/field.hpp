#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sblob {

class Field;

// Element of a number field Q[z]/(phi(z)), stored densely in the power basis.
// The rationals are the degree-one case.
class FElem {
public:
    FElem() = default;
    explicit FElem(const Field* f);
    FElem(const Field* f, const mpq_class& r);

    const Field* field() const { return f_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    std::vector<mpq_class>& coeffs() { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    mpq_class rational_value() const;

    FElem operator+(const FElem& o) const;
    FElem operator-(const FElem& o) const;
    FElem operator*(const FElem& o) const;
    FElem operator-() const;
    FElem& operator+=(const FElem& o);
    FElem& operator-=(const FElem& o);
    FElem& operator*=(const FElem& o);
    FElem inv() const;
    FElem pow(long e) const;

    bool operator==(const FElem& o) const;
    bool operator!=(const FElem& o) const { return !(*this == o); }
    // Total order used only for deterministic container keys.
    int compare(const FElem& o) const;

    // Prints c0 + c1*<var> + c2*<var>^2 ...; var is the generator name.
    std::string str(const std::string& var = "z") const;

private:
    const Field* f_ = nullptr;
    std::vector<mpq_class> c_;
};

// Interned number fields. Pointers returned by the factories stay valid for
// the lifetime of the process.
class Field {
public:
    static const Field* rationals();
    // Q(zeta_order) presented by the cyclotomic polynomial Phi_order.
    static const Field* cyclotomic(int order);

    int degree() const { return deg_; }
    int order() const { return order_; }
    bool is_rationals() const { return order_ == 0; }

    // Reduced representative of zeta^k, k any integer (cyclotomic only).
    const FElem& zeta_pow(long k) const;
    const std::vector<mpq_class>& modulus() const { return phi_; }

    void reduce(std::vector<mpq_class>& poly) const;

private:
    Field() = default;
    int order_ = 0;
    int deg_ = 1;
    std::vector<mpq_class> phi_;  // monic, size deg_+1, low degree first
    std::vector<FElem> zpow_;
};

// Cyclotomic polynomial Phi_n with integer coefficients, low degree first.
std::vector<mpq_class> cyclotomic_polynomial(int n);

}  // namespace sblob
