#pragma once

#include "sblob/ring.hpp"
#include "sblob/specialization.hpp"

#include <compare>
#include <string>
#include <vector>

namespace sblob {

// Formal quantum bracket [alpha + beta*w1 + gamma*w2]; alpha is stored
// doubled so that half-integers are exact.
struct BracketExpr {
    int alpha2 = 0;
    int beta = 0;
    int gamma = 0;

    static BracketExpr integer(int a) { return {2 * a, 0, 0}; }
    static BracketExpr half(int twice_alpha) { return {twice_alpha, 0, 0}; }
    static BracketExpr w1(int a = 0) { return {2 * a, 1, 0}; }
    static BracketExpr w2(int a = 0) { return {2 * a, 0, 1}; }

    bool integral() const { return beta == 0 && gamma == 0; }
    BracketExpr shifted(int da2) const { return {alpha2 + da2, beta, gamma}; }
    BracketExpr negated() const { return {-alpha2, -beta, -gamma}; }
    // Puts the first nonzero of (beta, gamma, alpha) positive; returns the
    // sign picked up via [-x] = -[x].
    int normalize();

    std::string str() const;
    static BracketExpr parse(const std::string& s);
    auto operator<=>(const BracketExpr&) const = default;
};

// [b] as an element of r: (X - X^{-1}) / (q - q^{-1}), X = q^alpha Q1^beta Q2^gamma.
RingElem bracket_eval(const BracketExpr& b, const Ring* r);
// 1/[b]; throws DivisionByZero if [b] vanishes in r.
RingElem bracket_inv(const BracketExpr& b, const Ring* r);
inline RingElem qint(int k, const Ring* r) { return bracket_eval(BracketExpr::integer(k), r); }

// sign * prod(num) / prod(den) * extra.
struct BracketProduct {
    int sign = 1;
    std::vector<BracketExpr> num;
    std::vector<BracketExpr> den;

    BracketProduct& operator*=(const BracketProduct& o);
    BracketProduct operator*(const BracketProduct& o) const;
    BracketProduct inverse() const;
    std::string str() const;
};

BracketProduct falling_factorial(const BracketExpr& b, int m);
// [m]! as a bracket product.
BracketProduct qfactorial(int m);

// Normalises every bracket with the rewrites valid under s ([l+x] = -[x],
// Linked eliminations, Fixed(+-1, w) substitution) and cancels equal
// brackets between numerator and denominator. Brackets that vanish at the
// root of unity ([k l]) are only sign-normalised, never shifted.
BracketProduct cancel(const BracketProduct& p, const Specialization& s);
// Single-bracket version of the rewrites in cancel; returns the sign.
int rewrite_bracket(BracketExpr& b, const Specialization& s);

// Exact value of p in r (cancel is applied first). The integral part is
// evaluated with generic q and then mapped, so the result agrees with
// evaluating generically and substituting. Throws HookUndefined when a
// surviving denominator vanishes.
RingElem evaluate(const BracketProduct& p, const Ring* r);

// The six parameters (delta, delta_L, delta_R, kappa_L, kappa_R, kappa_LR).
struct Params {
    RingElem delta, deltaL, deltaR, kappaL, kappaR, kappaLR;
    const RingElem& operator[](int i) const;
    static const char* name(int i);
};

Params parametrisation(Parametrisation tag, const Ring* r);
// Normalisation with e and f idempotent used for the blob Gram determinant
// formulas: delta = [2], delta_L = delta_R = 1, kappa_L = [w1]/[w1+1],
// kappa_R = [w2]/[w2+1].
Params gram_normalisation(const Ring* r);

}  // namespace sblob
