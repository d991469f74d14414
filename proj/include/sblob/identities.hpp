#pragma once

#include "sblob/ring.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace sblob {

// A linear form (c + sum a_i v_i) / 2 in up to five integer variables,
// stored doubled so that the half-integral arguments of the kappa formula
// are exact.
struct QLin {
    static constexpr int kMaxVars = 5;
    int c2 = 0;
    std::array<int, kMaxVars> a2{};

    static QLin var(int i);
    static QLin constant(int c) { return {2 * c, {}}; }
    QLin operator+(const QLin& o) const;
    QLin operator-(const QLin& o) const;
    QLin operator+(int c) const { return *this + constant(c); }
    QLin operator-(int c) const { return *this - constant(c); }
    QLin operator-() const;
    QLin operator*(int k) const;
    QLin half() const;  // x / 2; the doubled coefficients must be even
};

// Evaluation context for one identity check. A variable is either symbolic,
// realised as q^{v/2} by one of the formal generators Q1, Q2, K of the
// generic ring, or bound to an integer.
class IdentityContext {
public:
    IdentityContext(std::vector<int> symbol, std::vector<int> values);

    const Ring* ring() const { return ring_; }
    // [x] = (q^x - q^{-x}) / (q - q^{-1}).
    RingElem br(const QLin& x) const;
    RingElem br(int k) const { return br(QLin::constant(k)); }
    // 1/[x]; throws DivisionByZero when [x] vanishes.
    RingElem inv(const QLin& x) const;
    // Integer value of a bound variable; throws std::logic_error if symbolic.
    int value(int var) const;
    bool symbolic(int var) const { return symbol_[static_cast<size_t>(var)] >= 0; }

private:
    const Ring* ring_;
    std::vector<int> symbol_;  // ring variable (VQ1, VQ2, VK) or -1
    std::vector<int> values_;
};

struct Identity {
    std::string name;
    std::string statement;
    std::vector<std::string> vars;
    // Variables that count terms and must be bound to integers >= 1. They
    // follow the other variables in `vars`.
    int length_vars = 0;
    // Variables beyond the first three that are not length variables are
    // swept over [-grid, grid] during the symbolic check.
    int grid = 3;
    // Returns LHS - RHS.
    std::function<RingElem(const IdentityContext&)> residual;
};

// Product-to-sum, the recurrence solution, the four-term identity, the
// left/right decoration identities with their fraction forms, the three
// C_D vanishing identities with their intermediate steps, the final
// [w1+w2-l+1][F+1][G+1] reduction, and the kappa identity under w1 -> -w1-1.
const std::vector<Identity>& identity_battery();
const Identity& find_identity(const std::string& name);

// True iff the residual vanishes at every substitution (one integer per
// variable). Substitutions making a denominator vanish count as failures.
bool verify_identity(const Identity& id, const std::vector<std::vector<int>>& substitutions);

struct IdentityReport {
    std::string name;
    bool symbolic_ok = false;
    int symbolic_cases = 0;  // grid points of the non-symbolic variables
    int requested = 0;
    int substitutions = 0;
    int substitutions_ok = 0;
    std::string failure;  // first failing case, empty on success

    bool ok() const { return symbolic_ok && substitutions >= requested && substitutions_ok == substitutions; }
};

// Symbolic check (first three free variables formal, the others on the
// grid, length variables over 1..6) plus `random_substitutions` random
// integer points in [-12, 12] (length variables in [1, 10]), skipping points
// where a denominator vanishes.
IdentityReport check_identity(const Identity& id, int random_substitutions = 20, unsigned seed = 1);

}  // namespace sblob
