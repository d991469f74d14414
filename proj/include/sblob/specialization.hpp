#pragma once

#include <gmpxx.h>

#include <string>

namespace sblob {

// How q is treated. Internally every ring works with s = q^{1/2}.
//   Formal: s is an indeterminate.
//   Root:   q is a primitive 2l-th root of unity; s = exp(2 pi i / 4l).
//   Value:  s is the given nonzero rational s0, so q = s0^2.
enum class QMode { Formal, Root, Value };

struct QSpec {
    QMode mode = QMode::Formal;
    int l = 0;
    mpq_class s0 = 1;
};

// How Q1 = q^{w1} (resp. Q2 = q^{w2}) is treated.
//   Formal:     indeterminate.
//   Fixed:      Q = c * q^w. Integer(w, sign) is Fixed(sign, w); a rational
//               value r of Q is Fixed(r, 0).
//   Linked:     Q2 = sign * Q1^{-1} q^{-m}, so that [w1 + w2 + m] = 0.
//   LinkedDiff: Q2 = sign * Q1 q^{m}, so that [w1 - w2 + m] = 0.
// Linked modes are only meaningful for w2.
enum class WMode { Formal, Fixed, Linked, LinkedDiff };

struct WSpec {
    WMode mode = WMode::Formal;
    mpq_class c = 1;
    int w = 0;
    int m = 0;
    int sign = 1;

    static WSpec formal() { return {}; }
    static WSpec integer(int w, int sign = 1);
    static WSpec fixed(const mpq_class& c, int w = 0);
    static WSpec linked(int m, int sign = 1);
    static WSpec linked_diff(int m, int sign = 1);
};

// How kappa_LR is treated.
//   Formal: kappa_LR = sign * K with K an indeterminate.
//   Theta:  the theta formula, with theta = theta2/2 and parity the parity
//           of n; multiplied by sign.
//   Value:  a fixed rational.
enum class KMode { Formal, Theta, Value };

struct KSpec {
    KMode mode = KMode::Formal;
    int sign = 1;
    int theta2 = 0;
    int parity = 0;
    mpq_class value = 0;

    static KSpec formal(int sign = 1);
    static KSpec theta(int theta2, int parity, int sign = 1);
    static KSpec constant(const mpq_class& v);
};

struct Specialization {
    QSpec q;
    WSpec w1;
    WSpec w2;
    KSpec kappa;

    static Specialization generic() { return {}; }
    static Specialization root(int l);

    // Canonical text key, also used for JSON and interning.
    std::string key() const;
    static Specialization parse_key(const std::string& key);

    // True when no indeterminate survives, so every element is a number.
    bool concrete() const;

    bool operator==(const Specialization& o) const { return key() == o.key(); }
};

enum class Swap { G, GPrime };
enum class Parametrisation { GMP1, GMP2, DN };

std::string to_string(Parametrisation p);
Parametrisation parse_parametrisation(const std::string& s);

// Parameter swap induced by globalisation: G sends w1 to -w1-1, G' sends w2
// to -w2-1. The kappa bookkeeping depends on the parametrisation, since
// E0 -> -E0 flips the sign of kappa_LR under GMP1 while GMP2 absorbs it.
Specialization swap_params(Swap tag, const Specialization& s,
                           Parametrisation p = Parametrisation::GMP2);

}  // namespace sblob
