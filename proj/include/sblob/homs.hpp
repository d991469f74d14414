#pragma once

#include "sblob/cells.hpp"
#include "sblob/qparam.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sblob {

enum class Family { F1, F2, F3, F4 };
std::string to_string(Family f);
Family parse_family(const std::string& s);

// A homomorphism instance. Base instances come from the constructive
// builders; globalised ones record the functors applied to a base instance.
struct HomSpec {
    Family family = Family::F1;
    int n = 0;
    int src = 0;
    int dst = 0;
    // Family 1/2 data: t = m + u, u > m >= 0.
    int t = 0, m = 0, u = 0;
    // Family 3: number of arcs c.
    int c = 0;
    // Family 4 (and the root of unity for families 1/2): q is a primitive
    // 2l-th root of unity.
    int l = 0;
    Specialization spec;
    Parametrisation param = Parametrisation::GMP2;
    // Family 3 normalisation: false gives M = [c]!, true the bracket LCM.
    bool integral_M = false;
    // Experiment: allow integral w1 in family 4.
    bool experimental_integral_w1 = false;
    // Reject specialisations that violate the family condition.
    bool enforce_condition = true;
    // Functors applied after the base construction, in order.
    std::vector<Swap> history;

    std::string condition() const;
    std::string str() const;
};

HomSpec family1_spec(int n, int m, int u, int l, int w1);
HomSpec family2_spec(int n, int m, int u, int l, int w2);
// [w1 + w2 - n + c + 1] = 0 imposed through w2 = Linked(c + 1 - n, sign).
HomSpec family3_spec(int n, int c, int sign, const QSpec& q = {});
HomSpec family4_spec(int n, int l);

// True iff the specialisation satisfies the family condition.
bool condition_holds(const HomSpec& h);

// Hooks. Vertices of an (n, t) half diagram are numbered 1..n on top from
// left to right and n+1..n+t at the bottom from right to left; a line is
// (a, a + 2b + 1).
struct HookLine {
    int a = 0;
    int b = 0;
    bool propagating = false;
    Word word = Word::E;  // read from the left (top) endpoint
};
std::vector<HookLine> hook_lines(const Diagram& d);

// Hook of one arc for the ordinary blob construction.
BracketProduct hook_a(const HookLine& g, int n, int t);
// h_a(D) = [(n+t)/2]! [(n-t)/2]! / prod h_a(e).
BracketProduct hook_a_product(const Diagram& d);
BracketProduct hook_b(const HookLine& g, int n, int t);
// prod over the lines of d of h_b.
BracketProduct hook_b_denominator(const Diagram& d);
BracketProduct hook_c(const HookLine& g, int n, int t, int l);
BracketProduct hook_c_denominator(const Diagram& d, int l);

// The constant M of the family-3 hook product for Sb_n(-n+2c).
BracketProduct compute_M(int n, int c, const Specialization& s, bool integral);
// [l]! [w1]_l! [w2]_l!
BracketProduct family4_normalisation(int l);
// Support characterisation of the family-4 image: exactly one of an undecorated arc
// (i, i+2l-1), a left-decorated arc ending at 2l, a right-decorated arc
// starting at n-2l+1.
bool family4_support(const Diagram& d, int l);

// A built homomorphism: modules, and the image of every source basis
// element (one image when the source is Sb_n(-n)).
class HomInstance {
public:
    explicit HomInstance(const HomSpec& h);

    const HomSpec& spec() const { return spec_; }
    const Ring* ring() const { return ring_; }
    const BlobAlgebra& algebra() const { return *alg_; }
    const CellModule& source() const { return *src_; }
    const CellModule& target() const { return *dst_; }
    const std::vector<CellVector>& images() const { return images_; }
    // Symbolic coefficient of each target basis element in the image of the
    // first source basis element (family 3/4, or family 1/2 before
    // composition).
    const std::vector<std::pair<int, BracketProduct>>& hooks() const { return hooks_; }

private:
    friend HomInstance build(const HomSpec& h);
    HomSpec spec_;
    const Ring* ring_;
    std::unique_ptr<BlobAlgebra> alg_;
    std::unique_ptr<CellModule> src_, dst_;
    std::vector<CellVector> images_;
    std::vector<std::pair<int, BracketProduct>> hooks_;
};

// Runs the constructive builder for a base instance. Throws
// ConditionUnsatisfied if enforce_condition is set and the condition fails,
// HookUndefined if a hook denominator vanishes.
HomInstance build(const HomSpec& h);

struct GeneratorCheck {
    std::string generator;
    bool pass = false;
    std::string residual;  // empty when pass
};
struct VerificationReport {
    std::vector<GeneratorCheck> checks;
    bool image_nonzero = false;
    bool pass() const;
};
// Applies every generator: for a trivial source the image must be killed;
// otherwise psi(g E) = g psi(E) must hold for every source basis element.
VerificationReport verify_annihilation(const HomInstance& h);

// e_i-coefficient of a target diagram D with an arc (i, i+1) assembled from
// the nipping decomposition: delta h(D) + sum_j h(D^j) + kappa h(D^*).
RingElem nipping_coefficient(const HomInstance& h, int target_index, int i);
// The same coefficient read off the raw action of e_i on the image.
RingElem raw_coefficient(const HomInstance& h, int target_index, int i);

struct HomSpaceResult {
    int dimension = 0;
    int src_dim = 0;
    int dst_dim = 0;
    // Each basis map as a dst_dim x src_dim matrix.
    std::vector<std::vector<std::vector<FElem>>> basis;
};
// Exact solve of T rho_src(g) = rho_dst(g) T over all generators. The
// specialization must be concrete; throws NonUnitParameter if one of the six
// parameters vanishes.
HomSpaceResult hom_space(int n, int src, int dst, const Specialization& s,
                         Parametrisation p = Parametrisation::GMP2);

// Applies G (labels negated) or G' (labels kept) once: n -> n + 1 and the
// parameters are updated by swap_params.
HomSpec globalize_spec(const HomSpec& h, Swap tag);

// Replaces every formal parameter by a rational value drawn from seed, so
// that hom_space can run. Root-of-unity q and integral or linked w data are
// kept.
Specialization concretize(const Specialization& s, unsigned seed);

}  // namespace sblob
