#pragma once

#include "sblob/qparam.hpp"
#include "sblob/ring.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sblob {

// Reduced decoration word along a line, read in a chosen direction.
enum class Word : std::uint8_t { E = 0, L, R, LR, RL };

std::string word_str(Word w);
Word word_reverse(Word w);
// Exchange L and R (left-right mirror).
Word word_swap(Word w);
Word parse_word(const std::string& s);

// Monomial in the six parameters (delta, delta_L, delta_R, kappa_L, kappa_R,
// kappa_LR), same order as Params.
struct ParamMono {
    std::array<int, 6> e{0, 0, 0, 0, 0, 0};

    ParamMono operator*(const ParamMono& o) const;
    ParamMono& operator*=(const ParamMono& o);
    bool is_one() const;
    std::string str() const;
    auto operator<=>(const ParamMono&) const = default;

    static ParamMono unit(int i, int k = 1) {
        ParamMono m;
        m.e[static_cast<size_t>(i)] = k;
        return m;
    }
};

enum ParamIndex { P_DELTA = 0, P_DL, P_DR, P_KL, P_KR, P_KLR };

// Reduces a linear word over {L, R}: LL -> delta_L L, RR -> delta_R R,
// LRL -> kappa_LR L, RLR -> kappa_LR R.
std::pair<Word, ParamMono> reduce_line(const std::string& letters);
// Evaluates a closed loop carrying the given cyclic word.
ParamMono reduce_loop(const std::string& letters);

// Planar decorated (nt, nb)-diagram. Vertex ids: top i -> i (0-based, left
// to right), bottom j -> nt + j. word_from(v) is the decoration word read
// along the line starting at v; the partner vertex stores the reverse.
class Diagram {
public:
    Diagram() = default;
    Diagram(int nt, int nb);

    static Diagram identity(int n);

    int n_top() const { return nt_; }
    int n_bot() const { return nb_; }
    int size() const { return nt_ + nb_; }
    int top(int i) const { return i; }
    int bot(int j) const { return nt_ + j; }
    bool is_top(int v) const { return v < nt_; }
    int pos(int v) const { return v < nt_ ? v : v - nt_; }

    int partner(int v) const { return partner_[static_cast<size_t>(v)]; }
    Word word_from(int v) const { return word_[static_cast<size_t>(v)]; }
    void connect(int u, int v, Word from_u);
    void set_word(int u, Word from_u);

    bool propagating(int v) const { return is_top(v) != is_top(partner(v)); }
    // Propagating lines as (top index, bottom index), left to right.
    std::vector<std::pair<int, int>> lines() const;
    int num_lines() const;
    int num_undecorated_lines() const;
    // Word of a propagating line read from top to bottom.
    Word line_word(const std::pair<int, int>& ln) const { return word_from(top(ln.first)); }
    bool leftmost_line_has_left_blob() const;
    // Cell label of an (n, n)- or (n, p)-diagram: 0 if no undecorated
    // propagating line, otherwise +-#_u with + iff the leftmost line has L.
    int label() const;

    // Exposure of the line through vertex v to the left (0) or right (1)
    // wall.
    bool exposed(int v, int side) const;

    Diagram flip() const;
    Diagram reflect() const;
    bool valid(std::string* why = nullptr) const;

    std::string str() const;
    static Diagram parse(const std::string& text);

    auto operator<=>(const Diagram&) const = default;
    bool operator==(const Diagram&) const = default;

private:
    int nt_ = 0;
    int nb_ = 0;
    std::vector<int> partner_;
    std::vector<Word> word_;
};

struct Composite {
    Diagram d;
    ParamMono mono;
};

// Stacks `upper` on top of `lower` (upper.n_bot == lower.n_top) and reduces
// with the straightening relations and the topological relation.
Composite compose(const Diagram& upper, const Diagram& lower);

// Undecorated planar (n, p) half-diagram shapes: n top vertices, p lines.
std::vector<Diagram> half_shapes(int n, int p);
// All decorated diagrams with the given undecorated shape that satisfy the
// exposure and reducedness rules.
std::vector<Diagram> decorate(const Diagram& shape);

// Generators in the order e, e_1, ..., e_{n-1}, f.
std::vector<Diagram> generator_diagrams(int n);
std::vector<Diagram> enumerate_basis(int n);

// #_u(d) and whether the leftmost propagating line has a left blob.
struct DiagramStats {
    int undecorated = 0;
    bool leftmost_blob = false;
};
DiagramStats stats(const Diagram& d);

// Context fixing n, the coefficient ring and the parameter values.
class BlobAlgebra {
public:
    BlobAlgebra(int n, const Ring* ring, const Params& params);
    BlobAlgebra(int n, const Ring* ring, Parametrisation tag);

    int n() const { return n_; }
    const Ring* ring() const { return ring_; }
    const Params& params() const { return params_; }
    RingElem scalar(const ParamMono& m) const;

private:
    int n_;
    const Ring* ring_;
    Params params_;
    mutable std::map<std::pair<int, int>, RingElem> pow_cache_;
};

class AlgebraElem {
public:
    explicit AlgebraElem(const BlobAlgebra* a) : alg_(a) {}
    AlgebraElem(const BlobAlgebra* a, const Diagram& d);
    AlgebraElem(const BlobAlgebra* a, const Diagram& d, const RingElem& c);

    const BlobAlgebra* algebra() const { return alg_; }
    const std::map<Diagram, RingElem>& terms() const { return terms_; }
    void add(const Diagram& d, const RingElem& c);

    AlgebraElem operator+(const AlgebraElem& o) const;
    AlgebraElem operator-(const AlgebraElem& o) const;
    AlgebraElem operator*(const AlgebraElem& o) const;
    AlgebraElem scaled(const RingElem& c) const;
    AlgebraElem flip() const;
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const AlgebraElem& o) const { return (*this - o).is_zero(); }
    std::string str() const;

private:
    const BlobAlgebra* alg_;
    std::map<Diagram, RingElem> terms_;
};

// Generators e, e_1, ..., e_{n-1}, f as algebra elements.
std::vector<AlgebraElem> generators(const BlobAlgebra& a);

struct RelationResult {
    std::string name;
    bool pass;
};
// Checks every relation of the presentation on the diagram generators.
std::vector<RelationResult> presentation_check(const BlobAlgebra& a);

}  // namespace sblob
