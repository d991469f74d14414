#pragma once

#include "sblob/diagrams.hpp"
#include "sblob/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace sblob {

// Labels Lambda_n = {-n, ..., n-1}.
std::vector<int> cell_labels(int n);
bool valid_label(int n, int l);

// Number of propagating lines carried by the half diagrams of Sb_n(l).
int half_lines(int n, int l);

// Half-diagram basis of Sb_n(l): (n, p)-diagrams with #_u = |l|, a left blob
// on the first line iff l > 0, and a right blob on the last line when the
// parity of n forces an extra decorated line. For l = 0 and n odd the single
// line carries a word ending in L (towards the bottom).
std::vector<Diagram> cell_basis(int n, int l);

class CellModule;

// Throws NonUnitParameter if one of the six parameters of a is zero.
void require_unit_parameters(const BlobAlgebra& a);

// Linear combination of basis indices of a cell module.
class CellVector {
public:
    explicit CellVector(const CellModule* m) : m_(m) {}
    const CellModule* module() const { return m_; }
    const std::map<int, RingElem>& coeffs() const { return c_; }
    void add(int i, const RingElem& c);
    CellVector operator+(const CellVector& o) const;
    CellVector operator-(const CellVector& o) const;
    CellVector scaled(const RingElem& c) const;
    bool is_zero() const { return c_.empty(); }
    bool operator==(const CellVector& o) const { return (*this - o).is_zero(); }
    std::string str() const;

private:
    const CellModule* m_;
    std::map<int, RingElem> c_;
};

class CellModule {
public:
    CellModule(const BlobAlgebra* alg, int l);

    const BlobAlgebra* algebra() const { return alg_; }
    const Ring* ring() const { return alg_->ring(); }
    int n() const { return alg_->n(); }
    int label() const { return l_; }
    int lines() const { return p_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Diagram>& basis() const { return basis_; }
    // Index of a half diagram, or -1.
    int index_of(const Diagram& h) const;

    // d * (basis element i): false if the product falls into a lower cell.
    bool act_basis(const Diagram& d, int i, int& out_index, RingElem& out_coeff) const;
    CellVector act(const AlgebraElem& g, const CellVector& v) const;
    CellVector basis_vector(int i) const;

    // <x, y> for half diagrams x, y of this module.
    RingElem pairing(const Diagram& x, const Diagram& y) const;
    RingElem form(const CellVector& x, const CellVector& y) const;
    Matrix gram() const;
    // det_modular over rational rings with formal variables, det_bareiss
    // otherwise.
    RingElem gram_det() const;

    // True iff the half diagram survives in this module (line count and
    // label preserved).
    bool in_module(const Diagram& h) const;

private:
    const BlobAlgebra* alg_;
    int l_;
    int p_;
    std::vector<Diagram> basis_;
    std::map<Diagram, int> index_;
};

// Temperley-Lieb Gram matrix on undecorated (n, p) half diagrams with loop
// value delta.
Matrix tl_gram(int n, int p, const RingElem& delta);

// M' (+)_1^1 M'': almost block diagonal sum, joined by 1 at the corners.
Matrix almost_block_sum(const Matrix& a, const Matrix& b, const Ring* r);
// mu_k(M) = M (+) (delta) (+) ... (k copies of (delta)); mu_{-1}(M) drops the
// last row and column of M.
Matrix mu_matrix(const Matrix& m, int k, const RingElem& delta);
// Confirms det mu_k(M) = delta det mu_{k-1}(M) - det mu_{k-2}(M) for 1 <= k <= n.
bool mu_recurrence_check(const Matrix& m0, int n, const RingElem& delta);

// The blob initial matrices B_+ (2x2) and B_- (3x3).
Matrix b_plus(const Params& p);
Matrix b_minus(const Params& p);
// The (n+1) x (n+1) symplectic boundary matrix M'(n, kappa_L, kappa_R).
Matrix m_prime(int n, const Params& p);

// Closed forms for the determinants above, as bracket products in w1, w2.
BracketProduct det_formula_tl(int n);        // [n]
BracketProduct det_formula_bplus(int n);     // [w1]/[w1+1]^2 [n+w1]
BracketProduct det_formula_bminus(int n);    // [w1+2]/[w1+1]^2 [2-n+w1]
BracketProduct det_formula_mprime(int n);    // [w2][w1+2][w1-w2-n+2]/([w2+1]^2[w1+1]^2)

}  // namespace sblob
