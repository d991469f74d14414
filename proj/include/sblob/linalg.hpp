#pragma once

#include "sblob/field.hpp"
#include "sblob/ring.hpp"

#include <map>
#include <vector>

namespace sblob {

using Matrix = std::vector<std::vector<RingElem>>;

Matrix zero_matrix(const Ring* r, size_t rows, size_t cols);
bool is_symmetric(const Matrix& m);

// Multiplies every row by the product of the binomial denominators of its
// entries, so that the entries become Laurent polynomials. Returns the
// factors used, with multiplicity.
std::map<DenKey, int> clear_row_denominators(Matrix& m, const Ring* r);

// Exact determinant by fraction-free (Bareiss) elimination. Rows are first
// cleared of their binomial denominators; the product of those factors is
// divided back out at the end.
RingElem det_bareiss(const Matrix& m, const Ring* r);

// Exact determinant over a ring with rational coefficients, by evaluation on
// a grid of integer points modulo word-sized primes, dense interpolation and
// Chinese remaindering. Degree bounds come from the row and column degrees
// and the number of primes from the product of the row 1-norms, so the
// result is exact. Much faster than det_bareiss for larger matrices with
// several formal variables, where fraction-free elimination swells. Throws
// std::invalid_argument over a cyclotomic field.
RingElem det_modular(const Matrix& m, const Ring* r);

// Sparse row over a number field: column -> nonzero entry.
using SparseRow = std::map<int, FElem>;

// Incremental row echelon form over a number field. Rows are inserted one at
// a time and reduced against the current pivots.
class Echelon {
public:
    explicit Echelon(int ncols) : ncols_(ncols) {}

    // Returns true if the row was independent of the rows inserted so far.
    bool insert(SparseRow row);
    int rank() const { return static_cast<int>(pivots_.size()); }
    int ncols() const { return ncols_; }
    // Basis of the solution space of (inserted rows) * x = 0, one dense
    // vector per free column, with that free coordinate set to 1.
    std::vector<std::vector<FElem>> nullspace(const Field* f) const;

private:
    void reduce(SparseRow& row) const;
    int ncols_;
    std::map<int, SparseRow> pivots_;  // pivot column -> row with leading 1
};

using FMatrix = std::vector<std::vector<FElem>>;

// Rank of a dense matrix over a number field.
int rank(const FMatrix& m);

// Solves A X = B for square invertible A by Gauss-Jordan elimination. Throws
// std::domain_error if A is singular.
FMatrix solve(FMatrix a, FMatrix b);

}  // namespace sblob
