#include "sblob/linalg.hpp"

#include "sblob/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace sblob {

Matrix zero_matrix(const Ring* r, size_t rows, size_t cols) {
    return Matrix(rows, std::vector<RingElem>(cols, RingElem::zero(r)));
}

bool is_symmetric(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) return false;
        for (size_t j = i + 1; j < m.size(); ++j)
            if (m[i][j] != m[j][i]) return false;
    }
    return true;
}

std::map<DenKey, int> clear_row_denominators(Matrix& a, const Ring* r) {
    std::map<DenKey, int> cleared;
    for (auto& row : a) {
        std::map<DenKey, int> lcm;
        for (auto& x : row) {
            x = x.normalize();
            for (const auto& [k, m] : x.den()) lcm[k] = std::max(lcm[k], m);
        }
        if (lcm.empty()) continue;
        RingElem p = RingElem::one(r);
        for (const auto& [k, m] : lcm) {
            RingElem b = RingElem::one(r) - RingElem::mono(r, Mono{k.mu, k.d});
            p = p * b.pow(m);
            cleared[k] += m;
        }
        for (auto& x : row) {
            x = (x * p).normalize();
            if (!x.den().empty()) throw std::logic_error("clear_row_denominators: denominator did not clear");
        }
    }
    return cleared;
}

RingElem det_bareiss(const Matrix& in, const Ring* r) {
    const size_t n = in.size();
    if (n == 0) return RingElem::one(r);
    for (const auto& row : in)
        if (row.size() != n) throw std::invalid_argument("det_bareiss: matrix is not square");

    Matrix a = in;
    const std::map<DenKey, int> cleared = clear_row_denominators(a, r);

    int sign = 1;
    RingElem prev = RingElem::one(r);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t s = k + 1;
            while (s < n && a[s][k].is_zero()) ++s;
            if (s == n) return RingElem::zero(r);
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                RingElem t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = RingElem::exact_div(t.normalize(), prev);
            }
            a[i][k] = RingElem::zero(r);
        }
        prev = a[k][k];
    }
    RingElem d = a[n - 1][n - 1];
    if (sign < 0) d = -d;
    for (const auto& [k, m] : cleared)
        for (int i = 0; i < m; ++i) d = d.div_binomial(k.mu, k.d);
    return d.normalize();
}

void Echelon::reduce(SparseRow& row) const {
    // Eliminate pivot columns in increasing order; reduction only introduces
    // entries in columns greater than the pivot.
    auto it = row.begin();
    while (it != row.end()) {
        auto pv = pivots_.find(it->first);
        if (pv == pivots_.end()) {
            ++it;
            continue;
        }
        const int col = it->first;
        FElem c = it->second;
        for (const auto& [j, v] : pv->second) {
            FElem nv = row.count(j) ? row[j] - c * v : -(c * v);
            if (nv.is_zero()) row.erase(j);
            else row[j] = nv;
        }
        it = row.upper_bound(col);
    }
}

bool Echelon::insert(SparseRow row) {
    for (auto it = row.begin(); it != row.end();) {
        if (it->second.is_zero()) it = row.erase(it);
        else ++it;
    }
    reduce(row);
    if (row.empty()) return false;
    const int col = row.begin()->first;
    FElem inv = row.begin()->second.inv();
    for (auto& [j, v] : row) v = v * inv;
    // keep the stored rows fully reduced against the new pivot
    for (auto& [pc, pr] : pivots_) {
        auto f = pr.find(col);
        if (f == pr.end()) continue;
        FElem c = f->second;
        for (const auto& [j, v] : row) {
            FElem nv = pr.count(j) ? pr[j] - c * v : -(c * v);
            if (nv.is_zero()) pr.erase(j);
            else pr[j] = nv;
        }
    }
    pivots_.emplace(col, std::move(row));
    return true;
}

std::vector<std::vector<FElem>> Echelon::nullspace(const Field* f) const {
    std::vector<std::vector<FElem>> out;
    for (int free = 0; free < ncols_; ++free) {
        if (pivots_.count(free)) continue;
        std::vector<FElem> v(static_cast<size_t>(ncols_), FElem(f));
        v[static_cast<size_t>(free)] = FElem(f, 1);
        for (const auto& [pc, pr] : pivots_) {
            auto it = pr.find(free);
            if (it != pr.end()) v[static_cast<size_t>(pc)] = -it->second;
        }
        out.push_back(std::move(v));
    }
    return out;
}

int rank(const FMatrix& m) {
    if (m.empty()) return 0;
    Echelon e(static_cast<int>(m[0].size()));
    for (const auto& row : m) {
        SparseRow r;
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) r.emplace(static_cast<int>(j), row[j]);
        e.insert(std::move(r));
    }
    return e.rank();
}

FMatrix solve(FMatrix a, FMatrix b) {
    const size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("solve: row count mismatch");
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("solve: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        FElem inv = a[c][c].inv();
        for (auto& x : a[c]) x *= inv;
        for (auto& x : b[c]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            FElem f = a[r][c];
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            for (size_t j = 0; j < b[r].size(); ++j) b[r][j] -= f * b[c][j];
        }
    }
    return b;
}

}  // namespace sblob
