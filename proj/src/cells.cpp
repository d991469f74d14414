#include "sblob/cells.hpp"

#include "sblob/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sblob {

std::vector<int> cell_labels(int n) {
    std::vector<int> out;
    for (int l = -n; l <= n - 1; ++l) out.push_back(l);
    return out;
}

void require_unit_parameters(const BlobAlgebra& a) {
    for (int i = 0; i < 6; ++i)
        if (a.params()[i].is_zero())
            throw NonUnitParameter(std::string(Params::name(i)) + " vanishes at " + a.ring()->spec().key());
}

bool valid_label(int n, int l) { return n >= 1 && l >= -n && l <= n - 1; }

int half_lines(int n, int l) {
    if (!valid_label(n, l)) throw std::invalid_argument("label " + std::to_string(l) + " outside Lambda_" + std::to_string(n));
    if (l == 0) return n % 2;
    if (l < 0) {
        int k = -l;
        return (n - k) % 2 == 0 ? k : k + 1;
    }
    return (n - l - 1) % 2 == 0 ? l + 1 : l + 2;
}

std::vector<Diagram> cell_basis(int n, int l) {
    const int p = half_lines(n, l);
    std::vector<Diagram> out;
    for (const auto& shape : half_shapes(n, p))
        for (auto& d : decorate(shape)) {
            if (d.label() != l) continue;
            if (l == 0 && p == 1) {
                Word w = d.word_from(d.top(d.lines()[0].first));
                if (w != Word::L && w != Word::RL) continue;
            }
            out.push_back(std::move(d));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- vectors

void CellVector::add(int i, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = c_.find(i);
    if (it == c_.end()) {
        c_.emplace(i, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) c_.erase(it);
}

CellVector CellVector::operator+(const CellVector& o) const {
    CellVector r(*this);
    for (const auto& [i, c] : o.c_) r.add(i, c);
    return r;
}

CellVector CellVector::operator-(const CellVector& o) const {
    CellVector r(*this);
    for (const auto& [i, c] : o.c_) r.add(i, -c);
    return r;
}

CellVector CellVector::scaled(const RingElem& c) const {
    CellVector r(m_);
    for (const auto& [i, x] : c_) r.add(i, x * c);
    return r;
}

std::string CellVector::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : c_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.normalize().str() + ")*{" + m_->basis()[static_cast<size_t>(i)].str() + "}";
    }
    return out;
}

// ---------------------------------------------------------------- module

CellModule::CellModule(const BlobAlgebra* alg, int l) : alg_(alg), l_(l), p_(half_lines(alg->n(), l)) {
    basis_ = cell_basis(alg->n(), l);
    for (size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<int>(i));
}

int CellModule::index_of(const Diagram& h) const {
    auto it = index_.find(h);
    return it == index_.end() ? -1 : it->second;
}

bool CellModule::in_module(const Diagram& h) const { return h.num_lines() == p_ && h.label() == l_; }

bool CellModule::act_basis(const Diagram& d, int i, int& out_index, RingElem& out_coeff) const {
    Composite c = compose(d, basis_[static_cast<size_t>(i)]);
    if (!in_module(c.d)) return false;
    out_index = index_of(c.d);
    if (out_index < 0) throw std::logic_error("cell action left the half-diagram basis: " + c.d.str());
    out_coeff = alg_->scalar(c.mono);
    return true;
}

CellVector CellModule::act(const AlgebraElem& g, const CellVector& v) const {
    CellVector out(this);
    for (const auto& [d, gc] : g.terms())
        for (const auto& [i, vc] : v.coeffs()) {
            int j;
            RingElem c;
            if (act_basis(d, i, j, c)) out.add(j, gc * vc * c);
        }
    return out;
}

CellVector CellModule::basis_vector(int i) const {
    CellVector v(this);
    v.add(i, RingElem::one(ring()));
    return v;
}

RingElem CellModule::pairing(const Diagram& x, const Diagram& y) const {
    Composite c = compose(x.flip(), y);
    if (c.d.num_lines() != p_ || c.d.label() != l_) return RingElem::zero(ring());
    return alg_->scalar(c.mono);
}

RingElem CellModule::form(const CellVector& x, const CellVector& y) const {
    RingElem s = RingElem::zero(ring());
    for (const auto& [i, a] : x.coeffs())
        for (const auto& [j, b] : y.coeffs())
            s += a * b * pairing(basis_[static_cast<size_t>(i)], basis_[static_cast<size_t>(j)]);
    return s;
}

Matrix CellModule::gram() const {
    const size_t d = basis_.size();
    Matrix g = zero_matrix(ring(), d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) g[i][j] = pairing(basis_[i], basis_[j]);
    return g;
}

RingElem CellModule::gram_det() const {
    const Ring* r = ring();
    bool formal = false;
    for (int v = 0; v < 4; ++v) formal = formal || r->formal(v);
    if (formal && r->field()->is_rationals()) return det_modular(gram(), r);
    return det_bareiss(gram(), r);
}

// ---------------------------------------------------------------- closed-form matrices

Matrix tl_gram(int n, int p, const RingElem& delta) {
    const Ring* r = delta.ring();
    auto basis = half_shapes(n, p);
    Matrix g = zero_matrix(r, basis.size(), basis.size());
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            Composite c = compose(basis[i].flip(), basis[j]);
            if (c.d.num_lines() == p) g[i][j] = delta.pow(c.mono.e[P_DELTA]);
        }
    return g;
}

Matrix almost_block_sum(const Matrix& a, const Matrix& b, const Ring* r) {
    const size_t na = a.size(), nb = b.size(), n = na + nb;
    Matrix m = zero_matrix(r, n, n);
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < na; ++j) m[i][j] = a[i][j];
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j) m[na + i][na + j] = b[i][j];
    if (na > 0 && nb > 0) m[na - 1][na] = m[na][na - 1] = RingElem::one(r);
    return m;
}

Matrix mu_matrix(const Matrix& m, int k, const RingElem& delta) {
    const Ring* r = delta.ring();
    if (k < -1) throw std::invalid_argument("mu_matrix: k must be >= -1");
    if (k == -1) {
        if (m.empty()) throw std::invalid_argument("mu_matrix: empty matrix");
        Matrix out(m.begin(), m.end() - 1);
        for (auto& row : out) row.pop_back();
        return out;
    }
    Matrix out = m;
    const Matrix d{{delta}};
    for (int i = 0; i < k; ++i) out = almost_block_sum(out, d, r);
    return out;
}

bool mu_recurrence_check(const Matrix& m0, int n, const RingElem& delta) {
    const Ring* r = delta.ring();
    std::vector<RingElem> dets;
    for (int k = -1; k <= n; ++k) dets.push_back(det_bareiss(mu_matrix(m0, k, delta), r));
    for (int k = 1; k <= n; ++k) {
        const size_t i = static_cast<size_t>(k + 1);
        if (dets[i] != delta * dets[i - 1] - dets[i - 2]) return false;
    }
    return true;
}

Matrix b_plus(const Params& p) { return {{p.kappaL, p.kappaL}, {p.kappaL, p.delta}}; }

Matrix b_minus(const Params& p) {
    RingElem one = RingElem::one(p.delta.ring());
    return {{p.kappaL, p.kappaL, one}, {p.kappaL, p.delta, one}, {one, one, p.delta}};
}

Matrix m_prime(int n, const Params& p) {
    if (n < 3) throw std::invalid_argument("M'(n) needs n >= 3");
    const Ring* r = p.delta.ring();
    const size_t N = static_cast<size_t>(n) + 1;
    Matrix m = zero_matrix(r, N, N);
    RingElem one = RingElem::one(r);
    m[0][0] = p.kappaL;
    m[0][1] = m[1][0] = p.kappaL;
    m[0][2] = m[2][0] = one;
    m[1][1] = p.delta;
    m[1][2] = m[2][1] = one;
    for (size_t i = 2; i + 1 < N; ++i) {
        m[i][i] = p.delta;
        if (i + 2 < N) m[i][i + 1] = m[i + 1][i] = one;
    }
    m[N - 2][N - 1] = m[N - 1][N - 2] = p.kappaR;
    m[N - 1][N - 1] = p.kappaR;
    return m;
}

BracketProduct det_formula_tl(int n) { return BracketProduct{1, {BracketExpr::integer(n)}, {}}; }

BracketProduct det_formula_bplus(int n) {
    return BracketProduct{1, {BracketExpr::w1(), BracketExpr::w1(n)}, {BracketExpr::w1(1), BracketExpr::w1(1)}};
}

BracketProduct det_formula_bminus(int n) {
    return BracketProduct{1, {BracketExpr::w1(2), BracketExpr::w1(2 - n)}, {BracketExpr::w1(1), BracketExpr::w1(1)}};
}

BracketProduct det_formula_mprime(int n) {
    BracketExpr diff{2 * (2 - n), 1, -1};
    return BracketProduct{1,
                          {BracketExpr::w2(), BracketExpr::w1(2), diff},
                          {BracketExpr::w2(1), BracketExpr::w2(1), BracketExpr::w1(1), BracketExpr::w1(1)}};
}

}  // namespace sblob
