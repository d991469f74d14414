#include "sblob/homs.hpp"

#include "sblob/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sblob {

std::string to_string(Family f) {
    switch (f) {
        case Family::F1: return "F1";
        case Family::F2: return "F2";
        case Family::F3: return "F3";
        case Family::F4: return "F4";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "F1" || s == "1") return Family::F1;
    if (s == "F2" || s == "2") return Family::F2;
    if (s == "F3" || s == "3") return Family::F3;
    if (s == "F4" || s == "4") return Family::F4;
    throw ParseError("unknown family '" + s + "' (expected F1..F4)");
}

// ---------------------------------------------------------------- specs

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

// Integer value of w when Q = +-q^w at a primitive 2l-th root (q^l = -1).
bool integral_value(const WSpec& w, int l, int& out) {
    if (w.mode != WMode::Fixed) return false;
    if (w.c == 1) {
        out = w.w;
        return true;
    }
    if (w.c == -1 && l > 0) {
        out = w.w + l;
        return true;
    }
    return false;
}

bool non_integral(const WSpec& w) {
    if (w.mode == WMode::Formal) return true;
    if (w.mode == WMode::Fixed) return w.c != 1 && w.c != -1;
    return false;
}

}  // namespace

HomSpec family1_spec(int n, int m, int u, int l, int w1) {
    HomSpec h;
    h.family = Family::F1;
    h.n = n;
    h.m = m;
    h.u = u;
    h.t = m + u;
    h.l = l;
    h.src = -h.t;
    h.dst = 2 * u - h.t - 1;
    h.spec.q = QSpec{QMode::Root, l, 1};
    h.spec.w1 = WSpec::integer(w1);
    return h;
}

HomSpec family2_spec(int n, int m, int u, int l, int w2) {
    HomSpec h = family1_spec(n, m, u, l, 0);
    h.family = Family::F2;
    h.dst = h.t - 2 * u + 1;
    h.spec.w1 = WSpec::formal();
    h.spec.w2 = WSpec::integer(w2);
    return h;
}

HomSpec family3_spec(int n, int c, int sign, const QSpec& q) {
    HomSpec h;
    h.family = Family::F3;
    h.n = n;
    h.c = c;
    h.l = q.mode == QMode::Root ? q.l : 0;
    h.src = -n;
    h.dst = -n + 2 * c;
    h.spec.q = q;
    h.spec.w2 = WSpec::linked(c + 1 - n, sign);
    return h;
}

HomSpec family4_spec(int n, int l) {
    HomSpec h;
    h.family = Family::F4;
    h.n = n;
    h.l = l;
    h.src = -n;
    h.dst = -n + 2 * l;
    h.spec.q = QSpec{QMode::Root, l, 1};
    return h;
}

std::string HomSpec::condition() const {
    std::ostringstream o;
    switch (family) {
        case Family::F1: o << "w1 = " << m << " mod " << 2 * l; break;
        case Family::F2: o << "w2 = " << m << " mod " << 2 * l; break;
        case Family::F3: o << "[w1 + w2 - " << n << " + " << c << " + 1] = 0"; break;
        case Family::F4: o << "q primitive " << 2 * l << "-th root, w1 and w2 not integral"; break;
    }
    return o.str();
}

std::string HomSpec::str() const {
    std::ostringstream o;
    o << to_string(family) << " n=" << n << " Sb(" << src << ") -> Sb(" << dst << ")";
    if (family == Family::F1 || family == Family::F2) o << " t=" << t << " m=" << m << " u=" << u;
    if (family == Family::F3) o << " c=" << c;
    if (l) o << " l=" << l;
    for (Swap s : history) o << (s == Swap::G ? " G" : " G'");
    o << " [" << spec.key() << "]";
    return o.str();
}

bool condition_holds(const HomSpec& h) {
    const Specialization& s = h.spec;
    switch (h.family) {
        case Family::F1:
        case Family::F2: {
            if (s.q.mode != QMode::Root || s.q.l != h.l) return false;
            int w;
            const WSpec& ws = h.family == Family::F1 ? s.w1 : s.w2;
            if (!integral_value(ws, h.l, w)) return false;
            return h.t == h.m + h.u && h.u > h.m && h.m >= 0 && (h.n - h.t) % 2 == 0 && h.t <= h.n &&
                   mod(w - h.m, 2 * h.l) == 0;
        }
        case Family::F3:
            return 2 * h.c < h.n && h.c >= 0 && s.w2.mode == WMode::Linked && s.w2.m == h.c + 1 - h.n;
        case Family::F4:
            if (s.q.mode != QMode::Root || s.q.l != h.l || 2 * h.l >= h.n) return false;
            if (h.experimental_integral_w1) return non_integral(s.w2);
            return non_integral(s.w1) && non_integral(s.w2);
    }
    return false;
}

// ---------------------------------------------------------------- hooks

std::vector<HookLine> hook_lines(const Diagram& d) {
    const int n = d.n_top(), t = d.n_bot();
    std::vector<HookLine> out;
    for (int x = 0; x < n; ++x) {
        int y = d.partner(x);
        if (d.is_top(y)) {
            if (y < x) continue;
            out.push_back({x + 1, (y - x - 1) / 2, false, d.word_from(x)});
        } else {
            int end = n + (t - d.pos(y));
            out.push_back({x + 1, (end - x - 2) / 2, true, d.word_from(x)});
        }
    }
    return out;
}

namespace {

bool has_left(Word w) { return w == Word::L || w == Word::LR || w == Word::RL; }
bool has_right(Word w) { return w == Word::R || w == Word::LR || w == Word::RL; }

BracketProduct single(const BracketExpr& b) { return BracketProduct{1, {b}, {}}; }

BracketProduct left_hook(const HookLine& g) {
    // [(a+2b+1)/2] [(2 w1 - a + 1)/2]
    return BracketProduct{1, {BracketExpr::half(g.a + 2 * g.b + 1), BracketExpr{1 - g.a, 1, 0}}, {}};
}

BracketProduct right_hook(const HookLine& g, int n) {
    // [(n-a+1)/2] [(2 w2 - n + a + 2b + 1)/2]
    return BracketProduct{1, {BracketExpr::half(n - g.a + 1), BracketExpr{-n + g.a + 2 * g.b + 1, 0, 1}}, {}};
}

}  // namespace

BracketProduct hook_a(const HookLine& g, int n, int t) {
    if (g.word == Word::E) return single(BracketExpr::integer(g.b + 1));
    if (g.word != Word::L) throw std::invalid_argument("hook_a: only left decorations occur");
    return BracketProduct{1, {BracketExpr::half(g.a + 2 * g.b + 1), BracketExpr::half(n + t - g.a + 1)}, {}};
}

BracketProduct hook_a_product(const Diagram& d) {
    const int n = d.n_top(), t = d.n_bot();
    BracketProduct p = qfactorial((n + t) / 2) * qfactorial((n - t) / 2);
    for (const auto& g : hook_lines(d)) {
        if (g.propagating) continue;
        p *= hook_a(g, n, t).inverse();
    }
    return p;
}

BracketProduct hook_b(const HookLine& g, int n, int t) {
    if (has_left(g.word) && has_right(g.word)) throw std::invalid_argument("hook_b: doubly decorated line");
    if (has_left(g.word)) return left_hook(g);
    if (has_right(g.word)) return right_hook(g, n);
    if (g.propagating) return single(BracketExpr{2 * g.b + 2 - n - t, 1, 0});
    return single(BracketExpr::integer(g.b + 1));
}

BracketProduct hook_b_denominator(const Diagram& d) {
    BracketProduct p;
    for (const auto& g : hook_lines(d)) p *= hook_b(g, d.n_top(), d.n_bot());
    return p;
}

BracketProduct hook_c(const HookLine& g, int n, int t, int l) {
    if (has_left(g.word) && has_right(g.word)) throw std::invalid_argument("hook_c: doubly decorated line");
    if (has_left(g.word)) return left_hook(g);
    if (has_right(g.word)) return right_hook(g, n);
    if (g.propagating) {
        BracketProduct p;
        p.sign = mod(g.a - 1, 4 * l) < 2 * l ? 1 : -1;
        return p;
    }
    (void)t;
    return single(BracketExpr::integer(g.b + 1));
}

BracketProduct hook_c_denominator(const Diagram& d, int l) {
    BracketProduct p;
    for (const auto& g : hook_lines(d)) p *= hook_c(g, d.n_top(), d.n_bot(), l);
    return p;
}

BracketProduct compute_M(int n, int c, const Specialization& s, bool integral) {
    if (!integral) return qfactorial(c);
    std::map<BracketExpr, int> lcm;
    for (const auto& d : cell_basis(n, -n + 2 * c)) {
        std::map<BracketExpr, int> count;
        for (auto b : hook_b_denominator(d).num) {
            rewrite_bracket(b, s);
            if (b.integral() && (b.alpha2 == 2 || b.alpha2 == -2)) continue;  // [1] = 1
            ++count[b];
        }
        for (const auto& [b, k] : count) lcm[b] = std::max(lcm[b], k);
    }
    BracketProduct m;
    for (const auto& [b, k] : lcm)
        for (int i = 0; i < k; ++i) m.num.push_back(b);
    return m;
}

BracketProduct family4_normalisation(int l) {
    return qfactorial(l) * falling_factorial(BracketExpr::w1(), l) * falling_factorial(BracketExpr::w2(), l);
}

bool family4_support(const Diagram& d, int l) {
    const int n = d.n_top();
    int features = 0;
    for (const auto& g : hook_lines(d)) {
        if (g.propagating) continue;
        const int end = g.a + 2 * g.b + 1;
        if (g.word == Word::E && g.b == l - 1) ++features;
        if (g.word == Word::L && end == 2 * l) ++features;
        if (g.word == Word::R && g.a == n - 2 * l + 1) ++features;
    }
    return features == 1;
}

// ---------------------------------------------------------------- builders

HomInstance::HomInstance(const HomSpec& h) : spec_(h), ring_(Ring::get(h.spec)) {
    alg_ = std::make_unique<BlobAlgebra>(h.n, ring_, h.param);
    src_ = std::make_unique<CellModule>(alg_.get(), h.src);
    dst_ = std::make_unique<CellModule>(alg_.get(), h.dst);
}

namespace {

// Half-diagram basis of the ordinary blob module W_0(2m): arcs only, left
// decorations on 0-exposed arcs.
std::vector<Diagram> blob_w0(int m) {
    std::vector<Diagram> out;
    if (m == 0) {
        out.emplace_back(0, 0);
        return out;
    }
    for (const auto& shape : half_shapes(2 * m, 0))
        for (auto& d : decorate(shape)) {
            bool ok = true;
            for (int v = 0; v < d.n_top(); ++v)
                if (has_right(d.word_from(v))) ok = false;
            if (ok) out.push_back(std::move(d));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// A_{u-m}(D): the (t, u-m) diagram with D on the first 2m vertices and u-m
// lines on the right, the leftmost of them left-decorated.
Diagram append_lines_right(const Diagram& D, int k) {
    const int w = D.n_top(), t = w + k;
    Diagram a(t, k);
    for (int x = 0; x < w; ++x) {
        int y = D.partner(x);
        if (y > x) a.connect(a.top(x), a.top(y), D.word_from(x));
    }
    for (int j = 0; j < k; ++j) a.connect(a.top(w + j), a.bot(j), j == 0 ? Word::L : Word::E);
    return a;
}

// Mirror: k lines on the left, the rightmost right-decorated, then D.
Diagram append_lines_left(const Diagram& D, int k) {
    const int w = D.n_top(), t = w + k;
    Diagram a(t, k);
    for (int j = 0; j < k; ++j) a.connect(a.top(j), a.bot(j), j == k - 1 ? Word::R : Word::E);
    for (int x = 0; x < w; ++x) {
        int y = D.partner(x);
        if (y > x) a.connect(a.top(k + x), a.top(k + y), D.word_from(x));
    }
    return a;
}

}  // namespace

HomInstance build(const HomSpec& h) {
    if (!h.history.empty()) throw std::invalid_argument("build: globalised instances are handled by hom_space");
    if (h.enforce_condition && !condition_holds(h))
        throw ConditionUnsatisfied("condition " + h.condition() + " fails for " + h.str());
    HomInstance out(h);
    const CellModule& src = *out.src_;
    const CellModule& dst = *out.dst_;
    const Ring* r = out.ring_;

    if (h.family == Family::F1 || h.family == Family::F2) {
        const int k = h.u - h.m;
        std::vector<std::pair<Diagram, RingElem>> terms;
        int idx = 0;
        for (const auto& D : blob_w0(h.m)) {
            BracketProduct hp = hook_a_product(D);
            out.hooks_.emplace_back(idx++, hp);
            Diagram A = h.family == Family::F1 ? append_lines_right(D, k) : append_lines_left(D.reflect(), k);
            terms.emplace_back(A, evaluate(hp, r));
        }
        for (int i = 0; i < src.dim(); ++i) {
            CellVector v(&dst);
            for (const auto& [A, coeff] : terms) {
                if (coeff.is_zero()) continue;
                Composite c = compose(src.basis()[static_cast<size_t>(i)], A);
                if (!dst.in_module(c.d)) continue;
                int j = dst.index_of(c.d);
                if (j < 0)
                    throw std::domain_error("image diagram " + c.d.str() + " is not a basis element of Sb_" +
                                            std::to_string(h.n) + "(" + std::to_string(h.dst) + ")");
                v.add(j, coeff * out.alg_->scalar(c.mono));
            }
            out.images_.push_back(v);
        }
        return out;
    }

    if (src.dim() != 1) throw std::logic_error("family 3/4 source must be Sb_n(-n)");
    CellVector v(&dst);
    BracketProduct norm = h.family == Family::F3 ? compute_M(h.n, h.c, h.spec, h.integral_M) : family4_normalisation(h.l);
    for (int j = 0; j < dst.dim(); ++j) {
        const Diagram& D = dst.basis()[static_cast<size_t>(j)];
        BracketProduct den = h.family == Family::F3 ? hook_b_denominator(D) : hook_c_denominator(D, h.l);
        BracketProduct hp = norm * den.inverse();
        out.hooks_.emplace_back(j, hp);
        RingElem c;
        try {
            c = evaluate(hp, r);
        } catch (const HookUndefined& e) {
            throw HookUndefined(std::string(e.what()) + " at diagram " + D.str());
        }
        v.add(j, c);
    }
    out.images_.push_back(v);
    return out;
}

// ---------------------------------------------------------------- verification

bool VerificationReport::pass() const {
    if (!image_nonzero) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

VerificationReport verify_annihilation(const HomInstance& h) {
    VerificationReport rep;
    for (const auto& v : h.images())
        if (!v.is_zero()) rep.image_nonzero = true;
    const auto gens = generators(h.algebra());
    const auto gdiag = generator_diagrams(h.spec().n);
    const CellModule& src = h.source();
    const CellModule& dst = h.target();
    const int n = h.spec().n;
    for (size_t g = 0; g < gens.size(); ++g) {
        GeneratorCheck chk;
        chk.generator = g == 0 ? "e" : (static_cast<int>(g) == n ? "f" : "e_" + std::to_string(g));
        chk.pass = true;
        for (int i = 0; i < src.dim() && chk.pass; ++i) {
            CellVector lhs(&dst);
            int j;
            RingElem c;
            if (src.act_basis(gdiag[g], i, j, c)) lhs = h.images()[static_cast<size_t>(j)].scaled(c);
            CellVector rhs = dst.act(gens[g], h.images()[static_cast<size_t>(i)]);
            CellVector diff = rhs - lhs;
            if (!diff.is_zero()) {
                chk.pass = false;
                std::string s = diff.str();
                if (s.size() > 400) s = s.substr(0, 400) + "...";
                chk.residual = "source basis " + std::to_string(i) + ": " + s;
            }
        }
        rep.checks.push_back(chk);
    }
    return rep;
}

namespace {

RingElem image_coeff(const HomInstance& h, const Diagram& d) {
    int j = h.target().index_of(d);
    if (j < 0) return RingElem::zero(h.ring());
    const auto& c = h.images()[0].coeffs();
    auto it = c.find(j);
    return it == c.end() ? RingElem::zero(h.ring()) : it->second;
}

}  // namespace

RingElem nipping_coefficient(const HomInstance& h, int target_index, int i) {
    const Diagram& D = h.target().basis()[static_cast<size_t>(target_index)];
    const int i0 = i - 1, i1 = i;
    if (D.partner(i0) != i1 || D.word_from(i0) != Word::E)
        throw std::invalid_argument("nipping_coefficient: no undecorated arc (i, i+1)");
    const BlobAlgebra& alg = h.algebra();
    const std::vector<Word> words{Word::E, Word::L, Word::R, Word::LR, Word::RL};
    RingElem total = RingElem::zero(h.ring());

    // D itself and D^*: the arc (i, i+1) closes into a loop.
    for (Word w : words) {
        Diagram d = D;
        d.set_word(i0, w);
        if (!d.valid()) continue;
        total += alg.scalar(reduce_loop(word_str(w))) * image_coeff(h, d);
    }
    // D^j: nip the line g = (x, y) of D; i and i+1 reconnect to x and y.
    for (int x = 0; x < D.size(); ++x) {
        int y = D.partner(x);
        if (x == i0 || x == i1 || y < x) continue;
        const std::string target = word_str(D.word_from(x));
        for (int flip = 0; flip < 2; ++flip) {
            int a = flip ? y : x, b = flip ? x : y;  // a joins i0, b joins i1
            for (Word w1 : words)
                for (Word w2 : words) {
                    // path a -> i0 (w1), cap, i1 -> b (w2)
                    auto [w, mono] = reduce_line(word_str(w1) + word_str(w2));
                    if (word_str(w) != (flip ? word_str(word_reverse(D.word_from(x))) : target)) continue;
                    Diagram d = D;
                    d.connect(a, i0, w1);
                    d.connect(i1, b, w2);
                    if (!d.valid()) continue;
                    total += alg.scalar(mono) * image_coeff(h, d);
                }
        }
    }
    return total;
}

RingElem raw_coefficient(const HomInstance& h, int target_index, int i) {
    AlgebraElem g(&h.algebra(), generator_diagrams(h.spec().n)[static_cast<size_t>(i)]);
    CellVector v = h.target().act(g, h.images()[0]);
    auto it = v.coeffs().find(target_index);
    return it == v.coeffs().end() ? RingElem::zero(h.ring()) : it->second;
}

// ---------------------------------------------------------------- hom spaces

namespace {

// Column-sparse action matrix: column i -> (row, value) or none.
std::vector<std::pair<int, FElem>> action_columns(const CellModule& m, const Diagram& g, bool& ok) {
    std::vector<std::pair<int, FElem>> cols;
    for (int i = 0; i < m.dim(); ++i) {
        int j;
        RingElem c;
        if (m.act_basis(g, i, j, c)) {
            if (!c.is_constant()) {
                ok = false;
                return cols;
            }
            cols.emplace_back(j, c.to_felem());
        } else {
            cols.emplace_back(-1, FElem(m.ring()->field()));
        }
    }
    return cols;
}

}  // namespace

HomSpaceResult hom_space(int n, int src, int dst, const Specialization& s, Parametrisation p) {
    if (!s.concrete()) throw std::invalid_argument("hom_space needs a concrete specialization: " + s.key());
    const Ring* r = Ring::get(s);
    BlobAlgebra alg(n, r, p);
    require_unit_parameters(alg);
    CellModule S(&alg, src), T(&alg, dst);
    HomSpaceResult res;
    res.src_dim = S.dim();
    res.dst_dim = T.dim();
    const int ds = S.dim(), dd = T.dim();
    auto var = [ds](int row, int col) { return row * ds + col; };
    Echelon ech(dd * ds);
    const Field* f = r->field();
    for (const auto& g : generator_diagrams(n)) {
        bool ok = true;
        auto cs = action_columns(S, g, ok);
        auto ct = action_columns(T, g, ok);
        if (!ok) throw std::invalid_argument("hom_space: action is not constant at " + s.key());
        // rows of rho_T(g): row -> list of (k, value)
        std::vector<std::vector<std::pair<int, FElem>>> trows(static_cast<size_t>(dd));
        for (int k = 0; k < dd; ++k)
            if (ct[static_cast<size_t>(k)].first >= 0)
                trows[static_cast<size_t>(ct[static_cast<size_t>(k)].first)].emplace_back(k, ct[static_cast<size_t>(k)].second);
        for (int row = 0; row < dd; ++row)
            for (int col = 0; col < ds; ++col) {
                SparseRow eq;
                // (rho_T(g) T)[row][col] = sum_k rho_T[row][k] T[k][col]
                for (const auto& [k, v] : trows[static_cast<size_t>(row)]) {
                    auto& e = eq[var(k, col)];
                    e = e.field() ? e + v : v;
                }
                // (T rho_S(g))[row][col] = T[row][k] rho_S[k][col], k = image of col
                const auto& [k, v] = cs[static_cast<size_t>(col)];
                if (k >= 0) {
                    auto& e = eq[var(row, k)];
                    e = e.field() ? e - v : -v;
                }
                if (!eq.empty()) ech.insert(std::move(eq));
            }
    }
    for (const auto& vec : ech.nullspace(f)) {
        std::vector<std::vector<FElem>> m(static_cast<size_t>(dd), std::vector<FElem>(static_cast<size_t>(ds), FElem(f)));
        for (int row = 0; row < dd; ++row)
            for (int col = 0; col < ds; ++col) m[static_cast<size_t>(row)][static_cast<size_t>(col)] = vec[static_cast<size_t>(var(row, col))];
        res.basis.push_back(std::move(m));
    }
    res.dimension = static_cast<int>(res.basis.size());
    return res;
}

HomSpec globalize_spec(const HomSpec& h, Swap tag) {
    HomSpec out = h;
    out.n = h.n + 1;
    if (tag == Swap::G) {
        out.src = -h.src;
        out.dst = -h.dst;
    }
    out.spec = swap_params(tag, h.spec, h.param);
    out.history.push_back(tag);
    return out;
}

Specialization concretize(const Specialization& s, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(2, 29), den(1, 7);
    auto rational = [&]() {
        for (;;) {
            mpq_class v(num(rng), den(rng));
            v.canonicalize();
            if (v != 1 && v != -1) return v;
        }
    };
    Specialization out = s;
    if (out.q.mode == QMode::Formal) {
        out.q.mode = QMode::Value;
        out.q.s0 = rational();
    }
    if (out.w1.mode == WMode::Formal) out.w1 = WSpec::fixed(rational());
    if (out.w2.mode == WMode::Formal) out.w2 = WSpec::fixed(rational());
    if (out.kappa.mode == KMode::Formal) out.kappa = KSpec::constant(mpq_class(out.kappa.sign * rational()));
    return out;
}

}  // namespace sblob
