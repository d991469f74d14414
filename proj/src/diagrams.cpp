#include "sblob/diagrams.hpp"

#include "sblob/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sblob {

// ---------------------------------------------------------------- words

std::string word_str(Word w) {
    switch (w) {
        case Word::E: return "";
        case Word::L: return "L";
        case Word::R: return "R";
        case Word::LR: return "LR";
        case Word::RL: return "RL";
    }
    return "";
}

Word word_reverse(Word w) {
    if (w == Word::LR) return Word::RL;
    if (w == Word::RL) return Word::LR;
    return w;
}

Word word_swap(Word w) {
    switch (w) {
        case Word::L: return Word::R;
        case Word::R: return Word::L;
        case Word::LR: return Word::RL;
        case Word::RL: return Word::LR;
        default: return w;
    }
}

Word parse_word(const std::string& s) {
    if (s.empty()) return Word::E;
    if (s == "L") return Word::L;
    if (s == "R") return Word::R;
    if (s == "LR") return Word::LR;
    if (s == "RL") return Word::RL;
    throw ParseError("unknown decoration word '" + s + "'");
}

ParamMono ParamMono::operator*(const ParamMono& o) const {
    ParamMono r;
    for (size_t i = 0; i < 6; ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

ParamMono& ParamMono::operator*=(const ParamMono& o) {
    for (size_t i = 0; i < 6; ++i) e[i] += o.e[i];
    return *this;
}

bool ParamMono::is_one() const {
    for (int x : e)
        if (x) return false;
    return true;
}

std::string ParamMono::str() const {
    std::string out;
    for (int i = 0; i < 6; ++i) {
        int k = e[static_cast<size_t>(i)];
        if (!k) continue;
        if (!out.empty()) out += "*";
        out += Params::name(i);
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "1" : out;
}

std::pair<Word, ParamMono> reduce_line(const std::string& letters) {
    std::string st;
    ParamMono m;
    for (char c : letters) {
        if (!st.empty() && st.back() == c) {
            m.e[c == 'L' ? P_DL : P_DR] += 1;
            continue;
        }
        st.push_back(c);
        if (st.size() >= 3) {
            // alternating X Y X collapses to X
            st.resize(st.size() - 2);
            m.e[P_KLR] += 1;
        }
    }
    return {parse_word(st), m};
}

ParamMono reduce_loop(const std::string& letters) {
    ParamMono m;
    if (letters.empty()) {
        m.e[P_DELTA] = 1;
        return m;
    }
    const size_t n = letters.size();
    size_t runs = 0;
    for (size_t i = 0; i < n; ++i)
        if (letters[i] != letters[(i + n - 1) % n]) ++runs;
    if (runs == 0) {
        // a single cyclic run X^k: k-1 merges then a loop with one blob
        const bool left = letters[0] == 'L';
        m.e[left ? P_DL : P_DR] += static_cast<int>(n) - 1;
        m.e[left ? P_KL : P_KR] += 1;
        return m;
    }
    for (size_t i = 0; i < n; ++i) {
        if (letters[i] == letters[(i + n - 1) % n]) m.e[letters[i] == 'L' ? P_DL : P_DR] += 1;
    }
    m.e[P_KLR] += static_cast<int>(runs / 2);
    return m;
}

// ---------------------------------------------------------------- Diagram

Diagram::Diagram(int nt, int nb)
    : nt_(nt), nb_(nb), partner_(static_cast<size_t>(nt + nb), -1), word_(static_cast<size_t>(nt + nb), Word::E) {}

Diagram Diagram::identity(int n) {
    Diagram d(n, n);
    for (int i = 0; i < n; ++i) d.connect(d.top(i), d.bot(i), Word::E);
    return d;
}

void Diagram::connect(int u, int v, Word from_u) {
    partner_[static_cast<size_t>(u)] = v;
    partner_[static_cast<size_t>(v)] = u;
    word_[static_cast<size_t>(u)] = from_u;
    word_[static_cast<size_t>(v)] = word_reverse(from_u);
}

void Diagram::set_word(int u, Word from_u) {
    word_[static_cast<size_t>(u)] = from_u;
    word_[static_cast<size_t>(partner(u))] = word_reverse(from_u);
}

std::vector<std::pair<int, int>> Diagram::lines() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < nt_; ++i) {
        int p = partner(i);
        if (p >= nt_) out.emplace_back(i, p - nt_);
    }
    return out;
}

int Diagram::num_lines() const {
    int c = 0;
    for (int i = 0; i < nt_; ++i)
        if (partner(i) >= nt_) ++c;
    return c;
}

int Diagram::num_undecorated_lines() const {
    int c = 0;
    for (int i = 0; i < nt_; ++i)
        if (partner(i) >= nt_ && word_from(i) == Word::E) ++c;
    return c;
}

bool Diagram::leftmost_line_has_left_blob() const {
    for (int i = 0; i < nt_; ++i) {
        if (partner(i) >= nt_) {
            Word w = word_from(i);
            return w == Word::L || w == Word::LR || w == Word::RL;
        }
    }
    return false;
}

int Diagram::label() const {
    int u = num_undecorated_lines();
    if (u == 0) return 0;
    return leftmost_line_has_left_blob() ? u : -u;
}

bool Diagram::exposed(int v, int side) const {
    const int u = partner(v);
    if (propagating(v)) {
        auto ls = lines();
        int t = is_top(v) ? pos(v) : pos(u);
        return side == 0 ? ls.front().first == t : ls.back().first == t;
    }
    const bool top_side = is_top(v);
    const int a = std::min(pos(v), pos(u)), b = std::max(pos(v), pos(u));
    const int n = top_side ? nt_ : nb_;
    for (int i = 0; i < n; ++i) {
        int w = top_side ? top(i) : bot(i);
        int pw = partner(w);
        if (is_top(pw) != top_side) {
            // propagating line with endpoint i on this side
            if (side == 0 && i < a) return false;
            if (side == 1 && i > b) return false;
        } else {
            int c = std::min(i, pos(pw)), d = std::max(i, pos(pw));
            if (c < a && d > b) return false;
        }
    }
    return true;
}

Diagram Diagram::flip() const {
    Diagram d(nb_, nt_);
    for (int v = 0; v < size(); ++v) {
        auto map = [&](int x) { return is_top(x) ? d.bot(x) : d.top(x - nt_); };
        d.partner_[static_cast<size_t>(map(v))] = map(partner(v));
        d.word_[static_cast<size_t>(map(v))] = word_from(v);
    }
    return d;
}

Diagram Diagram::reflect() const {
    Diagram d(nt_, nb_);
    for (int v = 0; v < size(); ++v) {
        auto map = [&](int x) { return is_top(x) ? d.top(nt_ - 1 - x) : d.bot(nb_ - 1 - (x - nt_)); };
        d.partner_[static_cast<size_t>(map(v))] = map(partner(v));
        d.word_[static_cast<size_t>(map(v))] = word_swap(word_from(v));
    }
    return d;
}

bool Diagram::valid(std::string* why) const {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    const int n = size();
    for (int v = 0; v < n; ++v) {
        int u = partner(v);
        if (u < 0 || u >= n || u == v || partner(u) != v) return fail("partner map is not an involution");
        if (word_from(u) != word_reverse(word_from(v))) return fail("inconsistent words");
    }
    // planarity: boundary order top left-to-right, then bottom right-to-left
    std::vector<int> order;
    for (int i = 0; i < nt_; ++i) order.push_back(top(i));
    for (int j = nb_ - 1; j >= 0; --j) order.push_back(bot(j));
    std::vector<int> seen(static_cast<size_t>(n), 0), st;
    for (int v : order) {
        int u = partner(v);
        if (seen[static_cast<size_t>(u)]) {
            if (st.empty() || st.back() != u) return fail("crossing lines");
            st.pop_back();
        } else {
            st.push_back(v);
        }
        seen[static_cast<size_t>(v)] = 1;
    }
    const auto ls = lines();
    const int p = static_cast<int>(ls.size());
    for (size_t k = 0; k < ls.size(); ++k) {
        Word w = word_from(top(ls[k].first));
        if (p >= 2) {
            bool ok = w == Word::E || (k == 0 && w == Word::L) || (k + 1 == ls.size() && w == Word::R);
            if (!ok) return fail("illegal decoration on a propagating line");
        }
    }
    bool top_lr = false, bot_lr = false;
    for (int side = 0; side < 2; ++side) {
        const bool top_side = side == 0;
        const int m = top_side ? nt_ : nb_;
        int last_left = -1, first_right = m;
        for (int i = 0; i < m; ++i) {
            int v = top_side ? top(i) : bot(i);
            int u = partner(v);
            if (is_top(u) != top_side || pos(u) < i) continue;  // line or right endpoint
            Word w = word_from(v);
            bool hasL = w == Word::L || w == Word::LR || w == Word::RL;
            bool hasR = w == Word::R || w == Word::LR || w == Word::RL;
            if (w == Word::RL) return fail("arc word RL read from its left endpoint");
            if (hasL && !exposed(v, 0)) return fail("left blob on a line that is not 0-exposed");
            if (hasR && !exposed(v, 1)) return fail("right blob on a line that is not 1-exposed");
            if (hasL) last_left = std::max(last_left, i);
            if (hasR) first_right = std::min(first_right, i);
            if (hasL && hasR) (top_side ? top_lr : bot_lr) = true;
            if (hasL && first_right < i) return fail("right-blobbed arc left of a left-blobbed arc");
        }
        (void)last_left;
    }
    if (top_lr && bot_lr) return fail("top and bottom LR arcs (topological relation applies)");
    return true;
}

std::string Diagram::str() const {
    std::ostringstream out;
    if (nt_ == nb_) out << nt_ << ";";
    else out << nt_ << "," << nb_ << ";";
    bool first = true;
    auto emit = [&](int a, int b) {
        auto name = [&](int v) {
            return is_top(v) ? std::to_string(pos(v) + 1) : std::to_string(pos(v) + 1) + "'";
        };
        out << (first ? " " : ", ") << "(" << name(a) << "~" << name(b) << ")[" << word_str(word_from(a)) << "]";
        first = false;
    };
    for (int i = 0; i < nt_; ++i) {
        int u = partner(i);
        if (!is_top(u) || u > i) emit(i, u);
    }
    for (int j = 0; j < nb_; ++j) {
        int v = bot(j), u = partner(v);
        if (!is_top(u) && pos(u) > j) emit(v, u);
    }
    return out.str();
}

Diagram Diagram::parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw ParseError("diagram text needs 'n;' header: " + text);
    std::string head = text.substr(0, semi);
    int nt = 0, nb = 0;
    try {
        auto comma = head.find(',');
        if (comma == std::string::npos) {
            nt = nb = std::stoi(head);
        } else {
            nt = std::stoi(head.substr(0, comma));
            nb = std::stoi(head.substr(comma + 1));
        }
    } catch (const std::logic_error&) {
        throw ParseError("bad diagram header: " + head);
    }
    if (nt < 0 || nb < 0 || nt > 64 || nb > 64) throw ParseError("diagram size out of range");
    Diagram d(nt, nb);
    size_t i = semi + 1;
    auto skip = [&]() {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    auto vertex = [&]() {
        size_t s = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (s == i) throw ParseError("expected a vertex number in: " + text);
        int k = std::stoi(text.substr(s, i - s)) - 1;
        bool bottom = i < text.size() && text[i] == '\'';
        if (bottom) ++i;
        int lim = bottom ? nb : nt;
        if (k < 0 || k >= lim) throw ParseError("vertex out of range in: " + text);
        return bottom ? d.bot(k) : d.top(k);
    };
    auto expect = [&](char c) {
        if (i >= text.size() || text[i] != c) throw ParseError(std::string("expected '") + c + "' in: " + text);
        ++i;
    };
    skip();
    while (i < text.size()) {
        expect('(');
        int a = vertex();
        expect('~');
        int b = vertex();
        expect(')');
        expect('[');
        size_t s = i;
        while (i < text.size() && text[i] != ']') ++i;
        std::string w = text.substr(s, i - s);
        expect(']');
        if (d.partner(a) != -1 || d.partner(b) != -1 || a == b) throw ParseError("vertex used twice in: " + text);
        d.connect(a, b, parse_word(w));
        skip();
    }
    std::string why;
    if (!d.valid(&why)) throw ParseError("invalid diagram (" + why + "): " + text);
    return d;
}

// ---------------------------------------------------------------- composition

Composite compose(const Diagram& U, const Diagram& D) {
    if (U.n_bot() != D.n_top()) throw std::invalid_argument("compose: size mismatch");
    const int p = U.n_top(), m = U.n_bot(), r = D.n_bot();
    Composite out{Diagram(p, r), ParamMono{}};
    std::vector<char> mid_seen(static_cast<size_t>(m), 0);
    std::vector<char> done(static_cast<size_t>(p + r), 0);

    // Walks from a vertex of U (inU) or D; returns the result vertex reached.
    auto walk = [&](bool inU, int v, std::string& letters) -> int {
        for (;;) {
            const Diagram& X = inU ? U : D;
            letters += word_str(X.word_from(v));
            int u = X.partner(v);
            if (inU) {
                if (U.is_top(u)) return out.d.top(u);
                int k = u - p;
                mid_seen[static_cast<size_t>(k)] = 1;
                inU = false;
                v = D.top(k);
            } else {
                if (!D.is_top(u)) return out.d.bot(u - m);
                int k = u;
                mid_seen[static_cast<size_t>(k)] = 1;
                inU = true;
                v = U.bot(k);
            }
        }
    };

    auto finish = [&](int a, int b, const std::string& letters) {
        auto [w, mono] = reduce_line(letters);
        out.mono *= mono;
        out.d.connect(a, b, w);
        done[static_cast<size_t>(a)] = done[static_cast<size_t>(b)] = 1;
    };

    for (int i = 0; i < p; ++i) {
        if (done[static_cast<size_t>(i)]) continue;
        std::string letters;
        int end = walk(true, U.top(i), letters);
        finish(out.d.top(i), end, letters);
    }
    for (int j = 0; j < r; ++j) {
        int v = out.d.bot(j);
        if (done[static_cast<size_t>(v)]) continue;
        std::string letters;
        int end = walk(false, D.bot(j), letters);
        finish(v, end, letters);
    }
    // Closed loops in the middle.
    for (int k = 0; k < m; ++k) {
        if (mid_seen[static_cast<size_t>(k)]) continue;
        std::string letters;
        int v = U.bot(k);
        bool inU = true;
        mid_seen[static_cast<size_t>(k)] = 1;
        for (;;) {
            const Diagram& X = inU ? U : D;
            letters += word_str(X.word_from(v));
            int u = X.partner(v);
            int kk = inU ? u - p : u;
            if (inU) {
                v = D.top(kk);
            } else {
                v = U.bot(kk);
            }
            inU = !inU;
            if (kk == k && inU) break;
            mid_seen[static_cast<size_t>(kk)] = 1;
        }
        out.mono *= reduce_loop(letters);
    }

    // Topological relation: with no propagating lines, a top LR arc and a
    // bottom LR arc become kappa_LR times an L line and an R line.
    if (out.d.num_lines() == 0) {
        int ti = -1, bi = -1;
        for (int i = 0; i < p; ++i) {
            int u = out.d.partner(i);
            if (out.d.is_top(u) && u > i && out.d.word_from(i) == Word::LR) ti = i;
        }
        for (int j = 0; j < r; ++j) {
            int v = out.d.bot(j), u = out.d.partner(v);
            if (!out.d.is_top(u) && u > v && out.d.word_from(v) == Word::LR) bi = j;
        }
        if (ti >= 0 && bi >= 0) {
            int tj = out.d.partner(ti);
            int bj = out.d.pos(out.d.partner(out.d.bot(bi)));
            out.d.connect(out.d.top(ti), out.d.bot(bi), Word::L);
            out.d.connect(tj, out.d.bot(bj), Word::R);
            out.mono.e[P_KLR] += 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------- enumeration

std::vector<Diagram> half_shapes(int n, int p) {
    std::vector<Diagram> out;
    if (p < 0 || p > n || (n - p) % 2) return out;
    std::vector<int> stack;
    std::vector<int> match(static_cast<size_t>(n), -2);  // -1 means line
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == n) {
            if (stack.empty() && used == p) {
                Diagram d(n, p);
                int k = 0;
                for (int a = 0; a < n; ++a) {
                    if (match[static_cast<size_t>(a)] == -1) d.connect(d.top(a), d.bot(k++), Word::E);
                    else if (match[static_cast<size_t>(a)] > a) d.connect(d.top(a), d.top(match[static_cast<size_t>(a)]), Word::E);
                }
                out.push_back(d);
            }
            return;
        }
        int remaining = n - i;
        if (static_cast<int>(stack.size()) + (p - used) > remaining) return;
        if (stack.empty() && used < p) {
            match[static_cast<size_t>(i)] = -1;
            rec(i + 1, used + 1);
        }
        stack.push_back(i);
        rec(i + 1, used);
        stack.pop_back();
        if (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            match[static_cast<size_t>(a)] = i;
            match[static_cast<size_t>(i)] = a;
            rec(i + 1, used);
            stack.push_back(a);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<Diagram> decorate(const Diagram& shape) {
    struct Slot {
        int v;
        std::vector<Word> options;
    };
    std::vector<Slot> slots;
    const auto ls = shape.lines();
    const int p = static_cast<int>(ls.size());
    for (size_t k = 0; k < ls.size(); ++k) {
        Slot s{shape.top(ls[k].first), {Word::E}};
        if (p == 1) s.options = {Word::E, Word::L, Word::R, Word::LR, Word::RL};
        else if (k == 0) s.options.push_back(Word::L);
        else if (k + 1 == ls.size()) s.options.push_back(Word::R);
        slots.push_back(s);
    }
    for (int v = 0; v < shape.size(); ++v) {
        int u = shape.partner(v);
        if (shape.propagating(v) || shape.is_top(v) != shape.is_top(u) || u < v) continue;
        bool e0 = shape.exposed(v, 0), e1 = shape.exposed(v, 1);
        Slot s{v, {Word::E}};
        if (e0) s.options.push_back(Word::L);
        if (e1) s.options.push_back(Word::R);
        if (e0 && e1) s.options.push_back(Word::LR);
        if (s.options.size() > 1) slots.push_back(s);
    }
    std::vector<Diagram> out;
    Diagram d = shape;
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == slots.size()) {
            if (d.valid()) out.push_back(d);
            return;
        }
        for (Word w : slots[k].options) {
            d.set_word(slots[k].v, w);
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Diagram> enumerate_basis(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<Diagram> out;
    for (int p = n % 2; p <= n; p += 2) {
        auto shapes = half_shapes(n, p);
        for (const auto& t : shapes)
            for (const auto& b : shapes) {
                // glue: top half t, bottom half b, lines matched in order
                Diagram d(n, n);
                auto tl = t.lines();
                auto bl = b.lines();
                for (int i = 0; i < n; ++i) {
                    int u = t.partner(i);
                    if (t.is_top(u) && u > i) d.connect(d.top(i), d.top(u), Word::E);
                    int w = b.partner(i);
                    if (b.is_top(w) && w > i) d.connect(d.bot(i), d.bot(w), Word::E);
                }
                for (size_t k = 0; k < tl.size(); ++k) d.connect(d.top(tl[k].first), d.bot(bl[k].first), Word::E);
                for (auto& x : decorate(d)) out.push_back(std::move(x));
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Diagram> generator_diagrams(int n) {
    std::vector<Diagram> g;
    Diagram e = Diagram::identity(n);
    e.set_word(e.top(0), Word::L);
    g.push_back(e);
    for (int i = 0; i + 1 < n; ++i) {
        Diagram d(n, n);
        for (int j = 0; j < n; ++j)
            if (j != i && j != i + 1) d.connect(d.top(j), d.bot(j), Word::E);
        d.connect(d.top(i), d.top(i + 1), Word::E);
        d.connect(d.bot(i), d.bot(i + 1), Word::E);
        g.push_back(d);
    }
    Diagram f = Diagram::identity(n);
    f.set_word(f.top(n - 1), Word::R);
    g.push_back(f);
    return g;
}

DiagramStats stats(const Diagram& d) { return {d.num_undecorated_lines(), d.leftmost_line_has_left_blob()}; }

// ---------------------------------------------------------------- algebra

BlobAlgebra::BlobAlgebra(int n, const Ring* ring, const Params& params) : n_(n), ring_(ring), params_(params) {}

BlobAlgebra::BlobAlgebra(int n, const Ring* ring, Parametrisation tag)
    : n_(n), ring_(ring), params_(parametrisation(tag, ring)) {}

RingElem BlobAlgebra::scalar(const ParamMono& m) const {
    RingElem out = RingElem::one(ring_);
    for (int i = 0; i < 6; ++i) {
        int k = m.e[static_cast<size_t>(i)];
        if (!k) continue;
        auto key = std::make_pair(i, k);
        auto it = pow_cache_.find(key);
        if (it == pow_cache_.end()) it = pow_cache_.emplace(key, params_[i].pow(k).normalize()).first;
        out = out * it->second;
    }
    return out;
}

AlgebraElem::AlgebraElem(const BlobAlgebra* a, const Diagram& d) : alg_(a) {
    terms_.emplace(d, RingElem::one(a->ring()));
}

AlgebraElem::AlgebraElem(const BlobAlgebra* a, const Diagram& d, const RingElem& c) : alg_(a) { add(d, c); }

void AlgebraElem::add(const Diagram& d, const RingElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        terms_.emplace(d, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElem AlgebraElem::operator+(const AlgebraElem& o) const {
    AlgebraElem r(*this);
    for (const auto& [d, c] : o.terms_) r.add(d, c);
    return r;
}

AlgebraElem AlgebraElem::operator-(const AlgebraElem& o) const {
    AlgebraElem r(*this);
    for (const auto& [d, c] : o.terms_) r.add(d, -c);
    return r;
}

AlgebraElem AlgebraElem::operator*(const AlgebraElem& o) const {
    AlgebraElem r(alg_);
    for (const auto& [d1, c1] : terms_)
        for (const auto& [d2, c2] : o.terms_) {
            Composite comp = compose(d1, d2);
            r.add(comp.d, c1 * c2 * alg_->scalar(comp.mono));
        }
    return r;
}

AlgebraElem AlgebraElem::scaled(const RingElem& c) const {
    AlgebraElem r(alg_);
    for (const auto& [d, x] : terms_) r.add(d, x * c);
    return r;
}

AlgebraElem AlgebraElem::flip() const {
    AlgebraElem r(alg_);
    for (const auto& [d, x] : terms_) r.add(d.flip(), x);
    return r;
}

std::string AlgebraElem::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.normalize().str() + ")*{" + d.str() + "}";
    }
    return out;
}

std::vector<AlgebraElem> generators(const BlobAlgebra& a) {
    std::vector<AlgebraElem> out;
    for (const auto& d : generator_diagrams(a.n())) out.emplace_back(&a, d);
    return out;
}

std::vector<RelationResult> presentation_check(const BlobAlgebra& a) {
    const int n = a.n();
    if (n < 1) throw std::invalid_argument("presentation_check needs n >= 1");
    auto E = generators(a);
    const Params& P = a.params();
    std::vector<RelationResult> out;
    auto name = [n](int i) {
        if (i == 0) return std::string("E0");
        return "E" + std::to_string(i) + (i == n ? "(f)" : "");
    };
    auto check = [&](const std::string& nm, const AlgebraElem& lhs, const AlgebraElem& rhs) {
        out.push_back({nm, lhs == rhs});
    };
    for (int i = 0; i <= n; ++i) {
        const RingElem& s = i == 0 ? P.deltaL : i == n ? P.deltaR : P.delta;
        check(name(i) + "^2 = " + (i == 0 ? "delta_L " : i == n ? "delta_R " : "delta ") + name(i),
              E[static_cast<size_t>(i)] * E[static_cast<size_t>(i)], E[static_cast<size_t>(i)].scaled(s));
    }
    for (int i = 0; i <= n; ++i)
        for (int j = i + 2; j <= n; ++j)
            check(name(i) + name(j) + " = " + name(j) + name(i), E[static_cast<size_t>(i)] * E[static_cast<size_t>(j)],
                  E[static_cast<size_t>(j)] * E[static_cast<size_t>(i)]);
    if (n >= 2) {
        check("E1E0E1 = kappa_L E1", E[1] * E[0] * E[1], E[1].scaled(P.kappaL));
        for (int i = 1; i <= n - 2; ++i) {
            auto& x = E[static_cast<size_t>(i)];
            auto& y = E[static_cast<size_t>(i + 1)];
            check(name(i) + name(i + 1) + name(i) + " = " + name(i), x * y * x, x);
            check(name(i + 1) + name(i) + name(i + 1) + " = " + name(i + 1), y * x * y, y);
        }
        auto& x = E[static_cast<size_t>(n - 1)];
        check(name(n - 1) + name(n) + name(n - 1) + " = kappa_R " + name(n - 1), x * E[static_cast<size_t>(n)] * x,
              x.scaled(P.kappaR));
    }
    AlgebraElem I = E[1 % (n + 1)];
    AlgebraElem J = E[0];
    for (int i = 3; i <= n; i += 2) I = I * E[static_cast<size_t>(i)];
    for (int i = 2; i <= n; i += 2) J = J * E[static_cast<size_t>(i)];
    check("IJI = kappa_LR I", I * J * I, I.scaled(P.kappaLR));
    check("JIJ = kappa_LR J", J * I * J, J.scaled(P.kappaLR));
    return out;
}

}  // namespace sblob
