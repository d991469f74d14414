#include "sblob/qhpos.hpp"

#include "sblob/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace sblob {

// ---------------------------------------------------------------- posets

std::string LabelPoset::dot(const std::string& name) const {
    std::ostringstream o;
    o << "digraph \"" << name << "\" {\n  rankdir=TB;\n";
    for (int e : elements) o << "  \"" << e << "\";\n";
    for (const auto& [a, b] : covers) o << "  \"" << a << "\" -> \"" << b << "\";\n";
    o << "}\n";
    return o.str();
}

LabelPoset make_poset(int n, const std::set<std::pair<int, int>>& generators) {
    LabelPoset p;
    p.n = n;
    p.elements = cell_labels(n);
    p.relations = generators;
    // Warshall closure over the 2n labels.
    for (int k : p.elements)
        for (int i : p.elements)
            if (p.relations.count({i, k}))
                for (int j : p.elements)
                    if (p.relations.count({k, j})) p.relations.insert({i, j});
    for (int e : p.elements)
        if (p.relations.count({e, e})) throw std::invalid_argument("make_poset: generating pairs contain a cycle");
    for (const auto& [a, b] : p.relations) {
        bool direct = true;
        for (int c : p.elements)
            if (p.relations.count({a, c}) && p.relations.count({c, b})) {
                direct = false;
                break;
            }
        if (direct) p.covers.insert({a, b});
    }
    return p;
}

namespace {

int layer(int n, int l) { return l == -n ? n : std::abs(l); }

}  // namespace

LabelPoset cellular_poset(int n) {
    std::set<std::pair<int, int>> gens;
    for (int a : cell_labels(n))
        for (int b : cell_labels(n))
            if (layer(n, b) == layer(n, a) + 1) gens.insert({a, b});
    return make_poset(n, gens);
}

LabelPoset coarsened_poset(int n) {
    std::set<std::pair<int, int>> gens;
    auto add = [&](int a, int b) {
        if (valid_label(n, a) && valid_label(n, b)) gens.insert({a, b});
    };
    for (int b : {1, -1, 2, -2}) add(0, b);
    for (int k = 1; k <= n; ++k) {
        add(-k, -(k + 2));
        add(-k, k + 3);
        add(-k, -(k + 3));
        add(k, k + 2);
        add(k, k + 3);
        add(k, -(k + 3));
    }
    return make_poset(n, gens);
}

std::set<std::pair<int, int>> vanishing_pairs(int n) {
    std::set<std::pair<int, int>> out;
    auto add = [&](int a, int b) {
        if (valid_label(n, a) && valid_label(n, b)) out.insert({a, b});
    };
    for (int l = 2; l <= n; ++l)
        for (int s : {1, -1}) {
            add(l - 1, s * l);
            add(-l + 1, s * l);
        }
    if (n >= 3)
        for (int l = 3; l <= n; ++l) {
            add(l - 2, -l);
            add(-l + 2, l);
        }
    for (int l = 5; l <= n; ++l) add(l - 4, -l);
    for (int l = 5; l <= n - 1; ++l) add(-(l - 4), l);
    return out;
}

// ---------------------------------------------------------------- simples

namespace {

FMatrix to_fmatrix(const Matrix& m) {
    FMatrix out;
    for (const auto& row : m) {
        std::vector<FElem> r;
        for (const auto& x : row) {
            if (!x.is_constant()) throw std::invalid_argument("a concrete specialization is required");
            r.push_back(x.to_felem());
        }
        out.push_back(std::move(r));
    }
    return out;
}

SparseRow sparse(const std::vector<FElem>& v) {
    SparseRow r;
    for (size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) r.emplace(static_cast<int>(j), v[j]);
    return r;
}

// Trace data for the simple head of one cell module: Q = C^{-1} P where P
// spans the row space of the Gram matrix and C is an invertible r x r block
// of P at columns pivots. The projection S Q has kernel rad, so the trace of
// x on the head is trace(rho(x) S Q).
struct HeadData {
    int rank = 0;
    std::vector<int> pos;  // basis index -> row of Q, or -1
    FMatrix Q;
};

HeadData head_data(const CellModule& m) {
    HeadData h;
    const int d = m.dim();
    FMatrix G = to_fmatrix(m.gram());
    FMatrix P;
    Echelon rows(d);
    for (const auto& row : G)
        if (rows.insert(sparse(row))) P.push_back(row);
    h.rank = static_cast<int>(P.size());
    h.pos.assign(static_cast<size_t>(d), -1);
    if (h.rank == 0) return h;
    Echelon cols(h.rank);
    FMatrix C(static_cast<size_t>(h.rank));
    int found = 0;
    for (int k = 0; k < d && found < h.rank; ++k) {
        std::vector<FElem> col;
        for (const auto& row : P) col.push_back(row[static_cast<size_t>(k)]);
        if (!cols.insert(sparse(col))) continue;
        for (int r = 0; r < h.rank; ++r) C[static_cast<size_t>(r)].push_back(col[static_cast<size_t>(r)]);
        h.pos[static_cast<size_t>(k)] = found++;
    }
    h.Q = solve(C, P);
    return h;
}

}  // namespace

std::map<int, int> simple_dims(int n, const Specialization& s, Parametrisation p) {
    BlobAlgebra a(n, Ring::get(s), p);
    require_unit_parameters(a);
    std::map<int, int> out;
    for (int l : cell_labels(n)) out[l] = rank(to_fmatrix(CellModule(&a, l).gram()));
    return out;
}

// ---------------------------------------------------------------- decomposition

int DecompositionData::at(int lambda, int mu) const {
    auto it = mult.find({lambda, mu});
    return it == mult.end() ? 0 : it->second;
}

DecompositionData decomposition(int n, const Specialization& s, Parametrisation p) {
    if (!s.concrete()) throw std::invalid_argument("decomposition needs a concrete specialization: " + s.key());
    const Ring* r = Ring::get(s);
    const Field* f = r->field();
    BlobAlgebra a(n, r, p);
    require_unit_parameters(a);

    DecompositionData out;
    out.n = n;
    out.spec_key = s.key();
    out.labels = cell_labels(n);
    const int L = static_cast<int>(out.labels.size());
    std::vector<CellModule> mods;
    std::vector<HeadData> heads;
    for (int l : out.labels) {
        mods.emplace_back(&a, l);
        heads.push_back(head_data(mods.back()));
        out.standard_dims[l] = mods.back().dim();
        out.simple_dims[l] = heads.back().rank;
    }

    // Basis diagrams interleaved across cells, identity first.
    std::map<int, std::vector<Diagram>> by_label;
    for (auto& d : enumerate_basis(n)) by_label[d.label()].push_back(std::move(d));
    std::vector<Diagram> order{Diagram::identity(n)};
    for (size_t i = 0;; ++i) {
        bool any = false;
        for (auto& [l, v] : by_label)
            if (i < v.size()) {
                any = true;
                if (!(v[i] == order[0])) order.push_back(v[i]);
            }
        if (!any) break;
    }

    auto characters = [&](const Diagram& x, std::vector<FElem>& sb, std::vector<FElem>& lv) {
        sb.assign(static_cast<size_t>(L), FElem(f));
        lv.assign(static_cast<size_t>(L), FElem(f));
        for (int li = 0; li < L; ++li) {
            const CellModule& m = mods[static_cast<size_t>(li)];
            const HeadData& h = heads[static_cast<size_t>(li)];
            for (int k = 0; k < m.dim(); ++k) {
                int j;
                RingElem c;
                if (!m.act_basis(x, k, j, c)) continue;
                FElem cf = c.to_felem();
                if (j == k) sb[static_cast<size_t>(li)] += cf;
                int pk = h.pos[static_cast<size_t>(k)];
                if (pk >= 0) lv[static_cast<size_t>(li)] += cf * h.Q[static_cast<size_t>(pk)][static_cast<size_t>(j)];
            }
        }
    };

    Echelon ech(L);
    FMatrix A, B;
    std::vector<std::pair<std::vector<FElem>, std::vector<FElem>>> checks;
    for (const auto& x : order) {
        if (ech.rank() == L && static_cast<int>(checks.size()) >= L) break;
        std::vector<FElem> sb, lv;
        characters(x, sb, lv);
        if (ech.rank() < L && ech.insert(sparse(lv))) {
            A.push_back(lv);
            B.push_back(sb);
        } else if (static_cast<int>(checks.size()) < L && !sparse(sb).empty()) {
            checks.emplace_back(sb, lv);
        }
    }
    if (ech.rank() < L)
        throw CharacterRankDeficiency("simple characters have rank " + std::to_string(ech.rank()) + " < " +
                                      std::to_string(L) + " at " + s.key());
    FMatrix X = solve(A, B);  // X[mu][lambda] = [Sb(lambda) : L(mu)]
    for (const auto& [sb, lv] : checks)
        for (int li = 0; li < L; ++li) {
            FElem sum(f);
            for (int mi = 0; mi < L; ++mi) sum += lv[static_cast<size_t>(mi)] * X[static_cast<size_t>(mi)][static_cast<size_t>(li)];
            if (sum != sb[static_cast<size_t>(li)])
                throw std::logic_error("character identity fails on a check diagram at " + s.key());
        }
    for (int mi = 0; mi < L; ++mi)
        for (int li = 0; li < L; ++li) {
            const FElem& x = X[static_cast<size_t>(mi)][static_cast<size_t>(li)];
            if (x.is_zero()) continue;
            if (!x.is_rational() || x.rational_value().get_den() != 1 || x.rational_value() < 0)
                throw std::logic_error("non-integral multiplicity " + x.str() + " at " + s.key());
            out.mult[{out.labels[static_cast<size_t>(li)], out.labels[static_cast<size_t>(mi)]}] =
                static_cast<int>(x.rational_value().get_num().get_si());
        }
    out.diagrams_solved = L;
    out.diagrams_checked = static_cast<int>(checks.size());
    return out;
}

bool ext_vanishing_check(const DecompositionData& d, int lambda, int mu) {
    if (!cellular_poset(d.n).greater(lambda, mu))
        throw std::invalid_argument("ext_vanishing_check needs mu < lambda in the cellular order");
    return d.at(lambda, mu) == 0;
}

bool ext_vanishing_check(int n, const Specialization& s, int lambda, int mu, Parametrisation p) {
    if (!cellular_poset(n).greater(lambda, mu))
        throw std::invalid_argument("ext_vanishing_check needs mu < lambda in the cellular order");
    return ext_vanishing_check(decomposition(n, s, p), lambda, mu);
}

int trivial_submodule_dim(const CellModule& m) {
    const int d = m.dim();
    Echelon e(d);
    for (const auto& g : generator_diagrams(m.n())) {
        std::map<int, SparseRow> rows;
        for (int i = 0; i < d; ++i) {
            int j;
            RingElem c;
            if (!m.act_basis(g, i, j, c)) continue;
            if (!c.is_constant()) throw std::invalid_argument("trivial_submodule_dim needs a concrete specialization");
            rows[j][i] = c.to_felem();
        }
        for (auto& [j, row] : rows) e.insert(std::move(row));
    }
    return d - e.rank();
}

// ---------------------------------------------------------------- battery

std::vector<BatteryPoint> parse_battery(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("battery JSON: ") + e.what());
    }
    if (!j.contains("points") || !j["points"].is_array()) throw ParseError("battery JSON needs a \"points\" array");
    std::vector<BatteryPoint> out;
    for (const auto& p : j["points"]) {
        BatteryPoint b;
        b.name = p.at("name").get<std::string>();
        b.spec = Specialization::parse_key(p.at("spec").get<std::string>());
        if (p.contains("param")) b.param = parse_parametrisation(p["param"].get<std::string>());
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<BatteryPoint> load_battery(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open battery file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_battery(ss.str());
}

int PosetAudit::missing_witnesses() const {
    int k = 0;
    for (const auto& w : witnesses)
        if (w.point.empty()) ++k;
    return k;
}

PosetAudit audit_poset(int n, const std::vector<BatteryPoint>& battery, int jobs) {
    PosetAudit audit;
    audit.n = n;
    LabelPoset cell = cellular_poset(n), coarse = coarsened_poset(n);
    audit.subset_of_cellular = std::includes(cell.relations.begin(), cell.relations.end(), coarse.relations.begin(),
                                             coarse.relations.end());

    std::vector<std::optional<DecompositionData>> data(battery.size());
    auto work = [&](size_t i) {
        try {
            data[i] = decomposition(n, battery[i].spec, battery[i].param);
        } catch (const NonUnitParameter&) {
            data[i].reset();
        }
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < battery.size(); ++i) work(i);
    } else {
        for (size_t start = 0; start < battery.size(); start += static_cast<size_t>(jobs)) {
            std::vector<std::future<void>> fs;
            for (size_t i = start; i < std::min(battery.size(), start + static_cast<size_t>(jobs)); ++i)
                fs.push_back(std::async(std::launch::async, work, i));
            for (auto& fu : fs) fu.get();
        }
    }

    const auto vanish = vanishing_pairs(n);
    for (size_t i = 0; i < battery.size(); ++i) {
        if (!data[i]) {
            audit.skipped.push_back(battery[i].name);
            continue;
        }
        audit.used.push_back(battery[i].name);
        for (const auto& [a, b] : vanish)
            if (int m = data[i]->at(a, b)) audit.violations.emplace_back(battery[i].name, a, b, m);
    }
    for (const auto& [a, b] : coarse.covers) {
        if (a == 0 || b == 0) continue;
        LinkWitness w{a, b, "", 0};
        for (size_t i = 0; i < battery.size() && w.point.empty(); ++i)
            if (data[i] && data[i]->at(a, b) > 0) {
                w.point = battery[i].name;
                w.multiplicity = data[i]->at(a, b);
            }
        audit.witnesses.push_back(w);
    }
    return audit;
}

}  // namespace sblob
