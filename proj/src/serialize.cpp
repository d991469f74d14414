#include "sblob/serialize.hpp"

#include "sblob/errors.hpp"

namespace sblob {

namespace {

const Ring* ring_of(const json& j) { return Ring::get(Specialization::parse_key(j.at("spec").get<std::string>())); }

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

json to_json(const Diagram& d) { return d.str(); }

Diagram diagram_from_json(const json& j) {
    return guarded("diagram", [&] { return Diagram::parse(j.get<std::string>()); });
}

json to_json(const RingElem& x) { return {{"spec", x.ring()->spec().key()}, {"value", x.str()}}; }

RingElem ring_elem_from_json(const json& j) {
    return guarded("ring element", [&] { return RingElem::parse(ring_of(j), j.at("value").get<std::string>()); });
}

json to_json(const Matrix& m, const Ring* r) {
    json rows = json::array();
    for (const auto& row : m) {
        json jr = json::array();
        for (const auto& x : row) jr.push_back(x.str());
        rows.push_back(jr);
    }
    return {{"spec", r->spec().key()}, {"rows", rows}};
}

Matrix matrix_from_json(const json& j) {
    return guarded("matrix", [&] {
        const Ring* r = ring_of(j);
        Matrix m;
        for (const auto& row : j.at("rows")) {
            std::vector<RingElem> out;
            for (const auto& x : row) out.push_back(RingElem::parse(r, x.get<std::string>()));
            m.push_back(std::move(out));
        }
        return m;
    });
}

json to_json(const LabelPoset& p) {
    json covers = json::array(), rel = json::array();
    for (const auto& [a, b] : p.covers) covers.push_back({a, b});
    for (const auto& [a, b] : p.relations) rel.push_back({a, b});
    return {{"n", p.n}, {"elements", p.elements}, {"covers", covers}, {"relations", rel}};
}

LabelPoset poset_from_json(const json& j) {
    return guarded("poset", [&] {
        LabelPoset p;
        p.n = j.at("n").get<int>();
        p.elements = j.at("elements").get<std::vector<int>>();
        for (const auto& c : j.at("covers")) p.covers.insert({c.at(0).get<int>(), c.at(1).get<int>()});
        for (const auto& c : j.at("relations")) p.relations.insert({c.at(0).get<int>(), c.at(1).get<int>()});
        return p;
    });
}

json to_json(const DecompositionData& d) {
    json std_dims = json::array(), simple = json::array(), mat = json::array();
    for (int l : d.labels) {
        std_dims.push_back(d.standard_dims.at(l));
        simple.push_back(d.simple_dims.at(l));
        json row = json::array();
        for (int m : d.labels) row.push_back(d.at(l, m));
        mat.push_back(row);
    }
    return {{"n", d.n},
            {"spec", d.spec_key},
            {"labels", d.labels},
            {"standard_dims", std_dims},
            {"simple_dims", simple},
            {"multiplicities", mat},
            {"diagrams_solved", d.diagrams_solved},
            {"diagrams_checked", d.diagrams_checked}};
}

DecompositionData decomposition_from_json(const json& j) {
    return guarded("decomposition", [&] {
        DecompositionData d;
        d.n = j.at("n").get<int>();
        d.spec_key = j.at("spec").get<std::string>();
        d.labels = j.at("labels").get<std::vector<int>>();
        for (size_t i = 0; i < d.labels.size(); ++i) {
            const int l = d.labels[i];
            d.standard_dims[l] = j.at("standard_dims").at(i).get<int>();
            d.simple_dims[l] = j.at("simple_dims").at(i).get<int>();
            for (size_t k = 0; k < d.labels.size(); ++k)
                if (int m = j.at("multiplicities").at(i).at(k).get<int>()) d.mult[{l, d.labels[k]}] = m;
        }
        d.diagrams_solved = j.at("diagrams_solved").get<int>();
        d.diagrams_checked = j.at("diagrams_checked").get<int>();
        return d;
    });
}

json to_json(const PosetAudit& a) {
    json viol = json::array(), wit = json::array();
    for (const auto& [p, l, m, k] : a.violations) viol.push_back({{"point", p}, {"lambda", l}, {"mu", m}, {"multiplicity", k}});
    for (const auto& w : a.witnesses)
        wit.push_back({{"upper", w.upper}, {"lower", w.lower}, {"point", w.point}, {"multiplicity", w.multiplicity}});
    return {{"n", a.n},
            {"used", a.used},
            {"skipped", a.skipped},
            {"violations", viol},
            {"witnesses", wit},
            {"subset_of_cellular", a.subset_of_cellular}};
}

PosetAudit audit_from_json(const json& j) {
    return guarded("audit", [&] {
        PosetAudit a;
        a.n = j.at("n").get<int>();
        a.used = j.at("used").get<std::vector<std::string>>();
        a.skipped = j.at("skipped").get<std::vector<std::string>>();
        for (const auto& v : j.at("violations"))
            a.violations.emplace_back(v.at("point").get<std::string>(), v.at("lambda").get<int>(), v.at("mu").get<int>(),
                                      v.at("multiplicity").get<int>());
        for (const auto& w : j.at("witnesses"))
            a.witnesses.push_back({w.at("upper").get<int>(), w.at("lower").get<int>(), w.at("point").get<std::string>(),
                                   w.at("multiplicity").get<int>()});
        a.subset_of_cellular = j.at("subset_of_cellular").get<bool>();
        return a;
    });
}

json to_json(const IdentityReport& r) {
    return {{"name", r.name},
            {"ok", r.ok()},
            {"symbolic_ok", r.symbolic_ok},
            {"symbolic_cases", r.symbolic_cases},
            {"requested", r.requested},
            {"substitutions", r.substitutions},
            {"substitutions_ok", r.substitutions_ok},
            {"failure", r.failure}};
}

IdentityReport identity_report_from_json(const json& j) {
    return guarded("identity report", [&] {
        IdentityReport r;
        r.name = j.at("name").get<std::string>();
        r.symbolic_ok = j.at("symbolic_ok").get<bool>();
        r.symbolic_cases = j.at("symbolic_cases").get<int>();
        r.requested = j.at("requested").get<int>();
        r.substitutions = j.at("substitutions").get<int>();
        r.substitutions_ok = j.at("substitutions_ok").get<int>();
        r.failure = j.at("failure").get<std::string>();
        return r;
    });
}

json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"generator", c.generator}, {"pass", c.pass}, {"residual", c.residual}});
    return {{"pass", r.pass()}, {"image_nonzero", r.image_nonzero}, {"checks", checks}};
}

VerificationReport verification_from_json(const json& j) {
    return guarded("verification report", [&] {
        VerificationReport r;
        r.image_nonzero = j.at("image_nonzero").get<bool>();
        for (const auto& c : j.at("checks"))
            r.checks.push_back(
                {c.at("generator").get<std::string>(), c.at("pass").get<bool>(), c.at("residual").get<std::string>()});
        return r;
    });
}

bool HomImages::operator==(const HomImages& o) const {
    if (spec != o.spec || ring != o.ring || n != o.n || src != o.src || dst != o.dst) return false;
    if (images.size() != o.images.size()) return false;
    for (size_t i = 0; i < images.size(); ++i) {
        if (images[i].size() != o.images[i].size()) return false;
        for (size_t k = 0; k < images[i].size(); ++k)
            if (!(images[i][k].first == o.images[i][k].first) || images[i][k].second != o.images[i][k].second)
                return false;
    }
    return true;
}

HomImages hom_images(const HomInstance& h) {
    HomImages out;
    out.spec = h.spec().str();
    out.ring = h.ring()->spec().key();
    out.n = h.spec().n;
    out.src = h.spec().src;
    out.dst = h.spec().dst;
    for (const auto& v : h.images()) {
        std::vector<std::pair<Diagram, RingElem>> terms;
        for (const auto& [i, c] : v.coeffs()) terms.emplace_back(h.target().basis()[static_cast<size_t>(i)], c);
        out.images.push_back(std::move(terms));
    }
    return out;
}

json to_json(const HomImages& h) {
    json imgs = json::array();
    for (const auto& terms : h.images) {
        json jt = json::array();
        for (const auto& [d, c] : terms) jt.push_back({{"diagram", d.str()}, {"coefficient", c.str()}});
        imgs.push_back(jt);
    }
    return {{"hom", h.spec}, {"spec", h.ring}, {"n", h.n}, {"source", h.src}, {"target", h.dst}, {"images", imgs}};
}

HomImages hom_images_from_json(const json& j) {
    return guarded("hom images", [&] {
        HomImages h;
        h.spec = j.at("hom").get<std::string>();
        h.ring = j.at("spec").get<std::string>();
        h.n = j.at("n").get<int>();
        h.src = j.at("source").get<int>();
        h.dst = j.at("target").get<int>();
        const Ring* r = Ring::get(Specialization::parse_key(h.ring));
        for (const auto& jt : j.at("images")) {
            std::vector<std::pair<Diagram, RingElem>> terms;
            for (const auto& t : jt)
                terms.emplace_back(Diagram::parse(t.at("diagram").get<std::string>()),
                                   RingElem::parse(r, t.at("coefficient").get<std::string>()));
            h.images.push_back(std::move(terms));
        }
        return h;
    });
}

json to_json(const HomSpaceResult& r, const Ring* ring) {
    json basis = json::array();
    for (const auto& m : r.basis) {
        json jm = json::array();
        for (const auto& row : m) {
            json jr = json::array();
            for (const auto& x : row) jr.push_back(RingElem::constant(ring, x).str());
            jm.push_back(jr);
        }
        basis.push_back(jm);
    }
    return {{"spec", ring->spec().key()},
            {"dimension", r.dimension},
            {"src_dim", r.src_dim},
            {"dst_dim", r.dst_dim},
            {"basis", basis}};
}

HomSpaceResult hom_space_from_json(const json& j) {
    return guarded("hom space", [&] {
        HomSpaceResult r;
        const Ring* ring = ring_of(j);
        r.dimension = j.at("dimension").get<int>();
        r.src_dim = j.at("src_dim").get<int>();
        r.dst_dim = j.at("dst_dim").get<int>();
        for (const auto& jm : j.at("basis")) {
            std::vector<std::vector<FElem>> m;
            for (const auto& jr : jm) {
                std::vector<FElem> row;
                for (const auto& x : jr) row.push_back(RingElem::parse(ring, x.get<std::string>()).to_felem());
                m.push_back(std::move(row));
            }
            r.basis.push_back(std::move(m));
        }
        return r;
    });
}

}  // namespace sblob
