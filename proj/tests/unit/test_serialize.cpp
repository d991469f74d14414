#include "doctest.h"

#include "sblob/errors.hpp"
#include "sblob/serialize.hpp"

using namespace sblob;

namespace {

// Parses the dumped text again so that the round trip covers the text layer.
json reparse(const json& j) { return json::parse(j.dump(2)); }

Specialization root3() { return Specialization::parse_key("q=root:3;w1=fixed:1:-2;w2=fixed:1:-2;k=value:14/3"); }

}  // namespace

TEST_CASE("diagrams and ring elements round-trip") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& d : enumerate_basis(n)) CHECK(diagram_from_json(reparse(to_json(d))) == d);

    for (const Ring* r : {Ring::generic(), Ring::get(root3()), Ring::get(Specialization::root(4)),
                          Ring::get(Specialization::parse_key("q=value:7/5;w2=linked:-2:-1"))}) {
        BlobAlgebra a(3, r, Parametrisation::GMP1);
        const Params& p = a.params();
        for (int i = 0; i < 6; ++i) {
            INFO(Params::name(i) << " at " << r->spec().key());
            RingElem x = p[i] * p[i] + qint(3, r);
            RingElem y = ring_elem_from_json(reparse(to_json(x)));
            CHECK(y.ring() == r);
            CHECK(y == x);
        }
        CHECK(ring_elem_from_json(reparse(to_json(RingElem::zero(r)))).is_zero());
    }
    RingElem frac = gram_normalisation(Ring::generic()).kappaL;
    CHECK(ring_elem_from_json(reparse(to_json(frac))) == frac);
}

TEST_CASE("matrices and posets round-trip") {
    BlobAlgebra a(4, Ring::generic(), Parametrisation::GMP2);
    Matrix g = CellModule(&a, -2).gram();
    CHECK(matrix_from_json(reparse(to_json(g, Ring::generic()))) == g);

    for (int n = 1; n <= 6; ++n)
        for (const LabelPoset& p : {cellular_poset(n), coarsened_poset(n)}) {
            LabelPoset q = poset_from_json(reparse(to_json(p)));
            CHECK(q.n == p.n);
            CHECK(q.elements == p.elements);
            CHECK(q.covers == p.covers);
            CHECK(q.relations == p.relations);
        }
}

TEST_CASE("decomposition and audit round-trip") {
    DecompositionData d = decomposition(4, root3());
    DecompositionData e = decomposition_from_json(reparse(to_json(d)));
    CHECK(e.n == d.n);
    CHECK(e.spec_key == d.spec_key);
    CHECK(e.labels == d.labels);
    CHECK(e.standard_dims == d.standard_dims);
    CHECK(e.simple_dims == d.simple_dims);
    CHECK(e.mult == d.mult);
    CHECK(e.diagrams_solved == d.diagrams_solved);
    CHECK(e.diagrams_checked == d.diagrams_checked);

    PosetAudit a = audit_poset(3, load_battery(std::string(SBLOB_FIXTURE_DIR) + "/battery.json"), 2);
    a.violations.emplace_back("synthetic", 2, 3, 1);
    PosetAudit b = audit_from_json(reparse(to_json(a)));
    CHECK(b.n == a.n);
    CHECK(b.used == a.used);
    CHECK(b.skipped == a.skipped);
    CHECK(b.violations == a.violations);
    REQUIRE(b.witnesses.size() == a.witnesses.size());
    for (size_t i = 0; i < a.witnesses.size(); ++i) {
        CHECK(b.witnesses[i].upper == a.witnesses[i].upper);
        CHECK(b.witnesses[i].lower == a.witnesses[i].lower);
        CHECK(b.witnesses[i].point == a.witnesses[i].point);
        CHECK(b.witnesses[i].multiplicity == a.witnesses[i].multiplicity);
    }
    CHECK(b.subset_of_cellular == a.subset_of_cellular);
}

TEST_CASE("reports and homomorphisms round-trip") {
    IdentityReport r = check_identity(find_identity("four-term"), 5, 1);
    r.failure = "example";
    IdentityReport s = identity_report_from_json(reparse(to_json(r)));
    CHECK(s.name == r.name);
    CHECK(s.symbolic_ok == r.symbolic_ok);
    CHECK(s.symbolic_cases == r.symbolic_cases);
    CHECK(s.requested == r.requested);
    CHECK(s.substitutions == r.substitutions);
    CHECK(s.substitutions_ok == r.substitutions_ok);
    CHECK(s.failure == r.failure);

    VerificationReport v = verify_annihilation(build(family1_spec(3, 1, 2, 3, 1)));
    VerificationReport w = verification_from_json(reparse(to_json(v)));
    CHECK(w.pass() == v.pass());
    CHECK(w.image_nonzero == v.image_nonzero);
    REQUIRE(w.checks.size() == v.checks.size());
    for (size_t i = 0; i < v.checks.size(); ++i) {
        CHECK(w.checks[i].generator == v.checks[i].generator);
        CHECK(w.checks[i].pass == v.checks[i].pass);
        CHECK(w.checks[i].residual == v.checks[i].residual);
    }

    for (const HomSpec& h : {family4_spec(7, 3), family3_spec(5, 2, -1), family1_spec(6, 2, 4, 4, 2)}) {
        HomImages im = hom_images(build(h));
        CHECK(hom_images_from_json(reparse(to_json(im))) == im);
    }

    HomSpec h = family3_spec(4, 1, 1);
    Specialization pt = concretize(h.spec, 3);
    HomSpaceResult hs = hom_space(4, h.src, h.dst, pt, h.param);
    REQUIRE(hs.dimension == 1);
    HomSpaceResult ht = hom_space_from_json(reparse(to_json(hs, Ring::get(pt))));
    CHECK(ht.dimension == hs.dimension);
    CHECK(ht.src_dim == hs.src_dim);
    CHECK(ht.dst_dim == hs.dst_dim);
    CHECK(ht.basis == hs.basis);
}

TEST_CASE("malformed JSON is a parse error") {
    CHECK_THROWS_AS(diagram_from_json(json(5)), ParseError);
    CHECK_THROWS_AS(ring_elem_from_json(json{{"value", "1"}}), ParseError);
    CHECK_THROWS_AS(poset_from_json(json{{"n", 3}}), ParseError);
    CHECK_THROWS_AS(hom_images_from_json(json::array()), ParseError);
}
