#include "doctest.h"

#include "sblob/errors.hpp"
#include "sblob/homs.hpp"
#include "sblob/qhpos.hpp"

#include <algorithm>

using namespace sblob;

namespace {

Specialization key(const std::string& k) { return Specialization::parse_key(k); }

const char* kGenericA = "q=value:7/5;w1=fixed:11/3:0;w2=fixed:13/4:0;k=value:17/6";
const char* kRoot3 = "q=root:3;w1=fixed:1:-2;w2=fixed:1:-2;k=value:14/3";

std::vector<BatteryPoint> battery() { return load_battery(std::string(SBLOB_FIXTURE_DIR) + "/battery.json"); }

}  // namespace

TEST_CASE("cellular poset layers") {
    LabelPoset p = cellular_poset(2);
    CHECK(p.elements.size() == 4);
    CHECK(p.greater(0, 1));
    CHECK(p.greater(0, -1));
    CHECK(p.greater(1, -2));
    CHECK(p.greater(0, -2));
    CHECK_FALSE(p.comparable(1, -1));
    CHECK(p.covers.size() == 4);

    for (int n = 1; n <= 7; ++n) {
        LabelPoset c = cellular_poset(n);
        CHECK(c.elements.size() == static_cast<size_t>(2 * n));
        for (int l : c.elements)
            if (l != -n) CHECK(c.greater(l, -n));
        for (int l : c.elements)
            if (l != 0) CHECK(c.greater(0, l));
    }
}

TEST_CASE("make_poset rejects cycles") {
    CHECK_THROWS_AS(make_poset(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    LabelPoset p = make_poset(3, {{0, 1}, {1, 2}});
    CHECK(p.greater(0, 2));
    CHECK(p.covers.count({0, 2}) == 0);
}

TEST_CASE("coarsened poset is the cellular order minus the vanishing pairs") {
    for (int n = 1; n <= 9; ++n) {
        LabelPoset cell = cellular_poset(n), coarse = coarsened_poset(n);
        auto vp = vanishing_pairs(n);
        std::set<std::pair<int, int>> expected;
        std::set_difference(cell.relations.begin(), cell.relations.end(), vp.begin(), vp.end(),
                            std::inserter(expected, expected.end()));
        CHECK_MESSAGE(coarse.relations == expected, "n = " << n);
        CHECK(std::includes(cell.relations.begin(), cell.relations.end(), coarse.relations.begin(),
                            coarse.relations.end()));
        for (const auto& pr : vp) CHECK(cell.greater(pr.first, pr.second));
    }
    LabelPoset c5 = coarsened_poset(5);
    CHECK_FALSE(c5.comparable(1, 2));
    CHECK_FALSE(c5.comparable(1, -2));
    CHECK_FALSE(c5.comparable(3, -5));
    CHECK_FALSE(c5.comparable(1, -5));
    CHECK(c5.greater(1, 3));
    CHECK(c5.greater(1, -4));
    CHECK(c5.dot("c5").find("\"1\" -> \"3\"") != std::string::npos);
}

TEST_CASE("simple dimensions") {
    for (int n = 1; n <= 5; ++n) {
        auto dims = simple_dims(n, key(kGenericA));
        BlobAlgebra a(n, Ring::get(key(kGenericA)), Parametrisation::GMP2);
        for (int l : cell_labels(n)) CHECK(dims[l] == CellModule(&a, l).dim());
    }
    for (int n = 2; n <= 5; ++n) CHECK(simple_dims(n, key(kRoot3))[-n] == 1);

    HomSpec h = family3_spec(5, 2, 1);
    Specialization s = concretize(h.spec, 7);
    BlobAlgebra a(5, Ring::get(s), Parametrisation::GMP2);
    CHECK(simple_dims(5, s)[-1] < CellModule(&a, -1).dim());

    CHECK_THROWS_AS(simple_dims(3, key("q=root:2;w1=fixed:1:1;w2=fixed:29/3:0;k=value:14/3")), NonUnitParameter);
}

TEST_CASE("decomposition: unitriangular with consistent dimensions") {
    for (int n = 1; n <= 5; ++n)
        for (const char* k : {kGenericA, kRoot3, "q=root:4;w1=fixed:1:2;w2=fixed:1:5;k=value:14/3"}) {
            DecompositionData d = decomposition(n, key(k));
            LabelPoset cell = cellular_poset(n);
            for (int l : d.labels) {
                CHECK(d.at(l, l) == 1);
                int total = 0;
                for (int m : d.labels) {
                    total += d.at(l, m) * d.simple_dims.at(m);
                    // A composition factor L(m) of Sb(l) other than the head has m < l.
                    if (m != l && d.at(l, m) != 0) CHECK(cell.greater(l, m));
                }
                CHECK(total == d.standard_dims.at(l));
            }
        }
    DecompositionData g = decomposition(4, key(kGenericA));
    CHECK(g.mult.size() == g.labels.size());
}

TEST_CASE("decomposition: known nonzero multiplicities") {
    DecompositionData d = decomposition(5, key(kRoot3));
    CHECK(d.at(-2, -4) == 1);
    CHECK(d.at(1, -4) == 1);
    CHECK(d.at(2, -5) == 1);
    CHECK(d.at(-2, -5) == 1);
}

TEST_CASE("decomposition requires a concrete specialisation") {
    CHECK_THROWS_AS(decomposition(3, Specialization::generic()), std::invalid_argument);
}

TEST_CASE("vanishing multiplicities at every battery point") {
    auto pts = battery();
    REQUIRE(pts.size() >= 5);
    for (int n = 2; n <= 5; ++n) {
        PosetAudit a = audit_poset(n, pts, 4);
        CHECK(a.subset_of_cellular);
        CHECK(a.vanishing_holds());
        CHECK(a.used.size() >= 5);
        CHECK(std::find(a.skipped.begin(), a.skipped.end(), "root2-w1-1") != a.skipped.end());
        if (n >= 3) CHECK(a.missing_witnesses() == 0);
    }
}

TEST_CASE("audit is independent of the number of jobs") {
    auto pts = battery();
    PosetAudit a = audit_poset(4, pts, 1), b = audit_poset(4, pts, 3);
    CHECK(a.used == b.used);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (size_t i = 0; i < a.witnesses.size(); ++i) CHECK(a.witnesses[i].point == b.witnesses[i].point);
}

TEST_CASE("trivial submodule of Sb_n(n-4)") {
    for (int n = 5; n <= 6; ++n)
        for (const auto& p : battery()) {
            BlobAlgebra a(n, Ring::get(p.spec), p.param);
            try {
                require_unit_parameters(a);
            } catch (const NonUnitParameter&) {
                continue;
            }
            CHECK_MESSAGE(trivial_submodule_dim(CellModule(&a, n - 4)) == 0, p.name);
        }
}

TEST_CASE("trivial submodule positive control") {
    // Every generator creates an arc or a blob, so it kills Sb_n(-n).
    for (int n = 2; n <= 5; ++n) {
        BlobAlgebra a(n, Ring::get(key(kGenericA)), Parametrisation::GMP2);
        CHECK(trivial_submodule_dim(CellModule(&a, -n)) == 1);
        CHECK(trivial_submodule_dim(CellModule(&a, 0)) == 0);
    }
}

TEST_CASE("ext vanishing criterion") {
    CHECK(ext_vanishing_check(4, key(kRoot3), 3, -4));
    CHECK(ext_vanishing_check(5, key(kRoot3), 2, 3));
    CHECK_THROWS_AS(ext_vanishing_check(5, key(kRoot3), 3, 2), std::invalid_argument);
    CHECK_FALSE(ext_vanishing_check(5, key(kRoot3), 1, -4));
    CHECK_THROWS_AS(ext_vanishing_check(4, key(kRoot3), 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(ext_vanishing_check(4, key(kRoot3), -4, 3), std::invalid_argument);
}

TEST_CASE("battery parsing") {
    auto pts = parse_battery(R"({"points": [{"name": "a", "spec": "q=root:3;w1=fixed:1:1;w2=fixed:1:2;k=value:2", "param": "DN"}]})");
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].name == "a");
    CHECK(pts[0].param == Parametrisation::DN);
    CHECK(pts[0].spec.key() == "q=root:3;w1=fixed:1:1;w2=fixed:1:2;k=value:2");
    CHECK_THROWS_AS(parse_battery("{"), ParseError);
    CHECK_THROWS_AS(parse_battery("{\"x\": 1}"), ParseError);
}
