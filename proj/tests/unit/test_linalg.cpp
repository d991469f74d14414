#include "doctest.h"

#include "sblob/cells.hpp"
#include "sblob/qparam.hpp"

#include <random>

using namespace sblob;

namespace {

RingElem random_laurent(const Ring* r, std::mt19937& rng) {
    std::uniform_int_distribution<int> terms(0, 3), ex(-2, 2), num(-5, 5), den(1, 3);
    RingElem x = RingElem::zero(r);
    for (int t = terms(rng); t > 0; --t) {
        Exp e;
        for (int v = 0; v < 4; ++v) e[v] = r->formal(v) ? ex(rng) : 0;
        mpq_class c(num(rng), den(rng));
        c.canonicalize();
        x += RingElem::mono(r, Mono{r->felem(c), e});
    }
    return x;
}

}  // namespace

TEST_CASE("modular determinant agrees with Bareiss on Gram matrices") {
    int compared = 0;
    for (const char* key : {"", "q=value:3/2", "w1=fixed:2/3:0;k=value:5"}) {
        const Ring* r = Ring::get(Specialization::parse_key(key));
        for (Parametrisation p : {Parametrisation::GMP1, Parametrisation::GMP2, Parametrisation::DN})
            for (int n = 1; n <= 4; ++n) {
                BlobAlgebra a(n, r, p);
                for (int l : cell_labels(n)) {
                    CellModule m(&a, l);
                    // With formal q, Bareiss alone needs about 20 s for Sb_3(0).
                    const bool cheap = !r->formal(VS);
                    if (m.dim() > (cheap ? 8 : 6)) continue;
                    INFO("n = " << n << ", l = " << l << " at " << r->spec().key());
                    Matrix g = m.gram();
                    CHECK(det_modular(g, r) == det_bareiss(g, r));
                    ++compared;
                }
            }
    }
    CHECK(compared >= 60);
    // Rows with bracket denominators.
    const Ring* g = Ring::generic();
    Params p = gram_normalisation(g);
    for (int n = 3; n <= 6; ++n) CHECK(det_modular(m_prime(n, p), g) == evaluate(det_formula_mprime(n), g));
}

TEST_CASE("modular determinant on random Laurent matrices") {
    std::mt19937 rng(7);
    const Ring* r = Ring::generic();
    for (int trial = 0; trial < 40; ++trial) {
        const size_t n = 1 + static_cast<size_t>(trial % 5);
        Matrix m = zero_matrix(r, n, n);
        for (auto& row : m)
            for (auto& x : row) x = random_laurent(r, rng);
        CHECK(det_modular(m, r) == det_bareiss(m, r));
        // Repeating a row makes the matrix singular.
        if (n >= 2) {
            m[1] = m[0];
            CHECK(det_modular(m, r).is_zero());
        }
    }
    CHECK(det_modular(Matrix{}, r) == RingElem::one(r));
    CHECK_THROWS_AS(det_modular(Matrix{{RingElem::one(Ring::get(Specialization::root(3)))}}, Ring::get(Specialization::root(3))),
                    std::invalid_argument);
}

TEST_CASE("generic det of Sb_5(-1) specialises correctly") {
    BlobAlgebra a(5, Ring::generic(), Parametrisation::GMP1);
    CellModule m(&a, -1);
    REQUIRE(m.dim() == 16);
    RingElem d = m.gram_det();
    CHECK(!d.is_zero());
    for (const char* key : {"q=value:3/2;w1=fixed:5/7:0;w2=fixed:2:0;k=value:4/3",
                            "q=value:-2/5;w1=fixed:3:0;w2=fixed:-1/4:0;k=value:7"}) {
        const Ring* pt = Ring::get(Specialization::parse_key(key));
        BlobAlgebra b(5, pt, Parametrisation::GMP1);
        INFO(key);
        CHECK(d.map_to(pt) == det_bareiss(CellModule(&b, -1).gram(), pt));
    }
}
