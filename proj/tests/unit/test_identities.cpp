#include "doctest.h"

#include "sblob/identities.hpp"
#include "sblob/qparam.hpp"

using namespace sblob;

TEST_CASE("identity battery holds symbolically and at random points") {
    REQUIRE(identity_battery().size() >= 12);
    for (const auto& id : identity_battery()) {
        IdentityReport r = check_identity(id, 20, 11);
        CHECK_MESSAGE(r.ok(), id.name << ": " << r.failure);
        CHECK(r.substitutions == 20);
        CHECK(r.symbolic_cases >= 1);
    }
}

TEST_CASE("identity examples at fixed points") {
    CHECK(verify_identity(find_identity("four-term"), {{1, 2, 3, 4}}));
    CHECK(verify_identity(find_identity("product-to-sum"), {{3, 2}}));
    CHECK(verify_identity(find_identity("recurrence"), {{2, 5}}));
    // [3][2] = [4] + [2] directly in the bracket arithmetic of the ring.
    const Ring* g = Ring::generic();
    CHECK(qint(3, g) * qint(2, g) == qint(4, g) + qint(2, g));
    // A vanishing denominator is reported as a failure, not a pass.
    CHECK_FALSE(verify_identity(find_identity("cd-nested-fractions"), {{0, 2, 5}}));
    CHECK_THROWS_AS(find_identity("nope"), std::invalid_argument);
}

TEST_CASE("product-to-sum agrees with the bracket evaluator") {
    const Ring* g = Ring::generic();
    for (int a = 1; a <= 8; ++a)
        for (int b = 1; b <= a; ++b) {
            RingElem sum = RingElem::zero(g);
            for (int j = 0; j < b; ++j) sum += qint(a + b - 1 - 2 * j, g);
            CHECK(qint(a, g) * qint(b, g) == sum);
            IdentityContext ctx({-1, -1}, {a, b});
            CHECK(ctx.br(QLin::constant(a)) == qint(a, g));
        }
    // The context realises a symbolic v as q^{v/2} = Q1, so the library's
    // [w1 + k] is [(v + 2k)/2] here.
    IdentityContext sym({VQ1}, {0});
    for (int k = -3; k <= 3; ++k)
        CHECK(sym.br((QLin::var(0) + 2 * k).half()) == bracket_eval(BracketExpr::w1(k), g));
}

TEST_CASE("negative controls") {
    // Dropping a term from product-to-sum breaks it.
    Identity broken = find_identity("product-to-sum");
    broken.residual = [](const IdentityContext& c) {
        QLin a = QLin::var(0), b = QLin::var(1);
        RingElem r = c.br(a) * c.br(b);
        for (int j = 0; j + 1 < c.value(1); ++j) r -= c.br(a + b - (1 + 2 * j));
        return r;
    };
    CHECK_FALSE(check_identity(broken, 20, 3).ok());

    // The blob-arc fraction form with the extra [H] in the fifth fraction.
    Identity printed = find_identity("cd-blob-fractions");
    printed.residual = [](const IdentityContext& c) {
        QLin f = QLin::var(0), g = QLin::var(1), w1 = QLin::var(2), h = w1 - g - f - 1;
        RingElem ih = c.inv(h);
        return -c.br(2) * c.inv(f) * c.inv(g) * ih +
               c.br(w1 + 1) * c.inv(f) * c.inv(g) * c.inv(g + 1) * ih * c.inv(w1 - g) + c.inv(f) * c.inv(g + 1) * ih +
               c.inv(f + 1) * c.inv(g) * ih + c.inv(f) * c.inv(f + 1) * c.inv(g) * ih * c.inv(w1 - g);
    };
    IdentityReport r = check_identity(printed, 20, 3);
    CHECK_FALSE(r.symbolic_ok);
    // It only agrees where [H] = 1.
    CHECK(r.substitutions_ok <= r.substitutions / 4);

    // The mirror reduction with the final bracket shifted.
    Identity shifted = find_identity("mirror-reduction");
    shifted.residual = [](const IdentityContext& c) {
        QLin w1 = QLin::var(0), w2 = QLin::var(1), f = QLin::var(2), l = QLin::var(3);
        return -c.br(w1 - l) * c.br(w2 - f) + c.br(w2 + 1) * c.br(w1 - l + f + 1) - c.br(w1 + w2 - l) * c.br(f + 1);
    };
    CHECK_FALSE(check_identity(shifted, 20, 3).ok());
}

TEST_CASE("QLin arithmetic") {
    QLin x = QLin::var(0) * 3 - QLin::var(1) + 2;
    CHECK(x.c2 == 4);
    CHECK(x.a2[0] == 6);
    CHECK(x.a2[1] == -2);
    CHECK(x.half().c2 == 2);
    CHECK_THROWS_AS((QLin::var(0) + QLin{1, {}}).half(), std::logic_error);
}
