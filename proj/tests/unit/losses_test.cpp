#include <doctest.h>

#include <cmath>

#include "cutpoint/errors.hpp"
#include "cutpoint/losses.hpp"
#include "cutpoint/rng.hpp"

using namespace cutpoint;

TEST_CASE("0-1 loss with sign(0) = +1") {
    CHECK(loss_01(0.0) == 0.0);
    CHECK(loss_01(-0.3) == 1.0);
    CHECK(loss_01(2.0) == 0.0);
}

TEST_CASE("surrogate loss values") {
    PsiDelta psi(0.1);
    CHECK(psi.loss(0.05) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(psi.loss(-0.5) == 1.0);
    CHECK(psi.loss(0.1) == 0.0);
    CHECK(psi.loss(5.0) == 0.0);
    CHECK(psi.loss(0.0) == 1.0);
    CHECK_THROWS_AS(PsiDelta(0.0), ComputeError);
    CHECK_THROWS_AS(PsiDelta(-1.0), ComputeError);
}

TEST_CASE("convex split values and exact difference") {
    PsiDelta psi(0.1);
    {
        auto [g1, g2] = psi.dc_parts(-0.5);
        CHECK(g1 == doctest::Approx(6.0).epsilon(1e-14));
        CHECK(g2 == doctest::Approx(5.0).epsilon(1e-14));
        CHECK(g1 - g2 == 1.0);
    }
    {
        auto [g1, g2] = psi.dc_parts(0.05);
        CHECK(g1 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(g2 == 0.0);
    }
    {
        auto [g1, g2] = psi.dc_parts(1.0);
        CHECK(g1 == 0.0);
        CHECK(g2 == 0.0);
    }
}

TEST_CASE("concave-part subgradient") {
    PsiDelta psi(0.1);
    CHECK(psi.subgrad_g2(-1.0) == -10.0);
    CHECK(psi.subgrad_g2(0.5) == 0.0);
    CHECK(psi.subgrad_g2(0.0) == 0.0);
}

TEST_CASE("grid identities across deltas") {
    const int grid = 2001;
    for (double delta : {0.5, 0.1, 0.01}) {
        PsiDelta psi(delta);
        for (int i = 0; i < grid; ++i) {
            double u = -3.0 + 6.0 * i / (grid - 1.0);
            double l = psi.loss(u);
            auto [g1, g2] = psi.dc_parts(u);
            CHECK(g1 - g2 == l);  // bit-exact split
            CHECK(l >= 0.0);
            CHECK(l <= 1.0);
            CHECK(l >= loss_01(u) - 1.0);
            if (u < 0.0 || u >= delta) CHECK(l == loss_01(u));
        }
    }
}

TEST_CASE("both split parts are midpoint-convex") {
    Rng rng(42);
    PsiDelta psi(0.1);
    for (int trial = 0; trial < 500; ++trial) {
        double u = rng.uniform(-3.0, 3.0);
        double v = rng.uniform(-3.0, 3.0);
        double mid = 0.5 * (u + v);
        auto [g1u, g2u] = psi.dc_parts(u);
        auto [g1v, g2v] = psi.dc_parts(v);
        auto [g1m, g2m] = psi.dc_parts(mid);
        CHECK(g1m <= 0.5 * (g1u + g1v) + 1e-12);
        CHECK(g2m <= 0.5 * (g2u + g2v) + 1e-12);
    }
}

TEST_CASE("pointwise convergence to the 0-1 loss as delta shrinks") {
    for (double u : {-1.0, -0.01, 0.004, 0.3, 2.0}) {
        double prev_gap = 2.0;
        for (double delta : {1.0, 1e-1, 1e-2, 1e-3, 1e-4}) {
            double gap = std::fabs(PsiDelta(delta).loss(u) - loss_01(u));
            CHECK(gap <= prev_gap + 1e-15);
            prev_gap = gap;
        }
        CHECK(prev_gap == 0.0);  // delta well below |u|
    }
}
