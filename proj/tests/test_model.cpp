#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvphase/model.hpp"
#include "oracles.hpp"

using namespace mvphase;

TEST_CASE("ito_drift worked examples") {
    ModelParams p{1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(ito_drift(p, 0.0, 1.0) == doctest::Approx(0.0));  // well bottom, Ito

    ModelParams q{0.0, 1.0, 2.0, 1.0, 0.0};
    CHECK(ito_drift(q, 0.0, 1.0) == doctest::Approx(4.0));  // correction (1-0)*4*1

    ModelParams r{0.3, 0.7, 1.4, -0.5, 2.0};
    CHECK(ito_drift(r, 0.0, 0.0) == doctest::Approx(0.0));  // odd drift vanishes at origin
}

TEST_CASE("ito_drift is odd in x at mu = 0 and sigma_m-free at nu = 1") {
    oracle::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        ModelParams p{rng.uniform(0.0, 1.0), rng.uniform(0.2, 3.0), rng.uniform(0.0, 3.0),
                      rng.uniform(-2.0, 2.0), rng.uniform(0.0, 3.0)};
        const double x = rng.uniform(-3.0, 3.0);
        CHECK(ito_drift(p, 0.0, x) == doctest::Approx(-ito_drift(p, 0.0, -x)).epsilon(1e-14));

        ModelParams ito = p;
        ito.nu = 1.0;
        ModelParams ito_other = ito;
        ito_other.sigma_m = rng.uniform(0.0, 3.0);
        CHECK(ito_drift(ito, 0.4, x) == ito_drift(ito_other, 0.4, x));
    }
}

TEST_CASE("diffusion worked examples and floor") {
    ModelParams p{1.0, 1.0, 0.0, 1.0, 1.0};
    CHECK(diffusion(p, 12.3) == doctest::Approx(1.0));
    ModelParams q{1.0, 3.0, 4.0, 1.0, 1.0};
    CHECK(diffusion(q, 1.0) == doctest::Approx(5.0));  // 3-4-5
    ModelParams r{1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(diffusion(r, 0.0) == doctest::Approx(1.0));

    oracle::Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        ModelParams s{0.5, rng.uniform(0.2, 3.0), rng.uniform(0.0, 3.0), 1.0, 1.0};
        const double x = rng.uniform(-4.0, 4.0);
        CHECK(diffusion(s, x) >= s.sigma_a);
        if (s.sigma_m * x != 0.0) CHECK(diffusion(s, x) > s.sigma_a);
    }
}

TEST_CASE("effective_well_count follows the corrected potential") {
    ModelParams bistable{0.5, 1.0, 0.0, 1.0, 1.0};
    CHECK(effective_well_count(bistable) == 3);

    // a = -5 recovered by enough multiplicative noise at nu = 0.5
    ModelParams recovered{0.5, 1.0, 3.17, -5.0, 1.0};
    CHECK(effective_well_count(recovered) == 3);  // 0.5*3.17^2 = 5.02 > 5

    ModelParams ito_convex{1.0, 1.0, 10.0, -5.0, 1.0};
    CHECK(effective_well_count(ito_convex) == 1);  // Ito: no correction
}

TEST_CASE("ModelParams validation") {
    ModelParams bad{1.5, 1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {0.5, -1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {0.5, 1.0, -0.1, 1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {0.5, 1.0, 0.0, 1.0, -2.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
