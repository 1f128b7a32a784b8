#include <cmath>

#include "doctest.h"
#include "shear/bounds_engine.hpp"
#include "shear/error.hpp"
#include "shear/montecarlo.hpp"
#include "shear/rng.hpp"

using namespace shear;

TEST_CASE("generator streams") {
    // Published SplitMix64 sequence for seed 1234567.
    SplitMix64 sm(1234567);
    CHECK(sm.next() == 6457827717110365317ULL);
    CHECK(sm.next() == 3203168211198807973ULL);
    CHECK(sm.next() == 9817491932198370423ULL);

    Xoshiro256ss a = Xoshiro256ss::stream(42, 3);
    Xoshiro256ss b = Xoshiro256ss::stream(42, 3);
    Xoshiro256ss c = Xoshiro256ss::stream(42, 4);
    int same = 0;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        same += x == c();
    }
    CHECK(same == 0);
    double mean = 0;
    for (int i = 0; i < 100000; ++i) mean += a.uniform();
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("Lyapunov estimate: reproducible, parallel equals serial") {
    const ShearParams p = ShearParams::make(1, 1);
    const McConfig cfg{200'000, 8, 42, 1};
    const McEstimate x = lyapunov_mc(p, cfg);
    const McEstimate y = lyapunov_mc_serial(p, cfg);
    CHECK(x.mean == y.mean);
    CHECK(x.std_error == y.std_error);
    CHECK(x.n_samples == 8);
    CHECK(lyapunov_mc(p, cfg).mean == x.mean);
    McConfig other = cfg;
    other.seed = 43;
    CHECK(lyapunov_mc(p, other).mean != x.mean);
    CHECK(x.mean == doctest::Approx(0.39625).epsilon(0.01));

    const BoundReport g = lyapunov_bounds(p, BoundFamily::Global);
    CHECK(x.mean > g.envelope.lower);
    CHECK(x.mean < g.envelope.upper);
}

TEST_CASE("renormalisation interval does not change the estimate") {
    const ShearParams p = ShearParams::make(2, 3);
    McConfig cfg{50'000, 4, 9, 1};
    const double a = lyapunov_mc(p, cfg).mean;
    cfg.renorm_every = 16;
    const double b = lyapunov_mc(p, cfg).mean;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("GLE estimates") {
    const ShearParams p = ShearParams::make(1, 1);
    const McConfig cfg{200, 64, 5, 1};
    CHECK(gle_mc(0.0, p, cfg).mean == 0.0);
    const GleMcEstimate e = gle_mc(1.0, p, cfg);
    const GleMcEstimate s = gle_mc_serial(1.0, p, cfg);
    CHECK(e.mean == s.mean);
    CHECK(e.std_error == s.std_error);
    CHECK(e.std_error > 0.0);
    CHECK(e.effective_sample_size <= 64.0);
    CHECK(e.effective_sample_size >= 1.0);
    // Heavy weighting collapses the effective sample size.
    const GleMcEstimate h = gle_mc(40.0, p, cfg);
    CHECK(h.low_ess);
    CHECK_THROWS_AS(gle_mc(INFINITY, p, cfg), DomainError);
}

TEST_CASE("standard bound: closed forms and references") {
    for (double al : {1.0, 2.0, 5.0}) {
        const ShearParams p = ShearParams::make(al, al);
        // E_1 = log of the singular value of one shear.
        CHECK(standard_bound(1, p, Exhaustive{}) ==
              doctest::Approx(std::log((al + std::sqrt(al * al + 4)) / 2)).epsilon(1e-14));
        // E_2 from the four products.
        const Mat2 a = shear_a(p);
        const Mat2 b = shear_b(p);
        const double e2 = (std::log(spectral_norm(a * a)) + std::log(spectral_norm(a * b)) +
                           std::log(spectral_norm(b * a)) + std::log(spectral_norm(b * b))) / 8;
        CHECK(standard_bound(2, p, Exhaustive{}) == doctest::Approx(e2).epsilon(1e-14));
        for (int k : {3, 9, 14}) {
            CHECK(standard_bound(k, p, Exhaustive{}) ==
                  doctest::Approx(standard_bound_serial(k, p, Exhaustive{})).epsilon(1e-12));
        }
    }
    const ShearParams p = ShearParams::make(1, 1);
    const Sampled s{2000, 7};
    CHECK(standard_bound(64, p, s) == standard_bound_serial(64, p, s));
    CHECK(standard_bound(10, p, Sampled{20000, 1}) ==
          doctest::Approx(standard_bound(10, p, Exhaustive{})).epsilon(5e-3));
    CHECK_THROWS_AS(standard_bound(23, p, Exhaustive{}), DomainError);
    CHECK_THROWS_AS(standard_bound(0, p, Exhaustive{}), DomainError);
    CHECK(std::holds_alternative<Exhaustive>(default_standard_mode(22)));
    CHECK(std::holds_alternative<Sampled>(default_standard_mode(23)));
}

TEST_CASE("block oracle") {
    const ShearParams p = ShearParams::make(1, 1);
    const McConfig cfg{100'000, 4, 42, 1};
    const BlockStats s = block_oracle(p, cfg);
    const BlockStats r = block_oracle_serial(p, cfg);
    CHECK(s.lambda_est == r.lambda_est);
    CHECK(s.mean_block_len == r.mean_block_len);
    CHECK(s.n_blocks == 400'000);
    CHECK(s.mean_block_len == doctest::Approx(4.0).epsilon(0.01));
    CHECK(s.p_eq + s.p_gt + s.p_lt == doctest::Approx(1.0));
    CHECK(s.p_eq == doctest::Approx(1.0 / 3).epsilon(0.02));
    CHECK(s.lambda_est == doctest::Approx(0.39625).epsilon(0.01));
}

TEST_CASE("config validation") {
    const ShearParams p = ShearParams::make(1, 1);
    CHECK_THROWS_AS(lyapunov_mc(p, McConfig{0, 1, 1, 1}), DomainError);
    CHECK_THROWS_AS(lyapunov_mc(p, McConfig{10, 0, 1, 1}), DomainError);
    CHECK_THROWS_AS(lyapunov_mc(p, McConfig{10, 1, 1, 0}), DomainError);
    CHECK_THROWS_AS(lyapunov_mc(p, McConfig{10, 1, 1, 11}), DomainError);
    CHECK(lyapunov_mc(p, McConfig{1000, 1, 1, 1}).std_error == 0.0);
}
