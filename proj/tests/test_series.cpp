#include <cmath>

#include "doctest.h"
#include "shear/error.hpp"
#include "shear/series.hpp"

using namespace shear;

namespace {

long double brute_moment(int n) {
    long double s = 0;
    for (int a = 1; a <= 400; ++a) s += std::pow(static_cast<long double>(a), n) * std::exp2l(-a);
    return s;
}

}  // namespace

TEST_CASE("truncated sums have the geometric closed form") {
    for (int A : {8, 19, 40}) {
        const double s = block_sum([](int, int) { return 1.0; }, A);
        const double ref = std::pow(1.0 - std::exp2(-A), 2);
        CHECK(s == doctest::Approx(ref).epsilon(1e-15));
    }
    const SeriesResult r = expect_block([](int, int) { return 1.0; });
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.index_used == 128);
    REQUIRE(r.tail_estimate);
    CHECK(*r.tail_estimate < 1e-15);
}

TEST_CASE("moments of the block distribution") {
    CHECK(expect_block([](int a, int) { return double(a); }).value == doctest::Approx(2.0));
    CHECK(expect_block([](int a, int b) { return double(a + b); }).value == doctest::Approx(4.0));
    CHECK(expect_block([](int a, int b) { return double(a) * b; }).value == doctest::Approx(4.0));
    CHECK(expect_block([](int a, int) { return double(a) * a; }).value == doctest::Approx(6.0));
    const SeriesResult r = expect_block([](int a, int b) { return (a == b) ? 1.0 : 0.0; });
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("polylog table against direct summation") {
    const std::uint64_t expected[] = {1, 2, 6, 26, 150, 1082, 9366, 94586, 1091670};
    for (int n = 0; n <= 8; ++n) CHECK(polylog_half_exact(n) == expected[n]);
    for (int n = 0; n <= kPolylogMaxOrder; ++n) {
        CHECK(static_cast<long double>(polylog_half_exact(n)) ==
              doctest::Approx(static_cast<double>(brute_moment(n))).epsilon(1e-12));
        CHECK(polylog_half(n) == static_cast<double>(polylog_half_exact(n)));
    }
    CHECK_THROWS_AS(polylog_half_exact(13), DomainError);
    CHECK_THROWS_AS(polylog_half_exact(-1), DomainError);
}

TEST_CASE("kappa") {
    long double ref = 0;
    for (int a = 2; a <= 300; ++a) ref += 2.0L * std::exp2l(-a) * std::log(static_cast<long double>(a));
    CHECK(kappa() == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
    CHECK(std::round(kappa() * 1e4) / 1e4 == 1.0157);
    const double direct = expect_block([](int a, int b) { return std::log(double(a) * b); }).value;
    CHECK(kappa() == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("exact polynomial expectation") {
    // E (1 + ab)^2 = 1 + 2 E a E b + E a^2 E b^2 = 1 + 8 + 36.
    const PolyCoeffs c{{{0, 0}, 1.0}, {{1, 1}, 2.0}, {{2, 2}, 1.0}};
    CHECK(expect_block_exact_poly(c) == doctest::Approx(45.0));
    const double series = expect_block([](int a, int b) { return std::pow(1.0 + a * b, 2); }).value;
    CHECK(series == doctest::Approx(45.0).epsilon(1e-13));
}

TEST_CASE("parallel and serial sums are bit-identical") {
    auto f = [](int a, int b) { return std::log(1.0 + 0.37 * a * b) + std::sin(a - 2.0 * b); };
    for (int A : {8, 33, 64}) CHECK(block_sum(f, A) == block_sum_serial(f, A));
    const SeriesResult p = expect_block(f);
    const SeriesResult s = expect_block_serial(f);
    CHECK(p.value == s.value);
    CHECK(*p.tail_estimate == *s.tail_estimate);
}

TEST_CASE("non-convergence is reported") {
    SeriesConfig cfg;
    cfg.max_index = 16;
    auto grow = [](int a, int) { return std::pow(1.9, a); };
    const SeriesResult r = expect_block(grow, cfg);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(require_converged(r, "test"), ConvergenceError);

    cfg.check_tail = false;
    const SeriesResult t = expect_block(grow, cfg);
    CHECK(t.converged);
    CHECK_FALSE(t.tail_estimate);
    CHECK(t.index_used == 16);
    CHECK(t.value == block_sum(grow, 16));
}

TEST_CASE("config validation") {
    SeriesConfig cfg;
    cfg.max_index = 7;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.max_index = 64;
    cfg.tail_tol = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.tail_tol = 1e-12;
    CHECK_NOTHROW(cfg.validate());
}
