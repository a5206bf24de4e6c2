#include <doctest.h>

#include <cmath>

#include "polyineq/counterexample.hpp"

using namespace polyineq;

TEST_SUITE_BEGIN("counterexample");

TEST_CASE("binomials are exact and the central-sum identity holds")
{
    CHECK(binomial_exact(2, 1) == 2);
    CHECK(binomial_exact(4, 2) == 6);
    CHECK(binomial_exact(60, 30) == 118264581564861424ULL);

    // sum_k C(m,k)^2 = C(2m, m), exactly, for m <= 30
    for (int m = 0; m <= 30; ++m) {
        unsigned __int128 sum = 0;
        for (int k = 0; k <= m; ++k) {
            const unsigned __int128 c = binomial_exact(m, k);
            sum += c * c;
        }
        CHECK(sum == binomial_exact(2 * m, m));
    }

    CHECK_THROWS_AS(binomial_exact(3, 5), std::invalid_argument);
}

TEST_CASE("violation threshold")
{
    CHECK(threshold_beta(2) == doctest::Approx((2.0 + std::sqrt(12.0)) / 4.0)
                                   .epsilon(1e-14));
    CHECK(threshold_beta(10) ==
          doctest::Approx((10.0 + std::sqrt(380.0)) / 28.0).epsilon(1e-14));
    CHECK(threshold_beta(1000) - 1.0 < 1e-3);
    CHECK(threshold_beta(1000) > 1.0);
    for (int n = 2; n <= 31; ++n)
        CHECK(threshold_beta(n) > 1.0);
    CHECK_THROWS_AS(threshold_beta(1), std::invalid_argument);
}

TEST_CASE("exact sides at the worked values")
{
    const auto r21 = exact_sides(2, BetaRational{1, 1});
    CHECK(r21.lhs_num == 32);
    CHECK(r21.rhs_num == 24);
    CHECK(r21.common_den == 1);
    CHECK(r21.violates);

    const auto r31 = exact_sides(3, BetaRational{1, 1});
    CHECK(r31.lhs_num == 216);
    CHECK(r31.rhs_num == 180);
    CHECK(r31.violates);

    const auto r22 = exact_sides(2, BetaRational{2, 1});
    CHECK(r22.lhs_num == 72);
    CHECK(r22.rhs_num == 96);
    CHECK(!r22.violates);
}

TEST_CASE("violation iff beta below the threshold, exactly")
{
    for (int n = 2; n <= 31; ++n) {
        const double t = threshold_beta(n);
        for (std::uint64_t k = 0; k <= 16; ++k) {
            const BetaRational beta{16 + k, 16}; // 1, 1+1/16, ..., 2
            const auto r = exact_sides(n, beta);
            CHECK(r.violates == (beta.to_double() < t));
        }
    }
}

TEST_CASE("beta = 1 violates at every degree")
{
    for (int n = 2; n <= 31; ++n)
        CHECK(exact_sides(n, BetaRational{1, 1}).violates);
}

TEST_CASE("large degrees fail loudly instead of overflowing")
{
    CHECK_THROWS_AS(exact_sides(100, BetaRational{1, 1}), std::overflow_error);
}

TEST_CASE("decimal parsing for the exact path")
{
    const auto one = parse_decimal_rational("1");
    REQUIRE(one.has_value());
    CHECK(one->num == 1);
    CHECK(one->den == 1);

    const auto frac = parse_decimal_rational("1.05");
    REQUIRE(frac.has_value());
    CHECK(frac->num == 21);
    CHECK(frac->den == 20);

    CHECK(!parse_decimal_rational("1e3").has_value());
    CHECK(!parse_decimal_rational("-1").has_value());
    CHECK(!parse_decimal_rational("").has_value());
    CHECK(!parse_decimal_rational("1.2.3").has_value());
}

TEST_CASE("float path agrees with the rational path away from the boundary")
{
    const auto exact = exact_sides(5, BetaRational{5, 4});
    const auto approx = exact_sides(5, 1.25);
    CHECK(exact.violates == approx.violates);
    CHECK(approx.lhs_sq_over_2pi ==
          doctest::Approx(exact.lhs_sq_over_2pi).epsilon(1e-14));
}

TEST_CASE("quadrature ties out against the integer sides")
{
    const CircleGrid grid(4096);

    const auto d21 = cross_check_quadrature(2, 1.0, grid);
    CHECK(d21.lhs_rel_delta <= 1e-9);
    CHECK(d21.rhs_rel_delta <= 1e-9);
    CHECK(d21.polar_coeff_residual <= 1e-12);

    const auto d5 = cross_check_quadrature(5, 1.01, grid);
    CHECK(d5.lhs_rel_delta <= 1e-9);
    CHECK(d5.rhs_rel_delta <= 1e-9);

    // at beta = T(2) the two sides agree (the boundary case)
    const auto boundary = exact_sides(2, threshold_beta(2));
    CHECK(std::abs(boundary.lhs_sq_over_2pi - boundary.rhs_sq_over_2pi) <=
          1e-9 * boundary.rhs_sq_over_2pi);
}

TEST_CASE("report serialization carries the exact integers")
{
    const auto r = exact_sides(2, BetaRational{1, 1});
    const std::string json = to_json(r);
    CHECK(json.find("\"lhs_num\":\"32\"") != std::string::npos);
    CHECK(json.find("\"rhs_num\":\"24\"") != std::string::npos);
    CHECK(json.find("\"violates\":true") != std::string::npos);
    CHECK(to_table(r).find("violated : yes") != std::string::npos);
    CHECK(u128_to_string(0) == "0");
    CHECK(u128_to_string(1234567890123456789ULL) == "1234567890123456789");
}

TEST_SUITE_END();
