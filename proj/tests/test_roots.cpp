#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyineq/roots.hpp"
#include "polyineq/rng.hpp"

#include "helpers.hpp"

using namespace polyineq;

namespace {

bool contains_root(const std::vector<Complex>& roots, Complex target,
                   double tol)
{
    return std::any_of(roots.begin(), roots.end(), [&](Complex r) {
        return std::abs(r - target) <= tol;
    });
}

} // namespace

TEST_SUITE_BEGIN("roots");

TEST_CASE("simple spectra: z^2 + 1 and a real pair")
{
    const Polynomial p({Complex{1, 0}, Complex{0, 0}, Complex{1, 0}});
    const RootsResult r = roots(p);
    REQUIRE(r.roots.size() == 2);
    CHECK(contains_root(r.roots, {0, 1}, 1e-10));
    CHECK(contains_root(r.roots, {0, -1}, 1e-10));

    const Polynomial q = from_roots({Complex{2, 0}, Complex{3, 0}}, {1, 0});
    const RootsResult rq = roots(q);
    CHECK(contains_root(rq.roots, {2, 0}, 1e-10));
    CHECK(contains_root(rq.roots, {3, 0}, 1e-10));
}

TEST_CASE("triple root comes back as a tight cluster")
{
    // (1 - iz)^3 = i (z + i)^3, triple root at -i
    const Polynomial p({Complex{1, 0}, Complex{0, -3}, Complex{-3, 0},
                        Complex{0, 1}});
    const RootsResult r = roots(p);
    REQUIRE(r.roots.size() == 3);
    Complex centroid{};
    for (const Complex& z : r.roots) {
        CHECK(std::abs(z - Complex{0, -1}) <= 1e-4);
        centroid += z;
    }
    centroid /= 3.0;
    // the cluster mean cancels most of the multiplicity error
    CHECK(std::abs(centroid - Complex{0, -1}) <= 1e-5);
}

TEST_CASE("zero roots are deflated exactly")
{
    // z^2 (z - 2)
    const Polynomial p({Complex{0, 0}, Complex{0, 0}, Complex{-2, 0},
                        Complex{1, 0}});
    const RootsResult r = roots(p);
    REQUIRE(r.roots.size() == 3);
    CHECK(r.roots[0] == Complex{});
    CHECK(r.roots[1] == Complex{});
    CHECK(contains_root(r.roots, {2, 0}, 1e-10));
}

TEST_CASE("product form reproduces the polynomial at degree 30")
{
    Rng rng(606);
    const Polynomial p = testutil::random_polynomial(rng, 30);
    const RootsResult r = roots(p);
    REQUIRE(r.roots.size() == 30);
    CHECK(r.max_relative_residual <= 1e-8);

    const Polynomial rebuilt = from_roots(r.roots, p.coeffs().back());
    for (int j = 0; j < 64; ++j) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / 64);
        const Complex a = eval(p, z);
        const Complex b = eval(rebuilt, z);
        CHECK(std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("unit disk classification")
{
    std::vector<Complex> pal(7);
    pal.front() = pal.back() = {1, 0};
    CHECK(!vanishes_in_open_unit_disk(Polynomial(pal))); // roots on |z| = 1

    const Polynomial mixed =
        from_roots({Complex{0.5, 0}, Complex{2, 0}}, {1, 0});
    CHECK(vanishes_in_open_unit_disk(mixed));

    Rng rng(2718);
    std::vector<Complex> outside(10);
    for (Complex& r : outside)
        r = rng.uniform(1.0, 3.0) * rng.unit_phase();
    CHECK(!vanishes_in_open_unit_disk(from_roots(outside, {1, 0})));

    const UnitDiskReport report =
        classify_unit_disk_zeros(Polynomial(pal), 1e-9);
    CHECK(!report.vanishes_inside);
    CHECK(report.boundary_count == 6);
    CHECK(report.min_modulus == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degree below one is rejected")
{
    CHECK_THROWS_AS(roots(Polynomial({Complex{3, 0}})), std::invalid_argument);
}

TEST_SUITE_END();
