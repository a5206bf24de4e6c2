#include <doctest.h>

#include <cmath>

#include "polyineq/extremal_search.hpp"

#include "helpers.hpp"

using namespace polyineq;

TEST_SUITE_BEGIN("extremal");

TEST_CASE("simplex minimizer solves a shifted quadratic")
{
    auto f = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - static_cast<double>(i + 1);
            s += d * d;
        }
        return s;
    };
    const NelderMeadResult r = nelder_mead(f, {0.0, 0.0, 0.0}, {});
    CHECK(r.f <= 1e-15);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(r.x[i] - static_cast<double>(i + 1)) <= 1e-7);
}

TEST_CASE("named extremal families meet their stated margins")
{
    // a z^n saturates the L^p derivative bound
    const CheckReport zyg = verify_extremal(InequalityId::Zygmund,
                                            NamedFamily::Monomial, 7, 3.0,
                                            std::nullopt);
    CHECK(std::abs(zyg.relative_margin) <= 1e-9);

    // z^n + 1 saturates the polar bound for nonvanishing polynomials
    const CheckReport aziz = verify_extremal(InequalityId::AzizPolar,
                                             NamedFamily::PlusOne, 5,
                                             std::nullopt, Complex{2.0, 0.0});
    CHECK(std::abs(aziz.relative_margin) <= 1e-6);

    // a z^n + b with |a| = |b| saturates the improved-constant bound
    const CheckReport deb = verify_extremal(InequalityId::DeBruijn,
                                            NamedFamily::Binomial, 4, 2.0,
                                            std::nullopt, Complex{1, 0},
                                            Complex{1, 0});
    CHECK(std::abs(deb.relative_margin) <= 1e-8);
}

TEST_CASE("mismatched family and entry is rejected")
{
    CHECK_THROWS_AS(verify_extremal(InequalityId::DeBruijn,
                                    NamedFamily::Monomial, 4, 2.0,
                                    std::nullopt),
                    HypothesisViolation);
}

TEST_CASE("ratio is scale invariant")
{
    Rng rng(17);
    const Polynomial p = testutil::random_polynomial(rng, 5);
    const CheckConfig cfg;
    const CheckReport base =
        check(InequalityId::Zygmund, p, std::nullopt, 2.0, cfg);
    const CheckReport scaled = check(InequalityId::Zygmund,
                                     scale(p, Complex{0.0, 37.5}),
                                     std::nullopt, 2.0, cfg);
    const double r1 = base.lhs / base.rhs;
    const double r2 = scaled.lhs / scaled.rhs;
    CHECK(std::abs(r1 - r2) <= 1e-12 * std::max(r1, r2));
}

TEST_CASE("unrestricted search finds the monomial ridge")
{
    SearchConfig cfg;
    cfg.id = InequalityId::Zygmund;
    cfg.degree = 4;
    cfg.p = 2.0;
    cfg.parametrization = Parametrization::RawCoeffs;
    cfg.restarts = 10;
    cfg.simplex.max_iterations = 2000;
    cfg.check.theta_grid_n = 512;
    const SearchResult r = sharpness_search(cfg, 42);
    CHECK(r.best_ratio >= 0.999999);
    CHECK(r.best_ratio <= 1.0 + 1e-6);
    CHECK(r.trace.size() == 10);

    // most of the mass must sit in the top coefficient
    double top = std::abs(r.best.coeff(4));
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(r.best.coeff(k)) <= 1e-2 * top);
}

TEST_CASE("roots-outside search approaches the binomial extremal")
{
    SearchConfig cfg;
    cfg.id = InequalityId::DeBruijn;
    cfg.degree = 3;
    cfg.p = 2.0;
    cfg.parametrization = Parametrization::RootsOutside;
    cfg.restarts = 8;
    cfg.simplex.max_iterations = 3000;
    cfg.check.theta_grid_n = 512;
    const SearchResult r = sharpness_search(cfg, 9);
    CHECK(r.best_ratio >= 0.9999);
    CHECK(r.best_ratio <= 1.0 + 1e-6);
}

TEST_CASE("polar sup search approaches z^n + 1")
{
    SearchConfig cfg;
    cfg.id = InequalityId::AzizPolar;
    cfg.degree = 3;
    cfg.alpha = Complex{1.0, 0.0};
    cfg.parametrization = Parametrization::RootsOutside;
    cfg.restarts = 8;
    cfg.simplex.max_iterations = 3000;
    cfg.check.theta_grid_n = 512;
    cfg.check.sup_samples = 512;
    const SearchResult r = sharpness_search(cfg, 9);
    CHECK(r.best_ratio >= 0.9999);
    CHECK(r.best_ratio <= 1.0 + 1e-6);
}

TEST_CASE("restart traces are reproducible")
{
    SearchConfig cfg;
    cfg.id = InequalityId::Zygmund;
    cfg.degree = 3;
    cfg.p = 2.0;
    cfg.restarts = 4;
    cfg.simplex.max_iterations = 400;
    cfg.check.theta_grid_n = 512;
    const SearchResult a = sharpness_search(cfg, 7);
    const SearchResult b = sharpness_search(cfg, 7);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].best_ratio == b.trace[i].best_ratio);
        CHECK(a.trace[i].iterations == b.trace[i].iterations);
    }
    CHECK(a.best == b.best);
}

TEST_CASE("parametrization and entry compatibility is enforced")
{
    SearchConfig cfg;
    cfg.id = InequalityId::DeBruijn;
    cfg.p = 2.0;
    cfg.parametrization = Parametrization::RawCoeffs;
    CHECK_THROWS_AS(sharpness_search(cfg, 1), std::invalid_argument);

    cfg.id = InequalityId::Thm3;
    cfg.parametrization = Parametrization::RootsOutside;
    CHECK_THROWS_AS(sharpness_search(cfg, 1), std::invalid_argument);

    cfg.id = InequalityId::Thm1; // alpha unconstrained: must be fixed
    cfg.parametrization = Parametrization::RawCoeffs;
    CHECK_THROWS_AS(sharpness_search(cfg, 1), std::invalid_argument);
}

TEST_SUITE_END();
