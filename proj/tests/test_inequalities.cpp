#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyineq/inequalities.hpp"

#include "helpers.hpp"

using namespace polyineq;
using testutil::approx_rel;

namespace {

Polynomial counterexample_square()
{
    // (1 - iz)^2
    return Polynomial({Complex{1, 0}, Complex{0, -2}, Complex{-1, 0}});
}

Polynomial monomial(int n, Complex a = {1, 0})
{
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c.back() = a;
    return Polynomial(std::move(c), n);
}

Polynomial plus_one(int n)
{
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c.front() = c.back() = {1, 0};
    return Polynomial(std::move(c), n);
}

} // namespace

TEST_SUITE_BEGIN("inequalities");

TEST_CASE("registry holds exactly the fourteen entries")
{
    CHECK(registry().size() == 14);
    for (const char* name :
         {"bernstein", "zygmund", "polar_sup", "conj4", "thm1", "debruijn",
          "erdos_lax", "aziz_polar", "thm2", "thm3", "lemma1", "lemma2",
          "lemma3", "id18_19"})
        CHECK(inequality_by_name(name).has_value());
    CHECK(inequality_by_name("lemma1_pw") == InequalityId::Lemma1Pw);
    CHECK(!inequality_by_name("nope").has_value());
    CHECK(inequality(InequalityId::Conj4).expected_fail);
}

TEST_CASE("polar L^p bound on the squared counterexample: worked numbers")
{
    // lhs^2 = 64 pi, rhs^2 = 192 pi, margin 1 - 1/sqrt(3)
    const CheckConfig cfg;
    const CheckReport r = check(InequalityId::Thm1, counterexample_square(),
                                Complex{0, 1}, 2.0, cfg);
    CHECK(approx_rel(r.lhs * r.lhs, 64.0 * std::numbers::pi, 1e-12));
    CHECK(approx_rel(r.rhs * r.rhs, 192.0 * std::numbers::pi, 1e-12));
    CHECK(r.relative_margin ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-10));
    CHECK(r.pass);
}

TEST_CASE("the naive n|alpha| form fails on the same input")
{
    const CheckConfig cfg;
    const CheckReport r = check(InequalityId::Conj4, counterexample_square(),
                                Complex{0, 1}, 2.0, cfg);
    CHECK(approx_rel(r.lhs * r.lhs, 64.0 * std::numbers::pi, 1e-12));
    CHECK(approx_rel(r.rhs * r.rhs, 48.0 * std::numbers::pi, 1e-12));
    CHECK(!r.pass);
    CHECK(r.expected_fail);
}

TEST_CASE("monomials certify equality in the unrestricted bounds")
{
    const CheckConfig cfg;
    const Polynomial p = monomial(6, {0.0, 2.0});
    for (double pexp : {1.0, 2.0, 3.0}) {
        const CheckReport r =
            check(InequalityId::Zygmund, p, std::nullopt, pexp, cfg);
        CHECK(std::abs(r.relative_margin) <= 1e-12);
        CHECK(r.pass);
    }
    const CheckReport bern =
        check(InequalityId::Bernstein, p, std::nullopt, std::nullopt, cfg);
    CHECK(std::abs(bern.relative_margin) <= 1e-9);

    const CheckReport polar = check(InequalityId::PolarSup, p,
                                    Complex{2.0, -1.0}, std::nullopt, cfg);
    CHECK(std::abs(polar.relative_margin) <= 1e-9);
}

TEST_CASE("missing arguments and hypothesis gates")
{
    const CheckConfig cfg;
    const Polynomial p = plus_one(3);
    CHECK_THROWS_AS(check(InequalityId::Thm1, p, std::nullopt, 2.0, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        check(InequalityId::Zygmund, p, std::nullopt, std::nullopt, cfg),
        std::invalid_argument);
    CHECK_THROWS_AS(check(InequalityId::Zygmund, p, std::nullopt, 0.5, cfg),
                    std::invalid_argument);

    // monomial vanishes at the origin: the nonvanishing gate rejects it
    CHECK_THROWS_AS(check(InequalityId::DeBruijn, monomial(4), std::nullopt,
                          2.0, cfg),
                    HypothesisViolation);
    // |alpha| < 1 rejected where required
    CHECK_THROWS_AS(check(InequalityId::AzizPolar, p, Complex{0.5, 0},
                          std::nullopt, cfg),
                    HypothesisViolation);
    // 1 + 2z is not self-inversive
    CHECK_THROWS_AS(check(InequalityId::Thm3,
                          Polynomial({Complex{1, 0}, Complex{2, 0}}),
                          Complex{1, 0}, 2.0, cfg),
                    HypothesisViolation);

    CheckConfig forced = cfg;
    forced.force_hypothesis = true;
    const CheckReport r =
        check(InequalityId::DeBruijn, monomial(4), std::nullopt, 2.0, forced);
    CHECK(!r.pass); // the improved constant genuinely fails at a disk zero
}

TEST_CASE("pointwise domination by the conjugate-reciprocal transform")
{
    Rng rng(8088);
    FamilySpec spec;
    spec.kind = FamilyKind::NonvanishingDisk;
    spec.degree = 9;
    spec.seed = 5;
    const Polynomial p = generate(spec);
    const CheckConfig cfg;
    const CheckReport r =
        check(InequalityId::Lemma1Pw, p, Complex{3.0, 1.0}, std::nullopt, cfg);
    CHECK(r.pass);

    // the max form follows from the pointwise form
    const Polynomial dap = polar_derivative(p, Complex{3.0, 1.0});
    const Polynomial daq =
        polar_derivative(conj_reciprocal(p), Complex{3.0, 1.0});
    CHECK(sup_norm(dap) <= sup_norm(daq) * (1.0 + 1e-9));
}

TEST_CASE("P(0) = 0 perturbation is applied and reported for the double bound")
{
    const CheckConfig cfg;
    // z + z^3 at declared degree 4: self-inversive (u = 1) with a_0 = 0
    const Polynomial p({Complex{0, 0}, Complex{1, 0}, Complex{0, 0},
                        Complex{1, 0}},
                       4);
    const CheckReport r =
        check(InequalityId::Lemma3, p, Complex{1.5, 0.5}, 2.0, cfg);
    CHECK(r.pass);
    CHECK(r.note.find("perturbed") != std::string::npos);

    // the self-inversive L^p bound also holds there (recorded outcome)
    const CheckReport thm3 = check(InequalityId::Thm3, p, Complex{0.3, 0.1},
                                   2.0, cfg);
    CHECK(thm3.pass);
    CHECK(thm3.note.empty());
}

TEST_CASE("huge alpha reduces the polar bound to the derivative bound")
{
    Rng rng(314159);
    const CheckConfig cfg;
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 9);
        const Polynomial p = testutil::random_polynomial(rng, n);
        const Complex alpha = std::polar(1e6, rng.uniform(0.0, 6.28));
        for (double pexp : {1.0, 2.0}) {
            const CheckReport big =
                check(InequalityId::Thm1, p, alpha, pexp, cfg);
            const CheckReport zyg =
                check(InequalityId::Zygmund, p, std::nullopt, pexp, cfg);
            CHECK(std::abs(big.relative_margin - zyg.relative_margin) <= 1e-4);
        }
    }
}

TEST_CASE("restricted bound never exceeds the unrestricted one")
{
    FamilySpec spec;
    spec.kind = FamilyKind::NonvanishingDisk;
    spec.degree = 7;
    const CheckConfig cfg;
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        spec.seed = seed;
        const Polynomial p = generate(spec);
        const Complex alpha{2.0, 2.0};
        for (double pexp : {1.0, 2.0, 5.0}) {
            const CheckReport strong =
                check(InequalityId::Thm2, p, alpha, pexp, cfg);
            const CheckReport weak =
                check(InequalityId::Thm1, p, alpha, pexp, cfg);
            CHECK(strong.rhs <= weak.rhs * (1.0 + 1e-12));
            CHECK(strong.pass);
        }
    }
}

TEST_CASE("identity residual entry stays within its bound")
{
    Rng rng(271828);
    const CheckConfig cfg;
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 18);
        const Polynomial p = testutil::random_polynomial(rng, n);
        const CheckReport r = check(InequalityId::Identity1819, p,
                                    std::nullopt, std::nullopt, cfg);
        CHECK(r.pass);
        CHECK(r.lhs <= r.rhs);
    }
}

TEST_CASE("csv round trip preserves every column")
{
    const CheckConfig cfg;
    const CheckReport r = check(InequalityId::Thm1, counterexample_square(),
                                Complex{0.25, -3.5}, 2.0, cfg,
                                {"unrestricted", 2, 987654321});
    const CheckReport back = report_from_csv_row(to_csv_row(r));
    CHECK(back.id == r.id);
    CHECK(back.digest.family == r.digest.family);
    CHECK(back.digest.degree == r.digest.degree);
    CHECK(back.digest.seed == r.digest.seed);
    REQUIRE(back.alpha.has_value());
    CHECK(back.alpha->real() == r.alpha->real());
    CHECK(back.alpha->imag() == r.alpha->imag());
    CHECK(back.p == r.p);
    CHECK(back.lhs == r.lhs);
    CHECK(back.rhs == r.rhs);
    CHECK(back.relative_margin == r.relative_margin);
    CHECK(back.pass == r.pass);

    const std::string json = to_json_line(r);
    CHECK(json.find("\"id\":\"thm1\"") != std::string::npos);
    CHECK(json.find("\"pass\":true") != std::string::npos);

    // entries without alpha/p leave the columns empty
    const CheckReport bern = check(InequalityId::Bernstein, plus_one(4),
                                   std::nullopt, std::nullopt, cfg);
    const CheckReport bern_back = report_from_csv_row(to_csv_row(bern));
    CHECK(!bern_back.alpha.has_value());
    CHECK(!bern_back.p.has_value());
}

TEST_CASE("suite runs are deterministic and summarized")
{
    SuiteSpec spec;
    spec.family = FamilyKind::Unrestricted;
    spec.degree_min = 1;
    spec.degree_max = 6;
    spec.ids = {InequalityId::Thm1, InequalityId::Zygmund};
    spec.p_values = {1.0, 2.0};
    CheckConfig cfg;
    cfg.theta_grid_n = 512;

    const SuiteResult a = run_suite(spec, 12, 99, cfg);
    const SuiteResult b = run_suite(spec, 12, 99, cfg);
    REQUIRE(a.reports.size() == b.reports.size());
    CHECK(a.reports.size() == 12 * 2 * 2);
    for (std::size_t i = 0; i < a.reports.size(); ++i)
        CHECK(to_csv_row(a.reports[i]) == to_csv_row(b.reports[i]));
    CHECK(a.summary.ok());
    for (const IdSummary& s : a.summary.per_id)
        CHECK(s.min_relative_margin >= -1e-7);
}

TEST_CASE("suite flags the retained falsifiable entry as expected-fail")
{
    SuiteSpec spec;
    spec.family = FamilyKind::Named;
    spec.named = NamedFamily::Counterexample;
    spec.alpha_policy = AlphaPolicy::CounterexampleImaginary;
    spec.degree_min = 2;
    spec.degree_max = 8;
    spec.ids = {InequalityId::Conj4, InequalityId::Thm1};
    spec.p_values = {2.0};
    CheckConfig cfg;
    cfg.theta_grid_n = 512;

    const SuiteResult r = run_suite(spec, 20, 1234, cfg);
    CHECK(r.summary.ok());
    for (const IdSummary& s : r.summary.per_id) {
        if (s.id == InequalityId::Conj4) {
            CHECK(s.must_fail);
            CHECK(s.passes == 0); // every draw lies below the threshold
        } else {
            CHECK(s.passes == s.checks);
        }
    }
}

TEST_CASE("suite validates its inputs")
{
    SuiteSpec spec;
    spec.ids = {InequalityId::Zygmund};
    CheckConfig cfg;
    CHECK_THROWS_AS(run_suite(spec, 0, 1, cfg), std::invalid_argument);
    CHECK_THROWS_AS(run_suite(spec, 1, 1, cfg), std::invalid_argument); // no p
    spec.ids.clear();
    CHECK_THROWS_AS(run_suite(spec, 1, 1, cfg), std::invalid_argument);
}

TEST_SUITE_END();
