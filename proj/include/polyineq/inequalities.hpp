#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyineq/circle_norms.hpp"
#include "polyineq/generators.hpp"
#include "polyineq/polynomial.hpp"

namespace polyineq {

enum class InequalityId {
    Bernstein,   // max|P'| <= n max|P|
    Zygmund,     // ||P'||_p <= n ||P||_p
    PolarSup,    // max|D_a P| <= n|a| max|P|, |a| >= 1
    Conj4,       // ||D_a P||_p <= n|a| ||P||_p  (known false)
    Thm1,        // ||D_a P||_p <= n(|a|+1) ||P||_p
    DeBruijn,    // ||P'||_p <= n C_p ||P||_p, P nonvanishing in |z|<1
    ErdosLax,    // max|P'| <= (n/2) max|P|, P nonvanishing
    AzizPolar,   // max|D_a P| <= (n/2)(|a|+1) max|P|, P nonvanishing, |a|>=1
    Thm2,        // ||D_a P||_p <= n(|a|+1) C_p ||P||_p, P nonvanishing, |a|>=1
    Thm3,        // same bound, P self-inversive, every a
    Lemma1Pw,    // |D_a P| <= |D_a Q| pointwise on |z|=1
    Lemma2,      // IntInt|Q' + e^{ib}P'|^p <= 2pi n^p Int|P|^p
    Lemma3,      // IntInt|D_a Q + e^{ib}D_a P|^p <= 2pi n^p (|a|+1)^p Int|P|^p
    Identity1819 // nP - zP' = z^{n-1} conj(Q') on |z|=1 (and the P/Q swap)
};

namespace hypothesis {
inline constexpr unsigned kNone = 0;
inline constexpr unsigned kNonvanishing = 1;
inline constexpr unsigned kSelfInversive = 2;
inline constexpr unsigned kAbsAlphaGe1 = 4;
inline constexpr unsigned kP0Nonzero = 8;
} // namespace hypothesis

struct InequalityDef {
    InequalityId id;
    std::string_view name;        // CLI token
    std::string_view statement;   // human-readable form
    unsigned hypotheses;          // hypothesis:: bits
    bool needs_alpha;
    bool needs_p;
    bool expected_fail;           // retained falsifiable entry
};

const std::vector<InequalityDef>& registry();
const InequalityDef& inequality(InequalityId id);
std::optional<InequalityId> inequality_by_name(std::string_view name);

struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckConfig {
    std::size_t theta_grid_n = 4096;     // L^p start grid (grows to 8*deg+1)
    std::size_t lemma_theta_grid_n = 1024; // outer grid of the double integrals
    std::size_t beta_grid_n = 256;       // inner beta grid (doubles until stable)
    std::size_t quad_max_n = std::size_t{1} << 20;
    double quad_rel_tol = 1e-9;          // quadrature target
    std::size_t sup_samples = 2048;
    double sup_refine_tol = 1e-9;
    double pass_tol = 1e-7;              // decoupled from the quadrature target
    double hypothesis_tol = 1e-9;        // boundary-zero tolerance
    bool force_hypothesis = false;       // run hypothesis-violation experiments
    bool trust_hypothesis = false;       // construction guarantees; skip checks
};

struct PolynomialDigest {
    std::string family = "custom";
    int degree = 0;
    std::uint64_t seed = 0;
};

struct CheckReport {
    InequalityId id = InequalityId::Bernstein;
    PolynomialDigest digest;
    std::optional<Complex> alpha;
    std::optional<double> p;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;           // rhs - lhs
    double relative_margin = 0.0;  // margin / max(rhs, eps)
    bool pass = false;             // relative_margin >= -pass_tol
    bool expected_fail = false;
    std::size_t theta_grid_n = 0;  // largest grid the check used
    std::size_t beta_grid_n = 0;
    double convergence_delta = 0.0;
    std::string note;              // e.g. the Lemma 3 a_0 perturbation
};

std::string to_json_line(const CheckReport& report);
std::string csv_header();
std::string to_csv_row(const CheckReport& report);
CheckReport report_from_csv_row(std::string_view row);

/// Evaluates both sides of the inequality.  Throws std::invalid_argument
/// when alpha/p are required but missing, HypothesisViolation when the
/// entry's hypotheses fail for (P, alpha) and neither force_hypothesis nor
/// trust_hypothesis is set.
CheckReport check(InequalityId id, const Polynomial& P,
                  std::optional<Complex> alpha, std::optional<double> p,
                  const CheckConfig& cfg, const PolynomialDigest& digest = {});

enum class AlphaPolicy {
    Auto,                  // |a| in [1, alpha_max] for |a|>=1 entries, else [0, alpha_max]
    Fixed,                 // use fixed_alpha for every trial
    CounterexampleImaginary, // a = i*beta, beta in [1, T(n)); pairs with conj4
};

struct SuiteSpec {
    FamilyKind family = FamilyKind::Unrestricted;
    NamedFamily named = NamedFamily::PlusOne; // when family == Named
    int degree_min = 1;
    int degree_max = 15;
    double scale = 1.0;
    double r_max = 3.0;
    std::vector<InequalityId> ids;
    std::vector<double> p_values;   // applied to needs_p entries
    AlphaPolicy alpha_policy = AlphaPolicy::Auto;
    Complex fixed_alpha{1.0, 0.0};
    double alpha_max = 10.0;
};

struct IdSummary {
    InequalityId id;
    int checks = 0;
    int passes = 0;
    double min_relative_margin = 0.0;
    bool must_fail = false; // conj4 driven through its violating family
};

struct SuiteSummary {
    std::vector<IdSummary> per_id;
    int genuine_violations = 0;    // failed checks on entries expected to hold
    int unexpected_passes = 0;     // must-fail entries that passed (a bug)
    bool ok() const { return genuine_violations == 0 && unexpected_passes == 0; }
};

struct SuiteResult {
    std::vector<CheckReport> reports; // trial-major, deterministic order
    SuiteSummary summary;
};

/// Cross product corpus x ids x alpha draw x p values.  Trial i derives its
/// rng from child_seed(master_seed, i); trials run in parallel (capped by
/// POLYINEQ_THREADS, 0 or unset = auto) and merge in index order, so output
/// is byte-identical across runs and thread schedules.
SuiteResult run_suite(const SuiteSpec& spec, int trials,
                      std::uint64_t master_seed, const CheckConfig& cfg);

} // namespace polyineq
