#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "polyineq/circle_norms.hpp"
#include "polyineq/polynomial.hpp"

namespace polyineq {

/// Exact C(n, k) in 128-bit arithmetic; throws std::overflow_error when the
/// value (or an intermediate product) would not fit.
unsigned __int128 binomial_exact(int n, int k);

std::string u128_to_string(unsigned __int128 v);

/// Largest beta for which P = (1 - iz)^n with alpha = i*beta violates the
/// naive polar L^2 bound: T(n) = (n + sqrt(2n(2n-1))) / (3n - 2).  Always
/// > 1, so beta = 1 violates at every degree.  Requires n >= 2.
double threshold_beta(int n);

/// Nonnegative rational beta for the float-free comparison path.
struct BetaRational {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    double to_double() const
    {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

/// Parses a plain decimal ("1", "1.05", "2.125") into an exact rational.
/// Returns empty for anything else (signs, exponents, garbage).
std::optional<BetaRational> parse_decimal_rational(std::string_view text);

/// Both sides of the L^2 comparison for P = (1 - iz)^n, alpha = i*beta,
/// divided by 2*pi:
///   lhs = n^2 (1 + beta)^2 C(2n-2, n-1)   (the |D_alpha P|^2 mean)
///   rhs = n^2 beta^2      C(2n, n)        (the n^2|alpha|^2 |P|^2 mean)
/// With rational beta both sides are integers over den^2 and the violation
/// verdict is float-free; with irrational beta the comparison falls back to
/// doubles and margin is reported.
struct ExactCounterexampleReport {
    int n = 0;
    double beta = 1.0;
    bool exact_comparison = false;
    // numerators over common_den (= den^2 for rational beta, 1 otherwise)
    unsigned __int128 lhs_num = 0;
    unsigned __int128 rhs_num = 0;
    unsigned __int128 common_den = 1;
    double lhs_sq_over_2pi = 0.0;
    double rhs_sq_over_2pi = 0.0;
    bool violates = false;           // lhs > rhs
    double float_margin = 0.0;       // (rhs - lhs)/max(rhs,eps), float path
    double threshold = 0.0;          // T(n)
};

ExactCounterexampleReport exact_sides(int n, BetaRational beta);
ExactCounterexampleReport exact_sides(int n, double beta);

/// Ties the generic quadrature engine to the integer-exact sides and checks
/// the closed-form polar derivative n(1 - i alpha)(1 - iz)^{n-1}
/// coefficientwise.
struct QuadratureCrossCheck {
    double lhs_rel_delta = 0.0;
    double rhs_rel_delta = 0.0;
    double polar_coeff_residual = 0.0; // relative, against the closed form
};

QuadratureCrossCheck cross_check_quadrature(int n, double beta,
                                            const CircleGrid& grid);

std::string to_json(const ExactCounterexampleReport& report);
std::string to_table(const ExactCounterexampleReport& report);

} // namespace polyineq
