#include "polyineq/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "polyineq/generators.hpp"

namespace polyineq {

using U128 = unsigned __int128;

namespace {

U128 checked_mul(U128 a, U128 b)
{
    U128 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("128-bit overflow in exact counterexample arithmetic");
    return out;
}

} // namespace

U128 binomial_exact(int n, int k)
{
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("binomial_exact needs 0 <= k <= n");
    k = std::min(k, n - k);
    U128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        // multiply before divide keeps every step integral: acc is C(n', i-1)
        acc = checked_mul(acc, static_cast<U128>(n - k + i));
        acc /= static_cast<U128>(i);
    }
    return acc;
}

std::string u128_to_string(U128 v)
{
    if (v == 0)
        return "0";
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double threshold_beta(int n)
{
    if (n < 2)
        throw std::invalid_argument("threshold_beta needs n >= 2");
    const double nn = static_cast<double>(n);
    return (nn + std::sqrt(2.0 * nn * (2.0 * nn - 1.0))) / (3.0 * nn - 2.0);
}

std::optional<BetaRational> parse_decimal_rational(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (char ch : text) {
        if (ch == '.') {
            if (seen_dot)
                return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9')
            return std::nullopt;
        seen_digit = true;
        if (num > (UINT64_MAX - 9) / 10)
            return std::nullopt;
        num = num * 10 + static_cast<std::uint64_t>(ch - '0');
        if (seen_dot) {
            if (den > UINT64_MAX / 10)
                return std::nullopt;
            den *= 10;
        }
    }
    if (!seen_digit)
        return std::nullopt;
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return BetaRational{num, den};
}

ExactCounterexampleReport exact_sides(int n, BetaRational beta)
{
    if (n < 2)
        throw std::invalid_argument("exact_sides needs n >= 2");
    if (beta.num == 0 || beta.den == 0)
        throw std::invalid_argument("exact_sides needs beta > 0");

    ExactCounterexampleReport report;
    report.n = n;
    report.beta = beta.to_double();
    report.exact_comparison = true;
    report.threshold = threshold_beta(n);

    const U128 n_sq = checked_mul(static_cast<U128>(n), static_cast<U128>(n));
    const U128 num_plus_den = static_cast<U128>(beta.num) + beta.den;
    // lhs/2pi = n^2 (1+beta)^2 C(2n-2, n-1) = n^2 (num+den)^2 C / den^2
    report.lhs_num = checked_mul(
        checked_mul(n_sq, checked_mul(num_plus_den, num_plus_den)),
        binomial_exact(2 * n - 2, n - 1));
    // rhs/2pi = n^2 beta^2 C(2n, n) = n^2 num^2 C / den^2
    report.rhs_num = checked_mul(
        checked_mul(n_sq, checked_mul(beta.num, beta.num)),
        binomial_exact(2 * n, n));
    report.common_den =
        checked_mul(static_cast<U128>(beta.den), static_cast<U128>(beta.den));

    report.lhs_sq_over_2pi = static_cast<double>(report.lhs_num) /
                             static_cast<double>(report.common_den);
    report.rhs_sq_over_2pi = static_cast<double>(report.rhs_num) /
                             static_cast<double>(report.common_den);
    report.violates = report.lhs_num > report.rhs_num;
    report.float_margin =
        (report.rhs_sq_over_2pi - report.lhs_sq_over_2pi) /
        std::max(report.rhs_sq_over_2pi, 1e-300);
    return report;
}

ExactCounterexampleReport exact_sides(int n, double beta)
{
    if (n < 2)
        throw std::invalid_argument("exact_sides needs n >= 2");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("exact_sides needs finite beta > 0");

    ExactCounterexampleReport report;
    report.n = n;
    report.beta = beta;
    report.exact_comparison = false;
    report.threshold = threshold_beta(n);

    const double n_sq = static_cast<double>(n) * n;
    const double c_lhs = static_cast<double>(binomial_exact(2 * n - 2, n - 1));
    const double c_rhs = static_cast<double>(binomial_exact(2 * n, n));
    report.lhs_num = 0;
    report.rhs_num = 0;
    report.common_den = 1;
    report.lhs_sq_over_2pi = n_sq * (1.0 + beta) * (1.0 + beta) * c_lhs;
    report.rhs_sq_over_2pi = n_sq * beta * beta * c_rhs;
    // binomials are integer-exact; only the beta multipliers carry rounding,
    // so a plain comparison is safe except within a few ulps of equality
    report.violates = report.lhs_sq_over_2pi > report.rhs_sq_over_2pi;
    report.float_margin =
        (report.rhs_sq_over_2pi - report.lhs_sq_over_2pi) /
        std::max(report.rhs_sq_over_2pi, 1e-300);
    return report;
}

QuadratureCrossCheck cross_check_quadrature(int n, double beta,
                                            const CircleGrid& grid)
{
    if (n < 2 || n > 20)
        throw std::invalid_argument("cross check supports 2 <= n <= 20");
    const Complex alpha{0.0, beta};

    FamilySpec spec;
    spec.kind = FamilyKind::Named;
    spec.named = NamedFamily::Counterexample;
    spec.degree = n;
    const Polynomial p = generate(spec);
    const Polynomial dp = polar_derivative(p, alpha);

    // closed form D_alpha P = n (1 - i alpha) (1 - iz)^{n-1}
    FamilySpec lower = spec;
    lower.degree = n - 1;
    const Polynomial closed =
        scale(generate(lower), static_cast<double>(n) * (1.0 - Complex{0.0, 1.0} * alpha));
    double coeff_residual = 0.0;
    for (int k = 0; k < n; ++k)
        coeff_residual = std::max(
            coeff_residual, std::abs(dp.coeff(k) - closed.coeff(k)));
    coeff_residual /= std::max(closed.coeff_inf_norm(), 1e-300);

    const ExactCounterexampleReport exact = exact_sides(n, beta);
    const double lhs_quad_sq = std::pow(lp_mean(dp, 2.0, grid).value, 2.0);
    const double rhs_quad_sq =
        static_cast<double>(n) * n * (beta * beta) *
        std::pow(lp_mean(p, 2.0, grid).value, 2.0);
    const double two_pi = 2.0 * std::numbers::pi_v<double>;

    QuadratureCrossCheck deltas;
    deltas.lhs_rel_delta =
        std::abs(lhs_quad_sq - exact.lhs_sq_over_2pi * two_pi) /
        (exact.lhs_sq_over_2pi * two_pi);
    deltas.rhs_rel_delta =
        std::abs(rhs_quad_sq - exact.rhs_sq_over_2pi * two_pi) /
        (exact.rhs_sq_over_2pi * two_pi);
    deltas.polar_coeff_residual = coeff_residual;
    return deltas;
}

std::string to_json(const ExactCounterexampleReport& r)
{
    nlohmann::json j;
    j["n"] = r.n;
    j["beta"] = r.beta;
    j["exact_comparison"] = r.exact_comparison;
    j["lhs_sq_over_2pi"] = r.lhs_sq_over_2pi;
    j["rhs_sq_over_2pi"] = r.rhs_sq_over_2pi;
    if (r.exact_comparison) {
        j["lhs_num"] = u128_to_string(r.lhs_num);
        j["rhs_num"] = u128_to_string(r.rhs_num);
        j["common_den"] = u128_to_string(r.common_den);
    }
    j["violates"] = r.violates;
    j["threshold"] = r.threshold;
    return j.dump();
}

std::string to_table(const ExactCounterexampleReport& r)
{
    std::ostringstream os;
    os.precision(12);
    os << "P = (1 - iz)^" << r.n << ",  alpha = " << r.beta << "i,  p = 2\n"
       << "  |D_a P|^2 mean / 2pi : " << r.lhs_sq_over_2pi;
    if (r.exact_comparison)
        os << "  (= " << u128_to_string(r.lhs_num) << "/"
           << u128_to_string(r.common_den) << ")";
    os << "\n  n^2|a|^2 |P|^2 mean / 2pi : " << r.rhs_sq_over_2pi;
    if (r.exact_comparison)
        os << "  (= " << u128_to_string(r.rhs_num) << "/"
           << u128_to_string(r.common_den) << ")";
    os << "\n  naive bound violated : " << (r.violates ? "yes" : "no")
       << "\n  violation threshold T(n) : " << r.threshold
       << "  (violates iff beta < T(n), beta >= 1)\n";
    return os.str();
}

} // namespace polyineq
