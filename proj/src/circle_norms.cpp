#include "polyineq/circle_norms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyineq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

bool is_even_integer(double p)
{
    return p == std::floor(p) && std::fmod(p, 2.0) == 0.0;
}

// Running-max scaled sum of (v_j / scale)^p; keeps |P|^p sums finite for
// large p and the summation order fixed.
struct ScaledPowSum {
    double scale = 0.0;
    double sum = 0.0;
    double comp = 0.0;

    void add(double v, double p)
    {
        if (v > scale) {
            if (scale > 0.0) {
                const double f = std::pow(scale / v, p);
                sum *= f;
                comp *= f;
            }
            scale = v;
        }
        const double x = (scale == 0.0) ? 0.0 : std::pow(v / scale, p);
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    // {(2pi/n) * sum (v_j/scale)^p}^{1/p} * scale
    double mean(std::size_t n, double p) const
    {
        if (scale == 0.0)
            return 0.0;
        return scale * std::pow(kTwoPi / static_cast<double>(n) * (sum + comp),
                                1.0 / p);
    }
};

double abs_on_circle(const Polynomial& poly, double theta)
{
    return std::abs(eval(poly, std::polar(1.0, theta)));
}

// Trapezoid on the uniform periodic grid with midpoint-reuse doubling.
// Returns the plain integral over [0, 2pi).
template <typename F>
QuadratureResult integrate_periodic_doubling(F&& f, std::size_t start_n,
                                             double rel_tol, std::size_t max_n)
{
    std::size_t n = std::max<std::size_t>(start_n, 8);
    n += n & 1; // keep beta = pi on the grid; integrands may kink there
    CompensatedSum acc;
    for (std::size_t j = 0; j < n; ++j)
        acc.add(f(kTwoPi * static_cast<double>(j) / static_cast<double>(n)));

    QuadratureResult result;
    result.value = acc.value() * kTwoPi / static_cast<double>(n);
    result.grid_n = n;
    result.converged = false;
    while (n < max_n) {
        for (std::size_t j = 0; j < n; ++j)
            acc.add(f(kTwoPi * (2.0 * static_cast<double>(j) + 1.0) /
                      (2.0 * static_cast<double>(n))));
        n *= 2;
        const double next = acc.value() * kTwoPi / static_cast<double>(n);
        result.last_delta =
            std::abs(next - result.value) / std::max(std::abs(next), DBL_MIN);
        result.value = next;
        result.grid_n = n;
        if (result.last_delta <= rel_tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace

CircleGrid::CircleGrid(std::size_t node_count) : n(node_count)
{
    if (n < 8)
        throw std::invalid_argument("circle grid needs at least 8 nodes");
}

double CircleGrid::node(std::size_t j) const
{
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

double CircleGrid::weight() const { return kTwoPi / static_cast<double>(n); }

PExponent PExponent::finite(double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("finite exponent must satisfy p >= 1");
    return PExponent(p, false);
}

double PExponent::value() const
{
    if (sup_)
        throw std::logic_error("sup exponent has no finite value");
    return p_;
}

std::vector<Complex> sample_on_circle(const Polynomial& p, const CircleGrid& grid)
{
    std::vector<Complex> values(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j)
        values[j] = eval(p, std::polar(1.0, grid.node(j)));
    return values;
}

LpMean lp_mean(const Polynomial& p, double pexp, const CircleGrid& grid)
{
    if (!(pexp >= 1.0))
        throw std::invalid_argument("lp_mean requires p >= 1");
    ScaledPowSum acc;
    for (std::size_t j = 0; j < grid.n; ++j)
        acc.add(abs_on_circle(p, grid.node(j)), pexp);
    const int deg = std::max(p.numeric_degree(), 0);
    LpMean out;
    out.value = acc.mean(grid.n, pexp);
    out.exact = is_even_integer(pexp) &&
                grid.n >= static_cast<std::size_t>(deg) *
                              static_cast<std::size_t>(pexp) +
                          1;
    return out;
}

QuadratureResult lp_mean_adaptive(const Polynomial& p, double pexp,
                                  std::size_t start_n, double rel_tol,
                                  std::size_t max_n)
{
    if (!(pexp >= 1.0))
        throw std::invalid_argument("lp_mean requires p >= 1");
    const int deg = std::max(p.numeric_degree(), 0);

    if (is_even_integer(pexp)) {
        const std::size_t need =
            static_cast<std::size_t>(deg) * static_cast<std::size_t>(pexp) + 1;
        if (need <= max_n) {
            const CircleGrid grid(std::max<std::size_t>({start_n, need, 8}));
            QuadratureResult result;
            result.value = lp_mean(p, pexp, grid).value;
            result.grid_n = grid.n;
            result.last_delta = 0.0;
            result.converged = true;
            return result;
        }
    }

    std::size_t n = std::max<std::size_t>(start_n, 8);
    n += n & 1;
    ScaledPowSum acc;
    for (std::size_t j = 0; j < n; ++j)
        acc.add(abs_on_circle(p, kTwoPi * static_cast<double>(j) /
                                     static_cast<double>(n)),
                pexp);

    QuadratureResult result;
    result.value = acc.mean(n, pexp);
    result.grid_n = n;
    result.converged = false;
    while (n < max_n) {
        for (std::size_t j = 0; j < n; ++j)
            acc.add(abs_on_circle(p, kTwoPi * (2.0 * static_cast<double>(j) + 1.0) /
                                         (2.0 * static_cast<double>(n))),
                    pexp);
        n *= 2;
        const double next = acc.mean(n, pexp);
        result.last_delta =
            std::abs(next - result.value) / std::max(std::abs(next), DBL_MIN);
        result.value = next;
        result.grid_n = n;
        if (result.last_delta <= rel_tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

double sup_norm(const Polynomial& p, std::size_t samples, double refine_tol)
{
    if (samples < 64)
        throw std::invalid_argument("sup_norm needs at least 64 samples");
    auto f = [&p](double theta) {
        return std::norm(eval(p, std::polar(1.0, theta)));
    };

    double best = -1.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < samples; ++j) {
        const double v = f(kTwoPi * static_cast<double>(j) /
                           static_cast<double>(samples));
        if (v > best) {
            best = v;
            best_j = j;
        }
    }

    // Golden-section refinement in the bracketing interval around the best
    // sample (|P(e^{i theta})|^2 is smooth there).
    const double h = kTwoPi / static_cast<double>(samples);
    double a = (static_cast<double>(best_j) - 1.0) * h;
    double b = (static_cast<double>(best_j) + 1.0) * h;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double width_target = std::max(1e-13, 1e-2 * refine_tol);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 200 && (b - a) > width_target; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    best = std::max({best, f1, f2});
    return std::sqrt(best);
}

double cp_constant(double pexp, const CircleGrid& grid)
{
    if (!(pexp >= 1.0))
        throw std::invalid_argument("cp_constant requires p >= 1");
    auto integrand = [pexp](double beta) {
        return std::pow(2.0 + 2.0 * std::cos(beta), pexp / 2.0);
    };

    double mean;
    if (is_even_integer(pexp)) {
        // Trig polynomial of degree p/2: one exact grid suffices.
        const CircleGrid exact(
            std::max<std::size_t>(grid.n, static_cast<std::size_t>(pexp) + 1));
        CompensatedSum acc;
        for (std::size_t j = 0; j < exact.n; ++j)
            acc.add(integrand(exact.node(j)));
        mean = acc.value() / static_cast<double>(exact.n);
    } else {
        // The integrand kinks at beta = pi (the |1 + e^{i beta}| zero), so
        // the doubling runs tight: algebraic convergence, not spectral.
        const QuadratureResult q = integrate_periodic_doubling(
            integrand, grid.n, 1e-12, std::size_t{1} << 20);
        mean = q.value / kTwoPi;
    }
    return std::pow(mean, -1.0 / pexp);
}

double cp_constant_gamma(double pexp)
{
    if (!(pexp >= 1.0))
        throw std::invalid_argument("cp_constant requires p >= 1");
    const double log_mean = pexp * std::numbers::ln2_v<double> +
                            std::lgamma((pexp + 1.0) / 2.0) -
                            0.5 * std::log(std::numbers::pi_v<double>) -
                            std::lgamma(pexp / 2.0 + 1.0);
    return std::exp(-log_mean / pexp);
}

double two_term_beta_mean(Complex a, Complex b, double pexp,
                          const CircleGrid& grid)
{
    if (!(pexp >= 1.0))
        throw std::invalid_argument("two_term_beta_mean requires p >= 1");
    const double big = std::max(std::abs(a), std::abs(b));
    const double small = std::min(std::abs(a), std::abs(b));
    if (big == 0.0)
        return 0.0;
    const double r = small / big;
    auto integrand = [r, pexp](double beta) {
        return std::pow(1.0 + r * r + 2.0 * r * std::cos(beta), pexp / 2.0);
    };

    double integral;
    if (is_even_integer(pexp)) {
        const CircleGrid exact(
            std::max<std::size_t>(grid.n, static_cast<std::size_t>(pexp) + 1));
        CompensatedSum acc;
        for (std::size_t j = 0; j < exact.n; ++j)
            acc.add(integrand(exact.node(j)));
        integral = acc.value() * exact.weight();
    } else {
        integral = integrate_periodic_doubling(integrand, grid.n, 1e-9,
                                               std::size_t{1} << 18)
                       .value;
    }
    return std::pow(big, pexp) * integral;
}

double lemma_double_mean(std::span<const Complex> a, std::span<const Complex> b,
                         double pexp, const CircleGrid& grid_theta,
                         const CircleGrid& grid_beta)
{
    if (a.size() != grid_theta.n || b.size() != grid_theta.n)
        throw std::invalid_argument(
            "lemma_double_mean needs samples matching the theta grid");
    CompensatedSum acc;
    for (std::size_t j = 0; j < grid_theta.n; ++j)
        acc.add(two_term_beta_mean(a[j], b[j], pexp, grid_beta));
    return acc.value() * grid_theta.weight();
}

} // namespace polyineq
