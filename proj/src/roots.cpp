#include "polyineq/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "polyineq/rng.hpp"

namespace polyineq {

namespace {

constexpr int kIterationCap = 500;
constexpr int kMaxRestarts = 5;
constexpr double kResidualAccept = 1e-11;

// |P(z)| relative to sum_j |a_j||z|^j, i.e. a backward-error measure that
// stays meaningful at clustered roots.
double relative_residual(const std::vector<Complex>& a, Complex z)
{
    Complex acc = a.back();
    double mag = std::abs(a.back());
    const double az = std::abs(z);
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        acc = acc * z + a[k];
        mag = mag * az + std::abs(a[k]);
    }
    if (mag == 0.0)
        return 0.0;
    return std::abs(acc) / mag;
}

// Cauchy-style annulus containing all roots of a (a.back() != 0, a[0] != 0).
std::pair<double, double> root_annulus(const std::vector<Complex>& a)
{
    const double lead = std::abs(a.back());
    const double tail = std::abs(a.front());
    double hi = 0.0, lo = 0.0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k)
        hi = std::max(hi, std::abs(a[k]) / lead);
    for (std::size_t k = 1; k < a.size(); ++k)
        lo = std::max(lo, std::abs(a[k]) / tail);
    return {1.0 / (1.0 + lo), 1.0 + hi};
}

} // namespace

RootsResult roots(const Polynomial& p)
{
    const int deg = p.numeric_degree();
    if (deg < 1)
        throw std::invalid_argument("root finding needs numeric degree >= 1");

    // Exact zero roots are deflated up front so the annulus is well defined.
    std::vector<Complex> a(p.coeffs().begin(),
                           p.coeffs().begin() + deg + 1);
    std::size_t zero_mult = 0;
    while (a.front() == Complex{}) {
        a.erase(a.begin());
        ++zero_mult;
    }

    RootsResult result;
    result.roots.assign(zero_mult, Complex{});
    result.iterations = 0;
    result.restarts = 0;
    result.max_relative_residual = 0.0;
    const int m = static_cast<int>(a.size()) - 1;
    if (m == 0)
        return result;

    const auto [lo, hi] = root_annulus(a);
    std::vector<Complex> da(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k)
        da[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * a[static_cast<std::size_t>(k)];

    auto horner = [](const std::vector<Complex>& c, Complex z) {
        Complex acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;)
            acc = acc * z + c[k];
        return acc;
    };

    Rng rng(0x706f6c79696e6571ULL); // fixed stream; restarts stay deterministic
    std::vector<Complex> z(static_cast<std::size_t>(m));
    double worst = 0.0;

    for (int restart = 0; restart <= kMaxRestarts; ++restart) {
        result.restarts = restart;
        // Staggered annulus start; later restarts jitter radii and angles.
        for (int k = 0; k < m; ++k) {
            const double frac = (m == 1) ? 0.5 : static_cast<double>(k) / (m - 1);
            double radius = lo + (hi - lo) * (0.25 + 0.5 * frac);
            double angle = 2.0 * std::numbers::pi_v<double> * k / m + 0.3779;
            if (restart > 0) {
                radius *= std::exp(0.2 * (rng.uniform() - 0.5));
                angle += rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
            }
            z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
        }

        for (int iter = 0; iter < kIterationCap; ++iter) {
            ++result.iterations;
            double max_step = 0.0;
            for (int k = 0; k < m; ++k) {
                const Complex zk = z[static_cast<std::size_t>(k)];
                const Complex pv = horner(a, zk);
                if (pv == Complex{})
                    continue;
                Complex dv = horner(da, zk);
                if (dv == Complex{})
                    dv = Complex{1e-300, 0.0};
                const Complex newton = pv / dv;
                Complex sum{};
                for (int j = 0; j < m; ++j) {
                    if (j == k)
                        continue;
                    Complex diff = zk - z[static_cast<std::size_t>(j)];
                    if (diff == Complex{})
                        diff = Complex{1e-14 * (1.0 + std::abs(zk)), 0.0};
                    sum += 1.0 / diff;
                }
                const Complex denom = 1.0 - newton * sum;
                const Complex step =
                    (denom == Complex{}) ? newton : newton / denom;
                z[static_cast<std::size_t>(k)] = zk - step;
                max_step = std::max(max_step,
                                    std::abs(step) / (1.0 + std::abs(zk)));
            }
            if (max_step < 1e-14)
                break;
        }

        worst = 0.0;
        for (int k = 0; k < m; ++k)
            worst = std::max(worst, relative_residual(a, z[static_cast<std::size_t>(k)]));
        if (worst <= kResidualAccept) {
            result.roots.insert(result.roots.end(), z.begin(), z.end());
            result.max_relative_residual = worst;
            return result;
        }
    }

    throw RootFindError("root finding did not reach residual acceptance "
                        "after perturbation restarts",
                        worst);
}

UnitDiskReport classify_unit_disk_zeros(const Polynomial& p, double tol)
{
    const RootsResult r = roots(p);
    UnitDiskReport report;
    report.min_modulus = std::numeric_limits<double>::infinity();
    for (const Complex& root : r.roots) {
        const double m = std::abs(root);
        report.min_modulus = std::min(report.min_modulus, m);
        if (m < 1.0 - tol)
            report.vanishes_inside = true;
        else if (m <= 1.0 + tol)
            ++report.boundary_count;
    }
    return report;
}

bool vanishes_in_open_unit_disk(const Polynomial& p, double tol)
{
    return classify_unit_disk_zeros(p, tol).vanishes_inside;
}

} // namespace polyineq
