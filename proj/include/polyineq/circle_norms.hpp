#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "polyineq/polynomial.hpp"

namespace polyineq {

/// Uniform periodic grid theta_j = 2*pi*j/n with trapezoid weight 2*pi/n.
/// Spectrally accurate for smooth periodic integrands; exact for trig
/// polynomials that the node count resolves.
struct CircleGrid {
    explicit CircleGrid(std::size_t n);

    std::size_t n;
    double node(std::size_t j) const;
    double weight() const;

    /// Conservative exactness bookkeeping: the p = 2 trapezoid sum is exact
    /// for |P|^2 of a degree-deg polynomial once n >= 2*deg + 1.
    bool p2_exact_for_degree(int deg) const
    {
        return n >= 2 * static_cast<std::size_t>(deg < 0 ? 0 : deg) + 1;
    }
};

/// Finite exponent p >= 1 or the sup-norm marker (the p -> infinity limit).
class PExponent {
public:
    static PExponent finite(double p);
    static PExponent sup() { return PExponent(0.0, true); }

    bool is_sup() const { return sup_; }
    double value() const; // throws for the sup marker

private:
    PExponent(double p, bool is_sup) : p_(p), sup_(is_sup) {}
    double p_;
    bool sup_;
};

/// Neumaier-compensated accumulator; fixed summation order keeps repeated
/// runs bitwise identical.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

std::vector<Complex> sample_on_circle(const Polynomial& p, const CircleGrid& grid);

struct LpMean {
    double value = 0.0;
    /// True when the trapezoid sum is provably exact for this p and grid
    /// (even integer p with n >= deg*p + 1); false is the "grid smaller than
    /// the exactness bound" warning, not a failure.
    bool exact = false;
};

/// { sum_j w_j |P(e^{i theta_j})|^p }^{1/p} on the fixed grid.  The integral
/// carries the full 2*pi mass (no 1/2pi normalization).
LpMean lp_mean(const Polynomial& p, double pexp, const CircleGrid& grid);

struct QuadratureResult {
    double value = 0.0;
    std::size_t grid_n = 0;   // final grid size
    double last_delta = 0.0;  // relative change at the final doubling
    bool converged = true;
};

/// Doubling-until-stable L^p mean.  Even integer p short-circuits to a
/// provably exact grid; otherwise the grid doubles until the relative change
/// drops below rel_tol or max_n is hit (the achieved delta is reported).
QuadratureResult lp_mean_adaptive(const Polynomial& p, double pexp,
                                  std::size_t start_n = 4096,
                                  double rel_tol = 1e-8,
                                  std::size_t max_n = std::size_t{1} << 20);

/// max_{|z|=1} |P(z)| by coarse sampling plus golden-section refinement of
/// |P(e^{i theta})|^2 around the best sample.  A lower-bound estimator: the
/// refinement is local, so the result is within refine_tol of the true sup
/// only when the sample count resolves the oscillation of |P| (documented
/// heuristic; samples >= 64 enforced).
double sup_norm(const Polynomial& p, std::size_t samples = 2048,
                double refine_tol = 1e-9);

/// C_p = { (1/2pi) Int_0^{2pi} |1 + e^{i beta}|^p d beta }^{-1/p} by
/// quadrature (grid gives the starting resolution; non-even p doubles until
/// stable at 1e-12 or the 2^20 cap).
double cp_constant(double pexp, const CircleGrid& grid);

/// Independent cross-check route for the same constant via the closed-form
/// mean 2^p Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2+1)); kept separate from the
/// quadrature path on purpose.
double cp_constant_gamma(double pexp);

/// Int_0^{2pi} |a + b e^{i beta}|^p d beta.  Depends only on (|a|, |b|, p);
/// computed from the radial form (|a|^2+|b|^2+2|a||b|cos beta)^{p/2} with the
/// grid as starting resolution (exact grid for even integer p, doubling
/// otherwise).
double two_term_beta_mean(Complex a, Complex b, double pexp,
                          const CircleGrid& grid);

/// Double integral Int Int |A(theta) + e^{i beta} B(theta)|^p d theta d beta
/// for functions sampled on grid_theta: sum_j w_j * two_term_beta_mean(A_j,
/// B_j, p, grid_beta).
double lemma_double_mean(std::span<const Complex> a, std::span<const Complex> b,
                         double pexp, const CircleGrid& grid_theta,
                         const CircleGrid& grid_beta);

} // namespace polyineq
