#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "polyineq/polynomial.hpp"
#include "polyineq/rng.hpp"

namespace testutil {

using polyineq::Complex;
using polyineq::Polynomial;

inline bool approx(double a, double b, double tol)
{
    return std::abs(a - b) <= tol;
}

inline bool approx_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline bool approx_c(Complex a, Complex b, double tol)
{
    return std::abs(a - b) <= tol;
}

inline Polynomial random_polynomial(polyineq::Rng& rng, int degree,
                                    double scale = 1.0)
{
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (Complex& x : c)
        x = scale * rng.complex_gaussian();
    return Polynomial(std::move(c), degree);
}

} // namespace testutil
