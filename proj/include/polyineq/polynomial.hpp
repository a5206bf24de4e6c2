#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace polyineq {

using Complex = std::complex<double>;

/// Complex polynomial a_0 + a_1 z + ... + a_m z^m together with an explicit
/// declared degree n >= m.  The declared degree is the "n" that parameterizes
/// the polar derivative and the conjugate-reciprocal transform, so "degree n
/// with a_n = 0" is a different object from "degree m".  It never changes
/// implicitly.
class Polynomial {
public:
    /// Zero polynomial of declared degree 0.
    Polynomial();

    /// Declared degree = numeric degree (index of the last nonzero
    /// coefficient).  Trailing zeros are trimmed.
    explicit Polynomial(std::vector<Complex> coeffs);

    /// Declared degree given explicitly; must be >= the numeric degree.
    /// Rejects non-finite coefficients.
    Polynomial(std::vector<Complex> coeffs, int declared_degree);

    int declared_degree() const { return declared_degree_; }

    /// Index of the last nonzero stored coefficient; -1 for the zero
    /// polynomial.
    int numeric_degree() const;

    bool is_zero() const { return numeric_degree() < 0; }

    /// Stored coefficients a_0..a_m (trailing zeros trimmed, never empty).
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// a_k, structurally zero for k beyond the stored list.
    Complex coeff(int k) const;

    double coeff_inf_norm() const;

    /// Same coefficients with a new declared degree n >= numeric degree.
    Polynomial with_declared_degree(int n) const;

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<Complex> coeffs_;
    int declared_degree_ = 0;
};

/// Horner evaluation of P at z.
Complex eval(const Polynomial& p, Complex z);

/// Ordinary derivative; declared degree max(n-1, 0).
Polynomial derivative(const Polynomial& p);

/// Polar derivative D_a P = n P + (a - z) P' of degree n-1, with n the
/// declared degree.  Coefficientwise c_k = (n-k) a_k + a (k+1) a_{k+1}.
/// Throws std::domain_error for declared degree 0 (the transform is only
/// defined as a degree-(n-1) object).
Polynomial polar_derivative(const Polynomial& p, Complex alpha);

/// Q(z) = z^n conj(P(1/conj(z))), i.e. q_k = conj(a_{n-k}); |Q| = |P| on the
/// unit circle.  Declared degree stays n.
Polynomial conj_reciprocal(const Polynomial& p);

/// Phase with |u| = 1 up to 1e-10; constructor enforces the invariant.
struct UnimodularFactor {
    Complex u;
    explicit UnimodularFactor(Complex value);
};

/// Returns u with a_k = u * conj(a_{n-k}) for all k within
/// tol * max_k |a_k|, or empty when no such unimodular factor exists.
/// When a factor is returned, conj_reciprocal(p) equals conj(u) * p, so
/// |D_a Q| = |D_a P| everywhere.
std::optional<UnimodularFactor> is_self_inversive(const Polynomial& p, double tol);

/// leading * prod_j (z - r_j) by sequential convolution.  leading must be
/// nonzero; an empty root list gives the constant polynomial.
Polynomial from_roots(const std::vector<Complex>& roots, Complex leading);

/// Coefficientwise sum; declared degree max of the two.
Polynomial add(const Polynomial& a, const Polynomial& b);

/// Coefficientwise scalar multiple; declared degree kept.
Polynomial scale(const Polynomial& a, Complex c);

/// Wire format {"declared_degree": n, "coeffs": [[re, im], ...]}, a_0 first.
/// The writer emits full-precision decimals so parse(write(p)) == p.
std::string to_json(const Polynomial& p);

/// Parses the wire format.  Rejects NaN/Inf coefficients and coefficient
/// lists longer than declared_degree + 1; shorter lists are accepted (the
/// missing coefficients are structural zeros).  Throws std::invalid_argument
/// with a line/column position on malformed input.
Polynomial polynomial_from_json(const std::string& text);

} // namespace polyineq
