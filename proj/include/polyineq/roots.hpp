#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polyineq/polynomial.hpp"

namespace polyineq {

struct RootFindError : std::runtime_error {
    RootFindError(const std::string& what, double residual)
        : std::runtime_error(what), max_relative_residual(residual)
    {
    }
    double max_relative_residual;
};

struct RootsResult {
    std::vector<Complex> roots;    // numeric-degree many, zeros of P
    double max_relative_residual;  // max_k |P(r_k)| / sum_j |a_j||r_k|^j
    int iterations;                // total simultaneous-iteration steps
    int restarts;                  // perturbation restarts consumed
};

/// All roots of P (numeric degree >= 1) by Aberth-Ehrlich simultaneous
/// iteration with deterministic perturbation restarts.  Multiple roots come
/// back as clusters.  Throws RootFindError when the residual acceptance
/// fails after the iteration cap on every restart.
RootsResult roots(const Polynomial& p);

struct UnitDiskReport {
    bool vanishes_inside = false;  // some root with |r| < 1 - tol
    int boundary_count = 0;        // roots with |r| within tol of the circle
    double min_modulus = 0.0;
};

UnitDiskReport classify_unit_disk_zeros(const Polynomial& p, double tol = 1e-9);

/// True iff some root lies in |z| < 1 - tol; moduli in [1 - tol, 1] count as
/// boundary and do not trigger this.
bool vanishes_in_open_unit_disk(const Polynomial& p, double tol = 1e-9);

} // namespace polyineq
