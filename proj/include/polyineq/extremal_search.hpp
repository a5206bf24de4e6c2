#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "polyineq/inequalities.hpp"

namespace polyineq {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double f_tol = 1e-12;     // simplex value spread
    double x_tol = 1e-12;     // simplex diameter
    double init_step = 0.5;   // initial simplex edge
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
};

/// Minimizes f by the standard reflect/expand/contract/shrink simplex moves.
/// Deterministic given the start point.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start,
                             const NelderMeadOptions& opts);

enum class Parametrization {
    RawCoeffs,    // 2(n+1) reals, unconstrained coefficients
    RootsOutside, // radii 1 + softplus(t), free phases: nonvanishing built in
    SelfInvHalf,  // free lower half + mirror phase: self-inversive built in
};

struct SearchConfig {
    InequalityId id = InequalityId::Zygmund;
    int degree = 4;
    std::optional<double> p;
    std::optional<Complex> alpha;       // empty: optimized over |alpha| >= 1
    Parametrization parametrization = Parametrization::RawCoeffs;
    int restarts = 20;
    NelderMeadOptions simplex;
    CheckConfig check;
};

struct RestartTrace {
    int restart = 0;
    double best_ratio = 0.0;
    int iterations = 0;
};

struct SearchResult {
    Polynomial best;
    std::optional<Complex> best_alpha;
    double best_ratio = 0.0;       // lhs/rhs at the best point
    std::vector<RestartTrace> trace;
};

/// Maximizes lhs/rhs of the chosen entry over the parametrized polynomial
/// family with random-restart simplex descent on -ratio.  Deterministic
/// given master_seed; restarts merge by best ratio with index-order ties.
SearchResult sharpness_search(const SearchConfig& cfg, std::uint64_t master_seed);

/// Runs check() on the named closed-form extremal family.
CheckReport verify_extremal(InequalityId id, NamedFamily family, int degree,
                            std::optional<double> p,
                            std::optional<Complex> alpha,
                            Complex a = {1.0, 0.0}, Complex b = {1.0, 0.0},
                            const CheckConfig& cfg = {});

} // namespace polyineq
