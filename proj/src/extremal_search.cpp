#include "polyineq/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polyineq/rng.hpp"

namespace polyineq {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, const NelderMeadOptions& opts)
{
    const std::size_t dim = start.size();
    if (dim == 0)
        throw std::invalid_argument("nelder_mead needs at least one variable");

    std::vector<std::vector<double>> x(dim + 1, start);
    for (std::size_t k = 0; k < dim; ++k)
        x[k + 1][k] += opts.init_step;
    std::vector<double> fx(dim + 1);
    for (std::size_t k = 0; k <= dim; ++k)
        fx[k] = f(x[k]);

    std::vector<std::size_t> order(dim + 1);
    auto sort_order = [&] {
        for (std::size_t k = 0; k <= dim; ++k)
            order[k] = k;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    };

    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t worst = order[dim];
        const std::size_t second = order[dim - 1];

        double spread = std::abs(fx[worst] - fx[best]);
        double diameter = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
            diameter = std::max(diameter, std::abs(x[worst][k] - x[best][k]));
        if (spread <= opts.f_tol * (1.0 + std::abs(fx[best])) &&
            diameter <= opts.x_tol)
            break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t k = 0; k <= dim; ++k) {
            if (k == worst)
                continue;
            for (std::size_t d = 0; d < dim; ++d)
                centroid[d] += x[k][d];
        }
        for (double& c : centroid)
            c /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + t * (centroid[d] - x[worst][d]);
            return p;
        };

        const std::vector<double> reflected = blend(1.0);
        const double fr = f(reflected);
        if (fr < fx[best]) {
            const std::vector<double> expanded = blend(2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                x[worst] = expanded;
                fx[worst] = fe;
            } else {
                x[worst] = reflected;
                fx[worst] = fr;
            }
        } else if (fr < fx[second]) {
            x[worst] = reflected;
            fx[worst] = fr;
        } else {
            const bool outside = fr < fx[worst];
            const std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
            const double fc = f(contracted);
            if (fc < (outside ? fr : fx[worst])) {
                x[worst] = contracted;
                fx[worst] = fc;
            } else {
                for (std::size_t k = 0; k <= dim; ++k) {
                    if (k == best)
                        continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        x[k][d] = x[best][d] + 0.5 * (x[k][d] - x[best][d]);
                    fx[k] = f(x[k]);
                }
            }
        }
    }

    sort_order();
    NelderMeadResult result;
    result.x = x[order[0]];
    result.f = fx[order[0]];
    result.iterations = iter;
    return result;
}

namespace {

double softplus(double t) { return t > 30.0 ? t : std::log1p(std::exp(t)); }

struct ParamSpace {
    Parametrization kind;
    int degree;
    bool optimize_alpha;
    std::size_t dims() const
    {
        std::size_t d = 0;
        switch (kind) {
        case Parametrization::RawCoeffs:
            d = 2 * static_cast<std::size_t>(degree + 1);
            break;
        case Parametrization::RootsOutside:
            d = 2 * static_cast<std::size_t>(degree);
            break;
        case Parametrization::SelfInvHalf:
            d = static_cast<std::size_t>(degree) + 2;
            break;
        }
        return d + (optimize_alpha ? 2 : 0);
    }

    Polynomial polynomial(const std::vector<double>& x) const
    {
        const int n = degree;
        switch (kind) {
        case Parametrization::RawCoeffs: {
            std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
            for (int k = 0; k <= n; ++k)
                c[static_cast<std::size_t>(k)] = {
                    x[2 * static_cast<std::size_t>(k)],
                    x[2 * static_cast<std::size_t>(k) + 1]};
            return Polynomial(std::move(c), n);
        }
        case Parametrization::RootsOutside: {
            std::vector<Complex> roots(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                const double radius =
                    1.0 + softplus(x[2 * static_cast<std::size_t>(j)]);
                const double phase = x[2 * static_cast<std::size_t>(j) + 1];
                roots[static_cast<std::size_t>(j)] = std::polar(radius, phase);
            }
            return from_roots(roots, Complex{1.0, 0.0});
        }
        case Parametrization::SelfInvHalf: {
            std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
            const std::size_t half = static_cast<std::size_t>(n + 1) / 2;
            const double phi = x[dims_base() - 1];
            const Complex u = std::polar(1.0, phi);
            for (std::size_t k = 0; k < half; ++k) {
                c[k] = {x[2 * k], x[2 * k + 1]};
                c[static_cast<std::size_t>(n) - k] = u * std::conj(c[k]);
            }
            if (n % 2 == 0)
                c[static_cast<std::size_t>(n) / 2] =
                    x[2 * half] * std::polar(1.0, phi / 2.0);
            return Polynomial(std::move(c), n);
        }
        }
        throw std::logic_error("unknown parametrization");
    }

    Complex alpha_from(const std::vector<double>& x) const
    {
        const std::size_t base = dims_base();
        return std::polar(1.0 + softplus(x[base]), x[base + 1]);
    }

    std::size_t dims_base() const
    {
        switch (kind) {
        case Parametrization::RawCoeffs:
            return 2 * static_cast<std::size_t>(degree + 1);
        case Parametrization::RootsOutside:
            return 2 * static_cast<std::size_t>(degree);
        case Parametrization::SelfInvHalf:
            return static_cast<std::size_t>(degree) + 2;
        }
        return 0;
    }

    std::vector<double> random_start(Rng& rng) const
    {
        std::vector<double> x(dims());
        std::size_t idx = 0;
        switch (kind) {
        case Parametrization::RawCoeffs:
            for (; idx < dims_base(); ++idx)
                x[idx] = rng.gaussian();
            break;
        case Parametrization::RootsOutside:
            for (int j = 0; j < degree; ++j) {
                x[idx++] = rng.gaussian();
                x[idx++] = rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
            }
            break;
        case Parametrization::SelfInvHalf:
            for (; idx + 1 < dims_base(); ++idx)
                x[idx] = rng.gaussian();
            x[idx++] = rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
            break;
        }
        if (optimize_alpha) {
            x[idx++] = rng.gaussian();
            x[idx++] = rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
        }
        return x;
    }
};

void validate_parametrization(const SearchConfig& cfg, const InequalityDef& def)
{
    if ((def.hypotheses & hypothesis::kNonvanishing) &&
        cfg.parametrization != Parametrization::RootsOutside)
        throw std::invalid_argument(
            "nonvanishing entries need the roots-outside parametrization");
    if ((def.hypotheses & hypothesis::kSelfInversive) &&
        cfg.parametrization != Parametrization::SelfInvHalf)
        throw std::invalid_argument(
            "self-inversive entries need the half-coefficient parametrization");
}

} // namespace

SearchResult sharpness_search(const SearchConfig& cfg, std::uint64_t master_seed)
{
    const InequalityDef& def = inequality(cfg.id);
    validate_parametrization(cfg, def);
    if (def.needs_p && !cfg.p)
        throw std::invalid_argument("search needs p for this entry");
    if (def.needs_alpha && !cfg.alpha &&
        !(def.hypotheses & hypothesis::kAbsAlphaGe1))
        throw std::invalid_argument(
            "fix alpha for entries without an |alpha|>=1 constraint");

    ParamSpace space{cfg.parametrization, cfg.degree,
                     def.needs_alpha && !cfg.alpha};

    CheckConfig objective_cfg = cfg.check;
    objective_cfg.trust_hypothesis = true; // the parametrization enforces them

    auto ratio_of = [&](const std::vector<double>& x) {
        const Polynomial p = space.polynomial(x);
        if (p.is_zero())
            return 0.0;
        std::optional<Complex> alpha = cfg.alpha;
        if (space.optimize_alpha)
            alpha = space.alpha_from(x);
        const CheckReport r =
            check(cfg.id, p, alpha, cfg.p, objective_cfg);
        if (r.rhs <= 0.0)
            return 0.0;
        return r.lhs / r.rhs;
    };

    SearchResult result;
    result.best_ratio = -1.0;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng(child_seed(master_seed, static_cast<std::uint64_t>(restart)));
        std::vector<double> start = space.random_start(rng);

        auto objective = [&](const std::vector<double>& x) { return -ratio_of(x); };
        NelderMeadResult stage = nelder_mead(objective, start, cfg.simplex);
        // polish from the found optimum with a smaller fresh simplex
        NelderMeadOptions polish = cfg.simplex;
        polish.init_step = 0.05;
        NelderMeadResult fine = nelder_mead(objective, stage.x, polish);
        if (fine.f > stage.f)
            fine = stage;

        const double ratio = -fine.f;
        result.trace.push_back(
            {restart, ratio, stage.iterations + fine.iterations});
        if (ratio > result.best_ratio) {
            result.best_ratio = ratio;
            result.best = space.polynomial(fine.x);
            result.best_alpha = space.optimize_alpha
                                    ? std::optional<Complex>(space.alpha_from(fine.x))
                                    : cfg.alpha;
        }
    }
    return result;
}

CheckReport verify_extremal(InequalityId id, NamedFamily family, int degree,
                            std::optional<double> p,
                            std::optional<Complex> alpha, Complex a, Complex b,
                            const CheckConfig& cfg)
{
    FamilySpec spec;
    spec.kind = FamilyKind::Named;
    spec.named = family;
    spec.degree = degree;
    spec.named_a = a;
    spec.named_b = b;
    const Polynomial poly = generate(spec);

    PolynomialDigest digest;
    digest.family = named_family_name(family);
    digest.degree = degree;
    return check(id, poly, alpha, p, cfg, digest);
}

} // namespace polyineq
