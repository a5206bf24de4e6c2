#include "polyineq/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "polyineq/counterexample.hpp"
#include "polyineq/roots.hpp"

namespace polyineq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

const std::vector<InequalityDef> kRegistry = {
    {InequalityId::Bernstein, "bernstein",
     "max|P'| <= n max|P| on |z|=1",
     hypothesis::kNone, false, false, false},
    {InequalityId::Zygmund, "zygmund",
     "||P'||_p <= n ||P||_p",
     hypothesis::kNone, false, true, false},
    {InequalityId::PolarSup, "polar_sup",
     "max|D_a P| <= n|a| max|P| on |z|=1, |a|>=1",
     hypothesis::kAbsAlphaGe1, true, false, false},
    {InequalityId::Conj4, "conj4",
     "||D_a P||_p <= n|a| ||P||_p (retained falsifiable entry)",
     hypothesis::kNone, true, true, true},
    {InequalityId::Thm1, "thm1",
     "||D_a P||_p <= n(|a|+1) ||P||_p",
     hypothesis::kNone, true, true, false},
    {InequalityId::DeBruijn, "debruijn",
     "||P'||_p <= n C_p ||P||_p, P nonvanishing in |z|<1",
     hypothesis::kNonvanishing, false, true, false},
    {InequalityId::ErdosLax, "erdos_lax",
     "max|P'| <= (n/2) max|P|, P nonvanishing in |z|<1",
     hypothesis::kNonvanishing, false, false, false},
    {InequalityId::AzizPolar, "aziz_polar",
     "max|D_a P| <= (n/2)(|a|+1) max|P|, P nonvanishing, |a|>=1",
     hypothesis::kNonvanishing | hypothesis::kAbsAlphaGe1, true, false, false},
    {InequalityId::Thm2, "thm2",
     "||D_a P||_p <= n(|a|+1) C_p ||P||_p, P nonvanishing, |a|>=1",
     hypothesis::kNonvanishing | hypothesis::kAbsAlphaGe1, true, true, false},
    {InequalityId::Thm3, "thm3",
     "||D_a P||_p <= n(|a|+1) C_p ||P||_p, P self-inversive, every a",
     hypothesis::kSelfInversive, true, true, false},
    {InequalityId::Lemma1Pw, "lemma1",
     "|D_a P| <= |D_a Q| pointwise on |z|=1, P nonvanishing, |a|>=1",
     hypothesis::kNonvanishing | hypothesis::kAbsAlphaGe1, true, false, false},
    {InequalityId::Lemma2, "lemma2",
     "IntInt |Q' + e^{ib}P'|^p <= 2pi n^p Int |P|^p",
     hypothesis::kNone, false, true, false},
    {InequalityId::Lemma3, "lemma3",
     "IntInt |D_a Q + e^{ib}D_a P|^p <= 2pi n^p (|a|+1)^p Int |P|^p, P(0)!=0",
     hypothesis::kP0Nonzero, true, true, false},
    {InequalityId::Identity1819, "id18_19",
     "nP - zP' = z^{n-1} conj(Q') on |z|=1 (joint residual, with the P/Q swap)",
     hypothesis::kNone, false, false, false},
};

struct QuadStats {
    std::size_t max_grid = 0;
    double max_delta = 0.0;
    void absorb(const QuadratureResult& q)
    {
        max_grid = std::max(max_grid, q.grid_n);
        max_delta = std::max(max_delta, q.last_delta);
    }
    void absorb_grid(std::size_t n) { max_grid = std::max(max_grid, n); }
};

double lp_adaptive(const Polynomial& P, double p, const CheckConfig& cfg,
                   QuadStats& stats)
{
    const std::size_t start = std::max(
        cfg.theta_grid_n,
        8 * static_cast<std::size_t>(std::max(P.numeric_degree(), 0)) + 1);
    const QuadratureResult q =
        lp_mean_adaptive(P, p, start, cfg.quad_rel_tol, cfg.quad_max_n);
    stats.absorb(q);
    return q.value;
}

double sup_estimate(const Polynomial& P, const CheckConfig& cfg,
                    QuadStats& stats)
{
    stats.absorb_grid(cfg.sup_samples);
    return sup_norm(P, cfg.sup_samples, cfg.sup_refine_tol);
}

double cached_cp(double p)
{
    static std::mutex mtx;
    static std::map<double, double> memo;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(p);
    if (it != memo.end())
        return it->second;
    const double value = cp_constant(p, CircleGrid(4096));
    memo.emplace(p, value);
    return value;
}

void verify_hypotheses(const InequalityDef& def, const Polynomial& P,
                       std::optional<Complex> alpha, const CheckConfig& cfg)
{
    if (cfg.trust_hypothesis || cfg.force_hypothesis)
        return;
    if ((def.hypotheses & hypothesis::kAbsAlphaGe1) &&
        std::abs(*alpha) < 1.0 - 1e-12)
        throw HypothesisViolation("entry requires |alpha| >= 1");
    if ((def.hypotheses & hypothesis::kSelfInversive) &&
        !is_self_inversive(P, 1e-8))
        throw HypothesisViolation("entry requires a self-inversive polynomial");
    if ((def.hypotheses & hypothesis::kNonvanishing) &&
        vanishes_in_open_unit_disk(P, cfg.hypothesis_tol))
        throw HypothesisViolation(
            "entry requires P nonvanishing in the open unit disk");
    // kP0Nonzero is never an error: lemma3 perturbs a_0 and reports it
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

const std::vector<InequalityDef>& registry() { return kRegistry; }

const InequalityDef& inequality(InequalityId id)
{
    for (const InequalityDef& def : kRegistry)
        if (def.id == id)
            return def;
    throw std::logic_error("unknown inequality id");
}

std::optional<InequalityId> inequality_by_name(std::string_view name)
{
    for (const InequalityDef& def : kRegistry)
        if (def.name == name)
            return def.id;
    if (name == "lemma1_pw")
        return InequalityId::Lemma1Pw;
    return std::nullopt;
}

CheckReport check(InequalityId id, const Polynomial& P,
                  std::optional<Complex> alpha, std::optional<double> p,
                  const CheckConfig& cfg, const PolynomialDigest& digest)
{
    const InequalityDef& def = inequality(id);
    if (def.needs_alpha && !alpha)
        throw std::invalid_argument(std::string(def.name) + " requires alpha");
    if (def.needs_p && !p)
        throw std::invalid_argument(std::string(def.name) + " requires p");
    if (def.needs_p && !(*p >= 1.0))
        throw std::invalid_argument("exponent must satisfy p >= 1");
    verify_hypotheses(def, P, alpha, cfg);

    const int n = P.declared_degree();
    const double nn = static_cast<double>(n);
    QuadStats stats;
    double lhs = 0.0, rhs = 0.0;
    std::string note;

    switch (id) {
    case InequalityId::Bernstein:
        lhs = sup_estimate(derivative(P), cfg, stats);
        rhs = nn * sup_estimate(P, cfg, stats);
        break;
    case InequalityId::Zygmund:
        lhs = lp_adaptive(derivative(P), *p, cfg, stats);
        rhs = nn * lp_adaptive(P, *p, cfg, stats);
        break;
    case InequalityId::PolarSup:
        lhs = sup_estimate(polar_derivative(P, *alpha), cfg, stats);
        rhs = nn * std::abs(*alpha) * sup_estimate(P, cfg, stats);
        break;
    case InequalityId::Conj4:
        lhs = lp_adaptive(polar_derivative(P, *alpha), *p, cfg, stats);
        rhs = nn * std::abs(*alpha) * lp_adaptive(P, *p, cfg, stats);
        break;
    case InequalityId::Thm1:
        lhs = lp_adaptive(polar_derivative(P, *alpha), *p, cfg, stats);
        rhs = nn * (std::abs(*alpha) + 1.0) * lp_adaptive(P, *p, cfg, stats);
        break;
    case InequalityId::DeBruijn:
        lhs = lp_adaptive(derivative(P), *p, cfg, stats);
        rhs = nn * cached_cp(*p) * lp_adaptive(P, *p, cfg, stats);
        break;
    case InequalityId::ErdosLax:
        lhs = sup_estimate(derivative(P), cfg, stats);
        rhs = 0.5 * nn * sup_estimate(P, cfg, stats);
        break;
    case InequalityId::AzizPolar:
        lhs = sup_estimate(polar_derivative(P, *alpha), cfg, stats);
        rhs = 0.5 * nn * (std::abs(*alpha) + 1.0) * sup_estimate(P, cfg, stats);
        break;
    case InequalityId::Thm2:
    case InequalityId::Thm3:
        lhs = lp_adaptive(polar_derivative(P, *alpha), *p, cfg, stats);
        rhs = nn * (std::abs(*alpha) + 1.0) * cached_cp(*p) *
              lp_adaptive(P, *p, cfg, stats);
        break;
    case InequalityId::Lemma1Pw: {
        const CircleGrid grid(cfg.theta_grid_n);
        stats.absorb_grid(grid.n);
        const auto dp = sample_on_circle(polar_derivative(P, *alpha), grid);
        const auto dq = sample_on_circle(
            polar_derivative(conj_reciprocal(P), *alpha), grid);
        // worst node in relative terms defines the reported sides
        double worst = std::numeric_limits<double>::infinity();
        std::size_t worst_j = 0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double rel = (std::abs(dq[j]) - std::abs(dp[j])) /
                               std::max(std::abs(dq[j]), 1e-300);
            if (rel < worst) {
                worst = rel;
                worst_j = j;
            }
        }
        lhs = std::abs(dp[worst_j]);
        rhs = std::abs(dq[worst_j]);
        break;
    }
    case InequalityId::Lemma2: {
        const CircleGrid gtheta(cfg.lemma_theta_grid_n);
        const CircleGrid gbeta(cfg.beta_grid_n);
        stats.absorb_grid(gtheta.n);
        const Polynomial Q = conj_reciprocal(P);
        const auto a = sample_on_circle(derivative(Q), gtheta);
        const auto b = sample_on_circle(derivative(P), gtheta);
        lhs = lemma_double_mean(a, b, *p, gtheta, gbeta);
        rhs = kTwoPi * std::pow(nn, *p) *
              std::pow(lp_adaptive(P, *p, cfg, stats), *p);
        break;
    }
    case InequalityId::Lemma3: {
        Polynomial base = P;
        if (base.coeff(0) == Complex{}) {
            const double eps = 1e-12 * std::max(base.coeff_inf_norm(), 1.0);
            std::vector<Complex> c = base.coeffs();
            c[0] = {eps, 0.0};
            base = Polynomial(std::move(c), base.declared_degree());
            note = "a_0 perturbed by " + format_double(eps) +
                   " to meet P(0) != 0";
        }
        const CircleGrid gtheta(cfg.lemma_theta_grid_n);
        const CircleGrid gbeta(cfg.beta_grid_n);
        stats.absorb_grid(gtheta.n);
        const Polynomial Q = conj_reciprocal(base);
        const auto a = sample_on_circle(polar_derivative(Q, *alpha), gtheta);
        const auto b = sample_on_circle(polar_derivative(base, *alpha), gtheta);
        lhs = lemma_double_mean(a, b, *p, gtheta, gbeta);
        rhs = kTwoPi * std::pow(nn * (std::abs(*alpha) + 1.0), *p) *
              std::pow(lp_adaptive(base, *p, cfg, stats), *p);
        break;
    }
    case InequalityId::Identity1819: {
        const CircleGrid grid(cfg.theta_grid_n);
        stats.absorb_grid(grid.n);
        const Polynomial Q = conj_reciprocal(P);
        const Polynomial Pp = derivative(P);
        const Polynomial Qp = derivative(Q);
        double residual = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const Complex z = std::polar(1.0, grid.node(j));
            Complex zpow = 1.0; // z^{n-1}
            for (int k = 0; k + 1 < n; ++k)
                zpow *= z;
            const Complex r1 = nn * eval(P, z) - z * eval(Pp, z) -
                               zpow * std::conj(eval(Qp, z));
            const Complex r2 = nn * eval(Q, z) - z * eval(Qp, z) -
                               zpow * std::conj(eval(Pp, z));
            residual = std::max({residual, std::abs(r1), std::abs(r2)});
        }
        lhs = residual;
        rhs = 1e-10 * nn * P.coeff_inf_norm();
        break;
    }
    }

    CheckReport report;
    report.id = id;
    report.digest = digest;
    if (def.needs_alpha)
        report.alpha = alpha;
    if (def.needs_p)
        report.p = p;
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = rhs - lhs;
    report.relative_margin = report.margin / std::max(rhs, 1e-300);
    report.pass = report.relative_margin >= -cfg.pass_tol;
    report.expected_fail = def.expected_fail;
    report.theta_grid_n = stats.max_grid;
    report.beta_grid_n =
        (id == InequalityId::Lemma2 || id == InequalityId::Lemma3)
            ? cfg.beta_grid_n
            : 0;
    report.convergence_delta = stats.max_delta;
    report.note = std::move(note);
    return report;
}

std::string to_json_line(const CheckReport& r)
{
    nlohmann::json j;
    j["id"] = inequality(r.id).name;
    j["family"] = r.digest.family;
    j["degree"] = r.digest.degree;
    j["seed"] = r.digest.seed;
    if (r.alpha) {
        j["alpha_re"] = r.alpha->real();
        j["alpha_im"] = r.alpha->imag();
    }
    if (r.p)
        j["p"] = *r.p;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["rel_margin"] = r.relative_margin;
    j["pass"] = r.pass;
    j["expected_fail"] = r.expected_fail;
    j["theta_grid_n"] = r.theta_grid_n;
    j["beta_grid_n"] = r.beta_grid_n;
    j["convergence_delta"] = r.convergence_delta;
    if (!r.note.empty())
        j["note"] = r.note;
    return j.dump();
}

std::string csv_header()
{
    return "id,family,degree,seed,alpha_re,alpha_im,p,lhs,rhs,rel_margin,pass";
}

std::string to_csv_row(const CheckReport& r)
{
    std::ostringstream os;
    os << inequality(r.id).name << ',' << r.digest.family << ','
       << r.digest.degree << ',' << r.digest.seed << ',';
    if (r.alpha)
        os << format_double(r.alpha->real()) << ','
           << format_double(r.alpha->imag()) << ',';
    else
        os << ",,";
    if (r.p)
        os << format_double(*r.p);
    os << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
       << format_double(r.relative_margin) << ','
       << (r.pass ? "true" : "false");
    return os.str();
}

CheckReport report_from_csv_row(std::string_view row)
{
    std::vector<std::string> fields;
    std::string current;
    for (char ch : row) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    if (fields.size() != 11)
        throw std::invalid_argument("check-report row needs 11 fields");

    CheckReport r;
    const auto id = inequality_by_name(fields[0]);
    if (!id)
        throw std::invalid_argument("unknown inequality id: " + fields[0]);
    r.id = *id;
    r.digest.family = fields[1];
    r.digest.degree = std::stoi(fields[2]);
    r.digest.seed = std::stoull(fields[3]);
    if (!fields[4].empty())
        r.alpha = Complex{std::stod(fields[4]), std::stod(fields[5])};
    if (!fields[6].empty())
        r.p = std::stod(fields[6]);
    r.lhs = std::stod(fields[7]);
    r.rhs = std::stod(fields[8]);
    r.relative_margin = std::stod(fields[9]);
    r.margin = r.rhs - r.lhs;
    r.pass = fields[10] == "true";
    r.expected_fail = inequality(r.id).expected_fail;
    return r;
}

namespace {

int thread_cap()
{
    const char* env = std::getenv("POLYINEQ_THREADS");
    int cap = 0;
    if (env)
        cap = std::atoi(env);
    if (cap <= 0)
        cap = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(cap, 1);
}

unsigned family_guarantees(const SuiteSpec& spec)
{
    switch (spec.family) {
    case FamilyKind::Unrestricted:
        return 0;
    case FamilyKind::NonvanishingDisk:
        return hypothesis::kNonvanishing;
    case FamilyKind::SelfInversive:
        return hypothesis::kSelfInversive;
    case FamilyKind::Named:
        switch (spec.named) {
        case NamedFamily::PlusOne:
        case NamedFamily::Counterexample:
            // roots on the unit circle; self-inversive with |u| = 1
            return hypothesis::kNonvanishing | hypothesis::kSelfInversive;
        case NamedFamily::Binomial:
            return 0; // depends on |a| vs |b|; verified per polynomial
        case NamedFamily::Monomial:
            return 0; // vanishes at the origin
        }
    }
    return 0;
}

bool alpha_policy_guarantees_ge1(const SuiteSpec& spec)
{
    switch (spec.alpha_policy) {
    case AlphaPolicy::Auto:
    case AlphaPolicy::CounterexampleImaginary:
        return true;
    case AlphaPolicy::Fixed:
        return std::abs(spec.fixed_alpha) >= 1.0 - 1e-12;
    }
    return false;
}

} // namespace

SuiteResult run_suite(const SuiteSpec& spec, int trials,
                      std::uint64_t master_seed, const CheckConfig& cfg)
{
    if (trials < 1)
        throw std::invalid_argument("suite needs at least one trial");
    if (spec.ids.empty())
        throw std::invalid_argument("suite needs at least one inequality id");
    if (spec.degree_min < 1 || spec.degree_max < spec.degree_min)
        throw std::invalid_argument("bad degree range");
    for (InequalityId id : spec.ids)
        if (inequality(id).needs_p && spec.p_values.empty())
            throw std::invalid_argument(std::string(inequality(id).name) +
                                        " needs a p list");

    const unsigned guaranteed = family_guarantees(spec);
    const bool alpha_ok = alpha_policy_guarantees_ge1(spec);

    std::vector<std::vector<CheckReport>> slots(
        static_cast<std::size_t>(trials));

    auto run_trial = [&](int i) {
        const std::uint64_t seed =
            child_seed(master_seed, static_cast<std::uint64_t>(i));
        Rng rng(seed);
        const int span = spec.degree_max - spec.degree_min + 1;
        int degree =
            spec.degree_min +
            static_cast<int>(rng.uniform() * static_cast<double>(span));
        degree = std::min(degree, spec.degree_max);
        if (spec.alpha_policy == AlphaPolicy::CounterexampleImaginary)
            degree = std::max(degree, 2);

        FamilySpec fam;
        fam.kind = spec.family;
        fam.named = spec.named;
        fam.degree = degree;
        fam.scale = spec.scale;
        fam.r_max = spec.r_max;
        fam.seed = seed;
        const Polynomial P = generate(fam, rng);

        // draw both alphas in a fixed order so the stream never depends on
        // which entries are requested
        const double free_mod = rng.uniform(0.0, spec.alpha_max);
        const Complex alpha_free = free_mod * rng.unit_phase();
        const double ge1_mod = rng.uniform(1.0, spec.alpha_max);
        const Complex alpha_ge1 = ge1_mod * rng.unit_phase();
        const double beta_ce =
            1.0 + (threshold_beta(std::max(degree, 2)) - 1.0) *
                      rng.uniform(0.0, 0.999);

        PolynomialDigest digest;
        digest.family = spec.family == FamilyKind::Named
                            ? named_family_name(spec.named)
                            : family_kind_name(spec.family);
        digest.degree = degree;
        digest.seed = seed;

        std::vector<CheckReport>& out = slots[static_cast<std::size_t>(i)];
        for (InequalityId id : spec.ids) {
            const InequalityDef& def = inequality(id);

            std::optional<Complex> alpha;
            if (def.needs_alpha) {
                switch (spec.alpha_policy) {
                case AlphaPolicy::Fixed:
                    alpha = spec.fixed_alpha;
                    break;
                case AlphaPolicy::CounterexampleImaginary:
                    alpha = Complex{0.0, beta_ce};
                    break;
                case AlphaPolicy::Auto:
                    alpha = (def.hypotheses & hypothesis::kAbsAlphaGe1)
                                ? alpha_ge1
                                : alpha_free;
                    break;
                }
            }

            CheckConfig trial_cfg = cfg;
            const unsigned unmet =
                def.hypotheses &
                ~(guaranteed | hypothesis::kP0Nonzero |
                  (alpha_ok ? hypothesis::kAbsAlphaGe1 : 0u));
            trial_cfg.trust_hypothesis = cfg.trust_hypothesis || unmet == 0;

            if (def.needs_p) {
                for (double p : spec.p_values)
                    out.push_back(check(id, P, alpha, p, trial_cfg, digest));
            } else {
                out.push_back(
                    check(id, P, alpha, std::nullopt, trial_cfg, digest));
            }
        }
    };

    const int workers =
        std::min<int>(thread_cap(), trials);
    if (workers <= 1) {
        for (int i = 0; i < trials; ++i)
            run_trial(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < trials;
                     i = next.fetch_add(1))
                    run_trial(i);
            });
        for (std::thread& t : pool)
            t.join();
    }

    SuiteResult result;
    for (auto& trial_reports : slots)
        for (CheckReport& r : trial_reports)
            result.reports.push_back(std::move(r));

    const bool counterexample_drive =
        spec.family == FamilyKind::Named &&
        spec.named == NamedFamily::Counterexample &&
        spec.alpha_policy == AlphaPolicy::CounterexampleImaginary;

    for (InequalityId id : spec.ids) {
        IdSummary s;
        s.id = id;
        s.must_fail = inequality(id).expected_fail && counterexample_drive;
        s.min_relative_margin = std::numeric_limits<double>::infinity();
        for (const CheckReport& r : result.reports) {
            if (r.id != id)
                continue;
            ++s.checks;
            if (r.pass)
                ++s.passes;
            s.min_relative_margin =
                std::min(s.min_relative_margin, r.relative_margin);
        }
        if (s.must_fail)
            result.summary.unexpected_passes += s.passes;
        else
            result.summary.genuine_violations += s.checks - s.passes;
        result.summary.per_id.push_back(s);
    }
    return result;
}

} // namespace polyineq
