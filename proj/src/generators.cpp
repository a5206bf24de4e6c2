#include "polyineq/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace polyineq {

namespace {

Polynomial named_polynomial(const FamilySpec& spec)
{
    const int n = spec.degree;
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    switch (spec.named) {
    case NamedFamily::Monomial:
        if (spec.named_a == Complex{})
            throw std::invalid_argument("monomial family needs a != 0");
        c.back() = spec.named_a;
        break;
    case NamedFamily::Binomial:
        if (spec.named_a == Complex{})
            throw std::invalid_argument("binomial family needs a != 0");
        c.back() = spec.named_a;
        c.front() = spec.named_b;
        break;
    case NamedFamily::PlusOne:
        c.back() = {1.0, 0.0};
        c.front() = {1.0, 0.0};
        break;
    case NamedFamily::Counterexample:
        // (1 - iz)^n, i.e. binomial coefficients with alternating -i powers
        c[0] = {1.0, 0.0};
        for (int k = 1; k <= n; ++k)
            c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)] *
                                             Complex{0.0, -1.0} *
                                             (static_cast<double>(n - k + 1) /
                                              static_cast<double>(k));
        break;
    }
    return Polynomial(std::move(c), n);
}

} // namespace

const char* family_kind_name(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::Unrestricted: return "unrestricted";
    case FamilyKind::NonvanishingDisk: return "nonvanishing";
    case FamilyKind::SelfInversive: return "selfinversive";
    case FamilyKind::Named: return "named";
    }
    return "?";
}

const char* named_family_name(NamedFamily family)
{
    switch (family) {
    case NamedFamily::Monomial: return "monomial";
    case NamedFamily::Binomial: return "binomial";
    case NamedFamily::PlusOne: return "plus_one";
    case NamedFamily::Counterexample: return "counterexample";
    }
    return "?";
}

Polynomial generate(const FamilySpec& spec, Rng& rng)
{
    if (spec.degree < 1)
        throw std::invalid_argument("family degree must be >= 1");
    if (spec.scale <= 0.0)
        throw std::invalid_argument("family scale must be positive");
    const int n = spec.degree;

    switch (spec.kind) {
    case FamilyKind::Unrestricted: {
        std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
        for (Complex& x : c)
            x = spec.scale * rng.complex_gaussian();
        return Polynomial(std::move(c), n);
    }
    case FamilyKind::NonvanishingDisk: {
        if (spec.r_max < 1.0)
            throw std::invalid_argument("annulus outer radius must be >= 1");
        std::vector<Complex> roots(static_cast<std::size_t>(n));
        for (Complex& r : roots) {
            double modulus = std::exp(rng.uniform(0.0, std::log(spec.r_max)));
            if (spec.strict_outside)
                modulus = std::max(modulus, 1.0 + spec.strict_delta);
            r = modulus * rng.unit_phase();
        }
        const Complex leading = spec.scale * rng.unit_phase();
        return from_roots(roots, leading);
    }
    case FamilyKind::SelfInversive: {
        const double phi =
            rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
        const Complex u = std::polar(1.0, phi);
        std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
        for (int k = 0; 2 * k < n; ++k) {
            c[static_cast<std::size_t>(k)] = spec.scale * rng.complex_gaussian();
            c[static_cast<std::size_t>(n - k)] =
                u * std::conj(c[static_cast<std::size_t>(k)]);
        }
        if (n % 2 == 0) {
            // a = u conj(a) forces a = t e^{i phi/2} with real t
            const double t = spec.scale * rng.gaussian();
            c[static_cast<std::size_t>(n / 2)] = t * std::polar(1.0, phi / 2.0);
        }
        return Polynomial(std::move(c), n);
    }
    case FamilyKind::Named:
        return named_polynomial(spec);
    }
    throw std::logic_error("unknown family kind");
}

Polynomial generate(const FamilySpec& spec)
{
    Rng rng(spec.seed);
    return generate(spec, rng);
}

std::vector<Polynomial> corpus(const FamilySpec& spec, int count,
                               std::uint64_t master_seed)
{
    if (count < 1)
        throw std::invalid_argument("corpus count must be >= 1");
    std::vector<Polynomial> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        FamilySpec child = spec;
        child.seed = child_seed(master_seed, static_cast<std::uint64_t>(i));
        out.push_back(generate(child));
    }
    return out;
}

std::string to_json(const FamilySpec& spec)
{
    nlohmann::json j;
    j["kind"] = family_kind_name(spec.kind);
    j["degree"] = spec.degree;
    j["scale"] = spec.scale;
    j["seed"] = spec.seed;
    j["r_max"] = spec.r_max;
    j["strict_outside"] = spec.strict_outside;
    j["strict_delta"] = spec.strict_delta;
    j["named"] = named_family_name(spec.named);
    j["named_a"] = {spec.named_a.real(), spec.named_a.imag()};
    j["named_b"] = {spec.named_b.real(), spec.named_b.imag()};
    return j.dump();
}

FamilySpec family_spec_from_json(const std::string& text)
{
    const nlohmann::json j = nlohmann::json::parse(text);
    FamilySpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "unrestricted")
        spec.kind = FamilyKind::Unrestricted;
    else if (kind == "nonvanishing")
        spec.kind = FamilyKind::NonvanishingDisk;
    else if (kind == "selfinversive")
        spec.kind = FamilyKind::SelfInversive;
    else if (kind == "named")
        spec.kind = FamilyKind::Named;
    else
        throw std::invalid_argument("unknown family kind: " + kind);
    spec.degree = j.at("degree").get<int>();
    spec.scale = j.value("scale", 1.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.r_max = j.value("r_max", 3.0);
    spec.strict_outside = j.value("strict_outside", false);
    spec.strict_delta = j.value("strict_delta", 1e-6);
    if (j.contains("named")) {
        const std::string named = j["named"].get<std::string>();
        if (named == "monomial")
            spec.named = NamedFamily::Monomial;
        else if (named == "binomial")
            spec.named = NamedFamily::Binomial;
        else if (named == "plus_one")
            spec.named = NamedFamily::PlusOne;
        else if (named == "counterexample")
            spec.named = NamedFamily::Counterexample;
        else
            throw std::invalid_argument("unknown named family: " + named);
    }
    if (j.contains("named_a"))
        spec.named_a = {j["named_a"][0].get<double>(), j["named_a"][1].get<double>()};
    if (j.contains("named_b"))
        spec.named_b = {j["named_b"][0].get<double>(), j["named_b"][1].get<double>()};
    return spec;
}

} // namespace polyineq
