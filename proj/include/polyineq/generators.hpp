#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyineq/polynomial.hpp"
#include "polyineq/rng.hpp"

namespace polyineq {

enum class FamilyKind {
    Unrestricted,     // i.i.d. complex-Gaussian coefficients
    NonvanishingDisk, // all roots outside or on the unit circle
    SelfInversive,    // coefficients mirror under u * conj-reversal
    Named,            // closed-form family below
};

enum class NamedFamily {
    Monomial,       // a z^n
    Binomial,       // a z^n + b
    PlusOne,        // z^n + 1
    Counterexample, // (1 - iz)^n
};

struct FamilySpec {
    FamilyKind kind = FamilyKind::Unrestricted;
    int degree = 1;
    double scale = 1.0;
    std::uint64_t seed = 0;

    // NonvanishingDisk: root moduli exp(U[0, ln r_max]) (log-uniform in the
    // annulus, mass biased toward the circle).  strict_outside pushes them to
    // |r| >= 1 + strict_delta for conditioning studies.
    double r_max = 3.0;
    bool strict_outside = false;
    double strict_delta = 1e-6;

    NamedFamily named = NamedFamily::PlusOne;
    Complex named_a{1.0, 0.0};
    Complex named_b{1.0, 0.0};
};

const char* family_kind_name(FamilyKind kind);
const char* named_family_name(NamedFamily family);

/// Draws one polynomial; the spec's hypotheses hold by construction
/// (NonvanishingDisk roots never enter the open disk, SelfInversive output
/// satisfies is_self_inversive with the drawn factor).
Polynomial generate(const FamilySpec& spec, Rng& rng);

/// Convenience overload seeding the stream from spec.seed.
Polynomial generate(const FamilySpec& spec);

/// count polynomials where trial i uses child_seed(master_seed, i); the
/// result is bitwise identical across runs and thread schedules.
std::vector<Polynomial> corpus(const FamilySpec& spec, int count,
                               std::uint64_t master_seed);

std::string to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const std::string& text);

} // namespace polyineq
