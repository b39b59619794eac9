#pragma once

#include <stdexcept>
#include <string>

namespace weakconv {

// Default tolerances used across the toolkit.
inline constexpr double kGeomTol = 1e-9;       // geometric membership / inclusion checks
inline constexpr double kModulusTol = 1e-3;    // sampled modulus estimation
inline constexpr double kRootTol = 1e-12;      // bisection root solving

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query point outside the admissible tube of a set.
struct TubeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantitative hypothesis (certificate, uniqueness, enclosing-ball bound)
// failed at run time.
struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The root-solvability condition fails for a (delta, gamma) pair.  Carries
// the largest parameter s0 for which the equations were solvable.
struct ConditionNotSatisfied : std::runtime_error {
    ConditionNotSatisfied(const std::string& msg, double s0_diag)
        : std::runtime_error(msg), s0(s0_diag) {}
    double s0 = 0.0;
};

struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace weakconv
