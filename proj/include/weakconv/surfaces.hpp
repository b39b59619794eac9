#pragma once

#include "weakconv/moduli.hpp"

namespace weakconv {

// Smooth closed planar curve with a validated parametrization.  Analytic
// kinds carry exact derivatives; sampled kinds use spline tangents.
struct SmoothCurve2D {
    Curve2D curve;
    double simplicity_radius = 0.0;  // validated separation parameter, when known

    static SmoothCurve2D validated(Curve2D curve, double tol = 1e-9);
};

// Radius of curvature (x'^2 + y'^2)^{3/2} / |x'' y' - y'' x'|; +inf at
// inflection points (denominator below 1e-12).
double curvature_radius(const SmoothCurve2D& c, double s);

double min_curvature_radius(const SmoothCurve2D& c, int samples = 1024);

// Smoothness function: worst chord-normal angle defect over curve pairs at
// distance up to t, both orientations of the normal.
ModulusCurve estimate_alpha(const SmoothCurve2D& c, const std::vector<double>& t_grid,
                            int samples = 1024, int* warning_count = nullptr);

// sup{t > 0 : alpha(tau) + alpha(tau/2) < 1/2 on (0, t)}.
double epsilon0(const ModulusCurve& alpha);

struct SurfaceGammaOptions {
    PairSweepOptions sweep;
    double tol = kModulusTol;
};

// Nonconvexity modulus of the curve against the smoothness upper bound and
// the osculating-circle lower estimate.
Report check_surface_gamma_bound(const SmoothCurve2D& c, const std::vector<double>& eps_grid,
                                 const SurfaceGammaOptions& opts = {});

// Largest candidate radius r such that every ball B_r(x), x on the curve,
// cuts a single connected parameter arc.
double simplicity_parameter_probe(const SmoothCurve2D& c,
                                  const std::vector<double>& r_candidates,
                                  int x_samples = 256, int param_samples = 2048);

struct NormalFieldReport {
    Report report;
    ModulusCurve normal_modulus;  // empirical continuity of the unit normal
};

// Proximal-normal emptiness at r = r_fraction * min curvature radius, plus
// the empirical continuity modulus of the normal field.
NormalFieldReport normal_field_continuity(const SmoothCurve2D& c, int pair_samples = 512,
                                          double r_fraction = 0.5);

// Data-only probe: gamma(eps)/eps decay for the region and its closed
// complement next to the empirical normal modulus.  Asserts nothing.
Report conjecture_probe(const SmoothCurve2D& c, const OraclePtr& clip,
                        const std::vector<double>& eps_grid,
                        const PairSweepOptions& sweep = {});

}  // namespace weakconv
