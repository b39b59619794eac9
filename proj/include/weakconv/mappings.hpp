#pragma once

#include "weakconv/projection.hpp"

namespace weakconv {

// Parametrized family t -> set over an interval, with a declared or
// estimated continuity modulus and the convexity class of its images.
struct SetValuedMap {
    enum class Class { UniformlyConvex, UniformlyWeaklyConvex };

    double t_lo = 0.0, t_hi = 1.0;
    std::function<OraclePtr(double)> evaluate;
    std::function<double(double)> omega;    // continuity modulus
    Class cls = Class::UniformlyConvex;
    std::function<double(double)> modulus;  // delta for convex, gamma for weakly convex
    double modulus_domain = 1.0;            // domain bound for the modulus argument
};

SetValuedMap translate_map(const OraclePtr& base, const Vec& direction, double t_lo,
                           double t_hi, SetValuedMap::Class cls,
                           std::function<double(double)> modulus, double modulus_domain);
SetValuedMap inflate_map(const PNormSpace& space, const Vec& center, double r0, double t_lo,
                         double t_hi);
SetValuedMap constant_map(const OraclePtr& base, double t_lo, double t_hi,
                          SetValuedMap::Class cls, std::function<double(double)> modulus,
                          double modulus_domain);

// Upper envelope of pairwise Hausdorff distances against parameter gaps.
ModulusCurve estimate_continuity_modulus(const SetValuedMap& f,
                                         const std::vector<double>& t_grid,
                                         double hausdorff_tol = 1e-4);

struct StabilityBound {
    double omega1 = 0.0, omega2 = 0.0;
    double s0 = 0.0;
    int branch = 1;       // 1: root bound, 2: coarse M-scaled bound
    double bound = 0.0;
    double measured = 0.0;
    bool pass = false;
};

// Hausdorff stability of H(t) = F1(t) ∩ F2(t); F1 uniformly weakly convex,
// F2 uniformly convex.
StabilityBound intersection_stability_bound(const SetValuedMap& f1, const SetValuedMap& f2,
                                            double t1, double t2, double m_bound,
                                            double tol = 1e-6);

struct TransferResult {
    Vec point;
    int iterations = 0;
    std::string terminal_case;  // "trivial", "case2", "limit"
    std::vector<double> gap_trail;
};

// Constructive point transfer c1 in H(t1) to a nearby point of H(t2).
TransferResult transfer_point(const Vec& c1, const SetValuedMap& f1, const SetValuedMap& f2,
                              double t1, double t2, int max_iters = 400,
                              double membership_tol = 1e-6);

// Nearest-point selection through the hull: s(H) = P_H(P_{cl co H} basepoint).
Vec selection_point(const OraclePtr& h, const TubeSpec& tube, double r1,
                    const Vec& basepoint);

// Composed displacement modulus for the selection, evaluated numerically.
double selection_displacement_bound(const TubeSpec& tube, double big_r, double r1, double h);

struct SplitResult {
    Vec a, b;
    double residual = 0.0;  // ||a + b - c||, identically zero by construction
    double defect_a = 0.0;  // distance of a to A
    double defect_b = 0.0;  // distance of b to B
};

struct SplitContext {
    OraclePtr a, b;
    std::function<double(double)> gamma_a;
    std::function<double(double)> delta_b;
    double d = 0.0;
    double r1 = 1e-3;
    Vec basepoint;  // projection origin for the selection, fixed across c
};

SplitResult split(const SplitContext& ctx, const Vec& c, double membership_tol = 1e-6);

}  // namespace weakconv
