// Half-space Poisson solver for -Lap(Phi) = rho on R^2 x [0,inf) with zero
// wall data, via the mirror kernel
//   G(x,y) = (1/4pi) (1/|x-y| - 1/|xt-y|),  xt = (x1,x2,-x3),
// with a fast slab-reduced path (Phi(x3) = int min(x3,y3) rho(y3) dy3) and a
// direct-quadrature path for sampled 3D densities.
#ifndef RVP_POISSON_HPP
#define RVP_POISSON_HPP

#include <memory>
#include <optional>
#include <vector>

#include "rvp/field.hpp"
#include "rvp/interp.hpp"
#include "rvp/vec.hpp"

namespace rvp {

double greens_function(const Vec3& x, const Vec3& y);
Vec3 grad_greens(const Vec3& x, const Vec3& y);

// Exponential decay certificate |rho(x)| <= A exp(-B x3).
struct DecayCertificate {
    double A = 0.0;
    double B = 0.0;
};

struct SlabProfile {
    std::vector<double> x3;  // strictly increasing, starting at 0
    std::vector<double> rho; // density samples
    std::optional<DecayCertificate> certificate;
};

struct SlabSolution {
    MonotoneCubic phi;       // potential
    MonotoneCubic dphi;      // vertical gradient
    double grad_sup = 0.0;   // max |Phi'|
    FieldSnapshot snapshot;  // SlabGrid field over the same x3 grid
};

// Double integration of the slab kernel against the monotone-cubic
// interpolant of rho (exact per piece):
//   Phi(x3)  = int_0^{x3} y rho(y) dy + x3 * int_{x3}^inf rho(y) dy,
//   Phi'(x3) = int_{x3}^inf rho.
// The tail above the last grid node is added analytically from the decay
// certificate when present.
SlabSolution solve_slab(const SlabProfile& rho);

struct Sampled3D {
    std::vector<Vec3> nodes;
    std::vector<double> values;
    std::vector<double> weights; // positive quadrature weights
    std::optional<DecayCertificate> certificate;
};

struct HalfspaceResult {
    std::vector<double> phi;
    std::vector<Vec3> grad;
    bool singular_correction_applied = false;
};

// Direct kernel quadrature at the query points. Wall queries return exactly
// zero; a query falling inside a node's own cell excludes that node and adds
// a first-order equal-volume-ball correction (flagged in the result).
HalfspaceResult solve_halfspace(const Sampled3D& rho, const std::vector<Vec3>& queries);

// Field snapshot backed by a sampled density: Phi/grad by kernel sums on
// demand. grad_bound is measured on a probe grid at construction.
FieldSnapshot sampled3d_snapshot(std::shared_ptr<const Sampled3D> rho);

struct GradientBoundReport {
    double measured_sup = 0.0;
    double bound = 0.0;
    bool ok = false;
};

// Frozen calibration constant for the 3D gradient bound check
// |grad Phi| <= c_cal * A (1 + 1/B); 1.5x the sharp slab constant 1/2,
// measured once on the reference density e^{-x3}.
inline constexpr double kGradBoundCalibration = 0.75;

// Slab mode: checks the sharp inequality sup|Phi'| <= A/B (equality for pure
// exponential profiles). 3D mode uses the frozen calibrated constant.
GradientBoundReport gradient_bound_check(const SlabSolution& sol, const DecayCertificate& cert);
GradientBoundReport gradient_bound_check(const Sampled3D& rho,
                                         const std::vector<Vec3>& probe_queries);

} // namespace rvp

#endif
