// The constructive fixed-point iteration for the steady state: transported
// boundary data along backward characteristics -> charge density by momentum
// quadrature -> half-space Poisson solve -> repeat, with the admissibility
// gates checked up front and the a-priori bound suite checked on the result.
#ifndef RVP_STEADY_HPP
#define RVP_STEADY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rvp/boundary.hpp"
#include "rvp/characteristics.hpp"
#include "rvp/field.hpp"
#include "rvp/poisson.hpp"

namespace rvp {

enum class SteadyGeometry { Slab, Pointwise3D };

// How eval_h reaches the wall. `conservation` exploits the invariants of the
// static slab field (total energy and |p_par|); `ode` is the general traced
// path and the reference the fast path is verified against.
enum class TraceMode { conservation, ode };

struct MomentumQuadrature {
    double p_cut = 0.0; // 0: derived from beta so the discarded tail <= 1e-12
    int nodes_per_segment = 16;
    double first_segment = 1.0;
};

struct SteadyConfig {
    SpeciesParams plus{SpeciesLabel::plus, 1.0, 1.0};
    SpeciesParams minus{SpeciesLabel::minus, 1.0, -1.0};
    WorldParams world;
    BoundarySpec bdry_plus = BoundarySpec::zero();
    BoundarySpec bdry_minus = BoundarySpec::zero();
    SteadyGeometry geometry = SteadyGeometry::Slab;
    bool specular = false;

    double x3_max = 0.0; // 0: auto from the density decay envelope
    int x3_nodes = 257;
    MomentumQuadrature quad;

    int max_iter = 32;
    double tol = 1e-10; // weighted sup distance, relative to the data norm
    bool force = false; // proceed despite failed gates

    int probe_count = 512;
    std::uint64_t probe_seed = 0;

    // Pointwise3D only: density quadrature nodes of the 3D Poisson path.
    std::shared_ptr<const std::vector<Vec3>> nodes3d;
    std::shared_ptr<const std::vector<double>> weights3d;

    double specular_truncation = 1e-12;
    double trace_tol = 1e-10;

    const SpeciesParams& species(int i) const { return i == 0 ? plus : minus; }
    const BoundarySpec& boundary(int i) const { return i == 0 ? bdry_plus : bdry_minus; }
    double p_cut() const;
};

struct GateCheck {
    std::string name;
    bool ok;
    bool advisory;
    double lhs, rhs;
};

struct GateReport {
    std::vector<GateCheck> checks;
    bool hard_ok = true; // all non-advisory checks passed
};

struct SteadyDiagnostics {
    int iterations = 0;
    bool converged = false;
    std::vector<double> distances;         // weighted sup distance per iterate
    std::vector<double> contraction_ratios; // d_{l+1}/d_l
    double distance_scale = 0.0;
};

struct BoundCheck {
    std::string name;
    bool ok;
    bool advisory;
    double measured, bound;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    bool ok = true; // non-advisory checks
};

struct SteadySolution {
    SteadyConfig config;
    FieldSnapshot field;
    SlabProfile rho;
    SlabSolution poisson;
    GateReport gates;
    SteadyDiagnostics diag;
    DerivedConstants rates;
    bool admissible = false;
};

struct EvalOptions {
    TraceMode mode = TraceMode::conservation;
    double tol = 1e-10;
    double truncation = 1e-12; // specular chain cutoff in the weighted value
};

// Transported boundary value h(x,p): G at the backward exit for pure inflow;
// the eps-weighted bounce sum for the specular mixture.
double eval_h(const FieldSnapshot& field, const SpeciesParams& sp, const WorldParams& w,
              const BoundarySpec& spec, const Vec3& x, const Vec3& p,
              const EvalOptions& opt = {});

// Signed-charge momentum integral of eval_h over both species at height x3
// (slab geometry, azimuthal reduction with the 2 pi r factor).
double charge_density(const FieldSnapshot& field, const SteadyConfig& config, double x3);

GateReport check_gates(const SteadyConfig& config);

SteadySolution fixed_point_solve(const SteadyConfig& config);

// Evaluates the explicit a-priori inequalities of the steady theorem on a
// probe cloud: the weighted sup bound on h, the density decay envelope, the
// field-gradient bound, and (specular) the wall compact support.
BoundReport theorem_bounds_report(const SteadySolution& sol, int probe_count = 512,
                                  std::uint64_t probe_seed = 0);

// Central finite-difference momentum gradient of eval_h; throws on grazing
// samples (vertical exit velocity below 1e-3 c).
Vec3 grad_p_h(const FieldSnapshot& field, const SpeciesParams& sp, const WorldParams& w,
              const BoundarySpec& spec, const Vec3& x, const Vec3& p, double h_fd,
              const EvalOptions& opt = {});

} // namespace rvp

#endif
