// Relativistic characteristic tracing in a frozen field snapshot:
//   dX/ds = c P / p0,   dP/ds = q (V x B / c - grad Phi) - m g e3,
// with wall-crossing detection, backward/forward exit data, the specular
// bounce chain, exit-bound checks and finite-difference sensitivity checks.
#ifndef RVP_CHARACTERISTICS_HPP
#define RVP_CHARACTERISTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "rvp/field.hpp"
#include "rvp/phys.hpp"

namespace rvp {

struct Trajectory {
    std::vector<double> s;          // sample times, s=0 is the start
    std::vector<PhaseState> states; // X3 >= 0 for all retained samples
    std::vector<double> energy;     // p0 + (q Phi + m g X3)/c per sample
    StepStats stats;
    bool hit_boundary = false;

    double energy_drift() const; // max relative drift against the first sample
    double par_momentum_drift() const;
};

enum class ExitDirection { backward, forward };
enum class ExitTermination { boundary, initial_time, horizon };

struct ExitRecord {
    double t_exit = 0.0; // >= 0 in both directions
    Vec3 x_exit, p_exit;
    ExitDirection direction = ExitDirection::backward;
    ExitTermination terminated_by = ExitTermination::boundary;

    struct Bounce {
        double time; // cumulative backward time of the wall hit
        Vec3 x;
        Vec3 p_pre;  // momentum arriving at the wall (p3 > 0 going backward)
        Vec3 p_post; // reflected momentum the next leg starts from
    };
    std::vector<Bounce> bounce_chain;
};

struct TraceOptions {
    double tol = 1e-10;              // local error tolerance per step
    double horizon_factor = 1.25;    // horizon = factor * explicit exit bound
    std::optional<double> horizon;   // overrides the default when set
    double wall_refine = 1e-12;      // |X3| <= wall_refine * length scale at the exit
};

// Explicit a-priori bound on the backward exit time for an admissible field:
// (4/(m g)) (p0 + (3/(2c)) m g x3).
double exit_time_bound(const SpeciesParams& sp, const WorldParams& w, const Vec3& x,
                       const Vec3& p);

Trajectory integrate(const FieldSnapshot& field, const SpeciesParams& sp,
                     const WorldParams& w, const PhaseState& start, double span,
                     double tol);

ExitRecord backward_exit(const FieldSnapshot& field, const SpeciesParams& sp,
                         const WorldParams& w, const Vec3& x, const Vec3& p,
                         const TraceOptions& opt = {});

ExitRecord forward_exit(const FieldSnapshot& field, const SpeciesParams& sp,
                        const WorldParams& w, const Vec3& x, const Vec3& p,
                        const TraceOptions& opt = {});

// Backward trace with specular reflections: each wall hit is recorded and the
// trace continues from the reflected momentum (p1,p2,-p3). Stops when
// epsilon^k drops below chain_cutoff (relative weight of the next leg) or
// after max_bounces legs, whichever comes first.
ExitRecord specular_backward_chain(const FieldSnapshot& field, const SpeciesParams& sp,
                                   const WorldParams& w, const Vec3& x, const Vec3& p,
                                   double epsilon, const TraceOptions& opt = {},
                                   int max_bounces = 64, double chain_cutoff = 1e-12);

struct BoundViolation {
    size_t sample_index;
    std::string check;
    double measured;
    double bound;
};

struct ExitBoundReport {
    size_t samples_checked = 0;
    std::vector<BoundViolation> violations;
    bool ok() const { return violations.empty(); }
};

struct ExitBoundOptions {
    TraceOptions trace;
    bool dynamic_bounds = false; // also check the dynamic-trajectory bounds
    bool psi_small = true;       // perturbation-gradient smallness hypothesis
    double slack = 1e-9;         // relative slack on every inequality
};

// Per-sample checks of the explicit exit-time/height inequalities:
// t_b <= (4/mg)(p0 + (3/2c) m g x3), t_b <= (4/mg)|p_b|,
// t_b <= (2/mg + sqrt8 (p_b0)^(1/4)/sqrt(c m^3 g^2)) |p_b3|,
// the peak-height sandwich, and (dynamic) t_b <= (8/mg) p_b0 and
// p0 + (mg/2c) x3 <= (7/6) p_b0.
ExitBoundReport exit_bound_report(const FieldSnapshot& field, const SpeciesParams& sp,
                                  const WorldParams& w,
                                  const std::vector<PhaseState>& samples,
                                  const ExitBoundOptions& opt = {});

struct SensitivityReport {
    double t_b = 0.0;
    double max_rel_residual = 0.0; // worst entry over all identities
    double residual_t = 0.0, residual_x = 0.0, residual_p = 0.0;
    bool grazing_rejected = false;
};

// Central finite differences of (t_b, x_b, p_b) in (x, p) compared against
// the variational-equation identities; samples with |v_b3| < 1e-3 c are
// rejected as grazing.
SensitivityReport trajectory_sensitivity_check(const FieldSnapshot& field,
                                               const SpeciesParams& sp,
                                               const WorldParams& w, const Vec3& x,
                                               const Vec3& p, double h_fd,
                                               const TraceOptions& opt = {});

// Envelope rate of the kinetic-distance Gronwall bound for a snapshot:
// 4g + ||d33 Phi||_inf + ||grad_par d3 Phi||_inf.
double alpha_envelope_rate(const FieldSnapshot& field, const WorldParams& w);

} // namespace rvp

#endif
