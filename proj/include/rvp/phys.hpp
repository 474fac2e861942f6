// Relativistic kinematics, the steady/dynamic weight functions and the
// kinetic distance. Pure functions; weights are evaluated in log space
// internally and exposed through both log and linear accessors.
#ifndef RVP_PHYS_HPP
#define RVP_PHYS_HPP

#include <cmath>
#include <stdexcept>

#include "rvp/params.hpp"
#include "rvp/vec.hpp"

namespace rvp {

struct PhaseState {
    Vec3 x; // position, x.z >= 0
    Vec3 p; // momentum
};

// p0 = sqrt((mc)^2 + |p|^2), momentum units. c*p0 is the particle energy.
inline double total_energy(const SpeciesParams& sp, const WorldParams& w, const Vec3& p) {
    const double mc = sp.mass * w.c;
    return std::sqrt(mc * mc + norm2(p));
}

// v = c p / p0; always |v| < c, odd in p.
inline Vec3 velocity(const SpeciesParams& sp, const WorldParams& w, const Vec3& p) {
    return (w.c / total_energy(sp, w, p)) * p;
}

// Total mechanical invariant E = p0 + (q Phi + m g x3)/c. Constant along
// steady characteristics; its drift along a dynamic trajectory equals the
// time derivative of the potential integrated along the path.
inline double conserved_energy(const SpeciesParams& sp, const WorldParams& w,
                               double phi_at_x, const Vec3& x, const Vec3& p) {
    return total_energy(sp, w, p) + (sp.charge * phi_at_x + sp.mass * w.g * x.z) / w.c;
}

inline double log_steady_weight(const SpeciesParams& sp, const WorldParams& w,
                                double phi_at_x, const Vec3& x, const Vec3& p, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("steady_weight: beta must be > 0");
    return beta * conserved_energy(sp, w, phi_at_x, x, p);
}

// w = exp(beta (p0 + (q Phi(x) + m g x3)/c)); equals exp(beta p0) on the wall.
inline double steady_weight(const SpeciesParams& sp, const WorldParams& w,
                            double phi_at_x, const Vec3& x, const Vec3& p, double beta) {
    return std::exp(log_steady_weight(sp, w, phi_at_x, x, p, beta));
}

// Same formula with the total potential Phi_h + Psi(t,x) in place of Phi_h.
inline double log_dynamic_weight(const SpeciesParams& sp, const WorldParams& w,
                                 double phi_total_at_tx, const Vec3& x, const Vec3& p,
                                 double beta) {
    return log_steady_weight(sp, w, phi_total_at_tx, x, p, beta);
}

inline double dynamic_weight(const SpeciesParams& sp, const WorldParams& w,
                             double phi_total_at_tx, const Vec3& x, const Vec3& p,
                             double beta) {
    return std::exp(log_dynamic_weight(sp, w, phi_total_at_tx, x, p, beta));
}

// Kinetic distance to the grazing set:
//   alpha = sqrt(x3^2 + v3^2 + 2 (q d3Phi(x_par,0) + m g) x3 / sqrt(m^2 + |p|^2/c^2)).
// Equals |v3| on the wall. The radicand is nonnegative whenever the field
// obeys the gravitational-dominance bound; a negative radicand is reported
// as a field-bound violation.
inline double kinetic_distance(const SpeciesParams& sp, const WorldParams& w,
                               double d3phi_at_wall, const Vec3& x, const Vec3& p) {
    const double v3 = velocity(sp, w, p).z;
    const double gamma_m = std::sqrt(sp.mass * sp.mass + norm2(p) / (w.c * w.c));
    const double rad = x.z * x.z + v3 * v3 +
                       2.0 * (sp.charge * d3phi_at_wall + sp.mass * w.g) * x.z / gamma_m;
    if (rad < 0.0)
        throw std::domain_error("kinetic_distance: negative radicand (field bound violated)");
    return std::sqrt(rad);
}

} // namespace rvp

#endif
