// Closed-form backward exit for the field-free problem (gravity plus a
// vertical magnetic field, Phi identically 0). The vertical motion decouples
// and integrates exactly; the gyro-rotation phase and the horizontal drift
// reduce to the arcsinh phase integral, so the exit is elementary:
//   P3(-tau) = p3 + m g tau
//   X3(-tau) = x3 - (c/mg)(sqrt(M^2+P3^2) - sqrt(M^2+p3^2)),  M^2=(mc)^2+r^2
//   A(tau)   = (1/mg)(asinh(P3/M) - asinh(p3/M))
//   W(-tau)  = W(0) e^{i q B3 A},           W = p1 + i p2
//   Xpar(-tau) = xpar - W(0) (c/(i q B3)) (e^{i q B3 A} - 1)   (B3 != 0)
// Used as the exact oracle against the adaptive integrator and as the fast
// trace of the far-field study.
#ifndef RVP_BALLISTIC_HPP
#define RVP_BALLISTIC_HPP

#include <cmath>
#include <complex>

#include "rvp/params.hpp"
#include "rvp/phys.hpp"

namespace rvp {

struct BallisticExit {
    double t_b;    // backward exit time
    Vec3 x_exit;   // wall point (third component 0)
    Vec3 p_exit;   // exit momentum, third component > 0
    double p0_exit;
};

inline BallisticExit ballistic_backward_exit(const SpeciesParams& sp, const WorldParams& w,
                                             const Vec3& x, const Vec3& p) {
    const double m = sp.mass, g = w.g, c = w.c;
    const double mc = m * c;
    const double r2 = p.x * p.x + p.y * p.y;
    const double M = std::sqrt(mc * mc + r2);
    const double p0 = std::sqrt(M * M + p.z * p.z);
    const double pb0 = p0 + m * g * x.z / c;
    const double pb3 = std::sqrt(std::max(0.0, pb0 * pb0 - M * M));
    BallisticExit out;
    out.t_b = (pb3 - p.z) / (m * g);
    out.p0_exit = pb0;

    const double phase = (std::asinh(pb3 / M) - std::asinh(p.z / M)) / (m * g);
    const double rot = sp.charge * w.B3 * phase;
    const std::complex<double> w0{p.x, p.y};
    const std::complex<double> e{std::cos(rot), std::sin(rot)};
    const std::complex<double> pb_par = w0 * e;
    out.p_exit = {pb_par.real(), pb_par.imag(), pb3};

    std::complex<double> drift;
    if (sp.charge * w.B3 != 0.0) {
        const std::complex<double> i{0.0, 1.0};
        drift = w0 * (c / (i * sp.charge * w.B3)) * (e - 1.0);
    } else {
        drift = w0 * (c * phase);
    }
    out.x_exit = {x.x - drift.real(), x.y - drift.imag(), 0.0};
    return out;
}

} // namespace rvp

#endif
