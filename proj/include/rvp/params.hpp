// Species and world parameters for the two-species relativistic
// Vlasov-Poisson problem on the half space x3 >= 0 with downward gravity g
// and a vertical magnetic field (0,0,B3).
//
// Conventions:
//   - q is stored signed; |q| is used in distribution normalizations,
//     signed q in charge-density integrals and in the Lorentz force.
//   - p0 = sqrt((mc)^2 + |p|^2) carries momentum units; c*p0 is the energy.
//   - Temperature-weight link: k_B T = c / beta.
#ifndef RVP_PARAMS_HPP
#define RVP_PARAMS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rvp {

enum class SpeciesLabel { plus, minus };

struct SpeciesParams {
    SpeciesLabel label = SpeciesLabel::plus;
    double mass = 1.0;   // rest mass, > 0
    double charge = 1.0; // signed charge

    double charge_magnitude() const { return std::abs(charge); }

    void validate() const {
        if (!(mass > 0.0)) throw std::invalid_argument("SpeciesParams: mass must be > 0");
        if (!(std::abs(charge) > 0.0)) throw std::invalid_argument("SpeciesParams: |charge| must be > 0");
    }
};

struct WorldParams {
    double c = 1.0;          // speed of light, > 0
    double g = 1.0;          // gravity, > 0
    double B3 = 0.0;         // vertical magnetic field, signed
    double beta = 1.0;       // weight exponent, > 0
    double beta_tilde = 1.0; // derivative-weight exponent, 0 < beta_tilde <= beta
    double epsilon = 0.0;    // specular mixing in [0,1)
    double p_max = 0.0;      // compact momentum support radius; 0 = undeclared

    void validate() const {
        if (!(c > 0.0)) throw std::invalid_argument("WorldParams: c must be > 0");
        if (!(g > 0.0)) throw std::invalid_argument("WorldParams: g must be > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("WorldParams: beta must be > 0");
        if (!(beta_tilde > 0.0 && beta_tilde <= beta))
            throw std::invalid_argument("WorldParams: need 0 < beta_tilde <= beta");
        if (!(epsilon >= 0.0 && epsilon < 1.0))
            throw std::invalid_argument("WorldParams: epsilon must be in [0,1)");
        if (p_max < 0.0) throw std::invalid_argument("WorldParams: p_max must be >= 0");
    }
};

// Decay rates of the stability statement, fixed functions of the parameters:
// lambda = g*beta*m_hat/48 (1/time), nu = g*beta*m_hat/(16 c) (1/length).
struct DerivedConstants {
    double m_hat = 0.0;
    double lambda = 0.0;
    double nu = 0.0;

    static DerivedConstants from(const SpeciesParams& plus, const SpeciesParams& minus,
                                 const WorldParams& w) {
        DerivedConstants d;
        d.m_hat = std::min(plus.mass, minus.mass);
        d.lambda = w.g * w.beta * d.m_hat / 48.0;
        d.nu = w.g * w.beta * d.m_hat / (16.0 * w.c);
        return d;
    }
};

// Gravitational-dominance threshold: a field with |grad Phi| below this is
// "admissible", and every exit-time bound in the trajectory module holds.
inline double admissible_grad_bound(const SpeciesParams& plus, const SpeciesParams& minus,
                                    const WorldParams& w) {
    const double r = std::min(plus.mass / plus.charge_magnitude(),
                              minus.mass / minus.charge_magnitude());
    return r * w.g / 2.0;
}

} // namespace rvp

#endif
