// Inflow boundary distributions on the incoming phase boundary (wall points
// with p3 > 0): Juttner data, the simple isothermal/non-isothermal wall
// profiles, custom callables, compact momentum support and the specular
// composition rule.
#ifndef RVP_BOUNDARY_HPP
#define RVP_BOUNDARY_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "rvp/bessel.hpp"
#include "rvp/params.hpp"
#include "rvp/phys.hpp"

namespace rvp {

// Wall temperature profile T(x_par) > 0, optionally certified to approach 1
// like (20+|x|)^-4; the certificate is sample-checked on construction.
class TemperatureProfile {
public:
    TemperatureProfile() : fn_([](double, double) { return 1.0; }), t_min_(1.0), t_max_(1.0) {}

    TemperatureProfile(std::function<double(double, double)> fn, double t_min, double t_max,
                       bool asymptotic_certificate = false)
        : fn_(std::move(fn)), t_min_(t_min), t_max_(t_max), certified_(asymptotic_certificate) {
        if (!(t_min_ > 0.0) || t_max_ < t_min_)
            throw std::invalid_argument("TemperatureProfile: need 0 < t_min <= t_max");
        if (certified_) check_certificate();
    }

    // The profile used by the far-field study: T = 1 + (20+|x|)^-4.
    static TemperatureProfile unit_plus_inverse_quartic() {
        auto fn = [](double x1, double x2) {
            const double r = std::hypot(x1, x2);
            const double d = 20.0 + r;
            return 1.0 + 1.0 / (d * d * d * d);
        };
        return TemperatureProfile(fn, 1.0, 1.0 + 1.0 / 160000.0, true);
    }

    double operator()(double x1, double x2) const { return fn_(x1, x2); }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    bool certified() const { return certified_; }

private:
    std::function<double(double, double)> fn_;
    double t_min_, t_max_;
    bool certified_ = false;

    void check_certificate() const {
        for (double r : {0.0, 1.0, 5.0, 20.0, 100.0, 1000.0}) {
            const double t = fn_(r, 0.0);
            const double cap = 1.0 / std::pow(20.0 + r, 4);
            if (std::abs(t - 1.0) > cap * (1.0 + 1e-12))
                throw std::invalid_argument("TemperatureProfile: asymptotic certificate violated");
        }
    }
};

enum class BoundaryKind { Zero, JuttnerIsothermal, JuttnerNonIsothermal, IsothermalSimple, Custom };

// Full relativistic thermal distribution at wall temperature T (k_B = 1):
//   exp(-c p0 / T) / (4 pi |q| m^2 c T K2(m c^2 / T)).
double juttner(const SpeciesParams& sp, const WorldParams& w, double T, const Vec3& p);

class BoundarySpec {
public:
    static BoundarySpec zero() { return BoundarySpec(BoundaryKind::Zero); }

    static BoundarySpec juttner_isothermal(double T) {
        if (!(T > 0.0)) throw std::invalid_argument("BoundarySpec: T must be > 0");
        BoundarySpec b(BoundaryKind::JuttnerIsothermal);
        b.temperature_ = T;
        return b;
    }

    // (1/(|q| m^2 T(x))) exp(-p0/(2 T(x))).
    static BoundarySpec juttner_nonisothermal(TemperatureProfile profile) {
        BoundarySpec b(BoundaryKind::JuttnerNonIsothermal);
        b.profile_ = std::move(profile);
        return b;
    }

    // (1/(|q| m^2)) exp(-p0/2); the wall data whose steady solution is known
    // in closed form.
    static BoundarySpec isothermal_simple() { return BoundarySpec(BoundaryKind::IsothermalSimple); }

    static BoundarySpec custom(std::function<double(double, double, const Vec3&)> fn,
                               double weighted_bound, double weighted_grad_bound) {
        BoundarySpec b(BoundaryKind::Custom);
        b.custom_ = std::move(fn);
        b.custom_weighted_bound_ = weighted_bound;
        b.custom_weighted_grad_bound_ = weighted_grad_bound;
        return b;
    }

    // Pure exponential data a*exp(-k p0), handy for closed-form checks.
    static BoundarySpec exponential(double amplitude, double k) {
        BoundarySpec b(BoundaryKind::Custom);
        b.custom_ = [amplitude, k](double, double, const Vec3&) { return 0.0; };
        b.exp_amplitude_ = amplitude;
        b.exp_rate_ = k;
        return b;
    }

    BoundarySpec with_p_max(double p_max) const {
        BoundarySpec b = *this;
        b.p_max_ = p_max;
        return b;
    }
    BoundarySpec with_epsilon(double eps) const {
        BoundarySpec b = *this;
        b.epsilon_ = eps;
        return b;
    }

    BoundaryKind kind() const { return kind_; }
    std::optional<double> p_max() const { return p_max_; }
    double epsilon() const { return epsilon_; }
    const TemperatureProfile* profile() const {
        return profile_ ? &*profile_ : nullptr;
    }

    // G value at a wall point; requires p3 > 0.
    double value(const SpeciesParams& sp, const WorldParams& w, double x1, double x2,
                 const Vec3& p) const;

    // sup of e^{beta p0} G over the incoming boundary; infinity when the data
    // decay slower than e^{-beta p0}.
    double weighted_sup(const SpeciesParams& sp, const WorldParams& w, double beta) const;

    // sup of e^{beta p0} |grad_{x_par,p} G|; sampled estimate for kinds
    // without a closed form (the consumers treat it as advisory).
    double weighted_grad_sup(const SpeciesParams& sp, const WorldParams& w, double beta) const;

private:
    explicit BoundarySpec(BoundaryKind k) : kind_(k) {}

    BoundaryKind kind_;
    double temperature_ = 1.0;
    std::optional<TemperatureProfile> profile_;
    std::function<double(double, double, const Vec3&)> custom_;
    double custom_weighted_bound_ = 0.0;
    double custom_weighted_grad_bound_ = 0.0;
    double exp_amplitude_ = 0.0, exp_rate_ = 0.0;
    std::optional<double> p_max_;
    double epsilon_ = 0.0;
};

// Evaluates the configured inflow datum G at a wall point with p3 > 0.
double inflow_value(const BoundarySpec& spec, const SpeciesParams& sp, const WorldParams& w,
                    const Vec3& x_wall, const Vec3& p);

// G(x,p) + epsilon * reflected_value, the inflow/specular mixture.
double boundary_compose(const BoundarySpec& spec, const SpeciesParams& sp,
                        const WorldParams& w, const Vec3& x_wall, const Vec3& p,
                        double reflected_value);

// Specular admissibility gate: epsilon (1 + beta_tilde)
// exp((beta_tilde/2) sqrt((mc)^2 + p_max^2)) <= 1/4 for the species.
bool specular_gate_ok(const SpeciesParams& sp, const WorldParams& w, double epsilon,
                      double p_max);

} // namespace rvp

#endif
