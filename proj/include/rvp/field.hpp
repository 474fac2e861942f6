// Immutable potential snapshots. A FieldSnapshot answers Phi(x), grad Phi(x),
// the wall gradient d3 Phi(x_par, 0) and curvature norms; the wall value
// Phi(x_par, 0) is zero in every mode. Snapshots are cheap shared handles and
// safe to query from any number of threads.
#ifndef RVP_FIELD_HPP
#define RVP_FIELD_HPP

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rvp/interp.hpp"
#include "rvp/params.hpp"
#include "rvp/vec.hpp"

namespace rvp {

enum class FieldMode { Zero, Analytic, SlabGrid, Sampled3D };

class FieldSnapshot {
public:
    struct Impl {
        virtual ~Impl() = default;
        virtual FieldMode mode() const = 0;
        virtual double phi(const Vec3& x) const = 0;
        virtual Vec3 grad_phi(const Vec3& x) const = 0;
        virtual double wall_d3phi(double x1, double x2) const = 0;
        // Rows of the Hessian of Phi; default central differences of the
        // gradient, overridden where an analytic form exists.
        virtual std::array<Vec3, 3> hessian(const Vec3& x) const {
            std::array<Vec3, 3> h;
            const double dx = 1e-5 * (1.0 + std::abs(x.z));
            for (int j = 0; j < 3; ++j) {
                Vec3 xp = x, xm = x;
                xp[j] += dx;
                xm[j] -= dx;
                if (xm.z < 0.0) xm.z = 0.0;
                const Vec3 col = (1.0 / (xp[j] - xm[j])) * (grad_phi(xp) - grad_phi(xm));
                h[0][j] = col.x;
                h[1][j] = col.y;
                h[2][j] = col.z;
            }
            return h;
        }
        // Curvature norms entering the Gronwall envelope of the kinetic
        // distance: ||d33 Phi||_inf and ||grad_par d3 Phi||_inf on the wall.
        virtual double curvature_bound() const { return 0.0; }
        virtual double wall_mixed_bound() const { return 0.0; }
    };

    FieldSnapshot() : FieldSnapshot(zero()) {}

    FieldMode mode() const { return impl_->mode(); }
    double phi(const Vec3& x) const { return impl_->phi(x); }
    Vec3 grad_phi(const Vec3& x) const { return impl_->grad_phi(x); }
    std::array<Vec3, 3> hessian(const Vec3& x) const { return impl_->hessian(x); }
    double wall_d3phi(double x1, double x2) const { return impl_->wall_d3phi(x1, x2); }
    double curvature_bound() const { return impl_->curvature_bound(); }
    double wall_mixed_bound() const { return impl_->wall_mixed_bound(); }

    // Declared sup norm of grad Phi; admissibility is checked against it.
    double grad_bound() const { return grad_bound_; }
    std::optional<double> time_label() const { return time_label_; }

    bool admissible(const SpeciesParams& plus, const SpeciesParams& minus,
                    const WorldParams& w) const {
        return grad_bound_ <= admissible_grad_bound(plus, minus, w) * (1.0 + 1e-12);
    }

    FieldSnapshot with_time_label(double t) const {
        FieldSnapshot f(*this);
        f.time_label_ = t;
        return f;
    }

    static FieldSnapshot zero();

    // Analytic mode from callables; the wall gradient is taken from grad at
    // x3 = 0. grad_bound must be supplied by the caller.
    static FieldSnapshot analytic(std::function<double(const Vec3&)> phi,
                                  std::function<Vec3(const Vec3&)> grad,
                                  double grad_bound,
                                  double curvature_bound = 0.0,
                                  double wall_mixed_bound = 0.0);

    // Slab mode: Phi = Phi(x3) interpolated monotone-cubically on a
    // nonuniform grid with Phi(0) = 0; grad = (0,0,Phi'(x3)) from the
    // interpolant's analytic derivative.
    static FieldSnapshot slab(std::vector<double> x3, std::vector<double> phi,
                              double curvature_bound = -1.0);

    // Superposition of two slab snapshots (steady + perturbation).
    static FieldSnapshot slab_sum(const FieldSnapshot& a, const FieldSnapshot& b);

    // Direct-quadrature mode backed by sampled density nodes; see poisson.hpp
    // for the builder.
    static FieldSnapshot from_impl(std::shared_ptr<const Impl> impl, double grad_bound);

    const MonotoneCubic* slab_interpolant() const; // null unless SlabGrid

private:
    explicit FieldSnapshot(std::shared_ptr<const Impl> impl, double grad_bound = 0.0)
        : impl_(std::move(impl)), grad_bound_(grad_bound) {}

    std::shared_ptr<const Impl> impl_;
    double grad_bound_ = 0.0;
    std::optional<double> time_label_;
};

} // namespace rvp

#endif
