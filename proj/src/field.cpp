#include "rvp/field.hpp"

#include <algorithm>
#include <cmath>

namespace rvp {

namespace {

struct ZeroField final : FieldSnapshot::Impl {
    FieldMode mode() const override { return FieldMode::Zero; }
    double phi(const Vec3&) const override { return 0.0; }
    Vec3 grad_phi(const Vec3&) const override { return {}; }
    double wall_d3phi(double, double) const override { return 0.0; }
    std::array<Vec3, 3> hessian(const Vec3&) const override { return {Vec3{}, Vec3{}, Vec3{}}; }
};

struct AnalyticField final : FieldSnapshot::Impl {
    std::function<double(const Vec3&)> phi_fn;
    std::function<Vec3(const Vec3&)> grad_fn;
    double curv = 0.0, mixed = 0.0;

    FieldMode mode() const override { return FieldMode::Analytic; }
    double phi(const Vec3& x) const override { return phi_fn(x); }
    Vec3 grad_phi(const Vec3& x) const override { return grad_fn(x); }
    double wall_d3phi(double x1, double x2) const override {
        return grad_fn(Vec3{x1, x2, 0.0}).z;
    }
    double curvature_bound() const override { return curv; }
    double wall_mixed_bound() const override { return mixed; }
};

struct SlabField final : FieldSnapshot::Impl {
    MonotoneCubic interp;
    double curv = 0.0;

    FieldMode mode() const override { return FieldMode::SlabGrid; }
    double phi(const Vec3& x) const override { return interp(x.z); }
    Vec3 grad_phi(const Vec3& x) const override { return {0.0, 0.0, interp.derivative(x.z)}; }
    double wall_d3phi(double, double) const override { return interp.derivative(0.0); }
    std::array<Vec3, 3> hessian(const Vec3& x) const override {
        std::array<Vec3, 3> h{Vec3{}, Vec3{}, Vec3{}};
        h[2].z = interp.second_derivative(x.z);
        return h;
    }
    double curvature_bound() const override { return curv; }
};

struct SumField final : FieldSnapshot::Impl {
    FieldSnapshot a, b;

    SumField(FieldSnapshot a_, FieldSnapshot b_) : a(std::move(a_)), b(std::move(b_)) {}

    FieldMode mode() const override { return FieldMode::SlabGrid; }
    double phi(const Vec3& x) const override { return a.phi(x) + b.phi(x); }
    Vec3 grad_phi(const Vec3& x) const override { return a.grad_phi(x) + b.grad_phi(x); }
    double wall_d3phi(double x1, double x2) const override {
        return a.wall_d3phi(x1, x2) + b.wall_d3phi(x1, x2);
    }
    std::array<Vec3, 3> hessian(const Vec3& x) const override {
        auto ha = a.hessian(x);
        const auto hb = b.hessian(x);
        for (int i = 0; i < 3; ++i) ha[i] += hb[i];
        return ha;
    }
    double curvature_bound() const override {
        return a.curvature_bound() + b.curvature_bound();
    }
    double wall_mixed_bound() const override {
        return a.wall_mixed_bound() + b.wall_mixed_bound();
    }
};

double max_abs_derivative(const MonotoneCubic& f) {
    // The interpolant's derivative is piecewise quadratic; sampling each
    // interval at its ends and midpoint brackets the sup to grid accuracy.
    double m = 0.0;
    const auto& xs = f.nodes();
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        m = std::max(m, std::abs(f.derivative(xs[i])));
        m = std::max(m, std::abs(f.derivative(0.5 * (xs[i] + xs[i + 1]))));
    }
    m = std::max(m, std::abs(f.derivative(xs.back())));
    return m;
}

double max_abs_second_derivative(const MonotoneCubic& f) {
    double m = 0.0;
    const auto& xs = f.nodes();
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const double h = xs[i + 1] - xs[i];
        m = std::max(m, std::abs(f.second_derivative(xs[i] + 1e-9 * h)));
        m = std::max(m, std::abs(f.second_derivative(xs[i + 1] - 1e-9 * h)));
    }
    return m;
}

} // namespace

FieldSnapshot FieldSnapshot::zero() {
    static const auto impl = std::make_shared<const ZeroField>();
    return FieldSnapshot(impl, 0.0);
}

FieldSnapshot FieldSnapshot::analytic(std::function<double(const Vec3&)> phi,
                                      std::function<Vec3(const Vec3&)> grad,
                                      double grad_bound, double curvature_bound,
                                      double wall_mixed_bound) {
    auto impl = std::make_shared<AnalyticField>();
    impl->phi_fn = std::move(phi);
    impl->grad_fn = std::move(grad);
    impl->curv = curvature_bound;
    impl->mixed = wall_mixed_bound;
    return FieldSnapshot(impl, grad_bound);
}

FieldSnapshot FieldSnapshot::slab(std::vector<double> x3, std::vector<double> phi,
                                  double curvature_bound) {
    if (x3.empty() || std::abs(phi.front()) > 1e-14)
        throw std::invalid_argument("FieldSnapshot::slab: grid must start at 0 with Phi(0)=0");
    phi.front() = 0.0;
    auto impl = std::make_shared<SlabField>();
    impl->interp = MonotoneCubic(std::move(x3), std::move(phi));
    impl->curv = curvature_bound >= 0.0 ? curvature_bound
                                        : max_abs_second_derivative(impl->interp);
    const double gb = max_abs_derivative(impl->interp);
    return FieldSnapshot(impl, gb);
}

FieldSnapshot FieldSnapshot::slab_sum(const FieldSnapshot& a, const FieldSnapshot& b) {
    auto impl = std::make_shared<SumField>(a, b);
    return FieldSnapshot(impl, a.grad_bound() + b.grad_bound());
}

FieldSnapshot FieldSnapshot::from_impl(std::shared_ptr<const Impl> impl, double grad_bound) {
    return FieldSnapshot(std::move(impl), grad_bound);
}

const MonotoneCubic* FieldSnapshot::slab_interpolant() const {
    if (auto* s = dynamic_cast<const SlabField*>(impl_.get())) return &s->interp;
    return nullptr;
}

} // namespace rvp
