#include "rvp/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvp {

namespace {
constexpr double kFourPiInv = 1.0 / (4.0 * M_PI);

Vec3 mirror(const Vec3& x) { return {x.x, x.y, -x.z}; }
} // namespace

double greens_function(const Vec3& x, const Vec3& y) {
    if (x.z < 0.0 || y.z < 0.0)
        throw std::invalid_argument("greens_function: points must lie in the half space");
    const double r = norm(x - y);
    if (r == 0.0) throw std::domain_error("greens_function: coincident points");
    const double rt = norm(mirror(x) - y);
    return kFourPiInv * (1.0 / r - 1.0 / rt);
}

Vec3 grad_greens(const Vec3& x, const Vec3& y) {
    const Vec3 d = x - y;
    const double r = norm(d);
    if (r == 0.0) throw std::domain_error("grad_greens: coincident points");
    const Vec3 dt = mirror(x) - y;
    const double rt = norm(dt);
    const double r3 = r * r * r, rt3 = rt * rt * rt;
    // gradient in x; the mirror term flips the sign of the x3 component.
    Vec3 g = (-1.0 / r3) * d;
    Vec3 gt = (-1.0 / rt3) * Vec3{dt.x, dt.y, -dt.z};
    return kFourPiInv * (g - gt);
}

SlabSolution solve_slab(const SlabProfile& rho) {
    if (rho.x3.size() < 2 || rho.x3.size() != rho.rho.size())
        throw std::invalid_argument("solve_slab: need matching grids with >= 2 nodes");
    if (std::abs(rho.x3.front()) > 1e-14)
        throw std::invalid_argument("solve_slab: grid must start at x3 = 0");
    // Non-decaying profiles need a certificate to make the tail meaningful.
    double tail0 = 0.0;
    if (rho.certificate) {
        const auto& c = *rho.certificate;
        if (!(c.B > 0.0)) throw std::invalid_argument("solve_slab: certificate needs B > 0");
        for (size_t i = 0; i < rho.x3.size(); ++i)
            if (std::abs(rho.rho[i]) > c.A * std::exp(-c.B * rho.x3[i]) * (1.0 + 1e-9))
                throw std::invalid_argument("solve_slab: certificate violated on samples");
        // analytic tail continuing the last sample at the declared rate
        tail0 = rho.rho.back() / c.B;
    } else {
        const double edge = std::abs(rho.rho.back());
        double peak = 0.0;
        for (double v : rho.rho) peak = std::max(peak, std::abs(v));
        if (edge > 1e-10 * std::max(peak, 1e-300))
            throw std::invalid_argument(
                "solve_slab: profile does not decay and carries no certificate");
    }

    MonotoneCubic rho_i(rho.x3, rho.rho);
    const double total = rho_i.total_integral() + tail0;

    std::vector<double> phi(rho.x3.size()), dphi(rho.x3.size());
    for (size_t i = 0; i < rho.x3.size(); ++i) {
        const double x3 = rho.x3[i];
        const double cum = rho_i.integral(x3);
        const double mom = rho_i.moment_integral(x3);
        const double tail = total - cum;
        phi[i] = mom + x3 * tail;
        dphi[i] = tail;
    }
    SlabSolution out{MonotoneCubic(rho.x3, phi), MonotoneCubic(rho.x3, dphi), 0.0,
                     FieldSnapshot::zero()};
    for (double v : dphi) out.grad_sup = std::max(out.grad_sup, std::abs(v));
    double curv = 0.0;
    for (double v : rho.rho) curv = std::max(curv, std::abs(v));
    out.snapshot = FieldSnapshot::slab(rho.x3, phi, curv);
    return out;
}

HalfspaceResult solve_halfspace(const Sampled3D& rho, const std::vector<Vec3>& queries) {
    const size_t n = rho.nodes.size();
    if (rho.values.size() != n || rho.weights.size() != n)
        throw std::invalid_argument("solve_halfspace: mismatched node arrays");
    for (double wq : rho.weights)
        if (!(wq > 0.0)) throw std::invalid_argument("solve_halfspace: weights must be > 0");

    HalfspaceResult res;
    res.phi.resize(queries.size(), 0.0);
    res.grad.resize(queries.size());
    for (size_t qi = 0; qi < queries.size(); ++qi) {
        const Vec3& x = queries[qi];
        if (x.z < 0.0)
            throw std::invalid_argument("solve_halfspace: query below the wall");
        double phi = 0.0;
        Vec3 grad{};
        if (x.z == 0.0) {
            // wall value vanishes identically; gradient still accumulates
            for (size_t i = 0; i < n; ++i)
                grad += (rho.values[i] * rho.weights[i]) * grad_greens(x, rho.nodes[i]);
            res.phi[qi] = 0.0;
            res.grad[qi] = grad;
            continue;
        }
        for (size_t i = 0; i < n; ++i) {
            const double cell = std::cbrt(rho.weights[i]);
            const double r = norm(x - rho.nodes[i]);
            if (r < 0.75 * cell) {
                // singular cell: equal-volume ball around the query,
                // 1/(4pi) int_ball 1/r dV = a^2/2 with (4/3)pi a^3 = weight
                const double a = std::cbrt(3.0 * rho.weights[i] / (4.0 * M_PI));
                const double rt = norm(mirror(x) - rho.nodes[i]);
                phi += rho.values[i] * (0.5 * a * a - kFourPiInv * rho.weights[i] / rt);
                res.singular_correction_applied = true;
                continue;
            }
            const double g = greens_function(x, rho.nodes[i]);
            phi += rho.values[i] * rho.weights[i] * g;
            grad += (rho.values[i] * rho.weights[i]) * grad_greens(x, rho.nodes[i]);
        }
        res.phi[qi] = phi;
        res.grad[qi] = grad;
    }
    return res;
}

namespace {

struct SampledField final : FieldSnapshot::Impl {
    std::shared_ptr<const Sampled3D> rho;

    FieldMode mode() const override { return FieldMode::Sampled3D; }
    double phi(const Vec3& x) const override {
        if (x.z <= 0.0) return 0.0;
        return solve_halfspace(*rho, {x}).phi[0];
    }
    Vec3 grad_phi(const Vec3& x) const override {
        Vec3 xq = x;
        if (xq.z < 0.0) xq.z = 0.0;
        return solve_halfspace(*rho, {xq}).grad[0];
    }
    double wall_d3phi(double x1, double x2) const override {
        return grad_phi(Vec3{x1, x2, 0.0}).z;
    }
};

} // namespace

FieldSnapshot sampled3d_snapshot(std::shared_ptr<const Sampled3D> rho) {
    auto impl = std::make_shared<SampledField>();
    impl->rho = std::move(rho);
    // measure the gradient bound on a coarse probe grid
    double gb = 0.0;
    for (double r : {0.0, 2.0, 8.0, 32.0})
        for (double z : {0.0, 0.5, 2.0, 8.0}) {
            const Vec3 g = impl->grad_phi(Vec3{r, 0.0, z});
            gb = std::max(gb, norm(g));
        }
    return FieldSnapshot::from_impl(impl, gb);
}

GradientBoundReport gradient_bound_check(const SlabSolution& sol, const DecayCertificate& cert) {
    GradientBoundReport rep;
    rep.measured_sup = sol.grad_sup;
    rep.bound = cert.A / cert.B;
    rep.ok = rep.measured_sup <= rep.bound * (1.0 + 1e-9);
    return rep;
}

GradientBoundReport gradient_bound_check(const Sampled3D& rho,
                                         const std::vector<Vec3>& probe_queries) {
    if (!rho.certificate)
        throw std::invalid_argument("gradient_bound_check: 3D mode needs a decay certificate");
    GradientBoundReport rep;
    const HalfspaceResult r = solve_halfspace(rho, probe_queries);
    for (const Vec3& g : r.grad) rep.measured_sup = std::max(rep.measured_sup, norm(g));
    rep.bound = kGradBoundCalibration * rho.certificate->A * (1.0 + 1.0 / rho.certificate->B);
    rep.ok = rep.measured_sup <= rep.bound * (1.0 + 1e-9);
    return rep;
}

} // namespace rvp
