// Monotone cubic Hermite interpolation (Fritsch-Carlson slope limiting) on a
// nonuniform grid, with analytic derivative and exact piecewise integrals.
// Used for slab potentials and density profiles.
#ifndef RVP_INTERP_HPP
#define RVP_INTERP_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rvp {

class MonotoneCubic {
public:
    MonotoneCubic() = default;

    // xs strictly increasing, ys same size.
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw std::invalid_argument("MonotoneCubic: need >= 2 matching nodes");
        for (size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i + 1] > x_[i]))
                throw std::invalid_argument("MonotoneCubic: grid must be strictly increasing");
        build_slopes();
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }

    // Clamped evaluation: outside the grid, continue with the end slope.
    double operator()(double x) const {
        if (x <= x_.front()) return y_.front() + d_.front() * (x - x_.front());
        if (x >= x_.back()) return y_.back() + d_.back() * (x - x_.back());
        const size_t i = interval(x);
        double t, h;
        local(x, i, t, h);
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
    }

    double derivative(double x) const {
        if (x <= x_.front()) return d_.front();
        if (x >= x_.back()) return d_.back();
        const size_t i = interval(x);
        double t, h;
        local(x, i, t, h);
        const double g00 = 6 * t * t - 6 * t;
        const double g10 = 3 * t * t - 4 * t + 1;
        const double g01 = -g00;
        const double g11 = 3 * t * t - 2 * t;
        return (g00 * y_[i] + g01 * y_[i + 1]) / h + g10 * d_[i] + g11 * d_[i + 1];
    }

    double second_derivative(double x) const {
        if (x <= x_.front() || x >= x_.back()) return 0.0;
        const size_t i = interval(x);
        double t, h;
        local(x, i, t, h);
        const double k00 = 12 * t - 6;
        const double k10 = 6 * t - 4;
        const double k11 = 6 * t - 2;
        return (k00 * (y_[i] - y_[i + 1]) / h + k10 * d_[i] + k11 * d_[i + 1]) / h;
    }

    // Integral of the interpolant over [x_min, x]; exact per Hermite piece.
    double integral(double x) const {
        if (cum_.empty()) build_integrals();
        if (x <= x_.front()) return (x - x_.front()) * y_.front();
        double acc;
        size_t i;
        if (x >= x_.back()) {
            acc = cum_.back();
            return acc + (x - x_.back()) * y_.back();
        }
        i = interval(x);
        acc = cum_[i];
        return acc + piece_integral(i, x);
    }

    double total_integral() const {
        if (cum_.empty()) build_integrals();
        return cum_.back();
    }

    // Integral of s*f(s) over [x_min, x] (first moment), exact per piece.
    double moment_integral(double x) const {
        if (mcum_.empty()) build_integrals();
        if (x <= x_.front()) return 0.0;
        if (x >= x_.back()) return mcum_.back();
        const size_t i = interval(x);
        return mcum_[i] + piece_moment(i, x);
    }

    double max_abs_value() const {
        double m = 0.0;
        for (double v : y_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::vector<double> x_, y_, d_;
    mutable std::vector<double> cum_, mcum_;

    size_t interval(double x) const {
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        size_t i = static_cast<size_t>(it - x_.begin());
        if (i == 0) i = 1;
        if (i >= x_.size()) i = x_.size() - 1;
        return i - 1;
    }

    void local(double x, size_t i, double& t, double& h) const {
        h = x_[i + 1] - x_[i];
        t = (x - x_[i]) / h;
    }

    void build_slopes() {
        const size_t n = x_.size();
        d_.assign(n, 0.0);
        std::vector<double> h(n - 1), delta(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
            return;
        }
        for (size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2 * h[i] + h[i - 1];
                const double w2 = h[i] + 2 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    static double edge_slope(double h0, double h1, double del0, double del1) {
        double d = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0) return 0.0;
        if (del0 * del1 < 0.0 && std::abs(d) > 3 * std::abs(del0)) return 3 * del0;
        return d;
    }

    double piece_integral(size_t i, double x) const {
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
        const double H00 = t - t3 + t4 / 2.0;
        const double H10 = t2 / 2.0 - 2.0 * t3 / 3.0 + t4 / 4.0;
        const double H01 = t3 - t4 / 2.0;
        const double H11 = t4 / 4.0 - t3 / 3.0;
        return h * (H00 * y_[i] + H01 * y_[i + 1]) + h * h * (H10 * d_[i] + H11 * d_[i + 1]);
    }

    // integral of s*f(s) over [x_i, x]; s = x_i + t h.
    double piece_moment(size_t i, double x) const {
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        // int_0^t tau^k basis terms for f and t*f expansions
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        // Hermite basis polynomials integrated against (x_i + h tau):
        // x_i * int basis + h * int tau*basis
        const double H00 = t - t3 + t4 / 2.0;
        const double H10 = t2 / 2.0 - 2.0 * t3 / 3.0 + t4 / 4.0;
        const double H01 = t3 - t4 / 2.0;
        const double H11 = t4 / 4.0 - t3 / 3.0;
        const double T00 = t2 / 2.0 - 3.0 * t4 / 4.0 + 2.0 * t5 / 5.0;
        const double T10 = t3 / 3.0 - t4 / 2.0 + t5 / 5.0;
        const double T01 = 3.0 * t4 / 4.0 - 2.0 * t5 / 5.0;
        const double T11 = t5 / 5.0 - t4 / 4.0;
        const double base = h * (H00 * y_[i] + H01 * y_[i + 1]) +
                            h * h * (H10 * d_[i] + H11 * d_[i + 1]);
        const double mom = h * h * (T00 * y_[i] + T01 * y_[i + 1]) +
                           h * h * h * (T10 * d_[i] + T11 * d_[i + 1]);
        return x_[i] * base + mom;
    }

    void build_integrals() const {
        const size_t n = x_.size();
        cum_.assign(n, 0.0);
        mcum_.assign(n, 0.0);
        for (size_t i = 0; i + 1 < n; ++i) {
            cum_[i + 1] = cum_[i] + piece_integral(i, x_[i + 1]);
            mcum_[i + 1] = mcum_[i] + piece_moment(i, x_[i + 1]);
        }
    }
};

// Geometrically stretched grid on [0, x_max]: spacing grows by `ratio` per
// step away from the wall, where the profiles vary fastest.
inline std::vector<double> stretched_grid(double x_max, int n, double ratio = 1.02) {
    if (n < 2) throw std::invalid_argument("stretched_grid: need n >= 2");
    std::vector<double> g(static_cast<size_t>(n));
    double w = 1.0, acc = 0.0;
    std::vector<double> raw(static_cast<size_t>(n), 0.0);
    for (int i = 1; i < n; ++i) {
        acc += w;
        raw[static_cast<size_t>(i)] = acc;
        w *= ratio;
    }
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = x_max * raw[static_cast<size_t>(i)] / acc;
    g[0] = 0.0;
    g[static_cast<size_t>(n - 1)] = x_max;
    return g;
}

} // namespace rvp

#endif
