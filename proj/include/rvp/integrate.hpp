// Embedded Dormand-Prince 5(4) adaptive integrator over a fixed-size state.
// Local error per step is controlled against mixed absolute/relative
// tolerance; step direction may be negative. Dense output inside an accepted
// step uses the free 4th-order interpolant of the pair.
#ifndef RVP_INTEGRATE_HPP
#define RVP_INTEGRATE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace rvp {

template <size_t N>
using StateN = std::array<double, N>;

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    long evals = 0;
};

// One adaptive DP54 step attempt from (s, y) with proposed size h (signed).
// On acceptance fills y_new, err_norm and the stage derivatives needed for
// dense output. Deriv: void(double s, const StateN<N>&, StateN<N>&).
template <size_t N, class Deriv>
class Dopri5 {
public:
    Dopri5(Deriv f, double rel_tol, double abs_tol)
        : f_(std::move(f)), rtol_(rel_tol), atol_(abs_tol) {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("Dopri5: tolerances must be > 0");
    }

    // Integrates from (s0,y0) toward s1 (either direction). After each
    // accepted step calls observer(s_prev, y_prev, s_new, y_new, *this);
    // if the observer returns false, integration stops there.
    template <class Observer>
    void run(double s0, const StateN<N>& y0, double s1, Observer&& observer) {
        s_ = s0;
        y_ = y0;
        const double dir = (s1 >= s0) ? 1.0 : -1.0;
        if (s0 == s1) return;
        f_(s_, y_, k1_);
        ++stats_.evals;
        double h = dir * initial_step(s1 - s0);
        while (dir * (s1 - s_) > 0.0) {
            if (std::abs(h) < 1e-14 * (1.0 + std::abs(s_)))
                throw std::runtime_error("Dopri5: step size underflow");
            if (dir * (s_ + h - s1) > 0.0) h = s1 - s_;
            StateN<N> y_new;
            double err = attempt(h, y_new);
            if (err <= 1.0) {
                const double s_prev = s_;
                const StateN<N> y_prev = y_;
                s_ += h;
                y_ = y_new;
                k1_ = k7_; // FSAL
                ++stats_.accepted;
                if (!observer(s_prev, y_prev, s_, y_, *this)) return;
                h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(err + 1e-300, -0.2)));
            } else {
                ++stats_.rejected;
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            }
        }
    }

    // Dense evaluation inside the last accepted step [s_prev, s_prev+h],
    // theta in [0,1]: cubic Hermite on the stored end states and end
    // derivatives. Used only to bracket events; the event locator polishes
    // the root with short re-integrations afterwards.
    StateN<N> dense(double theta, const StateN<N>& y_prev, double h) const {
        StateN<N> out;
        const double t = theta;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        for (size_t i = 0; i < N; ++i)
            out[i] = h00 * y_prev[i] + h10 * h * k_start_[i] + h01 * y_[i] + h11 * h * k7_[i];
        return out;
    }

    const StepStats& stats() const { return stats_; }
    const StateN<N>& state() const { return y_; }
    double time() const { return s_; }

private:
    Deriv f_;
    double rtol_, atol_;
    double s_ = 0.0;
    StateN<N> y_{}, k1_{}, k7_{}, k_start_{};
    StepStats stats_;

    double initial_step(double span) const {
        return std::min(std::abs(span), 1e-2 * (1.0 + std::abs(span)));
    }

    double attempt(double h, StateN<N>& y5) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        StateN<N> k2, k3, k4, k5, k6, yt;
        k_start_ = k1_;
        for (size_t i = 0; i < N; ++i) yt[i] = y_[i] + h * a21 * k1_[i];
        f_(s_ + c2 * h, yt, k2);
        for (size_t i = 0; i < N; ++i) yt[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
        f_(s_ + c3 * h, yt, k3);
        for (size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
        f_(s_ + c4 * h, yt, k4);
        for (size_t i = 0; i < N; ++i)
            yt[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f_(s_ + c5 * h, yt, k5);
        for (size_t i = 0; i < N; ++i)
            yt[i] = y_[i] +
                    h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f_(s_ + h, yt, k6);
        for (size_t i = 0; i < N; ++i)
            y5[i] = y_[i] + h * (b1 * k1_[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f_(s_ + h, y5, k7_);
        stats_.evals += 6;

        double err = 0.0;
        for (size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7_[i]);
            const double sc = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y5[i]));
            err += (ei / sc) * (ei / sc);
        }
        return std::sqrt(err / static_cast<double>(N));
    }
};

} // namespace rvp

#endif
