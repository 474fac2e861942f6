#include "rvp/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rvp/integrate.hpp"

namespace rvp {

namespace {

using State6 = StateN<6>;

State6 pack(const Vec3& x, const Vec3& p) {
    return {x.x, x.y, x.z, p.x, p.y, p.z};
}
Vec3 pos(const State6& y) { return {y[0], y[1], y[2]}; }
Vec3 mom(const State6& y) { return {y[3], y[4], y[5]}; }

struct Rhs {
    const FieldSnapshot* field;
    const SpeciesParams* sp;
    const WorldParams* w;

    void operator()(double, const State6& y, State6& dy) const {
        const Vec3 x = pos(y), p = mom(y);
        const double p0 = total_energy(*sp, *w, p);
        const Vec3 v = (w->c / p0) * p;
        const Vec3 b{0.0, 0.0, w->B3};
        const Vec3 force = sp->charge * ((1.0 / w->c) * cross(v, b) - field->grad_phi(x)) -
                           Vec3{0.0, 0.0, sp->mass * w->g};
        dy = {v.x, v.y, v.z, force.x, force.y, force.z};
    }
};

double wall_scale(const Vec3& x) { return std::max(1.0, std::abs(x.z)); }

// Integrate from (s0,y0) to s_target with a fresh controlled run (no events).
State6 reintegrate(const Rhs& rhs, double tol, double s0, const State6& y0, double s_target) {
    if (s_target == s0) return y0;
    Dopri5<6, Rhs> solver(rhs, tol, tol * 1e-2);
    State6 out = y0;
    solver.run(s0, y0, s_target,
               [&](double, const State6&, double, const State6& y_new, const Dopri5<6, Rhs>&) {
                   out = y_new;
                   return true;
               });
    return out;
}

struct CrossingResult {
    double s;
    State6 y;
};

// Locates the first s in [s_prev, s_new] with X3 = 0, assuming X3(s_prev) > 0
// and a dip or crossing inside the step. Bisection on the dense interpolant
// brackets the root; Newton with re-integration polishes it.
template <class Solver>
CrossingResult locate_crossing(const Rhs& rhs, const Solver& solver, double tol,
                               double s_prev, const State6& y_prev, double s_new,
                               const State6& y_new, double refine_tol) {
    const double h = s_new - s_prev;
    double ta = 0.0, tb = 1.0;
    if (y_new[2] > 0.0) {
        // dip inside the step: scan for the first non-positive dense sample
        bool found = false;
        for (int k = 1; k <= 32; ++k) {
            const double t = k / 32.0;
            if (solver.dense(t, y_prev, h)[2] <= 0.0) {
                tb = t;
                ta = (k - 1) / 32.0;
                found = true;
                break;
            }
        }
        if (!found) return {s_new, y_new}; // spurious trigger; caller re-checks
    }
    for (int it = 0; it < 60 && (tb - ta) > 1e-15; ++it) {
        const double tm = 0.5 * (ta + tb);
        if (solver.dense(tm, y_prev, h)[2] > 0.0) ta = tm; else tb = tm;
    }
    double s_star = s_prev + tb * h;

    State6 y_star = reintegrate(rhs, tol, s_prev, y_prev, s_star);
    const double scale = wall_scale(pos(y_prev));
    for (int it = 0; it < 8; ++it) {
        if (std::abs(y_star[2]) <= refine_tol * scale) break;
        State6 dy;
        rhs(s_star, y_star, dy);
        const double v3 = dy[2];
        if (v3 == 0.0) break;
        double s_next = s_star - y_star[2] / v3;
        const double lo = std::min(s_prev, s_new), hi = std::max(s_prev, s_new);
        s_next = std::min(hi, std::max(lo, s_next));
        y_star = reintegrate(rhs, tol, s_star, y_star, s_next);
        s_star = s_next;
    }
    y_star[2] = 0.0;
    return {s_star, y_star};
}

struct LegResult {
    bool hit = false;
    double s_hit = 0.0; // signed ODE time of the hit
    State6 y_hit{};
    StepStats stats;
};

// Trace one leg from (0, y0) toward s_end (signed); stop at the first wall
// crossing after the trajectory has left the wall (arming threshold avoids
// retriggering on a wall start).
LegResult trace_leg(const Rhs& rhs, const State6& y0, double s_end, double tol,
                    double refine_tol, Trajectory* record) {
    LegResult leg;
    Dopri5<6, Rhs> solver(rhs, tol, tol * 1e-2);
    solver.run(0.0, y0, s_end,
               [&](double s_prev, const State6& y_prev, double s_new, const State6& y_new,
                   const Dopri5<6, Rhs>& sv) {
                   bool crossed = false;
                   if (y_prev[2] > 0.0) {
                       if (y_new[2] <= 0.0) {
                           crossed = true;
                       } else {
                           const double h = s_new - s_prev;
                           for (int k = 1; k < 8 && !crossed; ++k)
                               crossed = sv.dense(k / 8.0, y_prev, h)[2] <= 0.0;
                       }
                   }
                   if (crossed) {
                       auto c = locate_crossing(rhs, sv, tol, s_prev, y_prev, s_new, y_new,
                                                refine_tol);
                       if (c.y[2] <= 0.0 || c.s != s_new) {
                           leg.hit = true;
                           leg.s_hit = c.s;
                           leg.y_hit = c.y;
                           return false;
                       }
                   }
                   if (record) {
                       record->s.push_back(s_new);
                       record->states.push_back({pos(y_new), mom(y_new)});
                   }
                   return true;
               });
    leg.stats = solver.stats();
    if (!leg.hit) leg.y_hit = solver.state();
    return leg;
}

ExitRecord trace_exit(const FieldSnapshot& field, const SpeciesParams& sp,
                      const WorldParams& w, const Vec3& x, const Vec3& p,
                      ExitDirection dir, const TraceOptions& opt, bool wall_start_ok) {
    if (x.z < 0.0) throw std::invalid_argument("trace_exit: start below the wall");
    ExitRecord rec;
    rec.direction = dir;
    if (!wall_start_ok && x.z <= 0.0) {
        rec.t_exit = 0.0;
        rec.x_exit = x;
        rec.p_exit = p;
        rec.terminated_by = ExitTermination::boundary;
        return rec;
    }
    const double bound = exit_time_bound(sp, w, x, p);
    const double horizon = opt.horizon ? *opt.horizon : opt.horizon_factor * bound;
    const Rhs rhs{&field, &sp, &w};
    const double s_end = (dir == ExitDirection::backward) ? -horizon : horizon;
    const LegResult leg = trace_leg(rhs, pack(x, p), s_end, opt.tol, opt.wall_refine, nullptr);
    if (!leg.hit)
        throw std::runtime_error("exit bound violated: no wall crossing within horizon "
                                 "(inadmissible field or integrator fault)");
    rec.t_exit = std::abs(leg.s_hit);
    rec.x_exit = pos(leg.y_hit);
    rec.p_exit = mom(leg.y_hit);
    rec.terminated_by = ExitTermination::boundary;
    return rec;
}

} // namespace

double Trajectory::energy_drift() const {
    if (energy.size() < 2) return 0.0;
    const double e0 = energy.front();
    double m = 0.0;
    for (double e : energy) m = std::max(m, std::abs(e - e0));
    return m / std::max(1e-300, std::abs(e0));
}

double Trajectory::par_momentum_drift() const {
    if (states.size() < 2) return 0.0;
    const double r0 = norm_par(states.front().p);
    double m = 0.0;
    for (const auto& st : states) m = std::max(m, std::abs(norm_par(st.p) - r0));
    return m / std::max(1.0, r0);
}

double exit_time_bound(const SpeciesParams& sp, const WorldParams& w, const Vec3& x,
                       const Vec3& p) {
    const double p0 = total_energy(sp, w, p);
    return 4.0 / (sp.mass * w.g) * (p0 + 1.5 * sp.mass * w.g * x.z / w.c);
}

Trajectory integrate(const FieldSnapshot& field, const SpeciesParams& sp,
                     const WorldParams& w, const PhaseState& start, double span,
                     double tol) {
    if (start.x.z < 0.0) throw std::invalid_argument("integrate: start below the wall");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
    Trajectory tr;
    tr.s.push_back(0.0);
    tr.states.push_back(start);
    const Rhs rhs{&field, &sp, &w};
    LegResult leg = trace_leg(rhs, pack(start.x, start.p), span, tol, 1e-12, &tr);
    if (leg.hit) {
        tr.s.push_back(leg.s_hit);
        tr.states.push_back({pos(leg.y_hit), mom(leg.y_hit)});
        tr.hit_boundary = true;
    }
    tr.stats = leg.stats;
    tr.energy.reserve(tr.states.size());
    for (const auto& st : tr.states)
        tr.energy.push_back(conserved_energy(sp, w, field.phi(st.x), st.x, st.p));
    return tr;
}

ExitRecord backward_exit(const FieldSnapshot& field, const SpeciesParams& sp,
                         const WorldParams& w, const Vec3& x, const Vec3& p,
                         const TraceOptions& opt) {
    return trace_exit(field, sp, w, x, p, ExitDirection::backward, opt, false);
}

ExitRecord forward_exit(const FieldSnapshot& field, const SpeciesParams& sp,
                        const WorldParams& w, const Vec3& x, const Vec3& p,
                        const TraceOptions& opt) {
    return trace_exit(field, sp, w, x, p, ExitDirection::forward, opt, false);
}

ExitRecord specular_backward_chain(const FieldSnapshot& field, const SpeciesParams& sp,
                                   const WorldParams& w, const Vec3& x, const Vec3& p,
                                   double epsilon, const TraceOptions& opt,
                                   int max_bounces, double chain_cutoff) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("specular_backward_chain: epsilon must be in [0,1)");
    if (max_bounces < 1)
        throw std::invalid_argument("specular_backward_chain: max_bounces must be >= 1");

    ExitRecord rec;
    rec.direction = ExitDirection::backward;
    rec.terminated_by = ExitTermination::boundary;

    Vec3 xc = x, pc = p;
    double t_acc = 0.0;
    double weight = 1.0;
    const Rhs rhs{&field, &sp, &w};
    for (int k = 0; k < max_bounces; ++k) {
        ExitRecord leg;
        if (xc.z <= 0.0 && k > 0) {
            // post-reflection leg: wall start moving backward into the domain
            const double horizon =
                (opt.horizon ? *opt.horizon : opt.horizon_factor * exit_time_bound(sp, w, xc, pc));
            const LegResult lr =
                trace_leg(rhs, pack(xc, pc), -horizon, opt.tol, opt.wall_refine, nullptr);
            if (!lr.hit)
                throw std::runtime_error("exit bound violated in specular chain leg");
            leg.t_exit = std::abs(lr.s_hit);
            leg.x_exit = pos(lr.y_hit);
            leg.p_exit = mom(lr.y_hit);
        } else {
            leg = trace_exit(field, sp, w, xc, pc, ExitDirection::backward, opt, false);
        }
        t_acc += leg.t_exit;
        const Vec3 p_pre = leg.p_exit;
        const Vec3 p_post{p_pre.x, p_pre.y, -p_pre.z};
        rec.bounce_chain.push_back({t_acc, leg.x_exit, p_pre, p_post});
        weight *= epsilon;
        if (weight < chain_cutoff) {
            rec.t_exit = t_acc;
            rec.x_exit = leg.x_exit;
            rec.p_exit = p_pre;
            return rec;
        }
        xc = leg.x_exit;
        pc = p_post;
    }
    if (epsilon > 0.0)
        throw std::runtime_error(
            "specular_backward_chain: max_bounces exceeded before weight cutoff");
    rec.t_exit = t_acc;
    rec.x_exit = rec.bounce_chain.back().x;
    rec.p_exit = rec.bounce_chain.back().p_pre;
    return rec;
}

namespace {

// Peak height over the two-sided trajectory. The vertical momentum is
// strictly decreasing along an admissible trajectory, so the peak is the
// unique point with P3 = 0; a parabola through the three samples bracketing
// the sampled argmax refines the grid maximum.
double peak_height(const FieldSnapshot& field, const SpeciesParams& sp, const WorldParams& w,
                   const Vec3& x, const Vec3& p, double t_b, double t_f, double tol) {
    auto samples_max = [&](double span) {
        Trajectory tr = integrate(field, sp, w, {x, p}, span, tol);
        double best = 0.0;
        size_t arg = 0;
        for (size_t i = 0; i < tr.states.size(); ++i) {
            if (tr.states[i].x.z > best) {
                best = tr.states[i].x.z;
                arg = i;
            }
        }
        if (arg > 0 && arg + 1 < tr.states.size()) {
            const double s0 = tr.s[arg - 1], s1 = tr.s[arg], s2 = tr.s[arg + 1];
            const double f0 = tr.states[arg - 1].x.z, f1 = tr.states[arg].x.z,
                         f2 = tr.states[arg + 1].x.z;
            const double d01 = (f1 - f0) / (s1 - s0);
            const double d12 = (f2 - f1) / (s2 - s1);
            const double a = (d12 - d01) / (s2 - s0); // half the curvature
            if (a < 0.0) {
                const double sv = 0.5 * (s0 + s1) - d01 / (2.0 * a);
                if (sv > std::min(s0, s2) && sv < std::max(s0, s2)) {
                    const double fv = f0 + d01 * (sv - s0) + a * (sv - s0) * (sv - s1);
                    best = std::max(best, fv);
                }
            }
        }
        return best;
    };
    const double back = t_b > 0.0 ? samples_max(-t_b) : x.z;
    const double fwd = t_f > 0.0 ? samples_max(t_f) : x.z;
    return std::max({x.z, back, fwd});
}

} // namespace

ExitBoundReport exit_bound_report(const FieldSnapshot& field, const SpeciesParams& sp,
                                  const WorldParams& w,
                                  const std::vector<PhaseState>& samples,
                                  const ExitBoundOptions& opt) {
    ExitBoundReport rep;
    rep.samples_checked = samples.size();
    const double m = sp.mass, g = w.g, c = w.c;
    const double mc = m * c;
    const double sl = 1.0 + opt.slack;

    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& z = samples[i];
        ExitRecord b, f;
        try {
            b = backward_exit(field, sp, w, z.x, z.p, opt.trace);
            f = forward_exit(field, sp, w, z.x, z.p, opt.trace);
        } catch (const std::exception&) {
            rep.violations.push_back({i, "horizon", 0.0, 0.0});
            continue;
        }
        const double p0 = total_energy(sp, w, z.p);
        const double pb0 = total_energy(sp, w, b.p_exit);
        const double pb_norm = norm(b.p_exit);
        const double pb3 = std::abs(b.p_exit.z);

        const double bound1 = 4.0 / (m * g) * (p0 + 1.5 * m * g * z.x.z / c);
        if (b.t_exit > bound1 * sl)
            rep.violations.push_back({i, "exit-time-energy-bound", b.t_exit, bound1});

        const double bound2 = 4.0 / (m * g) * pb_norm;
        if (b.t_exit > bound2 * sl)
            rep.violations.push_back({i, "exit-time-exit-momentum-bound", b.t_exit, bound2});

        const double bound3 =
            (2.0 / (m * g) + std::sqrt(8.0) * std::pow(pb0, 0.25) / std::sqrt(c * m * m * m * g * g)) *
            pb3;
        if (b.t_exit > bound3 * sl)
            rep.violations.push_back({i, "exit-time-vertical-momentum-bound", b.t_exit, bound3});

        if (z.x.z > 1e-12 && pb0 - mc > 1e-10 * mc) {
            const double x3max = peak_height(field, sp, w, z.x, z.p, b.t_exit, f.t_exit,
                                             opt.trace.tol);
            const double denom = c * (pb0 - mc);
            const double lo = (2.0 / (3.0 * m * g)) * denom;
            const double hi = (2.0 / (m * g)) * denom;
            if (x3max < lo / sl)
                rep.violations.push_back({i, "peak-height-lower", x3max, lo});
            if (x3max > hi * sl)
                rep.violations.push_back({i, "peak-height-upper", x3max, hi});
        }

        if (opt.dynamic_bounds && opt.psi_small) {
            const double bound4 = 8.0 / (m * g) * pb0;
            if (b.t_exit > bound4 * sl)
                rep.violations.push_back({i, "dynamic-exit-time-bound", b.t_exit, bound4});
            const double lhs = p0 + 0.5 * m * g * z.x.z / c;
            const double rhs = 7.0 / 6.0 * pb0;
            if (lhs > rhs * sl)
                rep.violations.push_back({i, "dynamic-energy-height-bound", lhs, rhs});
        }
    }
    return rep;
}

namespace {

// 6+36 dimensional augmented state: trajectory plus the Jacobian of the flow
// with respect to the initial phase point, column-major in the initial
// coordinate index.
using State42 = StateN<42>;

struct VarRhs {
    const FieldSnapshot* field;
    const SpeciesParams* sp;
    const WorldParams* w;

    void operator()(double, const State42& y, State42& dy) const {
        const Vec3 x{y[0], y[1], y[2]};
        const Vec3 p{y[3], y[4], y[5]};
        const double p0 = total_energy(*sp, *w, p);
        const Vec3 v = (w->c / p0) * p;
        const Vec3 b{0.0, 0.0, w->B3};
        const Vec3 force = sp->charge * ((1.0 / w->c) * cross(v, b) - field->grad_phi(x)) -
                           Vec3{0.0, 0.0, sp->mass * w->g};
        dy[0] = v.x; dy[1] = v.y; dy[2] = v.z;
        dy[3] = force.x; dy[4] = force.y; dy[5] = force.z;

        // dV_j/dP_k = (c/p0)(delta_jk - v_j v_k / c^2)
        double dVdP[3][3];
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                dVdP[j][k] = (w->c / p0) * ((j == k ? 1.0 : 0.0) - v[j] * v[k] / (w->c * w->c));
        const auto hess = field->hessian(x);

        for (int col = 0; col < 6; ++col) {
            const double* J = &y[6 + 6 * static_cast<size_t>(col)];
            double* dJ = &dy[6 + 6 * static_cast<size_t>(col)];
            // dX' = dV/dP * dP
            for (int j = 0; j < 3; ++j)
                dJ[j] = dVdP[j][0] * J[3] + dVdP[j][1] * J[4] + dVdP[j][2] * J[5];
            // dP' = (q/c) (dV/dP dP) x B - q Hess(Phi) dX
            const Vec3 dv{dJ[0], dJ[1], dJ[2]};
            const Vec3 mag = (sp->charge / w->c) * cross(dv, b);
            for (int j = 0; j < 3; ++j) {
                const Vec3 hrow = hess[static_cast<size_t>(j)];
                dJ[3 + j] = mag[j] - sp->charge * (hrow.x * J[0] + hrow.y * J[1] + hrow.z * J[2]);
            }
        }
    }
};

} // namespace

SensitivityReport trajectory_sensitivity_check(const FieldSnapshot& field,
                                               const SpeciesParams& sp,
                                               const WorldParams& w, const Vec3& x,
                                               const Vec3& p, double h_fd,
                                               const TraceOptions& opt) {
    SensitivityReport rep;
    const ExitRecord base = backward_exit(field, sp, w, x, p, opt);
    rep.t_b = base.t_exit;
    const Vec3 v_b = velocity(sp, w, base.p_exit);
    if (std::abs(v_b.z) < 1e-3 * w.c) {
        rep.grazing_rejected = true;
        return rep;
    }

    // Variational run to the fixed end time -t_b.
    State42 y0{};
    y0[0] = x.x; y0[1] = x.y; y0[2] = x.z;
    y0[3] = p.x; y0[4] = p.y; y0[5] = p.z;
    for (int i = 0; i < 6; ++i) y0[6 + 7 * static_cast<size_t>(i)] = 1.0;
    const VarRhs vrhs{&field, &sp, &w};
    Dopri5<42, VarRhs> solver(vrhs, opt.tol, opt.tol * 1e-2);
    State42 yend = y0;
    solver.run(0.0, y0, -base.t_exit,
               [&](double, const State42&, double, const State42& y_new,
                   const Dopri5<42, VarRhs>&) {
                   yend = y_new;
                   return true;
               });

    auto J = [&](int row, int col) { return yend[6 + 6 * static_cast<size_t>(col) + static_cast<size_t>(row)]; };

    // Identities evaluated from the Jacobian of the flow at s = -t_b.
    double id_t[6], id_x[6][3], id_p[6][3];
    const Vec3 bvec{0.0, 0.0, w.B3};
    const Vec3 force_b = sp.charge * ((1.0 / w.c) * cross(v_b, bvec) -
                                      field.grad_phi(base.x_exit)) -
                         Vec3{0.0, 0.0, sp.mass * w.g};
    for (int col = 0; col < 6; ++col) {
        const double dX3 = J(2, col);
        id_t[col] = dX3 / v_b.z;
        for (int j = 0; j < 3; ++j) {
            id_x[col][j] = -dX3 / v_b.z * v_b[j] + J(j, col);
            id_p[col][j] = -dX3 / v_b.z * force_b[j] + J(3 + j, col);
        }
    }

    // Finite-difference oracle.
    double fd_t[6], fd_x[6][3], fd_p[6][3];
    for (int col = 0; col < 6; ++col) {
        Vec3 xp = x, xm = x, pp = p, pm = p;
        if (col < 3) {
            xp[col] += h_fd;
            xm[col] -= h_fd;
        } else {
            pp[col - 3] += h_fd;
            pm[col - 3] -= h_fd;
        }
        const ExitRecord rp = backward_exit(field, sp, w, xp, pp, opt);
        const ExitRecord rm = backward_exit(field, sp, w, xm, pm, opt);
        const double den = 2.0 * h_fd;
        fd_t[col] = (rp.t_exit - rm.t_exit) / den;
        for (int j = 0; j < 3; ++j) {
            fd_x[col][j] = (rp.x_exit[j] - rm.x_exit[j]) / den;
            fd_p[col][j] = (rp.p_exit[j] - rm.p_exit[j]) / den;
        }
    }

    auto block_residual = [](const double* fd, const double* id, int n) {
        double scale = 1.0;
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(id[i]));
        double r = 0.0;
        for (int i = 0; i < n; ++i) r = std::max(r, std::abs(fd[i] - id[i]) / scale);
        return r;
    };
    rep.residual_t = block_residual(fd_t, id_t, 6);
    rep.residual_x = block_residual(&fd_x[0][0], &id_x[0][0], 18);
    rep.residual_p = block_residual(&fd_p[0][0], &id_p[0][0], 18);
    rep.max_rel_residual = std::max({rep.residual_t, rep.residual_x, rep.residual_p});
    return rep;
}

double alpha_envelope_rate(const FieldSnapshot& field, const WorldParams& w) {
    return 4.0 * w.g + field.curvature_bound() + field.wall_mixed_bound();
}

} // namespace rvp
