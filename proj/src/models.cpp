#include "parc/models.hpp"

#include <cmath>
#include <string>

namespace parc {

PlanningModel dubins_model() {
    PlanningModel m;
    m.layout = StateLayout{2, 2, 1, 4};
    m.f_plan = [](double, const Vec& p, const Vec& k) {
        Vec f(3);
        f << k(0) * std::cos(p(2)), k(0) * std::sin(p(2)), k(1);
        return f;
    };
    m.jacobian = [](double, const Vec& p, const Vec& k, Mat& Jp, Mat& Jk) {
        Jp = Mat::Zero(3, 3);
        Jp(0, 2) = -k(0) * std::sin(p(2));
        Jp(1, 2) = k(0) * std::cos(p(2));
        Jk = Mat::Zero(3, 2);
        Jk(0, 0) = std::cos(p(2));
        Jk(1, 0) = std::sin(p(2));
        Jk(2, 1) = 1.0;
    };
    return m;
}

PlanningModel single_integrator_3d() {
    PlanningModel m;
    m.layout = StateLayout{3, 3, 0, 6};
    m.f_plan = [](double, const Vec&, const Vec& k) { return k; };
    m.jacobian = [](double, const Vec&, const Vec&, Mat& Jp, Mat& Jk) {
        Jp = Mat::Zero(3, 3);
        Jk = Mat::Identity(3, 3);
    };
    return m;
}

namespace {

// Velocity of the time-switched polynomial planner for unit-direction k.
double poly_velocity(const PolynomialParams& pp, double t, double kv, double ka, double kpk) {
    if (t < 0.0 || t > pp.t_f + 1e-12) throw OutOfDomainError("polynomial model: time outside [0, t_f]");
    if (t < pp.t_pk) {
        const double c1 = 12.0 / std::pow(pp.t_pk, 3) * kv + 6.0 / std::pow(pp.t_pk, 2) * ka -
                          12.0 / std::pow(pp.t_pk, 3) * kpk;
        const double c2 = -6.0 / std::pow(pp.t_pk, 2) * kv - 4.0 / pp.t_pk * ka +
                          6.0 / std::pow(pp.t_pk, 2) * kpk;
        return c1 / 6.0 * t * t * t + c2 / 2.0 * t * t + ka * t + kv;
    }
    const double s = t - pp.t_pk;
    const double den = pp.t_f - pp.t_pk;
    const double c3 = 12.0 / std::pow(den, 3) * kpk;
    const double c4 = -6.0 / std::pow(den, 2) * kpk;
    return c3 / 6.0 * s * s * s + c4 / 2.0 * s * s + kpk;
}

// Closed-form integral of the velocity over [a, b] within a single phase.
double poly_position_increment_phase(const PolynomialParams& pp, double a, double b, double kv,
                                     double ka, double kpk, bool first_phase) {
    if (first_phase) {
        const double c1 = 12.0 / std::pow(pp.t_pk, 3) * kv + 6.0 / std::pow(pp.t_pk, 2) * ka -
                          12.0 / std::pow(pp.t_pk, 3) * kpk;
        const double c2 = -6.0 / std::pow(pp.t_pk, 2) * kv - 4.0 / pp.t_pk * ka +
                          6.0 / std::pow(pp.t_pk, 2) * kpk;
        const auto F = [&](double t) {
            return c1 / 24.0 * t * t * t * t + c2 / 6.0 * t * t * t + ka / 2.0 * t * t + kv * t;
        };
        return F(b) - F(a);
    }
    const double den = pp.t_f - pp.t_pk;
    const double c3 = 12.0 / std::pow(den, 3) * kpk;
    const double c4 = -6.0 / std::pow(den, 2) * kpk;
    const auto F = [&](double t) {
        const double s = t - pp.t_pk;
        return c3 / 24.0 * s * s * s * s + c4 / 6.0 * s * s * s + kpk * s;
    };
    return F(b) - F(a);
}

double poly_position_increment(const PolynomialParams& pp, double a, double b, double kv, double ka,
                               double kpk) {
    if (b <= pp.t_pk) return poly_position_increment_phase(pp, a, b, kv, ka, kpk, true);
    if (a >= pp.t_pk) return poly_position_increment_phase(pp, a, b, kv, ka, kpk, false);
    return poly_position_increment_phase(pp, a, pp.t_pk, kv, ka, kpk, true) +
           poly_position_increment_phase(pp, pp.t_pk, b, kv, ka, kpk, false);
}

}  // namespace

PlanningModel polynomial_model(const PolynomialParams& params) {
    if (!(params.t_pk > 0.0 && params.t_pk < params.t_f))
        throw DimensionError("polynomial_model: need 0 < t_pk < t_f");
    PlanningModel m;
    m.layout = StateLayout{1, 3, 0, 4};
    m.f_plan = [params](double t, const Vec&, const Vec& k) {
        Vec f(1);
        f << poly_velocity(params, t, k(0), k(1), k(2));
        return f;
    };
    m.jacobian = [params](double t, const Vec&, const Vec&, Mat& Jp, Mat& Jk) {
        Jp = Mat::Zero(1, 1);
        Jk.resize(1, 3);
        Jk(0, 0) = poly_velocity(params, t, 1, 0, 0);
        Jk(0, 1) = poly_velocity(params, t, 0, 1, 0);
        Jk(0, 2) = poly_velocity(params, t, 0, 0, 1);
    };
    // The velocity is linear in k, so the exact one-step map has unit state
    // diagonal and the integrated basis responses on the k columns.
    m.exact_step = [params](int t_index, double dt) {
        const double a = t_index * dt;
        const double b = a + dt;
        if (b > params.t_f + 1e-9) throw OutOfDomainError("polynomial model: step beyond t_f");
        Mat C = Mat::Identity(4, 4);
        C(0, 1) = poly_position_increment(params, a, b, 1, 0, 0);
        C(0, 2) = poly_position_increment(params, a, b, 0, 1, 0);
        C(0, 3) = poly_position_increment(params, a, b, 0, 0, 1);
        return AffineMap(std::move(C), Vec::Zero(4));
    };
    return m;
}

std::pair<AffineFit, PWASystem> fit_affine_model(const std::vector<TrajectoryPair>& trajectories,
                                                 const StateLayout& layout, double dt, double tf,
                                                 const HPolytope& domain) {
    layout.validate();
    const int np = layout.n_p();
    const int nk = layout.n_k;
    const int T = static_cast<int>(std::round(tf / dt));
    const int nd = static_cast<int>(trajectories.size());
    if (nd < nk + 1)
        throw RankDeficiencyError("fit_affine_model: need at least n_k + 1 trajectories");

    // Sample index of each grid time per trajectory.
    std::vector<std::vector<int>> grid_idx(nd);
    for (int j = 0; j < nd; ++j) {
        const auto& tr = trajectories[j];
        if (tr.k.size() != nk) throw DimensionError("fit_affine_model: parameter length mismatch");
        for (int s = 0; s <= T; ++s) {
            const double ts = s * dt;
            int found = -1;
            for (size_t q = 0; q < tr.t.size(); ++q) {
                if (std::abs(tr.t[q] - ts) <= 1e-9) {
                    found = static_cast<int>(q);
                    break;
                }
            }
            if (found < 0)
                throw DimensionError("fit_affine_model: trajectory lacks a sample at the grid time " +
                                     std::to_string(ts));
            if (tr.plan[found].size() != np)
                throw DimensionError("fit_affine_model: planning-state dimension mismatch");
            grid_idx[j].push_back(found);
        }
    }

    Mat X(nd, nk + 1);
    for (int j = 0; j < nd; ++j) {
        X.row(j).head(nk) = trajectories[j].k.transpose();
        X(j, nk) = 1.0;
    }
    Eigen::ColPivHouseholderQR<Mat> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < nk + 1)
        throw RankDeficiencyError("fit_affine_model: rank-deficient regressors at timestep 0");

    AffineFit fit;
    fit.layout = layout;
    fit.dt = dt;
    fit.tf = tf;
    fit.coef.reserve(T);
    fit.residual.reserve(T);
    for (int t = 0; t < T; ++t) {
        Mat targets(nd, np);
        for (int j = 0; j < nd; ++j) {
            const auto& tr = trajectories[j];
            targets.row(j) =
                (tr.plan[grid_idx[j][t + 1]] - tr.plan[grid_idx[j][t]]).transpose();
        }
        const Mat sol = qr.solve(targets);  // (nk+1) x np
        fit.coef.push_back(sol.transpose());
        fit.residual.push_back((X * sol - targets).norm());
    }
    return {fit, fitted_system(fit, domain)};
}

PWASystem fitted_system(const AffineFit& fit, const HPolytope& domain) {
    const auto& L = fit.layout;
    const int n = L.total();
    const int T = static_cast<int>(fit.coef.size());
    std::vector<std::vector<PWARegion>> steps(T);
    for (int t = 0; t < T; ++t) {
        Mat C = Mat::Identity(n, n);
        Vec d = Vec::Zero(n);
        const Mat& coef = fit.coef[t];  // n_p x (n_k+1)
        for (int r = 0; r < L.n_p(); ++r) {
            const int row = r < L.n_w ? r : L.n_k + r;  // augmented index of planning coordinate r
            C.block(row, L.n_w, 1, L.n_k) = coef.row(r).head(L.n_k);
            d(row) = coef(r, L.n_k);
        }
        steps[t].push_back(PWARegion{domain, AffineMap(std::move(C), std::move(d))});
    }
    return PWASystem(L, fit.dt, fit.tf, std::move(steps));
}

namespace {

double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

// Piecewise-linear reference through the plan's interpolated workspace
// samples, with slope-based speed and heading.
struct WorkspaceRef {
    const std::vector<double>& t;
    const std::vector<Vec>& x;
    int n_w;

    void eval(double tau, Vec& w, double& speed, double& heading) const {
        const int m = static_cast<int>(t.size());
        int i = 0;
        while (i + 2 < m && t[i + 1] <= tau) ++i;
        const double span = std::max(t[i + 1] - t[i], 1e-12);
        const double g = std::clamp((tau - t[i]) / span, 0.0, 1.0);
        const Vec w0 = x[i].head(n_w);
        const Vec w1 = x[i + 1].head(n_w);
        w = w0 + g * (w1 - w0);
        const Vec slope = (w1 - w0) / span;
        speed = slope.norm();
        heading = std::atan2(slope(1), slope(0));
    }
};

}  // namespace

TrajectoryPair toy_unicycle_tracker(const RolloutResult& plan, const StateLayout& layout,
                                    const TrackerGains& gains, const Vec& z0, double sim_dt) {
    if (layout.n_w != 2) throw DimensionError("toy_unicycle_tracker: needs a planar workspace");
    if (!(gains.k_v > 0 && gains.k_heading > 0))
        throw DimensionError("toy_unicycle_tracker: gains must be positive");
    if (plan.interp_times.size() < 2) throw DimensionError("toy_unicycle_tracker: trivial plan");
    const double dt_grid = plan.times.size() > 1 ? plan.times[1] - plan.times[0] : 0.0;
    if (sim_dt > dt_grid / 10.0 + 1e-12)
        throw DimensionError("toy_unicycle_tracker: sim_dt must be at most a tenth of the plan step");

    const WorkspaceRef ref{plan.interp_times, plan.interp_states, layout.n_w};

    const auto dynamics = [&](double tau, const Vec& z) {
        Vec wr(2);
        double v_ref, th_ref;
        ref.eval(tau, wr, v_ref, th_ref);
        const Vec e = wr - z.head(2);
        const double c = std::cos(z(2)), s = std::sin(z(2));
        const double along = e(0) * c + e(1) * s;
        const double cross = -e(0) * s + e(1) * c;
        const double v_cmd = v_ref + gains.k_along * along;
        const double th_cmd = th_ref + std::clamp(gains.k_cross * cross, -1.0, 1.0);
        Vec dz(4);
        dz << z(3) * c, z(3) * s, gains.k_heading * wrap_angle(th_cmd - z(2)),
            gains.k_v * (v_cmd - z(3));
        return dz;
    };

    TrajectoryPair pair;
    const int nw = layout.n_w;
    const int np = layout.n_p();
    pair.k = plan.interp_states.front().segment(nw, layout.n_k);
    Vec z = z0;
    for (size_t i = 0; i < plan.interp_times.size(); ++i) {
        const double tau = plan.interp_times[i];
        if (i > 0) {
            const double t0 = plan.interp_times[i - 1];
            const int substeps = std::max(1, static_cast<int>(std::ceil((tau - t0) / sim_dt)));
            const double h = (tau - t0) / substeps;
            for (int s = 0; s < substeps; ++s) {
                const double ts = t0 + s * h;
                const Vec k1 = dynamics(ts, z);
                const Vec k2 = dynamics(ts + h / 2, z + h / 2 * k1);
                const Vec k3 = dynamics(ts + h / 2, z + h / 2 * k2);
                const Vec k4 = dynamics(ts + h, z + h * k3);
                z += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            }
        }
        pair.t.push_back(tau);
        const Vec& xa = plan.interp_states[i];
        Vec p(np);
        p.head(nw) = xa.head(nw);
        p.tail(layout.n_p_other) = xa.tail(layout.n_p_other);
        pair.plan.push_back(std::move(p));
        pair.realized.push_back(z.head(np));
    }
    return pair;
}

}  // namespace parc
