#ifndef PARC_MODELS_HPP
#define PARC_MODELS_HPP

#include <vector>

#include "parc/pwa.hpp"
#include "parc/trajectory.hpp"

namespace parc {

/// Dubins car: planning state (p_x, p_y, theta), parameters (v_des, w_des),
/// dynamics (v cos theta, v sin theta, w). ETI in the workspace.
PlanningModel dubins_model();

/// 3-D single integrator: p' = k with k the commanded velocity. Exactly
/// affine, so one region per timestep suffices.
PlanningModel single_integrator_3d();

struct PolynomialParams {
    double t_pk = 1.0;
    double t_f = 3.0;
};

/// Single-axis time-switched polynomial velocity planner with parameters
/// (k_v, k_a, k_pk): a cubic-velocity spline up to the peak time, then a
/// stabilizing branch that brings the velocity to zero at t_f. Time-variant
/// affine in the augmented state; the discrete map integrates the velocity
/// in closed form rather than with a generic Euler step.
PlanningModel polynomial_model(const PolynomialParams& params);

/// Per-timestep least-squares coefficients of a structured time-variant
/// affine model: each planning coordinate's increment is regressed on
/// [k; 1].
struct AffineFit {
    StateLayout layout;
    double dt = 0.0;
    double tf = 0.0;
    std::vector<Mat> coef;           // per timestep, n_p x (n_k + 1)
    std::vector<double> residual;    // per-timestep residual norms
};

struct RankDeficiencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fit the structured affine model to plan trajectories sampled on the dt
/// grid, then assemble the matching single-region PWASystem (identity blocks
/// on the state and parameter diagonals, fitted coupling on the parameter
/// columns). Throws RankDeficiencyError naming the timestep if the normal
/// equations are singular.
std::pair<AffineFit, PWASystem> fit_affine_model(const std::vector<TrajectoryPair>& trajectories,
                                                 const StateLayout& layout, double dt, double tf,
                                                 const HPolytope& domain);

/// Rebuild the PWASystem from stored coefficients.
PWASystem fitted_system(const AffineFit& fit, const HPolytope& domain);

struct TrackerGains {
    double k_v = 4.0;       // speed loop
    double k_heading = 4.0; // heading loop
    double k_along = 1.0;   // along-track position correction
    double k_cross = 2.0;   // cross-track heading correction
};

/// Toy 4-D unicycle tracker (state p_x, p_y, theta, v) following a plan's
/// workspace trace under proportional speed/heading feedback, integrated
/// with RK4 at sim_dt. Exists to exercise the tracking-error pipeline;
/// it is not a high-fidelity controller. z0 = (p_x, p_y, theta, v).
TrajectoryPair toy_unicycle_tracker(const RolloutResult& plan, const StateLayout& layout,
                                    const TrackerGains& gains, const Vec& z0, double sim_dt);

}  // namespace parc

#endif
