#ifndef PARC_PWA_HPP
#define PARC_PWA_HPP

#include <functional>
#include <optional>
#include <vector>

#include "parc/polytope.hpp"

namespace parc {

/// Dimension bookkeeping for the augmented state [w; k; p_other]. The first
/// n_eti coordinates form the translation-invariant block; n_eti >= n_w + n_k
/// always holds since trajectory parameters have zero dynamics.
struct StateLayout {
    int n_w = 0;
    int n_k = 0;
    int n_p_other = 0;
    int n_eti = 0;

    int total() const { return n_w + n_k + n_p_other; }
    int n_p() const { return n_w + n_p_other; }
    void validate() const;
};

struct PWARegion {
    HPolytope region;
    AffineMap map;
};

/// Discrete-time, time-variant PWA system over the augmented state. One list
/// of regions per timestep t = 0, dt, ..., tf - dt. Immutable after
/// construction; queries are pure.
class PWASystem {
public:
    PWASystem(StateLayout layout, double dt, double tf, std::vector<std::vector<PWARegion>> steps);

    const StateLayout& layout() const { return layout_; }
    double dt() const { return dt_; }
    double tf() const { return tf_; }
    int num_steps() const { return static_cast<int>(steps_.size()); }
    const std::vector<PWARegion>& regions_at(int t_index) const;
    const PWARegion& region(int t_index, int i) const;

private:
    StateLayout layout_;
    double dt_, tf_;
    std::vector<std::vector<PWARegion>> steps_;
};

struct ModeSequence {
    std::vector<int> modes;  // region index per timestep
};

/// Continuous planning model p' = f_plan(t, p, k) over planning state
/// p = [w; p_other] and trajectory parameter k. The Jacobian evaluator is
/// optional (finite differences are used when absent). Models that are
/// exactly affine in the augmented state may supply their one-step discrete
/// map directly through exact_step.
struct PlanningModel {
    StateLayout layout;
    std::function<Vec(double t, const Vec& p, const Vec& k)> f_plan;
    std::function<void(double t, const Vec& p, const Vec& k, Mat& Jp, Mat& Jk)> jacobian;
    std::function<AffineMap(int t_index, double dt)> exact_step;
};

/// Central finite-difference Jacobians of f_plan at (t, p, k).
void fd_jacobian(const PlanningModel& model, double t, const Vec& p, const Vec& k, Mat& Jp, Mat& Jk,
                 double h = 1e-6);

/// Voronoi cells of the given points clipped to the domain, one H-polytope
/// per point: cell i collects the rows (2x_j - 2x_i)'x <= |x_j|^2 - |x_i|^2
/// for every j, stacked with the domain rows.
std::vector<HPolytope> voronoi_regions(const std::vector<Vec>& points, const HPolytope& domain);

struct AffinizeOptions {
    bool merge_identical = false;   // combine region pairs with equal maps and convex union
    double merge_map_tol = 1e-10;
    int substeps_unused = 0;
};

/// Build the PWA system: per timestep, Voronoi regions of the linearization
/// points and a first-order Taylor map of the Euler step about each point.
/// Models with an exact_step use that map for every region instead.
PWASystem affinize(const PlanningModel& model, const std::vector<std::vector<Vec>>& points_per_step,
                   const HPolytope& domain, double dt, double tf,
                   const AffinizeOptions& opts = {});

/// Minimum region index containing x at the given timestep (boundary ties go
/// to the lower index). Throws OutOfDomainError when x is in no region.
int mode_of(const PWASystem& system, int t_index, const Vec& x,
            double tol = default_tol().membership);

/// Modes visited by the rollout from x0. Throws OutOfDomainError naming the
/// timestep if the rollout leaves the domain.
ModeSequence mode_sequence(const PWASystem& system, const Vec& x0);

struct RolloutResult {
    std::vector<Vec> states;          // discrete states, length num_steps()+1 when complete
    std::vector<double> times;
    std::vector<Vec> interp_states;   // linear interpolation with `substeps` points per interval
    std::vector<double> interp_times;
    std::vector<int> modes;
    bool exited_domain = false;
    int exit_step = -1;
};

/// Roll the PWA dynamics out from x0. Leaving the domain is a warning, not an
/// error: the truncated rollout is returned with the exit step recorded.
RolloutResult rollout(const PWASystem& system, const Vec& x0, int substeps = 0);

/// Rollout under a fixed mode sequence (pure time-variant affine dynamics).
std::vector<Vec> rollout_fixed_sequence(const PWASystem& system, const ModeSequence& seq, const Vec& x0);

struct EtiRegionReport {
    int t_index = 0;
    int region = 0;
    bool pass = false;
    double viol_c1c1 = 0.0;  // Frobenius norms of the offending products
    double viol_c1c2 = 0.0;
    double viol_c1d1 = 0.0;
    std::vector<int> failing_rows;  // block rows with a nonzero product row
};

struct EtiReport {
    bool all_pass = false;
    std::vector<EtiRegionReport> regions;
};

/// Check the translation-invariance identities for the leading n_eti block of
/// every region map: with Chat = C - I split as [C1 C2; C3 C4] and d1 the
/// leading block of d, require C1*C1, C1*C2 and C1*d1 to vanish.
EtiReport check_eti(const PWASystem& system, int n_eti, double tol = 1e-10);

/// Largest prefix length that passes check_eti for every region, at least
/// n_w + n_k.
int max_eti_dims(const PWASystem& system, double tol = 1e-10);

/// Cell-centered uniform grid over a box, counts per dimension.
std::vector<Vec> grid_points(const Vec& lo, const Vec& hi, const std::vector<int>& counts);

/// Uniformly random points over a box; deterministic per seed.
std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, int n, std::uint64_t seed);

}  // namespace parc

#endif
