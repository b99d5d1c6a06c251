#ifndef PARC_CORE_HPP
#define PARC_CORE_HPP

#include <optional>
#include <vector>

#include "parc/pwa.hpp"
#include "parc/trajectory.hpp"

namespace parc {

/// Reach-avoid problem instance. The goal covers the workspace by default and
/// may extend over a leading prefix of the remaining planning states
/// (goal_dims counts covered planning dimensions, n_w <= goal_dims <= n_p).
/// Obstacles live in the workspace. start is the planning state expert
/// rollouts begin from.
struct Scenario {
    StateLayout layout;
    HPolytope goal;
    int goal_dims;
    std::vector<HPolytope> obstacles;
    HPolytope K;
    HPolytope P_other;
    HPolytope W;
    double tf = 0.0;
    Vec start;

    void validate() const;
    /// Augmented-state domain W x K x P_other.
    HPolytope domain() const;
    HPolytope domain_other() const;
};

/// Sampled tracking-error envelopes: per-axis maximum final error, per
/// interval maxima, and the hyperrectangle of augmented states the samples
/// cover.
struct ErrorProfile {
    Vec e_tf;
    std::vector<Vec> e_int;
    HPolytope valid_region;
    int n_pairs = 0;
    int n_samples = 0;  // caveat: envelopes are maxima over these samples only

    ErrorProfile() : valid_region(0) {}
};

struct AvoidSetEntry {
    int obstacle = 0;
    int t_index = 0;
    HPolytope poly;
};

struct BrasResult {
    ModeSequence seq;
    HPolytope reach;                          // Omega_0 (head of the chain)
    std::vector<HPolytope> chain;             // Omega_t for t = 0..T (chain[T] is the shrunk goal)
    std::vector<AvoidSetEntry> avoid;         // nonempty Lambda_{i,t,0}, ordered by (obstacle, t)
    std::vector<std::vector<bool>> filter_hit;  // [obstacle][t] outcome of the segment-hull filter
    HPolytope sampling_reach;                 // reach intersected with the mode-coherence preimages
    bool reach_empty = false;
    bool skip_filter = false;
    bool with_error = false;

    BrasResult() : reach(0), sampling_reach(0) {}

    /// Guaranteed-membership test: inside sampling_reach and in no avoid set.
    bool bras_contains(const Vec& x, double tol = default_tol().membership) const;
};

/// Lift the goal and obstacles to the augmented state: obstacles become
/// O x K x P_other; the goal keeps its own rows on any covered planning
/// dimensions and takes domain rows for the rest.
std::pair<HPolytope, std::vector<HPolytope>> augment(const Scenario& scenario);

/// Backward reach chain for a fixed mode sequence: chain[T] = goal and
/// chain[t] the affine preimage of chain[t+1] under the mode map. Exact for
/// the time-variant affine dynamics of the sequence.
std::vector<HPolytope> reach_set(const PWASystem& system, const ModeSequence& seq,
                                 const HPolytope& goal);

/// Reach chain with the goal eroded by the final error set; the head of the
/// chain is additionally intersected with the valid region.
std::vector<HPolytope> reach_set_with_error(const PWASystem& system, const ModeSequence& seq,
                                            const HPolytope& goal, const HPolytope& e_tf,
                                            const HPolytope& valid_region,
                                            const Tolerances& tol = default_tol());

/// True iff the obstacle meets conv(omega_t, omega_next), decided by one
/// feasibility LP on the lifted convex-combination system. False certifies
/// that no interpolated segment between the two sets can touch the obstacle.
bool collision_filter(const HPolytope& omega_t, const HPolytope& omega_next,
                      const HPolytope& obstacle, const Tolerances& tol = default_tol());

/// Intermediate avoid set at time t: the convex hull of the obstacle with the
/// translation-invariant preimage slice, intersected with omega_t. States of
/// omega_t outside the result map to segments disjoint from the obstacle.
/// Throws EtiError if the mode's map violates the invariance identities.
HPolytope intermediate_avoid(const PWASystem& system, const ModeSequence& seq, int t_index,
                             const HPolytope& omega_t, const HPolytope& obstacle, int n_eti,
                             const HPolytope& domain_other, const Tolerances& tol = default_tol());

/// Pull an intermediate avoid set back to time zero through the sequence maps.
HPolytope avoid_chain(const PWASystem& system, const ModeSequence& seq, const HPolytope& lambda_itt,
                      int t_index);

/// Per-axis error envelopes from sampled pairs. Every pair must cover
/// [0, tf] on the dt grid with intra-step samples; maxima are taken over the
/// supplied samples only.
ErrorProfile estimate_error(const std::vector<TrajectoryPair>& pairs, const HPolytope& valid_region,
                            double dt, double tf, int n_w);

/// Error envelopes as H-polytopes over the augmented state: boxes on the
/// workspace, paired zero rows elsewhere.
std::pair<HPolytope, std::vector<HPolytope>> error_sets(const ErrorProfile& profile,
                                                        const StateLayout& layout);

/// Obstacle dilated by an interval error set. A zero error set returns the
/// obstacle unchanged.
HPolytope buffer_obstacle(const HPolytope& obstacle, const HPolytope& ebar,
                          const Tolerances& tol = default_tol());

struct BrasOptions {
    bool skip_filter = false;   // compute every avoid set instead of filtering first
    int threads = 0;            // 0 = library default; 1 = serial reference
    Tolerances tol = default_tol();
};

/// The full pipeline: extract the expert mode sequence, validate the
/// goal-reaching assumption and invariance hypotheses, run the reach chain
/// (with tracking error when a profile is given), then per (obstacle,
/// timestep) filter and build avoid sets. sampling_reach additionally
/// intersects the reach head with the preimages of the sequence's regions so
/// sampled plans provably follow the sequence.
BrasResult compute_bras(const PWASystem& system, const Scenario& scenario, const Vec& expert_x0,
                        const ErrorProfile* profile, const BrasOptions& opts = {});

struct SampleResult {
    std::vector<Vec> samples;
    bool exhausted = false;
    long attempts = 0;
};

/// Hit-and-run over the sampling reach set, rejecting points inside any avoid
/// polytope. Deterministic per seed; gives up after rejection_budget
/// attempts with a partial result.
SampleResult sample_bras(const BrasResult& result, int n, std::uint64_t seed,
                         long rejection_budget = 100000);

struct VerifyReport {
    bool pass = false;
    bool goal_ok = false;
    bool avoid_ok = false;
    bool in_domain = true;
    int violation_step = -1;     // first interval with a collision (or domain exit)
    int violation_obstacle = -1;
    double violation_time = -1.0;
};

/// Independent plan check: roll the PWA dynamics out from x0, require the
/// terminal state inside the (shrunk) goal and every interval segment
/// disjoint from every (buffered) obstacle.
VerifyReport verify_plan(const PWASystem& system, const Scenario& scenario,
                         const ErrorProfile* profile, const Vec& x0, int substeps = 50);

/// Recombine per-axis results computed over disjoint coordinate blocks:
/// reach sets multiply, avoid sets multiply per (obstacle, timestep) tag.
/// Throws if the parts' tag sets disagree.
BrasResult combine_decoupled(const std::vector<BrasResult>& parts);

// ---- avoid-set kernel (parallel with a serial reference) ----

struct AvoidOutcome {
    bool filter_hit = false;
    std::optional<HPolytope> lambda0;
};

/// One (obstacle, timestep) avoid-set task: buffer, filter, intermediate
/// avoid set, chain to time zero.
AvoidOutcome avoid_task(const PWASystem& system, const ModeSequence& seq,
                        const std::vector<HPolytope>& chain, const HPolytope& obstacle_aug,
                        const HPolytope& ebar_aug, int t_index, const HPolytope& domain_other,
                        bool skip_filter, const Tolerances& tol);

/// Serial reference: tasks in (obstacle, timestep) order.
std::vector<AvoidOutcome> avoid_sets_serial(const PWASystem& system, const ModeSequence& seq,
                                            const std::vector<HPolytope>& chain,
                                            const std::vector<HPolytope>& obstacles_aug,
                                            const std::vector<HPolytope>& ebar_aug,
                                            const HPolytope& domain_other, bool skip_filter,
                                            const Tolerances& tol);

/// OpenMP kernel over the same task list; outcome order and content match the
/// serial reference exactly for any thread count.
std::vector<AvoidOutcome> avoid_sets_parallel(const PWASystem& system, const ModeSequence& seq,
                                              const std::vector<HPolytope>& chain,
                                              const std::vector<HPolytope>& obstacles_aug,
                                              const std::vector<HPolytope>& ebar_aug,
                                              const HPolytope& domain_other, bool skip_filter,
                                              const Tolerances& tol, int threads);

}  // namespace parc

#endif
