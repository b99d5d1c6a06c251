#include "parc/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parc/lp.hpp"

namespace parc {

void Scenario::validate() const {
    layout.validate();
    if (goal_dims < layout.n_w || goal_dims > layout.n_p())
        throw DimensionError("Scenario: goal_dims must cover the workspace within the planning state");
    if (goal.dim() != goal_dims) throw DimensionError("Scenario: goal dimension != goal_dims");
    for (const auto& o : obstacles)
        if (o.dim() != layout.n_w) throw DimensionError("Scenario: obstacle must be a workspace set");
    if (K.dim() != layout.n_k) throw DimensionError("Scenario: K dimension mismatch");
    if (P_other.dim() != layout.n_p_other) throw DimensionError("Scenario: P_other dimension mismatch");
    if (W.dim() != layout.n_w) throw DimensionError("Scenario: W dimension mismatch");
    if (tf <= 0.0) throw DimensionError("Scenario: tf must be positive");
    if (start.size() != 0 && start.size() != layout.n_p())
        throw DimensionError("Scenario: start must be a planning state");
}

HPolytope Scenario::domain() const { return cartesian_product(cartesian_product(W, K), P_other); }

HPolytope Scenario::domain_other() const { return P_other; }

bool BrasResult::bras_contains(const Vec& x, double tol) const {
    if (reach_empty || !contains_point(sampling_reach, x, tol)) return false;
    for (const auto& a : avoid)
        if (contains_point(a.poly, x, tol)) return false;
    return true;
}

std::pair<HPolytope, std::vector<HPolytope>> augment(const Scenario& scenario) {
    scenario.validate();
    const auto& L = scenario.layout;
    const int n = L.total();
    const int extra = scenario.goal_dims - L.n_w;  // covered p_other prefix

    // Goal rows embed on [w ; p_other-prefix]; K rows on the parameter block;
    // domain rows on the uncovered p_other remainder.
    const HPolytope other_rest =
        extra == 0 ? scenario.P_other
                   : project(scenario.P_other, extra + 1, std::max(extra + 1, L.n_p_other));
    const int rest_dims = L.n_p_other - extra;
    const int rows =
        scenario.goal.num_constraints() + scenario.K.num_constraints() +
        (rest_dims > 0 ? other_rest.num_constraints() : 0);
    Mat A = Mat::Zero(rows, n);
    Vec b(rows);
    int r = 0;
    for (int i = 0; i < scenario.goal.num_constraints(); ++i, ++r) {
        A.block(r, 0, 1, L.n_w) = scenario.goal.A().row(i).head(L.n_w);
        if (extra > 0)
            A.block(r, L.n_w + L.n_k, 1, extra) = scenario.goal.A().row(i).tail(extra);
        b(r) = scenario.goal.b()(i);
    }
    for (int i = 0; i < scenario.K.num_constraints(); ++i, ++r) {
        A.block(r, L.n_w, 1, L.n_k) = scenario.K.A().row(i);
        b(r) = scenario.K.b()(i);
    }
    if (rest_dims > 0) {
        for (int i = 0; i < other_rest.num_constraints(); ++i, ++r) {
            A.block(r, L.n_w + L.n_k + extra, 1, rest_dims) = other_rest.A().row(i);
            b(r) = other_rest.b()(i);
        }
    }
    HPolytope goal_aug(std::move(A), std::move(b));

    std::vector<HPolytope> obstacles_aug;
    obstacles_aug.reserve(scenario.obstacles.size());
    for (const auto& o : scenario.obstacles)
        obstacles_aug.push_back(
            cartesian_product(cartesian_product(o, scenario.K), scenario.P_other));
    return {std::move(goal_aug), std::move(obstacles_aug)};
}

std::vector<HPolytope> reach_set(const PWASystem& system, const ModeSequence& seq,
                                 const HPolytope& goal) {
    const int T = system.num_steps();
    if (static_cast<int>(seq.modes.size()) != T)
        throw DimensionError("reach_set: sequence length mismatch");
    if (goal.dim() != system.layout().total()) throw DimensionError("reach_set: goal dimension mismatch");
    std::vector<HPolytope> chain(static_cast<size_t>(T) + 1, HPolytope(goal.dim()));
    chain[T] = goal;
    for (int t = T - 1; t >= 0; --t)
        chain[t] = inverse_affine_map(chain[t + 1], system.region(t, seq.modes[t]).map);
    return chain;
}

std::vector<HPolytope> reach_set_with_error(const PWASystem& system, const ModeSequence& seq,
                                            const HPolytope& goal, const HPolytope& e_tf,
                                            const HPolytope& valid_region, const Tolerances& tol) {
    std::vector<HPolytope> chain = reach_set(system, seq, pontryagin_diff(goal, e_tf, tol));
    chain[0] = intersect(chain[0], valid_region);
    return chain;
}

bool collision_filter(const HPolytope& omega_t, const HPolytope& omega_next,
                      const HPolytope& obstacle, const Tolerances& tol) {
    const int n = omega_t.dim();
    if (omega_next.dim() != n || obstacle.dim() != n)
        throw DimensionError("collision_filter: dimension mismatch");
    // Feasibility of x in obstacle, x = y1 + y2, A1 y1 <= l b1,
    // A2 y2 <= (1-l) b2, 0 <= l <= 1 over variables (x, y1, l).
    const int m1 = omega_t.num_constraints(), m2 = omega_next.num_constraints();
    const int mo = obstacle.num_constraints();
    Mat A = Mat::Zero(m1 + m2 + mo + 2, 2 * n + 1);
    Vec b(A.rows());
    A.block(0, n, m1, n) = omega_t.A();
    A.block(0, 2 * n, m1, 1) = -omega_t.b();
    b.head(m1).setZero();
    A.block(m1, 0, m2, n) = omega_next.A();
    A.block(m1, n, m2, n) = -omega_next.A();
    A.block(m1, 2 * n, m2, 1) = omega_next.b();
    b.segment(m1, m2) = omega_next.b();
    A.block(m1 + m2, 0, mo, n) = obstacle.A();
    b.segment(m1 + m2, mo) = obstacle.b();
    A(m1 + m2 + mo, 2 * n) = 1.0;
    b(m1 + m2 + mo) = 1.0;
    A(m1 + m2 + mo + 1, 2 * n) = -1.0;
    b(m1 + m2 + mo + 1) = 0.0;
    return lp_feasible(A, b, tol.lp_feas);
}

namespace {

void check_region_eti_or_throw(const PWASystem& system, int t_index, int region, int n_eti) {
    const int n = system.layout().total();
    const auto& map = system.region(t_index, region).map;
    const Mat chat = map.C - Mat::Identity(n, n);
    const Mat c1 = chat.topLeftCorner(n_eti, n_eti);
    const double v = std::max({(c1 * c1).norm(),
                               n_eti < n ? (c1 * chat.topRightCorner(n_eti, n - n_eti)).norm() : 0.0,
                               (c1 * map.d.head(n_eti)).norm()});
    if (v > 1e-10)
        throw EtiError("translation invariance violated for region " + std::to_string(region) +
                       " at timestep " + std::to_string(t_index) + " (violation " + std::to_string(v) +
                       ")");
}

}  // namespace

HPolytope intermediate_avoid(const PWASystem& system, const ModeSequence& seq, int t_index,
                             const HPolytope& omega_t, const HPolytope& obstacle, int n_eti,
                             const HPolytope& domain_other, const Tolerances& tol) {
    const int n = system.layout().total();
    const int n_other = n - n_eti;
    if (obstacle.dim() != n) throw DimensionError("intermediate_avoid: obstacle dimension mismatch");
    if (domain_other.dim() != n_other)
        throw DimensionError("intermediate_avoid: domain_other dimension mismatch");
    check_region_eti_or_throw(system, t_index, seq.modes[t_index], n_eti);

    const auto& map = system.region(t_index, seq.modes[t_index]).map;
    const HPolytope o_eti = n_other == 0 ? obstacle : project(obstacle, 1, n_eti, tol);
    const Vec w = Vec::Constant(n_other, tol.world_halfwidth);
    const HPolytope lifted = cartesian_product(o_eti, HPolytope::box(-w, w));
    const HPolytope preimage = inverse_affine_map(lifted, map);
    HPolytope slice(0);
    if (is_empty(preimage, tol)) {
        slice = HPolytope::empty_set(n);
    } else {
        const HPolytope pre_eti = n_other == 0 ? preimage : project(preimage, 1, n_eti, tol);
        slice = cartesian_product(pre_eti, domain_other);
    }
    const HPolytope hull = convex_hull_pair(slice, obstacle, tol);
    return remove_redundancy(intersect(hull, omega_t), tol);
}

HPolytope avoid_chain(const PWASystem& system, const ModeSequence& seq, const HPolytope& lambda_itt,
                      int t_index) {
    HPolytope lam = lambda_itt;
    for (int j = t_index - 1; j >= 0; --j)
        lam = inverse_affine_map(lam, system.region(j, seq.modes[j]).map);
    return lam;
}

ErrorProfile estimate_error(const std::vector<TrajectoryPair>& pairs, const HPolytope& valid_region,
                            double dt, double tf, int n_w) {
    if (pairs.empty()) throw DimensionError("estimate_error: no trajectory pairs");
    const int T = static_cast<int>(std::round(tf / dt));
    if (std::abs(T * dt - tf) > 1e-9) throw DimensionError("estimate_error: dt must divide tf");

    ErrorProfile profile;
    profile.valid_region = valid_region;
    profile.e_tf = Vec::Zero(n_w);
    profile.e_int.assign(T, Vec::Zero(n_w));
    profile.n_pairs = static_cast<int>(pairs.size());

    for (const auto& pr : pairs) {
        if (pr.t.size() != pr.plan.size() || pr.t.size() != pr.realized.size() || pr.t.empty())
            throw DimensionError("estimate_error: sample counts differ");
        if (std::abs(pr.t.front()) > 1e-9 || std::abs(pr.t.back() - tf) > 1e-9)
            throw DimensionError("estimate_error: timestamps must cover [0, tf]");
        for (size_t s = 0; s < pr.t.size(); ++s) {
            if (s > 0 && pr.t[s] < pr.t[s - 1] - 1e-12)
                throw DimensionError("estimate_error: timestamps must be nondecreasing");
            if (pr.plan[s].size() < n_w || pr.realized[s].size() < n_w)
                throw DimensionError("estimate_error: sample dimension below the workspace size");
            const Vec err = (pr.plan[s].head(n_w) - pr.realized[s].head(n_w)).cwiseAbs();
            // a boundary sample belongs to both adjacent intervals
            const int lo = std::max(0, static_cast<int>(std::ceil(pr.t[s] / dt - 1e-9)) - 1);
            const int hi = std::min(T - 1, static_cast<int>(std::floor(pr.t[s] / dt + 1e-9)));
            for (int t = lo; t <= hi; ++t) profile.e_int[t] = profile.e_int[t].cwiseMax(err);
            if (std::abs(pr.t[s] - tf) <= 1e-9) profile.e_tf = profile.e_tf.cwiseMax(err);
            ++profile.n_samples;
        }
        // interval coverage: at least one sample inside every interval
        std::vector<bool> covered(T, false);
        for (size_t s = 0; s + 1 < pr.t.size(); ++s) {
            const int idx = static_cast<int>(std::floor(pr.t[s] / dt + 1e-9));
            if (idx >= 0 && idx < T) covered[idx] = true;
        }
        for (int t = 0; t < T; ++t)
            if (!covered[t])
                throw DimensionError("estimate_error: no samples in interval " + std::to_string(t));
    }
    return profile;
}

std::pair<HPolytope, std::vector<HPolytope>> error_sets(const ErrorProfile& profile,
                                                        const StateLayout& layout) {
    if (profile.e_tf.size() != layout.n_w) throw DimensionError("error_sets: e_tf length mismatch");
    const int n = layout.total();
    const auto box_of = [&](const Vec& e) {
        Vec lo = Vec::Zero(n), hi = Vec::Zero(n);
        lo.head(layout.n_w) = -e;
        hi.head(layout.n_w) = e;
        return HPolytope::box(lo, hi);
    };
    std::vector<HPolytope> ebar;
    ebar.reserve(profile.e_int.size());
    for (const auto& e : profile.e_int) {
        if (e.size() != layout.n_w) throw DimensionError("error_sets: e_int length mismatch");
        if ((e.array() < 0).any()) throw DimensionError("error_sets: negative error entry");
        ebar.push_back(box_of(e));
    }
    return {box_of(profile.e_tf), std::move(ebar)};
}

HPolytope buffer_obstacle(const HPolytope& obstacle, const HPolytope& ebar, const Tolerances& tol) {
    if (obstacle.dim() != ebar.dim()) throw DimensionError("buffer_obstacle: dimension mismatch");
    // Zero error sets leave the obstacle exactly as it is.
    bool zero = true;
    for (int i = 0; i < ebar.num_constraints() && zero; ++i)
        if (std::abs(ebar.b()(i)) > 0.0) zero = false;
    if (zero && !is_empty(ebar, tol)) return obstacle;
    return minkowski_sum(obstacle, ebar, tol);
}

namespace {

ErrorProfile zero_profile(const Scenario& scenario, int T) {
    ErrorProfile p;
    p.e_tf = Vec::Zero(scenario.layout.n_w);
    p.e_int.assign(T, Vec::Zero(scenario.layout.n_w));
    p.valid_region = scenario.domain();
    return p;
}

// Preimages of the sequence's regions through the accumulated affine flow:
// any state in the intersection rolls out through exactly these regions.
HPolytope mode_coherence_set(const PWASystem& system, const ModeSequence& seq) {
    const int n = system.layout().total();
    Mat c_acc = Mat::Identity(n, n);
    Vec d_acc = Vec::Zero(n);
    std::vector<Mat> rows;
    std::vector<Vec> offs;
    int total_rows = 0;
    for (int t = 0; t < system.num_steps(); ++t) {
        const auto& reg = system.region(t, seq.modes[t]);
        rows.push_back(reg.region.A() * c_acc);
        offs.push_back(reg.region.b() - reg.region.A() * d_acc);
        total_rows += reg.region.num_constraints();
        c_acc = reg.map.C * c_acc;
        d_acc = reg.map.C * d_acc + reg.map.d;
    }
    Mat A(total_rows, n);
    Vec b(total_rows);
    int r = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        A.middleRows(r, rows[i].rows()) = rows[i];
        b.segment(r, rows[i].rows()) = offs[i];
        r += static_cast<int>(rows[i].rows());
    }
    return HPolytope(std::move(A), std::move(b));
}

}  // namespace

AvoidOutcome avoid_task(const PWASystem& system, const ModeSequence& seq,
                        const std::vector<HPolytope>& chain, const HPolytope& obstacle_aug,
                        const HPolytope& ebar_aug, int t_index, const HPolytope& domain_other,
                        bool skip_filter, const Tolerances& tol) {
    AvoidOutcome out;
    const HPolytope buffered = buffer_obstacle(obstacle_aug, ebar_aug, tol);
    out.filter_hit =
        skip_filter || collision_filter(chain[t_index], chain[t_index + 1], buffered, tol);
    if (!out.filter_hit) return out;
    const HPolytope lambda_tt = intermediate_avoid(system, seq, t_index, chain[t_index], buffered,
                                                   system.layout().n_eti, domain_other, tol);
    if (is_empty(lambda_tt, tol)) return out;
    out.lambda0 = avoid_chain(system, seq, lambda_tt, t_index);
    return out;
}

std::vector<AvoidOutcome> avoid_sets_serial(const PWASystem& system, const ModeSequence& seq,
                                            const std::vector<HPolytope>& chain,
                                            const std::vector<HPolytope>& obstacles_aug,
                                            const std::vector<HPolytope>& ebar_aug,
                                            const HPolytope& domain_other, bool skip_filter,
                                            const Tolerances& tol) {
    const int T = system.num_steps();
    std::vector<AvoidOutcome> out(obstacles_aug.size() * static_cast<size_t>(T));
    for (size_t i = 0; i < obstacles_aug.size(); ++i)
        for (int t = 0; t < T; ++t)
            out[i * T + t] = avoid_task(system, seq, chain, obstacles_aug[i], ebar_aug[t], t,
                                        domain_other, skip_filter, tol);
    return out;
}

BrasResult compute_bras(const PWASystem& system, const Scenario& scenario, const Vec& expert_x0,
                        const ErrorProfile* profile, const BrasOptions& opts) {
    const auto& L = system.layout();
    if (scenario.layout.total() != L.total())
        throw DimensionError("compute_bras: scenario and system layouts differ");
    const int T = system.num_steps();

    auto [goal_aug, obstacles_aug] = augment(scenario);
    const ErrorProfile prof = profile ? *profile : zero_profile(scenario, T);
    if (static_cast<int>(prof.e_int.size()) != T)
        throw DimensionError("compute_bras: error profile interval count mismatch");
    auto [e_tf_set, ebar_sets] = error_sets(prof, L);

    BrasResult result;
    result.with_error = profile != nullptr;
    result.skip_filter = opts.skip_filter;

    // Expert plan: mode sequence exists and the rollout reaches the shrunk goal.
    result.seq = mode_sequence(system, expert_x0);
    const std::vector<Vec> expert_states = rollout_fixed_sequence(system, result.seq, expert_x0);
    const HPolytope goal_target = pontryagin_diff(goal_aug, e_tf_set, opts.tol);
    if (is_empty(goal_target, opts.tol)) {
        result.reach_empty = true;
        result.reach = HPolytope::empty_set(L.total());
        result.sampling_reach = result.reach;
        result.chain.assign(static_cast<size_t>(T) + 1, result.reach);
        result.filter_hit.assign(obstacles_aug.size(), std::vector<bool>(T, false));
        return result;
    }
    if (!contains_point(goal_target, expert_states.back(), 1e-6))
        throw AssumptionError("compute_bras: the expert rollout does not reach the (shrunk) goal");

    for (int t = 0; t < T; ++t)
        check_region_eti_or_throw(system, t, result.seq.modes[t], L.n_eti);

    result.chain = reach_set_with_error(system, result.seq, goal_aug, e_tf_set, prof.valid_region,
                                        opts.tol);
    result.reach = result.chain[0];
    result.reach_empty = is_empty(result.reach, opts.tol);
    result.filter_hit.assign(obstacles_aug.size(), std::vector<bool>(T, false));
    if (result.reach_empty) {
        result.sampling_reach = HPolytope::empty_set(L.total());
        return result;
    }

    const HPolytope domain_other = scenario.domain_other();
    const std::vector<AvoidOutcome> outcomes =
        opts.threads == 1
            ? avoid_sets_serial(system, result.seq, result.chain, obstacles_aug, ebar_sets,
                                domain_other, opts.skip_filter, opts.tol)
            : avoid_sets_parallel(system, result.seq, result.chain, obstacles_aug, ebar_sets,
                                  domain_other, opts.skip_filter, opts.tol, opts.threads);

    for (size_t i = 0; i < obstacles_aug.size(); ++i) {
        for (int t = 0; t < T; ++t) {
            const AvoidOutcome& o = outcomes[i * T + t];
            result.filter_hit[i][t] = o.filter_hit;
            if (o.lambda0)
                result.avoid.push_back(AvoidSetEntry{static_cast<int>(i), t, *o.lambda0});
        }
    }

    result.sampling_reach =
        remove_redundancy(intersect(result.reach, mode_coherence_set(system, result.seq)), opts.tol);
    return result;
}

SampleResult sample_bras(const BrasResult& result, int n, std::uint64_t seed, long rejection_budget) {
    if (result.reach_empty) throw EmptySetError("sample_bras: empty reach set");
    SampleResult out;
    if (n <= 0) return out;
    // Rejection over a growing hit-and-run stream keeps the draw order stable.
    int chunk = std::max(4 * n, 16);
    long consumed = 0;
    while (static_cast<int>(out.samples.size()) < n && out.attempts < rejection_budget) {
        const auto stream = sample_interior(result.sampling_reach, chunk, seed);
        for (long i = consumed; i < static_cast<long>(stream.size()); ++i) {
            ++out.attempts;
            bool hit = false;
            for (const auto& a : result.avoid) {
                if (contains_point(a.poly, stream[i])) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                out.samples.push_back(stream[i]);
                if (static_cast<int>(out.samples.size()) == n) break;
            }
            if (out.attempts >= rejection_budget) break;
        }
        consumed = static_cast<long>(stream.size());
        chunk *= 2;
    }
    out.exhausted = static_cast<int>(out.samples.size()) < n;
    return out;
}

VerifyReport verify_plan(const PWASystem& system, const Scenario& scenario,
                         const ErrorProfile* profile, const Vec& x0, int substeps) {
    const int T = system.num_steps();
    auto [goal_aug, obstacles_aug] = augment(scenario);
    const ErrorProfile prof = profile ? *profile : zero_profile(scenario, T);
    auto [e_tf_set, ebar_sets] = error_sets(prof, system.layout());
    const HPolytope goal_target = pontryagin_diff(goal_aug, e_tf_set);

    VerifyReport rep;
    const RolloutResult rr = rollout(system, x0, std::max(0, substeps));
    if (rr.exited_domain) {
        rep.in_domain = false;
        rep.violation_step = rr.exit_step;
        return rep;
    }
    rep.goal_ok = contains_point(goal_target, rr.states.back());

    rep.avoid_ok = true;
    for (int t = 0; t < T && rep.avoid_ok; ++t) {
        for (size_t i = 0; i < obstacles_aug.size(); ++i) {
            const HPolytope buffered = buffer_obstacle(obstacles_aug[i], ebar_sets[t]);
            if (segment_intersects(buffered, Segment(rr.states[t], rr.states[t + 1]))) {
                rep.avoid_ok = false;
                rep.violation_step = t;
                rep.violation_obstacle = static_cast<int>(i);
                // localize the first violating sub-segment for the report
                const int parts = std::max(1, substeps);
                for (int s = 0; s < parts; ++s) {
                    const Vec a = rr.states[t] + (rr.states[t + 1] - rr.states[t]) * (double(s) / parts);
                    const Vec b = rr.states[t] +
                                  (rr.states[t + 1] - rr.states[t]) * (double(s + 1) / parts);
                    if (segment_intersects(buffered, Segment(a, b))) {
                        rep.violation_time = (t + double(s) / parts) * system.dt();
                        break;
                    }
                }
                break;
            }
        }
    }
    rep.pass = rep.in_domain && rep.goal_ok && rep.avoid_ok;
    return rep;
}

BrasResult combine_decoupled(const std::vector<BrasResult>& parts) {
    if (parts.empty()) throw DimensionError("combine_decoupled: no parts");
    const int T = static_cast<int>(parts[0].chain.size()) - 1;
    for (const auto& p : parts) {
        if (static_cast<int>(p.chain.size()) != T + 1)
            throw DimensionError("combine_decoupled: chain lengths differ");
        if (p.filter_hit.size() != parts[0].filter_hit.size())
            throw DimensionError("combine_decoupled: obstacle counts differ");
    }

    // Tags must agree across parts: the per-axis avoid sets of one obstacle
    // and timestep recombine as a Cartesian product.
    std::vector<std::pair<int, int>> tags;
    for (const auto& e : parts[0].avoid) tags.emplace_back(e.obstacle, e.t_index);
    for (const auto& p : parts) {
        std::vector<std::pair<int, int>> t2;
        for (const auto& e : p.avoid) t2.emplace_back(e.obstacle, e.t_index);
        if (t2 != tags) throw DimensionError("combine_decoupled: avoid-set tags do not align");
    }

    BrasResult out;
    out.with_error = parts[0].with_error;
    out.skip_filter = parts[0].skip_filter;
    out.reach = parts[0].reach;
    out.sampling_reach = parts[0].sampling_reach;
    out.reach_empty = parts[0].reach_empty;
    out.chain = parts[0].chain;
    out.filter_hit = parts[0].filter_hit;
    for (size_t p = 1; p < parts.size(); ++p) {
        out.reach = cartesian_product(out.reach, parts[p].reach);
        out.sampling_reach = cartesian_product(out.sampling_reach, parts[p].sampling_reach);
        out.reach_empty = out.reach_empty || parts[p].reach_empty;
        for (int t = 0; t <= T; ++t) out.chain[t] = cartesian_product(out.chain[t], parts[p].chain[t]);
        for (size_t i = 0; i < out.filter_hit.size(); ++i)
            for (int t = 0; t < T; ++t)
                out.filter_hit[i][t] = out.filter_hit[i][t] && parts[p].filter_hit[i][t];
    }
    for (size_t j = 0; j < tags.size(); ++j) {
        HPolytope lam = parts[0].avoid[j].poly;
        for (size_t p = 1; p < parts.size(); ++p)
            lam = cartesian_product(lam, parts[p].avoid[j].poly);
        out.avoid.push_back(AvoidSetEntry{tags[j].first, tags[j].second, std::move(lam)});
    }
    return out;
}

}  // namespace parc
