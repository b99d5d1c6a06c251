#include "parc/pwa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace parc {

void StateLayout::validate() const {
    if (n_w < 0 || n_k < 0 || n_p_other < 0) throw DimensionError("StateLayout: negative dimension");
    if (n_eti < n_w + n_k) throw DimensionError("StateLayout: n_eti must cover workspace and parameters");
    if (n_eti > total()) throw DimensionError("StateLayout: n_eti exceeds the state dimension");
}

PWASystem::PWASystem(StateLayout layout, double dt, double tf, std::vector<std::vector<PWARegion>> steps)
    : layout_(layout), dt_(dt), tf_(tf), steps_(std::move(steps)) {
    layout_.validate();
    if (dt_ <= 0.0 || tf_ <= 0.0) throw DimensionError("PWASystem: dt and tf must be positive");
    const double ratio = tf_ / dt_;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw DimensionError("PWASystem: dt must divide tf");
    if (static_cast<int>(steps_.size()) != static_cast<int>(rounded))
        throw DimensionError("PWASystem: timestep count must equal tf/dt");
    const int n = layout_.total();
    for (const auto& regions : steps_) {
        if (regions.empty()) throw DimensionError("PWASystem: a timestep has no regions");
        for (const auto& r : regions) {
            if (r.region.dim() != n || r.map.dim() != n)
                throw DimensionError("PWASystem: region or map dimension mismatch");
        }
    }
}

const std::vector<PWARegion>& PWASystem::regions_at(int t_index) const {
    if (t_index < 0 || t_index >= num_steps()) throw DimensionError("PWASystem: timestep out of range");
    return steps_[t_index];
}

const PWARegion& PWASystem::region(int t_index, int i) const {
    const auto& regions = regions_at(t_index);
    if (i < 0 || i >= static_cast<int>(regions.size()))
        throw DimensionError("PWASystem: region index out of range");
    return regions[i];
}

void fd_jacobian(const PlanningModel& model, double t, const Vec& p, const Vec& k, Mat& Jp, Mat& Jk,
                 double h) {
    const int np = static_cast<int>(p.size());
    const int nk = static_cast<int>(k.size());
    Jp.resize(np, np);
    Jk.resize(np, nk);
    Vec pp = p, pm = p;
    for (int j = 0; j < np; ++j) {
        pp(j) += h;
        pm(j) -= h;
        Jp.col(j) = (model.f_plan(t, pp, k) - model.f_plan(t, pm, k)) / (2.0 * h);
        pp(j) = p(j);
        pm(j) = p(j);
    }
    Vec kp = k, km = k;
    for (int j = 0; j < nk; ++j) {
        kp(j) += h;
        km(j) -= h;
        Jk.col(j) = (model.f_plan(t, p, kp) - model.f_plan(t, p, km)) / (2.0 * h);
        kp(j) = k(j);
        km(j) = k(j);
    }
}

std::vector<HPolytope> voronoi_regions(const std::vector<Vec>& points, const HPolytope& domain) {
    if (points.empty()) throw DimensionError("voronoi_regions: no points");
    const int n = domain.dim();
    const int np = static_cast<int>(points.size());
    for (const auto& p : points) {
        if (p.size() != n) throw DimensionError("voronoi_regions: point dimension mismatch");
    }
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j)
            if ((points[i] - points[j]).norm() <= 1e-9)
                throw DimensionError("voronoi_regions: duplicate linearization points");

    std::vector<HPolytope> cells;
    cells.reserve(np);
    for (int i = 0; i < np; ++i) {
        Mat A(np + domain.num_constraints(), n);
        Vec b(np + domain.num_constraints());
        for (int j = 0; j < np; ++j) {
            A.row(j) = 2.0 * (points[j] - points[i]).transpose();
            b(j) = points[j].squaredNorm() - points[i].squaredNorm();
        }
        A.bottomRows(domain.num_constraints()) = domain.A();
        b.tail(domain.num_constraints()) = domain.b();
        cells.emplace_back(std::move(A), std::move(b));
    }
    return cells;
}

namespace {

// Euler step of the planning model in augmented coordinates [w; k; p_other].
Vec g_plan(const PlanningModel& model, double t, double dt, const Vec& x) {
    const auto& L = model.layout;
    Vec p(L.n_p());
    p.head(L.n_w) = x.head(L.n_w);
    p.tail(L.n_p_other) = x.tail(L.n_p_other);
    const Vec k = x.segment(L.n_w, L.n_k);
    const Vec pn = p + dt * model.f_plan(t, p, k);
    Vec out(L.total());
    out.head(L.n_w) = pn.head(L.n_w);
    out.segment(L.n_w, L.n_k) = k;
    out.tail(L.n_p_other) = pn.tail(L.n_p_other);
    return out;
}

AffineMap taylor_map(const PlanningModel& model, double t, double dt, const Vec& xstar) {
    const auto& L = model.layout;
    const int n = L.total();
    Vec p(L.n_p());
    p.head(L.n_w) = xstar.head(L.n_w);
    p.tail(L.n_p_other) = xstar.tail(L.n_p_other);
    const Vec k = xstar.segment(L.n_w, L.n_k);

    Mat Jp, Jk;
    if (model.jacobian)
        model.jacobian(t, p, k, Jp, Jk);
    else
        fd_jacobian(model, t, p, k, Jp, Jk);
    if (Jp.rows() != L.n_p() || Jp.cols() != L.n_p() || Jk.rows() != L.n_p() || Jk.cols() != L.n_k)
        throw DimensionError("affinize: Jacobian dimensions do not match the layout");

    Mat C = Mat::Zero(n, n);
    // workspace rows
    C.block(0, 0, L.n_w, L.n_w) = Mat::Identity(L.n_w, L.n_w) + dt * Jp.block(0, 0, L.n_w, L.n_w);
    C.block(0, L.n_w, L.n_w, L.n_k) = dt * Jk.topRows(L.n_w);
    C.block(0, L.n_w + L.n_k, L.n_w, L.n_p_other) = dt * Jp.block(0, L.n_w, L.n_w, L.n_p_other);
    // trajectory parameters are constant
    C.block(L.n_w, L.n_w, L.n_k, L.n_k) = Mat::Identity(L.n_k, L.n_k);
    // remaining planning rows
    C.block(L.n_w + L.n_k, 0, L.n_p_other, L.n_w) = dt * Jp.block(L.n_w, 0, L.n_p_other, L.n_w);
    C.block(L.n_w + L.n_k, L.n_w, L.n_p_other, L.n_k) = dt * Jk.bottomRows(L.n_p_other);
    C.block(L.n_w + L.n_k, L.n_w + L.n_k, L.n_p_other, L.n_p_other) =
        Mat::Identity(L.n_p_other, L.n_p_other) + dt * Jp.block(L.n_w, L.n_w, L.n_p_other, L.n_p_other);

    const Vec d = g_plan(model, t, dt, xstar) - C * xstar;
    return AffineMap(std::move(C), d);
}

bool rows_match(const HPolytope& H, const HPolytope& P, const HPolytope& Q, double tol) {
    const auto match_one = [&](const Eigen::RowVectorXd& a, double beta, const HPolytope& X) {
        for (int i = 0; i < X.num_constraints(); ++i) {
            const double nrm = X.A().row(i).norm();
            if (nrm <= 1e-14) continue;
            if ((X.A().row(i) / nrm - a).cwiseAbs().maxCoeff() <= tol &&
                std::abs(X.b()(i) / nrm - beta) <= tol)
                return true;
        }
        return false;
    };
    for (int i = 0; i < H.num_constraints(); ++i) {
        const double nrm = H.A().row(i).norm();
        if (nrm <= 1e-14) continue;
        const Eigen::RowVectorXd a = H.A().row(i) / nrm;
        const double beta = H.b()(i) / nrm;
        if (!match_one(a, beta, P) && !match_one(a, beta, Q)) return false;
    }
    return true;
}

void merge_regions(std::vector<PWARegion>& regions, double map_tol) {
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t i = 0; i < regions.size() && !merged; ++i) {
            for (size_t j = i + 1; j < regions.size() && !merged; ++j) {
                const auto& mi = regions[i].map;
                const auto& mj = regions[j].map;
                if ((mi.C - mj.C).cwiseAbs().maxCoeff() > map_tol) continue;
                if ((mi.d - mj.d).cwiseAbs().maxCoeff() > map_tol) continue;
                HPolytope H = convex_hull_pair(regions[i].region, regions[j].region);
                H = remove_redundancy(H);
                if (!rows_match(H, regions[i].region, regions[j].region, 1e-7)) continue;
                // hull equals union: confirmed by sampled membership as well
                bool inside_union = true;
                for (const auto& x : sample_interior(H, 128, 7)) {
                    if (!contains_point(regions[i].region, x, 1e-7) &&
                        !contains_point(regions[j].region, x, 1e-7)) {
                        inside_union = false;
                        break;
                    }
                }
                if (!inside_union) continue;
                regions[i].region = std::move(H);
                regions.erase(regions.begin() + static_cast<long>(j));
                merged = true;
            }
        }
    }
}

}  // namespace

PWASystem affinize(const PlanningModel& model, const std::vector<std::vector<Vec>>& points_per_step,
                   const HPolytope& domain, double dt, double tf, const AffinizeOptions& opts) {
    model.layout.validate();
    const int n = model.layout.total();
    if (domain.dim() != n) throw DimensionError("affinize: domain dimension mismatch");
    const int T = static_cast<int>(std::round(tf / dt));
    if (static_cast<int>(points_per_step.size()) != T)
        throw DimensionError("affinize: need one point list per timestep");

    std::vector<std::vector<PWARegion>> steps(T);
    for (int t = 0; t < T; ++t) {
        const auto& pts = points_per_step[t];
        std::vector<HPolytope> cells = voronoi_regions(pts, domain);
        steps[t].reserve(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) {
            AffineMap map = model.exact_step ? model.exact_step(t, dt)
                                             : taylor_map(model, t * dt, dt, pts[i]);
            steps[t].push_back(PWARegion{std::move(cells[i]), std::move(map)});
        }
        if (opts.merge_identical) merge_regions(steps[t], opts.merge_map_tol);
    }
    return PWASystem(model.layout, dt, tf, std::move(steps));
}

int mode_of(const PWASystem& system, int t_index, const Vec& x, double tol) {
    const auto& regions = system.regions_at(t_index);
    for (size_t i = 0; i < regions.size(); ++i) {
        if (regions[i].region.contains(x, tol)) return static_cast<int>(i);
    }
    throw OutOfDomainError("mode_of: state outside every region at timestep " + std::to_string(t_index));
}

ModeSequence mode_sequence(const PWASystem& system, const Vec& x0) {
    ModeSequence seq;
    seq.modes.reserve(system.num_steps());
    Vec x = x0;
    for (int t = 0; t < system.num_steps(); ++t) {
        int m;
        try {
            m = mode_of(system, t, x);
        } catch (const OutOfDomainError&) {
            throw OutOfDomainError("mode_sequence: rollout leaves the domain at timestep " +
                                   std::to_string(t));
        }
        seq.modes.push_back(m);
        x = system.region(t, m).map.apply(x);
    }
    return seq;
}

RolloutResult rollout(const PWASystem& system, const Vec& x0, int substeps) {
    RolloutResult out;
    Vec x = x0;
    out.states.push_back(x);
    out.times.push_back(0.0);
    out.interp_states.push_back(x);
    out.interp_times.push_back(0.0);
    for (int t = 0; t < system.num_steps(); ++t) {
        int m;
        try {
            m = mode_of(system, t, x);
        } catch (const OutOfDomainError&) {
            out.exited_domain = true;
            out.exit_step = t;
            return out;
        }
        out.modes.push_back(m);
        const Vec xn = system.region(t, m).map.apply(x);
        for (int s = 1; s <= substeps; ++s) {
            const double g = static_cast<double>(s) / (substeps + 1);
            out.interp_states.push_back(x + g * (xn - x));
            out.interp_times.push_back((t + g) * system.dt());
        }
        x = xn;
        out.states.push_back(x);
        out.times.push_back((t + 1) * system.dt());
        out.interp_states.push_back(x);
        out.interp_times.push_back((t + 1) * system.dt());
    }
    return out;
}

std::vector<Vec> rollout_fixed_sequence(const PWASystem& system, const ModeSequence& seq, const Vec& x0) {
    if (static_cast<int>(seq.modes.size()) != system.num_steps())
        throw DimensionError("rollout_fixed_sequence: sequence length mismatch");
    std::vector<Vec> states;
    states.reserve(system.num_steps() + 1);
    Vec x = x0;
    states.push_back(x);
    for (int t = 0; t < system.num_steps(); ++t) {
        x = system.region(t, seq.modes[t]).map.apply(x);
        states.push_back(x);
    }
    return states;
}

EtiReport check_eti(const PWASystem& system, int n_eti, double tol) {
    const int n = system.layout().total();
    if (n_eti < 0 || n_eti > n) throw DimensionError("check_eti: invalid block size");
    EtiReport report;
    report.all_pass = true;
    for (int t = 0; t < system.num_steps(); ++t) {
        const auto& regions = system.regions_at(t);
        for (size_t i = 0; i < regions.size(); ++i) {
            const Mat chat = regions[i].map.C - Mat::Identity(n, n);
            const Mat c1 = chat.topLeftCorner(n_eti, n_eti);
            const Mat c2 = chat.topRightCorner(n_eti, n - n_eti);
            const Vec d1 = regions[i].map.d.head(n_eti);
            const Mat p11 = c1 * c1;
            const Mat p12 = c1 * c2;
            const Vec p1d = c1 * d1;
            EtiRegionReport r;
            r.t_index = t;
            r.region = static_cast<int>(i);
            r.viol_c1c1 = p11.norm();
            r.viol_c1c2 = p12.size() > 0 ? p12.norm() : 0.0;
            r.viol_c1d1 = p1d.norm();
            r.pass = r.viol_c1c1 <= tol && r.viol_c1c2 <= tol && r.viol_c1d1 <= tol;
            for (int row = 0; row < n_eti; ++row) {
                double v = p11.row(row).cwiseAbs().maxCoeff();
                if (p12.size() > 0) v = std::max(v, p12.row(row).cwiseAbs().maxCoeff());
                v = std::max(v, std::abs(p1d(row)));
                if (v > tol) r.failing_rows.push_back(row);
            }
            report.all_pass = report.all_pass && r.pass;
            report.regions.push_back(std::move(r));
        }
    }
    return report;
}

int max_eti_dims(const PWASystem& system, double tol) {
    const int base = system.layout().n_w + system.layout().n_k;
    for (int e = system.layout().total(); e > base; --e) {
        if (check_eti(system, e, tol).all_pass) return e;
    }
    return base;
}

std::vector<Vec> grid_points(const Vec& lo, const Vec& hi, const std::vector<int>& counts) {
    const int n = static_cast<int>(lo.size());
    if (hi.size() != n || static_cast<int>(counts.size()) != n)
        throw DimensionError("grid_points: inconsistent arguments");
    long total = 1;
    for (int c : counts) {
        if (c < 1) throw DimensionError("grid_points: counts must be positive");
        total *= c;
        if (total > 2000000) throw DimensionError("grid_points: grid too large");
    }
    std::vector<Vec> pts;
    pts.reserve(total);
    std::vector<int> idx(n, 0);
    for (long it = 0; it < total; ++it) {
        Vec p(n);
        for (int j = 0; j < n; ++j)
            p(j) = lo(j) + (hi(j) - lo(j)) * (idx[j] + 0.5) / counts[j];
        pts.push_back(std::move(p));
        for (int j = 0; j < n; ++j) {
            if (++idx[j] < counts[j]) break;
            idx[j] = 0;
        }
    }
    return pts;
}

std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, int n, std::uint64_t seed) {
    if (hi.size() != lo.size()) throw DimensionError("sample_box: inconsistent bounds");
    std::vector<Vec> pts;
    pts.reserve(n);
    std::uint64_t s = seed ^ 0x9e3779b97f4a7c15ull;
    const auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    for (int i = 0; i < n; ++i) {
        Vec p(lo.size());
        for (int j = 0; j < lo.size(); ++j) {
            const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
            p(j) = lo(j) + (hi(j) - lo(j)) * u;
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

}  // namespace parc
