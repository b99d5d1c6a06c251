#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "parc/lp.hpp"
#include "parc/polytope.hpp"

namespace parc {
namespace {

struct RowSet {
    Mat A;  // unit-norm rows
    Vec b;
    bool infeasible = false;  // a zero row with negative offset was found
};

// Normalize rows to unit normals, dropping vacuous zero rows.
RowSet normalized_rows(const HPolytope& P) {
    RowSet out;
    std::vector<int> keep;
    for (int i = 0; i < P.num_constraints(); ++i) {
        const double nrm = P.A().row(i).norm();
        if (nrm <= 1e-14) {
            if (P.b()(i) < -1e-12) out.infeasible = true;
            continue;
        }
        keep.push_back(i);
    }
    out.A.resize(static_cast<int>(keep.size()), P.dim());
    out.b.resize(static_cast<int>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) {
        const double nrm = P.A().row(keep[j]).norm();
        out.A.row(static_cast<int>(j)) = P.A().row(keep[j]) / nrm;
        out.b(static_cast<int>(j)) = P.b()(keep[j]) / nrm;
    }
    return out;
}

// Drop duplicate unit rows, keeping the tightest offset per normal.
void dedup_rows(Mat& A, Vec& b, double tol) {
    const int m = static_cast<int>(A.rows());
    std::vector<bool> drop(m, false);
    for (int i = 0; i < m; ++i) {
        if (drop[i]) continue;
        for (int j = i + 1; j < m; ++j) {
            if (drop[j]) continue;
            if ((A.row(i) - A.row(j)).cwiseAbs().maxCoeff() <= tol) {
                if (b(j) < b(i)) b(i) = b(j);
                drop[j] = true;
            }
        }
    }
    int k = 0;
    for (int i = 0; i < m; ++i) {
        if (drop[i]) continue;
        A.row(k) = A.row(i);
        b(k) = b(i);
        ++k;
    }
    A.conservativeResize(k, A.cols());
    b.conservativeResize(k);
}

int rank_of_rows(const Mat& all_rows, const std::vector<int>& idx) {
    if (idx.empty()) return 0;
    Mat sub(static_cast<int>(idx.size()), all_rows.cols());
    for (size_t i = 0; i < idx.size(); ++i) sub.row(static_cast<int>(i)) = all_rows.row(idx[i]);
    Eigen::ColPivHouseholderQR<Mat> qr(sub);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
}

struct DdVertex {
    Vec x;
    std::vector<int> active;  // sorted row indices
};

std::vector<int> recompute_active(const Vec& x, const Mat& rows, const Vec& offs, int nrows, double eps) {
    std::vector<int> act;
    for (int r = 0; r < nrows; ++r) {
        if (std::abs(rows.row(r).dot(x) - offs(r)) <= eps) act.push_back(r);
    }
    return act;
}

// Least-norm correction onto the active hyperplanes; keeps cut points exact
// so activity sets stay reliable across many insertions.
void polish_onto(Vec& x, const Mat& rows, const Vec& offs, const std::vector<int>& idx) {
    if (idx.empty()) return;
    Mat A(static_cast<int>(idx.size()), rows.cols());
    Vec r(static_cast<int>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i) {
        A.row(static_cast<int>(i)) = rows.row(idx[i]);
        r(static_cast<int>(i)) = offs(idx[i]) - rows.row(idx[i]).dot(x);
    }
    x += A.completeOrthogonalDecomposition().solve(r);
}

bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

// Core double-description sweep over pre-normalized rows. The caller
// guarantees boundedness via the seed box [lo, hi] strictly containing the
// feasible set.
std::vector<DdVertex> dd_enumerate(const Mat& A, const Vec& b, const Vec& lo, const Vec& hi,
                                   const Tolerances& tol) {
    const int n = static_cast<int>(A.cols());
    const int m = static_cast<int>(A.rows());

    // Full row list: the m input rows first, then 2n box rows.
    Mat rows(m + 2 * n, n);
    Vec offs(m + 2 * n);
    rows.topRows(m) = A;
    offs.head(m) = b;
    for (int i = 0; i < n; ++i) {
        rows.row(m + 2 * i) = Vec::Unit(n, i).transpose();
        offs(m + 2 * i) = hi(i);
        rows.row(m + 2 * i + 1) = -Vec::Unit(n, i).transpose();
        offs(m + 2 * i + 1) = -lo(i);
    }

    // Seed with the box corners.
    std::vector<DdVertex> V;
    V.reserve(1u << n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        DdVertex v;
        v.x.resize(n);
        for (int i = 0; i < n; ++i) {
            const bool high = (mask >> i) & 1u;
            v.x(i) = high ? hi(i) : lo(i);
            v.active.push_back(m + 2 * i + (high ? 0 : 1));
        }
        std::sort(v.active.begin(), v.active.end());
        V.push_back(std::move(v));
    }

    const auto act_eps = [&](const Vec& x) { return 1e-7 * (1.0 + x.cwiseAbs().maxCoeff()); };

    for (int k = 0; k < m; ++k) {
        const int processed = k + 1;  // rows 0..k plus all box rows are now known
        std::vector<double> s(V.size());
        bool any_violating = false;
        for (size_t i = 0; i < V.size(); ++i) {
            s[i] = rows.row(k).dot(V[i].x) - offs(k);
            if (s[i] > act_eps(V[i].x)) any_violating = true;
        }
        if (!any_violating) {
            for (size_t i = 0; i < V.size(); ++i) {
                if (std::abs(s[i]) <= act_eps(V[i].x)) {
                    V[i].active.insert(std::lower_bound(V[i].active.begin(), V[i].active.end(), k), k);
                }
            }
            continue;
        }

        std::vector<DdVertex> next;
        std::vector<size_t> keep_neg, keep_pos;
        for (size_t i = 0; i < V.size(); ++i) {
            const double eps = act_eps(V[i].x);
            if (s[i] < -eps) {
                keep_neg.push_back(i);
                next.push_back(V[i]);
            } else if (s[i] <= eps) {
                DdVertex v = V[i];
                v.active.insert(std::lower_bound(v.active.begin(), v.active.end(), k), k);
                next.push_back(std::move(v));
            } else {
                keep_pos.push_back(i);
            }
        }

        std::vector<DdVertex> cuts;
        std::vector<int> common;
        for (const size_t iu : keep_neg) {
            for (const size_t iw : keep_pos) {
                common.clear();
                std::set_intersection(V[iu].active.begin(), V[iu].active.end(), V[iw].active.begin(),
                                      V[iw].active.end(), std::back_inserter(common));
                if (static_cast<int>(common.size()) < n - 1) continue;
                if (rank_of_rows(rows, common) < n - 1) continue;
                const double t = s[iu] / (s[iu] - s[iw]);
                DdVertex v;
                v.x = V[iu].x + t * (V[iw].x - V[iu].x);
                std::vector<int> fit = common;
                fit.push_back(k);
                polish_onto(v.x, rows, offs, fit);
                const int all_box = 2 * n;
                std::vector<int> probe = recompute_active(v.x, rows, offs, m + all_box, act_eps(v.x));
                // limit active rows to the processed prefix plus box rows
                v.active.clear();
                for (int r : probe)
                    if (r < processed || r >= m) v.active.push_back(r);
                cuts.push_back(std::move(v));
            }
        }

        // Merge duplicates among the cut points and against survivors.
        for (auto& c : cuts) {
            bool dup = false;
            for (auto& v : next) {
                if ((v.x - c.x).norm() <= tol.vertex_dedup * (1.0 + v.x.cwiseAbs().maxCoeff())) {
                    std::vector<int> merged;
                    std::set_union(v.active.begin(), v.active.end(), c.active.begin(), c.active.end(),
                                   std::back_inserter(merged));
                    v.active = std::move(merged);
                    dup = true;
                    break;
                }
            }
            if (!dup) next.push_back(std::move(c));
        }
        V = std::move(next);
        if (V.size() > 50000)
            throw LpFailureError("vertex enumeration: intermediate vertex set exploded");
    }
    return V;
}

}  // namespace

VRep vertex_enumeration(const HPolytope& P, const Tolerances& tol) {
    const int n = P.dim();
    if (n == 0) return VRep{{Vec(0)}};
    if (is_empty(P, tol)) return VRep{};

    RowSet rs = normalized_rows(P);
    if (rs.infeasible) return VRep{};
    dedup_rows(rs.A, rs.b, 1e-12);

    // Tight bounding box by support LPs; throws UnboundedError if unbounded.
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        const Vec e = Vec::Unit(n, i);
        double up, dn;
        try {
            up = support(P, e, tol);
            dn = -support(P, -e, tol);
        } catch (const UnboundedError&) {
            throw UnboundedError("vertex_enumeration: unbounded polytope");
        }
        const double pad = std::max(1e-6 * (up - dn), 1e-6);
        lo(i) = dn - pad;
        hi(i) = up + pad;
    }

    std::vector<DdVertex> V = dd_enumerate(rs.A, rs.b, lo, hi, tol);

    // Keep genuine vertices: full-rank active set among the input rows.
    const int m = static_cast<int>(rs.A.rows());
    VRep out;
    for (const auto& v : V) {
        std::vector<int> input_act;
        for (int r : v.active)
            if (r < m) input_act.push_back(r);
        if (static_cast<int>(input_act.size()) < n) continue;
        if (rank_of_rows(rs.A, input_act) != n) continue;
        out.vertices.push_back(v.x);
    }
    std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
    return out;
}

HPolytope hull_of_points(const std::vector<Vec>& points, const Tolerances& tol) {
    if (points.empty()) throw EmptySetError("hull_of_points: no points");
    const int n = static_cast<int>(points[0].size());
    for (const auto& p : points)
        if (p.size() != n) throw DimensionError("hull_of_points: mixed dimensions");

    // Deduplicate.
    std::vector<Vec> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
        bool dup = false;
        for (const auto& q : pts) {
            if ((p - q).norm() <= tol.vertex_dedup * (1.0 + q.cwiseAbs().maxCoeff())) {
                dup = true;
                break;
            }
        }
        if (!dup) pts.push_back(p);
    }

    Vec c = Vec::Zero(n);
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());

    Mat Y(static_cast<int>(pts.size()), n);
    for (size_t i = 0; i < pts.size(); ++i) Y.row(static_cast<int>(i)) = (pts[i] - c).transpose();

    Eigen::JacobiSVD<Mat> svd(Y, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > std::max(1e-9 * smax, 1e-12)) ++rank;

    if (rank == 0) return HPolytope::point(pts[0]);

    if (rank < n) {
        // Work in the affine hull's coordinates, then lift back.
        const Mat Vr = svd.matrixV().leftCols(rank);
        std::vector<Vec> sub;
        sub.reserve(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) sub.push_back(Vr.transpose() * (pts[i] - c));
        const HPolytope H = hull_of_points(sub, tol);
        const int extra = 2 * (n - rank);
        Mat A(H.num_constraints() + extra, n);
        Vec b(H.num_constraints() + extra);
        A.topRows(H.num_constraints()) = H.A() * Vr.transpose();
        b.head(H.num_constraints()) = H.b() + H.A() * Vr.transpose() * c;
        for (int j = rank; j < n; ++j) {
            const Vec q = svd.matrixV().col(j);
            A.row(H.num_constraints() + 2 * (j - rank)) = q.transpose();
            b(H.num_constraints() + 2 * (j - rank)) = q.dot(c);
            A.row(H.num_constraints() + 2 * (j - rank) + 1) = -q.transpose();
            b(H.num_constraints() + 2 * (j - rank) + 1) = -q.dot(c);
        }
        return HPolytope(std::move(A), std::move(b));
    }

    // Full-dimensional: facets of conv(pts) are the vertices of the polar
    // dual {z | (p - c)'z <= 1}.
    const HPolytope dual(Y, Vec::Ones(Y.rows()));
    const VRep dv = vertex_enumeration(dual, tol);
    if (dv.vertices.empty()) throw LpFailureError("hull_of_points: degenerate dual");

    Mat A(static_cast<int>(dv.vertices.size()), n);
    Vec b(static_cast<int>(dv.vertices.size()));
    int k = 0;
    for (const auto& z : dv.vertices) {
        const double nz = z.norm();
        if (nz <= 1e-12) continue;
        A.row(k) = z.transpose() / nz;
        // Anchor the offset on the cloud itself so no input point is shaved
        // off by dual-side roundoff.
        b(k) = (A.row(k) * Y.transpose()).maxCoeff() + A.row(k).dot(c);
        ++k;
    }
    A.conservativeResize(k, n);
    b.conservativeResize(k);
    dedup_rows(A, b, 1e-9);
    return HPolytope(std::move(A), std::move(b));
}

HPolytope remove_redundancy(const HPolytope& P, const Tolerances& tol) {
    RowSet rs = normalized_rows(P);
    if (rs.infeasible) return HPolytope::empty_set(P.dim());
    dedup_rows(rs.A, rs.b, 1e-12);
    if (rs.A.rows() == 0) return HPolytope(P.dim());
    if (!lp_feasible(rs.A, rs.b, tol.lp_feas)) return HPolytope::empty_set(P.dim());

    std::vector<bool> keep(rs.A.rows(), true);
    for (int i = 0; i < rs.A.rows(); ++i) {
        // Relax row i and maximize its normal over the others.
        Mat A(rs.A.rows(), P.dim());
        Vec b(rs.A.rows());
        int k = 0;
        for (int j = 0; j < rs.A.rows(); ++j) {
            if (j == i || !keep[j]) continue;
            A.row(k) = rs.A.row(j);
            b(k) = rs.b(j);
            ++k;
        }
        A.row(k) = rs.A.row(i);
        b(k) = rs.b(i) + 1.0;
        ++k;
        A.conservativeResize(k, P.dim());
        b.conservativeResize(k);
        const LpResult r = lp_maximize(rs.A.row(i).transpose(), A, b, tol.lp_feas);
        if (r.status != LpStatus::Optimal) throw LpFailureError("remove_redundancy: LP failure");
        if (r.value <= rs.b(i) + tol.membership) keep[i] = false;
    }

    int k = 0;
    for (int i = 0; i < rs.A.rows(); ++i) {
        if (!keep[i]) continue;
        rs.A.row(k) = rs.A.row(i);
        rs.b(k) = rs.b(i);
        ++k;
    }
    rs.A.conservativeResize(k, P.dim());
    rs.b.conservativeResize(k);
    return HPolytope(std::move(rs.A), std::move(rs.b));
}

HPolytope eliminate_dims(const HPolytope& P, const std::vector<int>& dims, const Tolerances& tol) {
    const int n = P.dim();
    std::vector<bool> drop(n, false);
    for (int d : dims) {
        if (d < 0 || d >= n) throw DimensionError("eliminate_dims: index out of range");
        drop[d] = true;
    }
    std::vector<int> keep_cols;
    for (int i = 0; i < n; ++i)
        if (!drop[i]) keep_cols.push_back(i);
    const int nk = static_cast<int>(keep_cols.size());

    if (is_empty(P, tol)) return HPolytope::empty_set(nk);

    RowSet rs = normalized_rows(P);
    dedup_rows(rs.A, rs.b, 1e-12);
    Mat A = rs.A;
    Vec b = rs.b;
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<int> to_drop = dims;
    std::sort(to_drop.begin(), to_drop.end());

    while (!to_drop.empty()) {
        // Fourier's heuristic: eliminate the variable with the fewest
        // positive*negative row combinations.
        int best_var = -1, best_cost = std::numeric_limits<int>::max(), best_local = -1;
        for (int v : to_drop) {
            const int local = static_cast<int>(std::find(cols.begin(), cols.end(), v) - cols.begin());
            int np = 0, nn = 0;
            for (int i = 0; i < A.rows(); ++i) {
                if (A(i, local) > 1e-11) ++np;
                else if (A(i, local) < -1e-11) ++nn;
            }
            const int cost = np * nn;
            if (cost < best_cost) {
                best_cost = cost;
                best_var = v;
                best_local = local;
            }
        }

        std::vector<int> pos, neg, zer;
        for (int i = 0; i < A.rows(); ++i) {
            if (A(i, best_local) > 1e-11) pos.push_back(i);
            else if (A(i, best_local) < -1e-11) neg.push_back(i);
            else zer.push_back(i);
        }

        if (zer.size() + pos.size() * neg.size() > 20000)
            throw LpFailureError("eliminate_dims: row blowup during elimination");
        Mat A2(static_cast<int>(zer.size() + pos.size() * neg.size()), A.cols() - 1);
        Vec b2(A2.rows());
        const auto strip = [&](const Eigen::RowVectorXd& row) {
            Eigen::RowVectorXd out(A.cols() - 1);
            int k = 0;
            for (int j = 0; j < A.cols(); ++j)
                if (j != best_local) out(k++) = row(j);
            return out;
        };
        int k = 0;
        for (int i : zer) {
            A2.row(k) = strip(A.row(i));
            b2(k) = b(i);
            ++k;
        }
        for (int ip : pos) {
            for (int in : neg) {
                const double wp = -A(in, best_local);
                const double wn = A(ip, best_local);
                A2.row(k) = strip(wp * A.row(ip) + wn * A.row(in));
                b2(k) = wp * b(ip) + wn * b(in);
                ++k;
            }
        }
        A = std::move(A2);
        b = std::move(b2);
        cols.erase(cols.begin() + best_local);
        to_drop.erase(std::find(to_drop.begin(), to_drop.end(), best_var));

        HPolytope cleaned = remove_redundancy(HPolytope(A, b), tol);
        if (cleaned.num_constraints() == 1 && cleaned.A().row(0).cwiseAbs().maxCoeff() <= 1e-14)
            return HPolytope::empty_set(nk);
        A = cleaned.A();
        b = cleaned.b();
    }
    return HPolytope(std::move(A), std::move(b));
}

HPolytope project(const HPolytope& P, int p, int q, const Tolerances& tol) {
    if (p < 1 || q < p || q > P.dim()) throw DimensionError("project: invalid dimension range");
    std::vector<int> drop;
    for (int i = 0; i < P.dim(); ++i)
        if (i < p - 1 || i > q - 1) drop.push_back(i);
    return eliminate_dims(P, drop, tol);
}

HPolytope convex_hull_pair(const HPolytope& P, const HPolytope& Q, const Tolerances& tol, bool* clipped) {
    if (P.dim() != Q.dim()) throw DimensionError("convex_hull_pair: dimension mismatch");
    if (clipped) *clipped = false;
    const bool pe = is_empty(P, tol), qe = is_empty(Q, tol);
    if (pe && qe) return HPolytope::empty_set(P.dim());
    if (pe) return Q;
    if (qe) return P;

    const auto enum_clipped = [&](const HPolytope& X) {
        try {
            return vertex_enumeration(X, tol);
        } catch (const UnboundedError&) {
            if (clipped) *clipped = true;
            return vertex_enumeration(clip_to_box(X, tol.world_halfwidth), tol);
        }
    };
    VRep vp = enum_clipped(P);
    const VRep vq = enum_clipped(Q);
    vp.vertices.insert(vp.vertices.end(), vq.vertices.begin(), vq.vertices.end());
    return hull_of_points(vp.vertices, tol);
}

HPolytope minkowski_sum(const HPolytope& P, const HPolytope& Q, const Tolerances& tol, MinkowskiRoute route) {
    if (P.dim() != Q.dim()) throw DimensionError("minkowski_sum: dimension mismatch");
    const int n = P.dim();
    if (is_empty(P, tol) || is_empty(Q, tol)) return HPolytope::empty_set(n);

    if (route == MinkowskiRoute::LiftedProjection) {
        // {x | exists y: y in P, x - y in Q}, with y eliminated.
        Mat A = Mat::Zero(P.num_constraints() + Q.num_constraints(), 2 * n);
        A.topRightCorner(P.num_constraints(), n) = P.A();
        A.bottomLeftCorner(Q.num_constraints(), n) = Q.A();
        A.bottomRightCorner(Q.num_constraints(), n) = -Q.A();
        Vec b(A.rows());
        b << P.b(), Q.b();
        std::vector<int> drop(n);
        std::iota(drop.begin(), drop.end(), n);
        return eliminate_dims(HPolytope(std::move(A), std::move(b)), drop, tol);
    }

    const VRep vp = vertex_enumeration(P, tol);
    const VRep vq = vertex_enumeration(Q, tol);
    std::vector<Vec> sums;
    sums.reserve(vp.vertices.size() * vq.vertices.size());
    for (const auto& u : vp.vertices)
        for (const auto& v : vq.vertices) sums.push_back(u + v);
    return hull_of_points(sums, tol);
}

}  // namespace parc
