#include "parc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parc/lp.hpp"

namespace parc {

HPolytope::HPolytope(Mat A, Vec b) : A_(std::move(A)), b_(std::move(b)), dim_(static_cast<int>(A_.cols())) {
    if (A_.rows() != b_.size())
        throw DimensionError("HPolytope: A rows and b length differ");
}

HPolytope::HPolytope(int dim) : A_(Mat::Zero(0, dim)), b_(Vec::Zero(0)), dim_(dim) {
    if (dim < 0) throw DimensionError("HPolytope: negative dimension");
}

HPolytope HPolytope::box(const Vec& lo, const Vec& hi) {
    if (lo.size() != hi.size()) throw DimensionError("box: bound lengths differ");
    const int n = static_cast<int>(lo.size());
    Mat A = Mat::Zero(2 * n, n);
    Vec b(2 * n);
    for (int i = 0; i < n; ++i) {
        A(2 * i, i) = 1.0;
        b(2 * i) = hi(i);
        A(2 * i + 1, i) = -1.0;
        b(2 * i + 1) = -lo(i);
    }
    return HPolytope(std::move(A), std::move(b));
}

HPolytope HPolytope::empty_set(int dim) {
    Mat A = Mat::Zero(1, dim);
    Vec b = -Vec::Ones(1);
    return HPolytope(std::move(A), std::move(b));
}

HPolytope HPolytope::point(const Vec& v) {
    const int n = static_cast<int>(v.size());
    Mat A(2 * n, n);
    A << Mat::Identity(n, n), -Mat::Identity(n, n);
    Vec b(2 * n);
    b << v, -v;
    return HPolytope(std::move(A), std::move(b));
}

bool HPolytope::contains(const Vec& x, double tol) const {
    if (x.size() != dim_) throw DimensionError("contains: point dimension mismatch");
    if (A_.rows() == 0) return true;
    return ((A_ * x - b_).array() <= tol).all();
}

bool HPolytope::has_degenerate_rows() const {
    for (int i = 0; i < A_.rows(); ++i)
        if (A_.row(i).cwiseAbs().maxCoeff() <= 1e-14) return true;
    return false;
}

AffineMap::AffineMap(Mat C_, Vec d_) : C(std::move(C_)), d(std::move(d_)) {
    if (C.rows() != C.cols()) throw DimensionError("AffineMap: C must be square");
    if (d.size() != C.rows()) throw DimensionError("AffineMap: d length mismatch");
}

AffineMap AffineMap::identity(int dim) {
    return AffineMap(Mat::Identity(dim, dim), Vec::Zero(dim));
}

Segment::Segment(Vec x_, Vec y_) : x(std::move(x_)), y(std::move(y_)) {
    if (x.size() != y.size()) throw DimensionError("Segment: endpoint dimensions differ");
}

HPolytope intersect(const HPolytope& P, const HPolytope& Q) {
    if (P.dim() != Q.dim()) throw DimensionError("intersect: dimension mismatch");
    Mat A(P.num_constraints() + Q.num_constraints(), P.dim());
    A << P.A(), Q.A();
    Vec b(P.num_constraints() + Q.num_constraints());
    b << P.b(), Q.b();
    return HPolytope(std::move(A), std::move(b));
}

HPolytope cartesian_product(const HPolytope& P, const HPolytope& Q) {
    const int n = P.dim() + Q.dim();
    Mat A = Mat::Zero(P.num_constraints() + Q.num_constraints(), n);
    A.topLeftCorner(P.num_constraints(), P.dim()) = P.A();
    A.bottomRightCorner(Q.num_constraints(), Q.dim()) = Q.A();
    Vec b(A.rows());
    b << P.b(), Q.b();
    return HPolytope(std::move(A), std::move(b));
}

HPolytope inverse_affine_map(const HPolytope& P, const AffineMap& M) {
    if (P.dim() != M.dim()) throw DimensionError("inverse_affine_map: dimension mismatch");
    return HPolytope(P.A() * M.C, P.b() - P.A() * M.d);
}

HPolytope pontryagin_diff(const HPolytope& P, const HPolytope& Q, const Tolerances& tol) {
    if (P.dim() != Q.dim()) throw DimensionError("pontryagin_diff: dimension mismatch");
    if (is_empty(Q, tol)) return P;
    Vec b = P.b();
    for (int i = 0; i < P.num_constraints(); ++i) {
        if (P.A().row(i).cwiseAbs().maxCoeff() <= 1e-14) continue;  // vacuous or infeasible row: keep as is
        b(i) -= support(Q, P.A().row(i).transpose(), tol);
    }
    return HPolytope(P.A(), std::move(b));
}

bool is_empty(const HPolytope& P, const Tolerances& tol) {
    if (P.num_constraints() == 0) return false;
    return !lp_feasible(P.A(), P.b(), tol.lp_feas);
}

bool contains_point(const HPolytope& P, const Vec& x, double tol) {
    return P.contains(x, tol);
}

double support(const HPolytope& P, const Vec& a, const Tolerances& tol) {
    if (a.size() != P.dim()) throw DimensionError("support: direction dimension mismatch");
    const LpResult r = lp_maximize(a, P.A(), P.b(), tol.lp_feas);
    switch (r.status) {
        case LpStatus::Optimal:
            return r.value;
        case LpStatus::Infeasible:
            throw EmptySetError("support: empty polytope");
        case LpStatus::Unbounded:
            throw UnboundedError("support: unbounded direction");
        default:
            throw LpFailureError("support: LP failure");
    }
}

std::pair<Vec, double> chebyshev_center(const HPolytope& P, const Tolerances& tol) {
    const int n = P.dim();
    const int m = P.num_constraints();
    // Variables (x, r); maximize r with a_i'x + |a_i| r <= b_i, 0 <= r <= world.
    Mat A = Mat::Zero(m + 2, n + 1);
    Vec b(m + 2);
    for (int i = 0; i < m; ++i) {
        A.row(i).head(n) = P.A().row(i);
        A(i, n) = P.A().row(i).norm();
        b(i) = P.b()(i);
    }
    A(m, n) = -1.0;
    b(m) = 0.0;
    A(m + 1, n) = 1.0;
    b(m + 1) = tol.world_halfwidth;
    Vec c = Vec::Zero(n + 1);
    c(n) = 1.0;
    const LpResult r = lp_maximize(c, A, b, tol.lp_feas);
    if (r.status == LpStatus::Infeasible) throw EmptySetError("chebyshev_center: empty polytope");
    if (r.status != LpStatus::Optimal) throw LpFailureError("chebyshev_center: LP failure");
    return {r.x.head(n), std::max(0.0, r.x(n))};
}

bool segment_intersects(const HPolytope& P, const Segment& s, double tol) {
    if (s.x.size() != P.dim()) throw DimensionError("segment_intersects: dimension mismatch");
    double lo = 0.0, hi = 1.0;
    const Vec delta = s.y - s.x;
    for (int i = 0; i < P.num_constraints(); ++i) {
        const double coef = P.A().row(i).dot(delta);
        const double rhs = P.b()(i) - P.A().row(i).dot(s.x) + tol;
        if (std::abs(coef) <= 1e-14) {
            if (rhs < 0.0) return false;
            continue;
        }
        if (coef > 0.0)
            hi = std::min(hi, rhs / coef);
        else
            lo = std::max(lo, rhs / coef);
        if (lo > hi) return false;
    }
    return true;
}

HPolytope clip_to_box(const HPolytope& P, double halfwidth) {
    const Vec w = Vec::Constant(P.dim(), halfwidth);
    return intersect(P, HPolytope::box(-w, w));
}

namespace {

// Minimal deterministic RNG helpers; the standard distributions are not
// bit-reproducible across library implementations.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        // splitmix64
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }
    Vec gaussian(int n) {
        Vec g(n);
        for (int i = 0; i < n; i += 2) {
            const double u1 = uniform_open(), u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            g(i) = r * std::cos(2.0 * M_PI * u2);
            if (i + 1 < n) g(i + 1) = r * std::sin(2.0 * M_PI * u2);
        }
        return g;
    }
};

}  // namespace

std::vector<Vec> sample_interior(const HPolytope& P, int n, std::uint64_t seed, const Tolerances& tol) {
    auto [x, radius] = chebyshev_center(P, tol);  // throws EmptySetError on empty input
    (void)radius;
    std::vector<Vec> out;
    if (n <= 0) return out;
    out.reserve(n);

    Rng rng(seed);
    const int dim = P.dim();
    const int burn = 10 * dim + 10;
    const int thin = 5 * dim + 1;
    int step = 0;
    while (static_cast<int>(out.size()) < n) {
        Vec d = rng.gaussian(dim);
        const double nd = d.norm();
        if (nd <= 1e-300) continue;
        d /= nd;
        double lo = -tol.world_halfwidth, hi = tol.world_halfwidth;
        for (int i = 0; i < P.num_constraints(); ++i) {
            const double coef = P.A().row(i).dot(d);
            const double rhs = P.b()(i) - P.A().row(i).dot(x);
            if (std::abs(coef) <= 1e-14) continue;
            if (coef > 0.0)
                hi = std::min(hi, rhs / coef);
            else
                lo = std::max(lo, rhs / coef);
        }
        if (hi < lo) {  // numerically stuck on the boundary; stay put
            lo = hi = 0.0;
        }
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
        x += (lo + rng.uniform() * (hi - lo)) * d;
        ++step;
        if (step > burn && (step - burn) % thin == 0) out.push_back(x);
    }
    return out;
}

}  // namespace parc
