#ifndef PARC_POLYTOPE_HPP
#define PARC_POLYTOPE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "parc/types.hpp"

namespace parc {

/// Convex set {x | A x <= b} in halfspace representation. The representation
/// is kept verbatim: operations that stack or rewrite rows do so exactly as
/// documented, and redundancy is only removed on request.
class HPolytope {
public:
    /// Validates shapes. Zero rows are permitted when the matching b entry is
    /// nonnegative (vacuous row) or negative (canonical empty set).
    HPolytope(Mat A, Vec b);

    /// Full space of the given dimension (no constraints).
    explicit HPolytope(int dim);

    static HPolytope box(const Vec& lo, const Vec& hi);
    static HPolytope empty_set(int dim);

    /// Singleton {v}, written with paired inequality rows.
    static HPolytope point(const Vec& v);

    const Mat& A() const { return A_; }
    const Vec& b() const { return b_; }
    int dim() const { return dim_; }
    int num_constraints() const { return static_cast<int>(A_.rows()); }

    bool contains(const Vec& x, double tol = default_tol().membership) const;

    /// True when some row has a (near-)zero normal; such rows are legal but
    /// worth knowing about.
    bool has_degenerate_rows() const;

private:
    Mat A_;
    Vec b_;
    int dim_;
};

struct AffineMap {
    Mat C;
    Vec d;

    AffineMap(Mat C_, Vec d_);
    static AffineMap identity(int dim);
    int dim() const { return static_cast<int>(C.rows()); }
    Vec apply(const Vec& x) const { return C * x + d; }
};

struct VRep {
    std::vector<Vec> vertices;
};

struct Segment {
    Vec x;
    Vec y;
    Segment(Vec x_, Vec y_);
};

// ---- exact constructions ----

/// Row stacking: P(\[A1;A2\], \[b1;b2\]).
HPolytope intersect(const HPolytope& P, const HPolytope& Q);

/// Block-diagonal stacking; dim(P) + dim(Q).
HPolytope cartesian_product(const HPolytope& P, const HPolytope& Q);

/// Preimage of P under x -> Cx + d, i.e. P(AC, b - Ad). No invertibility
/// requirement on C.
HPolytope inverse_affine_map(const HPolytope& P, const AffineMap& M);

/// Erosion: every offset of P by b_i replaced with b_i - h_Q(a_i). Returns P
/// unchanged when Q is empty; the result may be empty.
HPolytope pontryagin_diff(const HPolytope& P, const HPolytope& Q,
                          const Tolerances& tol = default_tol());

// ---- LP-backed queries ----

bool is_empty(const HPolytope& P, const Tolerances& tol = default_tol());

bool contains_point(const HPolytope& P, const Vec& x,
                    double tol = default_tol().membership);

/// max over P of a'x. Throws EmptySetError / UnboundedError.
double support(const HPolytope& P, const Vec& a,
               const Tolerances& tol = default_tol());

/// Largest inscribed ball: (center, radius). Radius zero for sets with empty
/// interior. Throws EmptySetError on empty input; the radius search is capped
/// at the world halfwidth so unbounded sets still yield an interior point.
std::pair<Vec, double> chebyshev_center(const HPolytope& P,
                                        const Tolerances& tol = default_tol());

/// True iff some point of the segment satisfies all constraints, via interval
/// intersection of the constraint slabs in the segment parameter.
bool segment_intersects(const HPolytope& P, const Segment& s,
                        double tol = default_tol().membership);

// ---- geometry ----

/// All vertices of a bounded polytope, each active on >= dim constraints,
/// deduplicated and sorted lexicographically. Empty input yields an empty
/// list; unbounded input throws UnboundedError.
VRep vertex_enumeration(const HPolytope& P, const Tolerances& tol = default_tol());

/// H-representation of the convex hull of a point cloud. Lower-dimensional
/// clouds produce paired equality rows for the degenerate directions.
HPolytope hull_of_points(const std::vector<Vec>& points,
                         const Tolerances& tol = default_tol());

/// conv(P, Q) by vertex enumeration of both operands and a hull of the
/// combined vertex set. Unbounded operands are clipped to the world box
/// (reported through `clipped` when non-null). conv with an empty operand is
/// the other operand.
HPolytope convex_hull_pair(const HPolytope& P, const HPolytope& Q,
                           const Tolerances& tol = default_tol(),
                           bool* clipped = nullptr);

enum class MinkowskiRoute {
    VertexHull,        // vertex sums + hull (default)
    LiftedProjection,  // eliminate the summand variables from the lifted system
};

/// P (+) Q for bounded inputs. Empty input gives an empty result.
HPolytope minkowski_sum(const HPolytope& P, const HPolytope& Q,
                        const Tolerances& tol = default_tol(),
                        MinkowskiRoute route = MinkowskiRoute::VertexHull);

/// Fourier-Motzkin elimination of the listed coordinates, with redundancy
/// removal after each eliminated variable.
HPolytope eliminate_dims(const HPolytope& P, const std::vector<int>& dims,
                         const Tolerances& tol = default_tol());

/// Coordinate selection onto dimensions p..q (1-based, inclusive), matching
/// the usual proj_{p:q} notation.
HPolytope project(const HPolytope& P, int p, int q,
                  const Tolerances& tol = default_tol());

/// Minimal representation: rows are normalized, duplicates dropped, and each
/// surviving row is irredundant (verified by LP). The empty set canonicalizes
/// to a single infeasible row.
HPolytope remove_redundancy(const HPolytope& P, const Tolerances& tol = default_tol());

/// Intersect with the axis-aligned box of the given halfwidth.
HPolytope clip_to_box(const HPolytope& P, double halfwidth);

/// n points from a hit-and-run walk started at the Chebyshev center.
/// Deterministic for a given seed; all outputs satisfy contains_point.
std::vector<Vec> sample_interior(const HPolytope& P, int n, std::uint64_t seed,
                                 const Tolerances& tol = default_tol());

}  // namespace parc

#endif
