#ifndef PARC_TYPES_HPP
#define PARC_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace parc {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Numeric knobs shared by the polytope kernel. All geometric operations
/// accept a Tolerances argument; the defaults are used throughout unless a
/// caller overrides them.
struct Tolerances {
    double lp_feas = 1e-9;         // LP feasibility / optimality tolerance
    double membership = 1e-8;      // geometric point-membership tolerance
    double vertex_dedup = 1e-7;    // vertex deduplication distance
    double world_halfwidth = 1e6;  // per-coordinate clip box for unbounded sets
};

inline const Tolerances& default_tol() {
    static const Tolerances t{};
    return t;
}

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnboundedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the LP backend fails numerically (distinct from infeasibility).
struct LpFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Translation-invariance hypothesis violated for a region that an avoid-set
/// computation needs it for.
struct EtiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expert-plan precondition (goal-reaching rollout) not met.
struct AssumptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace parc

#endif
