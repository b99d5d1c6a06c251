#ifndef PARC_LP_HPP
#define PARC_LP_HPP

#include "parc/types.hpp"

namespace parc {

enum class LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    NumericalFailure,
};

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    double value = 0.0;  // objective at optimum (valid when Optimal)
    Vec x;               // primal solution (valid when Optimal)
};

/// Maximize c'x subject to A x <= b over free x, with a dense two-phase
/// simplex. Variables are split into positive/negative parts internally, so
/// no sign restriction applies to x. Rows of A may be zero (consistent zero
/// rows are dropped, inconsistent ones yield Infeasible).
LpResult lp_maximize(const Vec& c, const Mat& A, const Vec& b,
                     double feas_tol = default_tol().lp_feas);

/// Feasibility of {x | A x <= b}. Throws LpFailureError on numerical failure.
bool lp_feasible(const Mat& A, const Vec& b,
                 double feas_tol = default_tol().lp_feas);

}  // namespace parc

#endif
