#include "parc/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace parc {
namespace {

constexpr double kPivotTol = 1e-11;

// Dense tableau for min f = c'y s.t. B y = rhs, y >= 0, rhs >= 0.
// Row `m` holds reduced costs, column `ncols` the right-hand side.
struct Tableau {
    Mat t;                   // (m+1) x (ncols+1)
    std::vector<int> basis;  // basic variable per row
    int m, ncols;

    Tableau(int m_, int ncols_) : t(Mat::Zero(m_ + 1, ncols_ + 1)), basis(m_, -1), m(m_), ncols(ncols_) {}

    void price_out(const Vec& cost) {
        t.row(m).head(ncols) = cost.transpose();
        t(m, ncols) = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = cost(basis[i]);
            if (cb != 0.0) t.row(m) -= cb * t.row(i);
        }
    }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double f = t(i, col);
            if (f != 0.0) t.row(i) -= f * t.row(row);
        }
        basis[row] = col;
    }

    // Returns Optimal / Unbounded / NumericalFailure.
    LpStatus iterate(const std::vector<bool>& allowed, double tol) {
        const long soft = 60 + 4L * (m + ncols);
        const long hard = 20000 + 200L * (m + ncols);
        for (long it = 0; it < hard; ++it) {
            const bool bland = it > soft;
            int enter = -1;
            double best = -tol;
            for (int j = 0; j < ncols; ++j) {
                if (!allowed[j]) continue;
                const double r = t(m, j);
                if (r < best) {
                    enter = j;
                    if (bland) break;
                    best = r;
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                const double a = t(i, enter);
                if (a <= kPivotTol) continue;
                const double ratio = t(i, ncols) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
        return LpStatus::NumericalFailure;
    }
};

}  // namespace

LpResult lp_maximize(const Vec& c, const Mat& A, const Vec& b, double feas_tol) {
    const int n = static_cast<int>(c.size());
    if (A.cols() != n || A.rows() != b.size())
        throw DimensionError("lp_maximize: inconsistent dimensions");

    // Pre-pass: drop zero rows, scale the rest.
    std::vector<int> rows;
    rows.reserve(A.rows());
    for (int i = 0; i < A.rows(); ++i) {
        const double amax = A.row(i).cwiseAbs().maxCoeff();
        if (amax <= 1e-14) {
            if (b(i) < -feas_tol) return {LpStatus::Infeasible, 0.0, Vec()};
            continue;
        }
        rows.push_back(i);
    }
    const int m = static_cast<int>(rows.size());

    if (m == 0) {
        // No constraints: bounded only for c = 0.
        if (c.cwiseAbs().maxCoeff() <= 0.0) return {LpStatus::Optimal, 0.0, Vec::Zero(n)};
        return {LpStatus::Unbounded, 0.0, Vec()};
    }

    // Variables: x+ (n), x- (n), slacks (m), artificials appended as needed.
    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (b(rows[i]) < 0.0) ++n_art;
    const int ncols = 2 * n + m + n_art;

    Tableau tab(m, ncols);
    int art = 2 * n + m;
    for (int i = 0; i < m; ++i) {
        const int r = rows[i];
        const double scale = 1.0 / A.row(r).cwiseAbs().maxCoeff();
        const double sgn = (b(r) < 0.0) ? -1.0 : 1.0;
        tab.t.row(i).segment(0, n) = sgn * scale * A.row(r);
        tab.t.row(i).segment(n, n) = -sgn * scale * A.row(r);
        tab.t(i, 2 * n + i) = sgn;  // slack
        tab.t(i, ncols) = sgn * scale * b(r);
        if (sgn < 0.0) {
            tab.t(i, art) = 1.0;
            tab.basis[i] = art++;
        } else {
            tab.basis[i] = 2 * n + i;
        }
    }

    std::vector<bool> allowed(ncols, true);

    if (n_art > 0) {
        Vec phase1 = Vec::Zero(ncols);
        phase1.tail(n_art).setOnes();
        tab.price_out(phase1);
        const LpStatus st = tab.iterate(allowed, feas_tol);
        if (st == LpStatus::NumericalFailure) return {st, 0.0, Vec()};
        const double infeas = -tab.t(m, ncols);  // current phase-1 objective
        if (infeas > feas_tol) return {LpStatus::Infeasible, 0.0, Vec()};
        // Drive basic artificials out where possible; dependent rows keep
        // their artificial pinned at zero.
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] < 2 * n + m) continue;
            for (int j = 0; j < 2 * n + m; ++j) {
                if (std::abs(tab.t(i, j)) > kPivotTol) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        for (int j = 2 * n + m; j < ncols; ++j) allowed[j] = false;
    }

    Vec phase2 = Vec::Zero(ncols);
    phase2.segment(0, n) = -c;  // maximize c'x  ==  minimize -c'x
    phase2.segment(n, n) = c;
    tab.price_out(phase2);
    const LpStatus st = tab.iterate(allowed, feas_tol);
    if (st != LpStatus::Optimal) return {st, 0.0, Vec()};

    Vec y = Vec::Zero(ncols);
    for (int i = 0; i < m; ++i) y(tab.basis[i]) = tab.t(i, ncols);
    Vec x = y.segment(0, n) - y.segment(n, n);
    return {LpStatus::Optimal, c.dot(x), x};
}

bool lp_feasible(const Mat& A, const Vec& b, double feas_tol) {
    const LpResult r = lp_maximize(Vec::Zero(A.cols()), A, b, feas_tol);
    if (r.status == LpStatus::NumericalFailure || r.status == LpStatus::Unbounded)
        throw LpFailureError("lp_feasible: solver failure");
    return r.status == LpStatus::Optimal;
}

}  // namespace parc
