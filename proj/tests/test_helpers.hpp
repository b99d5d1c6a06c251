#ifndef PARC_TEST_HELPERS_HPP
#define PARC_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "parc/polytope.hpp"

namespace parc::testing {

// Deterministic generator for test data; independent of the library RNG.
struct TestRng {
    std::uint64_t s;
    explicit TestRng(std::uint64_t seed) : s(seed * 2654435769u + 1) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    Vec vec(int n, double lo = -1.0, double hi = 1.0) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
        return v;
    }
};

// Random bounded polytope: a box plus a few random cutting halfspaces through
// points near the origin.
inline HPolytope random_polytope(TestRng& rng, int dim, int extra_rows, double halfwidth = 1.5) {
    const Vec w = Vec::Constant(dim, halfwidth);
    HPolytope box = HPolytope::box(-w, w);
    Mat A(2 * dim + extra_rows, dim);
    Vec b(2 * dim + extra_rows);
    A.topRows(2 * dim) = box.A();
    b.head(2 * dim) = box.b();
    for (int i = 0; i < extra_rows; ++i) {
        Vec a = rng.vec(dim);
        if (a.norm() < 1e-3) a(0) += 1.0;
        a.normalize();
        A.row(2 * dim + i) = a.transpose();
        b(2 * dim + i) = rng.uniform(0.3, halfwidth);  // keeps the origin inside
    }
    return HPolytope(std::move(A), std::move(b));
}

inline HPolytope unit_triangle() {
    // hull{(0,0),(1,0),(0,1)}
    Mat A(3, 2);
    A << -1, 0, 0, -1, 1, 1;
    Vec b(3);
    b << 0, 0, 1;
    return HPolytope(A, b);
}

}  // namespace parc::testing

#include "parc/pwa.hpp"

namespace parc::testing {

// Planar near-hover quadrotor with thrust parameters held constant: workspace
// (p_x, p_z), parameters (F_l, F_r), remaining states (theta, v_x, v_z, w).
// Physical constants are generic positives; only the coupling structure
// matters for invariance checks.
inline PlanningModel near_hover_2d() {
    constexpr double mass = 1.0, inertia = 0.01, arm = 0.25, gravity = 9.81;
    PlanningModel m;
    m.layout = StateLayout{2, 2, 4, 4};
    m.f_plan = [=](double, const Vec& p, const Vec& k) {
        // p = (p_x, p_z, theta, v_x, v_z, w)
        const double theta = p(2), fsum = k(0) + k(1);
        Vec f(6);
        f << p(3), p(4), p(5), std::sin(theta) * fsum / mass,
            std::cos(theta) * fsum / mass - gravity, arm / inertia * (k(0) - k(1));
        return f;
    };
    return m;
}

// Single-axis integrator x' = x + dt*k as a one-region PWA system over the
// augmented state (x, k).
inline PWASystem integrator_1d_system(double dt, double tf, double x_half, double k_half) {
    PlanningModel m;
    m.layout = StateLayout{1, 1, 0, 2};
    m.f_plan = [](double, const Vec&, const Vec& k) { return k; };
    const int T = static_cast<int>(std::round(tf / dt));
    Vec lo(2), hi(2);
    lo << -x_half, -k_half;
    hi << x_half, k_half;
    std::vector<std::vector<Vec>> pts(T, {Vec::Zero(2)});
    return affinize(m, pts, HPolytope::box(lo, hi), dt, tf);
}

}  // namespace parc::testing

#endif
