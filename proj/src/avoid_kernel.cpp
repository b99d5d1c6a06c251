#include <omp.h>

#include "parc/core.hpp"

namespace parc {

// The (obstacle, timestep) tasks are independent given the immutable reach
// chain, so they fan out across threads; results land in preassigned slots
// and the merge order is fixed, which keeps the output bit-identical to the
// serial reference for any thread count.
std::vector<AvoidOutcome> avoid_sets_parallel(const PWASystem& system, const ModeSequence& seq,
                                              const std::vector<HPolytope>& chain,
                                              const std::vector<HPolytope>& obstacles_aug,
                                              const std::vector<HPolytope>& ebar_aug,
                                              const HPolytope& domain_other, bool skip_filter,
                                              const Tolerances& tol, int threads) {
    const int T = system.num_steps();
    const int total = static_cast<int>(obstacles_aug.size()) * T;
    std::vector<AvoidOutcome> out(total);
    if (threads <= 0) threads = omp_get_max_threads();

    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int idx = 0; idx < total; ++idx) {
        const int i = idx / T;
        const int t = idx % T;
        try {
            out[idx] = avoid_task(system, seq, chain, obstacles_aug[i], ebar_aug[t], t, domain_other,
                                  skip_filter, tol);
        } catch (...) {
#pragma omp critical
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace parc
