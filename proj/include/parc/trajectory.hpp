#ifndef PARC_TRAJECTORY_HPP
#define PARC_TRAJECTORY_HPP

#include <vector>

#include "parc/types.hpp"

namespace parc {

/// Planned vs realized trajectory samples for one (p0, k) rollout. Both rows
/// are planning-state vectors on a shared time grid covering [0, tf],
/// including intra-step samples.
struct TrajectoryPair {
    Vec k;
    std::vector<double> t;
    std::vector<Vec> plan;
    std::vector<Vec> realized;
};

}  // namespace parc

#endif
