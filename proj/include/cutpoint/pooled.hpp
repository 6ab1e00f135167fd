#pragma once

#include <vector>

#include "cutpoint/dataset.hpp"

namespace cutpoint {

struct PooledEstimate {
    double cut = 0.0;        // maximizing threshold (midpoint of the lowest maximizing interval)
    double youden = 0.0;     // objective / 2 - 1
    double objective = 0.0;  // 2 * (sensitivity + specificity) at the cut
};

// Exhaustive search over candidate thresholds: midpoints of adjacent distinct
// pooled marker values plus min(x) - 1 and max(x) + 1. Predicts diseased when
// x >= c (so a sample sitting exactly on c counts as positive). Ties resolve
// to the lowest candidate.
PooledEstimate pooled_fit(const Dataset& d);

struct RocPoint {
    double threshold = 0.0;
    double one_minus_spec = 0.0;
    double sensitivity = 0.0;
};

// One point per candidate threshold, ascending in threshold; the boundary
// candidates contribute (1,1) and (0,0).
std::vector<RocPoint> roc_points(const Dataset& d);

}  // namespace cutpoint
