#include "cutpoint/pooled.hpp"

#include <algorithm>
#include <map>

#include "cutpoint/errors.hpp"

namespace cutpoint {

namespace {

struct Sweep {
    std::vector<double> candidates;
    std::vector<double> sens;
    std::vector<double> spec;
};

// Walks candidate thresholds in increasing order, tracking how many samples of
// each class have fallen below the threshold.
Sweep sweep_thresholds(const Dataset& d) {
    if (d.n_pos() == 0 || d.n_neg() == 0)
        throw ComputeError("pooled: both classes must be nonempty");

    std::map<double, std::pair<std::size_t, std::size_t>> by_value;  // x -> (cases, controls)
    for (const auto& s : d.samples()) {
        auto& cell = by_value[s.x];
        if (s.y > 0)
            ++cell.first;
        else
            ++cell.second;
    }

    const double n1 = static_cast<double>(d.n_pos());
    const double n0 = static_cast<double>(d.n_neg());

    Sweep out;
    out.candidates.reserve(by_value.size() + 1);
    std::size_t cases_below = 0, controls_below = 0;

    auto push = [&](double c) {
        out.candidates.push_back(c);
        out.sens.push_back(static_cast<double>(d.n_pos() - cases_below) / n1);
        out.spec.push_back(static_cast<double>(controls_below) / n0);
    };

    push(by_value.begin()->first - 1.0);
    for (auto it = by_value.begin(); it != by_value.end(); ++it) {
        cases_below += it->second.first;
        controls_below += it->second.second;
        auto next = std::next(it);
        if (next != by_value.end())
            push(0.5 * (it->first + next->first));
        else
            push(it->first + 1.0);
    }
    return out;
}

}  // namespace

PooledEstimate pooled_fit(const Dataset& d) {
    Sweep sw = sweep_thresholds(d);
    PooledEstimate best;
    bool have = false;
    for (std::size_t k = 0; k < sw.candidates.size(); ++k) {
        double objective = 2.0 * (sw.sens[k] + sw.spec[k]);
        if (!have || objective > best.objective) {
            best.cut = sw.candidates[k];
            best.objective = objective;
            have = true;
        }
    }
    best.youden = best.objective / 2.0 - 1.0;
    return best;
}

std::vector<RocPoint> roc_points(const Dataset& d) {
    Sweep sw = sweep_thresholds(d);
    std::vector<RocPoint> out;
    out.reserve(sw.candidates.size());
    for (std::size_t k = 0; k < sw.candidates.size(); ++k)
        out.push_back(RocPoint{sw.candidates[k], 1.0 - sw.spec[k], sw.sens[k]});
    return out;
}

}  // namespace cutpoint
