#pragma once

#include <cmath>
#include <utility>

#include "cutpoint/errors.hpp"

namespace cutpoint {

// 0-1 loss under the sign(0) = +1 convention: (1 - sign(u)) / 2.
inline double loss_01(double u) { return u >= 0.0 ? 0.0 : 1.0; }

// Piecewise-linear surrogate: 1 for u <= 0, (delta - u)/delta on (0, delta),
// 0 for u >= delta. Its convex split is (delta - u)+/delta - (-u)+/delta.
class PsiDelta {
public:
    explicit PsiDelta(double delta) : delta_(delta) {
        if (!(delta > 0.0) || !std::isfinite(delta))
            throw ComputeError("PsiDelta: delta must be finite and positive");
    }

    double delta() const { return delta_; }

    double loss(double u) const {
        if (u <= 0.0) return 1.0;
        if (u >= delta_) return 0.0;
        return (delta_ - u) / delta_;
    }

    // Returns (g1, g2) with g1 - g2 == loss(u) bit-exactly. On u <= 0 the
    // second part is produced as g1 - 1, which is an exact float subtraction
    // for g1 >= 1 and pins the difference to exactly 1.
    std::pair<double, double> dc_parts(double u) const {
        if (u >= delta_) return {0.0, 0.0};
        double g1 = (delta_ - u) / delta_;
        if (u > 0.0) return {g1, 0.0};
        return {g1, g1 - 1.0};
    }

    // Subgradient of (-u)+/delta; 0 is the chosen element at the kink.
    double subgrad_g2(double u) const { return u < 0.0 ? -1.0 / delta_ : 0.0; }

private:
    double delta_;
};

}  // namespace cutpoint
