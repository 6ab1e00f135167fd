#pragma once

#include <vector>

#include "cutpoint/dataset.hpp"

namespace cutpoint {

// Per-class normal model with linear mean: x | y, z ~ N(beta_y^T (1, z), sigma_y^2).
struct NrmModel {
    std::vector<double> beta_pos;  // length p + 1, intercept first
    std::vector<double> beta_neg;
    double sigma_pos = 0.0;
    double sigma_neg = 0.0;

    double mean_pos(const std::vector<double>& z) const;
    double mean_neg(const std::vector<double>& z) const;
};

// Least squares per class; residual SD uses denominator (n_class - p - 1).
// Errors on rank-deficient designs, too-few samples, or a degenerate
// (numerically zero) residual SD.
NrmModel nrm_fit(const Dataset& d);

// Density-crossing cut-point: midpoint of the class means for equal SDs,
// otherwise the root of the density-equality quadratic lying between the
// means (falling back to the root closest to their midpoint).
double nrm_cut(const NrmModel& m, const std::vector<double>& z);

// Phi((c - mu_neg)/sigma_neg) - Phi((c - mu_pos)/sigma_pos) at c = nrm_cut.
double nrm_youden(const NrmModel& m, const std::vector<double>& z);

}  // namespace cutpoint
