#pragma once

#include <vector>

#include "cutpoint/cae.hpp"
#include "cutpoint/dataset.hpp"

namespace cutpoint {

struct SmootherConfig {
    double h_pos = 1.0;  // bandwidth for the diseased class
    double h_neg = 1.0;  // bandwidth for the non-diseased class

    void validate() const;
};

// Kernel-smoothed covariate-adjusted Youden index at one query point:
// difference of the two locally weighted empirical conditional CDFs of the
// marker at c_hat, controls minus cases. Gaussian product density kernel on
// raw covariates. Errors when a class's weight sum underflows (query outside
// the covariate support).
double youden_at(const Dataset& d, double c_hat, const std::vector<double>& z,
                 const SmootherConfig& cfg);

struct CurvePoint {
    std::vector<double> z;
    double c_hat = 0.0;
    double j_hat = 0.0;
};

// Evaluates the model and the smoothed index at each query point; output
// sorted by the first covariate coordinate.
std::vector<CurvePoint> youden_curve(const Dataset& d, const CaeModel& model,
                                     const std::vector<std::vector<double>>& query_zs,
                                     const SmootherConfig& cfg);

}  // namespace cutpoint
