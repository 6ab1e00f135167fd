#include "cutpoint/smoother.hpp"

#include <algorithm>
#include <cmath>

#include "cutpoint/errors.hpp"

namespace cutpoint {

void SmootherConfig::validate() const {
    if (!(h_pos > 0.0) || !(h_neg > 0.0) || !std::isfinite(h_pos) || !std::isfinite(h_neg))
        throw ComputeError("SmootherConfig: bandwidths must be finite and positive");
}

namespace {

// Product gaussian density kernel prod_j K((z_j - q_j)/h)/h.
double kernel_weight(const std::vector<double>& zi, const std::vector<double>& q, double h) {
    const double inv_sqrt_two_pi = 0.39894228040143267794;
    double d2 = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        double d = zi[j] - q[j];
        d2 += d * d;
    }
    double p = static_cast<double>(q.size());
    return std::pow(inv_sqrt_two_pi / h, p) * std::exp(-0.5 * d2 / (h * h));
}

}  // namespace

double youden_at(const Dataset& d, double c_hat, const std::vector<double>& z,
                 const SmootherConfig& cfg) {
    cfg.validate();
    if (z.size() != d.dim()) throw ComputeError("youden_at: covariate dimension mismatch");
    if (d.n_pos() == 0 || d.n_neg() == 0)
        throw ComputeError("youden_at: both classes must be nonempty");

    double wsum_pos = 0.0, isum_pos = 0.0, wsum_neg = 0.0, isum_neg = 0.0;
    for (const auto& s : d.samples()) {
        if (s.y > 0) {
            double kw = kernel_weight(s.z, z, cfg.h_pos);
            wsum_pos += kw;
            if (s.x <= c_hat) isum_pos += kw;
        } else {
            double kw = kernel_weight(s.z, z, cfg.h_neg);
            wsum_neg += kw;
            if (s.x <= c_hat) isum_neg += kw;
        }
    }
    if (wsum_pos < 1e-300 || wsum_neg < 1e-300)
        throw ComputeError("youden_at: query point outside covariate support");
    return isum_neg / wsum_neg - isum_pos / wsum_pos;
}

std::vector<CurvePoint> youden_curve(const Dataset& d, const CaeModel& model,
                                     const std::vector<std::vector<double>>& query_zs,
                                     const SmootherConfig& cfg) {
    std::vector<CurvePoint> out;
    out.reserve(query_zs.size());
    for (const auto& z : query_zs) {
        CurvePoint pt;
        pt.z = z;
        pt.c_hat = model.predict(z);
        pt.j_hat = youden_at(d, pt.c_hat, z, cfg);
        out.push_back(std::move(pt));
    }
    std::stable_sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return !a.z.empty() && !b.z.empty() && a.z[0] < b.z[0];
    });
    return out;
}

}  // namespace cutpoint
