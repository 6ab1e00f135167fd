#pragma once

#include <cstdint>

#include "cutpoint/dataset.hpp"

namespace cutpoint {

struct SimSpec {
    int example_id = 1;  // 1..4
    std::size_t n = 100;
    std::uint64_t seed = 0;
};

enum class Family { normal, gamma };

// Class-conditional marker distribution at a covariate value.
// normal: p1 = mean, p2 = variance. gamma: p1 = shape, p2 = scale.
struct ClassParams {
    Family family = Family::normal;
    double p1 = 0.0;
    double p2 = 1.0;

    bool valid() const;
    double mean() const;
    double sd() const;
    double pdf(double x) const;
    double cdf(double x) const;
};

// Exact generative design of a simulated example; evaluates the true
// cut-point (density crossing) and true Youden index at any covariate value.
class TruthOracle {
public:
    explicit TruthOracle(int example_id);

    int example_id() const { return example_id_; }
    std::size_t covariate_dim() const { return example_id_ <= 2 ? 1 : 3; }

    ClassParams params(int y, const std::vector<double>& z) const;

    // Root of f_pos - f_neg, bisected between the class means (bracket grown
    // by up to 3 pooled scales when needed), |interval| < 1e-10.
    double true_cut(const std::vector<double>& z) const;

    // F_neg(c*) - F_pos(c*).
    double true_youden(const std::vector<double>& z) const;

private:
    int example_id_;
};

// Root of f_pos - f_neg between the class means, bisected to |interval| <
// 1e-10 after growing the bracket by up to 3 pooled scales when the densities
// do not straddle there. Errors when no crossing is found.
double density_crossing(const ClassParams& pos, const ClassParams& neg);

// Draws a dataset from the example design; identical output for identical
// spec. Covariate draws whose gamma parameters fail positivity are resampled,
// up to 1000 times per sample.
Dataset generate(const SimSpec& spec);

}  // namespace cutpoint
