#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutpoint/dataset.hpp"
#include "cutpoint/kernels.hpp"

namespace cutpoint {

struct FitConfig {
    double delta = 0.1;
    double lambda = 1.0;
    // sigma <= 0 requests the median heuristic on standardized profiles.
    KernelSpec kernel{KernelKind::gaussian, 0.0};
    int dca_max_iter = 100;
    double dca_rel_tol = 1e-6;
    int inner_max_iter = 200000;   // dual pair-update cap, O(n) work each
    double inner_rel_tol = 1e-7;   // scales the inner KKT threshold
    std::uint64_t seed = 0;        // used for cross-validation fold assignment

    void validate() const;
};

// Fitted covariate-adjusted cut-point function. The kernel expansion lives in
// standardized covariate coordinates; predict() applies the stored
// standardizer first.
struct CaeModel {
    RkhsFunction c_fn;
    Standardizer standardizer;
    FitConfig config;                    // with resolved sigma and lambda
    std::vector<double> objective_trace; // initial value plus one entry per DCA step
    int dca_iterations = 0;

    double predict(const std::vector<double>& z) const;

    void save(const std::string& path) const;
    static CaeModel load(const std::string& path);
};

// Weighted surrogate risk plus (lambda/2) a^T K a. `f` lives in the
// coordinates produced by `st`; `g` is the Gram matrix of f.profiles.
double cae_objective(const Dataset& d, const RkhsFunction& f, const Standardizer& st,
                     double delta, double lambda, const Matrix& g);

Standardizer identity_standardizer(std::size_t p);

struct InnerResult {
    std::vector<double> a;
    double b = 0.0;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;  // false when the iteration cap hit before stabilizing
};

// Convex subproblem of one DC step: weighted hinge terms (delta - u)+/delta
// plus the ridge penalty minus sum_i linear_term[i] * u_i. linear_term[i] is
// the slope of the linearized concave part with respect to margin u_i
// (in [-w_i/delta, 0]; 0 for an inactive sample). Solved exactly by
// maximal-violating-pair coordinate ascent on the dual; rel_tol scales the
// KKT stopping threshold. A warm start that is already stationary is returned
// unchanged, and the result never scores worse than the warm start.
InnerResult inner_solve(const Dataset& d, const Matrix& g, double delta, double lambda,
                        const std::vector<double>& linear_term, const std::vector<double>& a0,
                        double b0, int max_iter = 200000, double rel_tol = 1e-7);

// Prepared per-dataset state reused across lambda values: standardization,
// duplicate-profile grouping, unique-profile Gram matrix, resolved kernel and
// the pooled warm-start cut.
struct FitWorkspace {
    std::vector<double> x;
    std::vector<int> y;
    std::vector<double> w;  // per-sample weight \hat w(y_i) / n = 1 / n_class
    std::vector<int> group;
    std::vector<int> group_size;
    std::vector<std::vector<double>> zstd;    // per-sample standardized profiles
    std::vector<std::vector<double>> unique;  // one representative per group
    Matrix gram_unique;
    Standardizer standardizer;
    KernelSpec kernel;
    double pooled_cut = 0.0;
    FitConfig config;
};

FitWorkspace prepare_fit(const Dataset& d, const FitConfig& cfg);

struct FitOutput {
    CaeModel model;
    std::vector<double> train_pred;  // fitted c at each training sample
};

FitOutput fit_prepared(const FitWorkspace& ws, double lambda);

// DCA on the psi_delta objective, warm-started at a = 0 and b = pooled cut.
// The objective trace is non-increasing up to inner-solver slack; a violation
// raises ComputeError carrying the trace.
CaeModel dca_fit(const Dataset& d, const FitConfig& cfg);

// Mean over usable folds of the held-out weighted 0-1 objective, maximized
// over the grid; ties resolve to the smaller lambda. Folds missing a class
// are skipped with a warning on stderr; all folds unusable is an error.
double cv_select_lambda(const Dataset& d, const FitConfig& cfg, const std::vector<double>& grid,
                        int folds);

// Selection rule shared with cv_select_lambda: argmax score, ties to the
// smaller lambda.
double pick_lambda_by_score(const std::vector<double>& lambdas, const std::vector<double>& scores);

// 10^((s-31)/10) for s = 1..61 and s = 1..41.
std::vector<double> default_lambda_grid();
std::vector<double> default_h_grid();

}  // namespace cutpoint
