#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cutpoint {

struct BenchPlan {
    int example_id = 1;
    std::vector<std::size_t> n_list = {100, 250, 500};
    int replications = 50;
    std::vector<double> lambda_grid;  // defaults to the 61-point grid when empty
    std::vector<double> h_grid;       // defaults to the 41-point grid when empty
    bool run_cae = true;
    bool run_nrm = true;
    std::uint64_t base_seed = 1;
    double delta = 0.1;
    int threads = 0;  // 0 = hardware concurrency
    // true: lambda and h re-tuned against the oracle in every replication;
    // false: tuned once on the first replication and then held fixed.
    bool tune_per_replication = true;

    void validate() const;
};

struct CellStats {
    std::vector<double> eise_c;  // one value per successful replication
    std::vector<double> eise_j;
    int failures = 0;
    double mean_c = 0.0, sd_c = 0.0;
    double mean_j = 0.0, sd_j = 0.0;
};

struct BenchResult {
    BenchPlan plan;
    // method name ("CAE"/"NRM") -> n -> stats
    std::map<std::string, std::map<std::size_t, CellStats>> cells;
};

// Mean squared difference between two equal-length vectors.
double eise(const std::vector<double>& estimates, const std::vector<double>& truths);

// Monte-Carlo loop: replication r uses seed base_seed + r; for CAE, lambda is
// picked per replication by the error of the fitted cut against the truth
// oracle and then the common bandwidth by the error of the smoothed index;
// NRM fits directly. Failed replications are excluded and counted; more than
// 10% failures in a cell is an error. Replications run concurrently; results
// are independent of scheduling.
BenchResult run_plan(const BenchPlan& plan);

enum class TableFormat { csv, markdown };

// markdown: "mean (sd)" cells, 3/4 decimals, one block per metric.
// csv: one row per (method, n, metric, mean, sd).
std::string emit_table(const BenchResult& result, TableFormat format);

// Reduced grids for quick runs: every 6th (lambda) / 4th (h) exponent.
std::vector<double> smoke_lambda_grid();
std::vector<double> smoke_h_grid();

}  // namespace cutpoint
