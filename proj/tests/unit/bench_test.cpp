#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cutpoint/bench.hpp"
#include "cutpoint/cae.hpp"
#include "cutpoint/errors.hpp"

using namespace cutpoint;

TEST_CASE("mean squared error helper") {
    CHECK(eise({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(eise({2.0, 3.0, 4.0}, {1.0, 2.0, 3.0}) == 1.0);
    CHECK(eise({0.0, 0.0}, {1.0, 3.0}) == 5.0);
    CHECK_THROWS_AS(eise({1.0}, {1.0, 2.0}), ComputeError);
    CHECK_THROWS_AS(eise({}, {}), ComputeError);
}

TEST_CASE("table cells use 3/4 decimal formatting") {
    BenchResult r;
    r.plan.n_list = {500};
    CellStats cell;
    cell.mean_c = 0.048;
    cell.sd_c = 0.0398;
    cell.mean_j = 0.004;
    cell.sd_j = 0.003;
    r.cells["CAE"][500] = cell;
    std::string md = emit_table(r, TableFormat::markdown);
    CHECK(md.find("0.048 (0.0398)") != std::string::npos);
    CHECK(md.find("0.004 (0.0030)") != std::string::npos);
    CHECK(md.find("| CAE |") != std::string::npos);
    CHECK(md.find("n=500") != std::string::npos);
}

TEST_CASE("csv table has one row per method, n and metric") {
    BenchResult r;
    r.plan.n_list = {100, 250};
    CellStats cell;
    cell.mean_c = 0.1;
    cell.sd_c = 0.01;
    cell.mean_j = 0.02;
    cell.sd_j = 0.002;
    r.cells["CAE"][100] = cell;
    r.cells["CAE"][250] = cell;
    r.cells["NRM"][100] = cell;
    std::string csv = emit_table(r, TableFormat::csv);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "method,n,metric,mean,sd");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);  // 3 cells x 2 metrics

    BenchResult empty;
    empty.plan.n_list = {100};
    CHECK(emit_table(empty, TableFormat::csv) == "method,n,metric,mean,sd\n");
}

TEST_CASE("plans are validated") {
    BenchPlan plan;
    plan.example_id = 9;
    CHECK_THROWS_AS(run_plan(plan), ComputeError);
    plan.example_id = 1;
    plan.replications = 0;
    CHECK_THROWS_AS(run_plan(plan), ComputeError);
    plan.replications = 1;
    plan.run_cae = plan.run_nrm = false;
    CHECK_THROWS_AS(run_plan(plan), ComputeError);
}

TEST_CASE("small plans are deterministic and thread-count independent") {
    BenchPlan plan;
    plan.example_id = 1;
    plan.n_list = {40};
    plan.replications = 3;
    plan.lambda_grid = {1e-2, 1e-1, 1.0};
    plan.h_grid = {0.1, 0.5, 2.0};
    plan.base_seed = 7;
    plan.threads = 1;
    BenchResult serial = run_plan(plan);
    plan.threads = 2;
    BenchResult parallel = run_plan(plan);

    for (const char* method : {"CAE", "NRM"}) {
        const CellStats& a = serial.cells.at(method).at(40);
        const CellStats& b = parallel.cells.at(method).at(40);
        CHECK(a.eise_c == b.eise_c);
        CHECK(a.eise_j == b.eise_j);
        CHECK(a.failures == 0);
        CHECK(a.mean_c > 0.0);
        CHECK(std::isfinite(a.sd_c));
        CHECK(a.eise_c.size() == 3);
    }

    plan.base_seed = 8;
    BenchResult other = run_plan(plan);
    CHECK(other.cells.at("CAE").at(40).eise_c != serial.cells.at("CAE").at(40).eise_c);
}

TEST_CASE("tune-once mode reuses the first replication's selection") {
    BenchPlan plan;
    plan.example_id = 1;
    plan.n_list = {40};
    plan.replications = 3;
    plan.lambda_grid = {1e-2, 1e-1, 1.0};
    plan.h_grid = {0.1, 0.5, 2.0};
    plan.base_seed = 7;
    plan.tune_per_replication = false;
    plan.threads = 2;
    BenchResult once = run_plan(plan);
    plan.threads = 1;
    BenchResult once_serial = run_plan(plan);
    const CellStats& a = once.cells.at("CAE").at(40);
    CHECK(a.eise_c == once_serial.cells.at("CAE").at(40).eise_c);
    CHECK(a.eise_c.size() == 3);
    CHECK(a.failures == 0);

    plan.tune_per_replication = true;
    BenchResult per_rep = run_plan(plan);
    // the first replication tunes in both modes, so it matches exactly
    CHECK(a.eise_c[0] == per_rep.cells.at("CAE").at(40).eise_c[0]);
    // later replications can only improve under per-replication tuning
    for (std::size_t r = 1; r < 3; ++r)
        CHECK(per_rep.cells.at("CAE").at(40).eise_c[r] <= a.eise_c[r] + 1e-15);
}

TEST_CASE("an all-failing cell aborts the run") {
    BenchPlan plan;
    plan.example_id = 1;
    plan.n_list = {40};
    plan.replications = 3;
    plan.lambda_grid = {-1.0};  // every fit rejects it, so every replication fails
    plan.h_grid = {0.5};
    plan.run_nrm = false;
    CHECK_THROWS_WITH_AS(run_plan(plan), doctest::Contains("10%"), ComputeError);
}

TEST_CASE("grids default to the full exponent ladders") {
    auto lg = default_lambda_grid();
    auto hg = default_h_grid();
    REQUIRE(lg.size() == 61);
    REQUIRE(hg.size() == 41);
    CHECK(lg.front() == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(lg.back() == doctest::Approx(1e3).epsilon(1e-12));
    CHECK(lg[30] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hg.front() == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(hg.back() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(smoke_lambda_grid().size() == 11);
    CHECK(smoke_h_grid().size() == 11);
}
