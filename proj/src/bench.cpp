#include "cutpoint/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "cutpoint/cae.hpp"
#include "cutpoint/errors.hpp"
#include "cutpoint/nrm.hpp"
#include "cutpoint/simulate.hpp"
#include "cutpoint/smoother.hpp"

namespace cutpoint {

void BenchPlan::validate() const {
    if (example_id < 1 || example_id > 4) throw ComputeError("BenchPlan: example id must be 1..4");
    if (replications < 1) throw ComputeError("BenchPlan: need at least one replication");
    if (n_list.empty()) throw ComputeError("BenchPlan: empty n list");
    if (!run_cae && !run_nrm) throw ComputeError("BenchPlan: no methods selected");
    if (!(delta > 0.0)) throw ComputeError("BenchPlan: delta must be positive");
}

double eise(const std::vector<double>& estimates, const std::vector<double>& truths) {
    if (estimates.empty() || estimates.size() != truths.size())
        throw ComputeError("eise: vectors must be nonempty and of equal length");
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        double d = estimates[i] - truths[i];
        acc += d * d;
    }
    return acc / static_cast<double>(estimates.size());
}

namespace {

struct RepOutcome {
    bool cae_ok = false;
    double cae_c = 0.0, cae_j = 0.0;
    bool nrm_ok = false;
    double nrm_c = 0.0, nrm_j = 0.0;
};

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<std::size_t>(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

RepOutcome run_replication(const BenchPlan& plan, std::size_t n, std::uint64_t seed,
                           const std::vector<double>& lambda_grid, const std::vector<double>& h_grid,
                           double* tuned_lambda = nullptr, double* tuned_h = nullptr) {
    RepOutcome out;
    Dataset d;
    TruthOracle oracle(plan.example_id);
    std::vector<double> truth_c, truth_j;
    try {
        d = generate(SimSpec{plan.example_id, n, seed});
        truth_c.reserve(n);
        truth_j.reserve(n);
        for (const auto& s : d.samples()) {
            truth_c.push_back(oracle.true_cut(s.z));
            truth_j.push_back(oracle.true_youden(s.z));
        }
    } catch (const std::exception&) {
        return out;  // both methods fail for this replication
    }

    if (plan.run_cae) {
        try {
            FitConfig cfg;
            cfg.delta = plan.delta;
            FitWorkspace ws = prepare_fit(d, cfg);
            double best_e = 0.0, sel_lambda = 0.0;
            std::vector<double> best_pred;
            bool have = false;
            for (double lam : lambda_grid) {
                FitOutput fo = fit_prepared(ws, lam);
                double e = eise(fo.train_pred, truth_c);
                if (!have || e < best_e) {
                    best_e = e;
                    sel_lambda = lam;
                    best_pred = std::move(fo.train_pred);
                    have = true;
                }
            }
            if (!have || !std::isfinite(best_e)) throw ComputeError("bench: no usable lambda");
            out.cae_c = best_e;

            SmootherConfig sm;
            double best_j = 0.0, sel_h = 0.0;
            bool have_j = false;
            std::vector<double> jhat(d.size());
            for (double h : h_grid) {
                sm.h_pos = sm.h_neg = h;
                bool ok = true;
                for (std::size_t i = 0; i < d.size(); ++i) {
                    try {
                        jhat[i] = youden_at(d, best_pred[i], d[i].z, sm);
                    } catch (const ComputeError&) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                double e = eise(jhat, truth_j);
                if (!have_j || e < best_j) {
                    best_j = e;
                    sel_h = h;
                    have_j = true;
                }
            }
            if (!have_j) throw ComputeError("bench: no usable bandwidth");
            out.cae_j = best_j;
            out.cae_ok = true;
            if (tuned_lambda) *tuned_lambda = sel_lambda;
            if (tuned_h) *tuned_h = sel_h;
        } catch (const std::exception&) {
            out.cae_ok = false;
        }
    }

    if (plan.run_nrm) {
        try {
            NrmModel m = nrm_fit(d);
            std::vector<double> cut(d.size()), jv(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) {
                cut[i] = nrm_cut(m, d[i].z);
                jv[i] = nrm_youden(m, d[i].z);
            }
            out.nrm_c = eise(cut, truth_c);
            out.nrm_j = eise(jv, truth_j);
            out.nrm_ok = true;
        } catch (const std::exception&) {
            out.nrm_ok = false;
        }
    }
    return out;
}

void finalize(CellStats& cell, int replications) {
    auto stats = [&](const std::vector<double>& v, double& mean, double& sd) {
        mean = 0.0;
        sd = 0.0;
        if (v.empty()) return;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
    };
    stats(cell.eise_c, cell.mean_c, cell.sd_c);
    stats(cell.eise_j, cell.mean_j, cell.sd_j);
    if (cell.failures * 10 > replications)
        throw ComputeError("run_plan: more than 10% of replications failed");
}

}  // namespace

BenchResult run_plan(const BenchPlan& plan) {
    plan.validate();
    BenchResult result;
    result.plan = plan;
    std::vector<double> lambda_grid = plan.lambda_grid.empty() ? default_lambda_grid() : plan.lambda_grid;
    std::vector<double> h_grid = plan.h_grid.empty() ? default_h_grid() : plan.h_grid;
    std::sort(lambda_grid.begin(), lambda_grid.end());
    std::sort(h_grid.begin(), h_grid.end());

    const std::size_t reps = static_cast<std::size_t>(plan.replications);
    std::vector<RepOutcome> outcomes(plan.n_list.size() * reps);
    if (plan.tune_per_replication) {
        parallel_for(outcomes.size(), plan.threads, [&](std::size_t task) {
            std::size_t n_idx = task / reps;
            std::size_t rep = task % reps;
            outcomes[task] = run_replication(plan, plan.n_list[n_idx], plan.base_seed + rep,
                                             lambda_grid, h_grid);
        });
    } else {
        // tune on the first replication of each n, then hold (lambda, h) fixed
        std::vector<std::vector<double>> fixed_lambda(plan.n_list.size()), fixed_h(plan.n_list.size());
        for (std::size_t n_idx = 0; n_idx < plan.n_list.size(); ++n_idx) {
            double lam = 0.0, h = 0.0;
            outcomes[n_idx * reps] = run_replication(plan, plan.n_list[n_idx], plan.base_seed,
                                                     lambda_grid, h_grid, &lam, &h);
            fixed_lambda[n_idx] = lam > 0.0 ? std::vector<double>{lam} : lambda_grid;
            fixed_h[n_idx] = h > 0.0 ? std::vector<double>{h} : h_grid;
        }
        parallel_for(outcomes.size(), plan.threads, [&](std::size_t task) {
            std::size_t rep = task % reps;
            if (rep == 0) return;
            std::size_t n_idx = task / reps;
            outcomes[task] = run_replication(plan, plan.n_list[n_idx], plan.base_seed + rep,
                                             fixed_lambda[n_idx], fixed_h[n_idx]);
        });
    }

    for (std::size_t n_idx = 0; n_idx < plan.n_list.size(); ++n_idx) {
        std::size_t n = plan.n_list[n_idx];
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const RepOutcome& o = outcomes[n_idx * reps + rep];
            if (plan.run_cae) {
                auto& cell = result.cells["CAE"][n];
                if (o.cae_ok) {
                    cell.eise_c.push_back(o.cae_c);
                    cell.eise_j.push_back(o.cae_j);
                } else {
                    ++cell.failures;
                }
            }
            if (plan.run_nrm) {
                auto& cell = result.cells["NRM"][n];
                if (o.nrm_ok) {
                    cell.eise_c.push_back(o.nrm_c);
                    cell.eise_j.push_back(o.nrm_j);
                } else {
                    ++cell.failures;
                }
            }
        }
    }
    for (auto& [method, by_n] : result.cells)
        for (auto& [n, cell] : by_n) finalize(cell, plan.replications);
    return result;
}

namespace {

std::string cell_text(double mean, double sd) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f (%.4f)", mean, sd);
    return buf;
}

}  // namespace

std::string emit_table(const BenchResult& result, TableFormat format) {
    const std::vector<std::string> method_order = {"CAE", "NRM"};
    std::ostringstream os;
    if (format == TableFormat::csv) {
        os << "method,n,metric,mean,sd\n";
        for (const auto& method : method_order) {
            auto it = result.cells.find(method);
            if (it == result.cells.end()) continue;
            for (const auto& [n, cell] : it->second) {
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%s,%zu,eise_c,%.10g,%.10g\n", method.c_str(), n,
                              cell.mean_c, cell.sd_c);
                os << buf;
                std::snprintf(buf, sizeof(buf), "%s,%zu,eise_j,%.10g,%.10g\n", method.c_str(), n,
                              cell.mean_j, cell.sd_j);
                os << buf;
            }
        }
        return os.str();
    }

    auto block = [&](const std::string& title, bool want_c) {
        os << "### " << title << "\n\n";
        os << "| method |";
        for (std::size_t n : result.plan.n_list) os << " n=" << n << " |";
        os << "\n|--------|";
        for (std::size_t i = 0; i < result.plan.n_list.size(); ++i) os << "-------|";
        os << "\n";
        for (const auto& method : method_order) {
            auto it = result.cells.find(method);
            if (it == result.cells.end()) continue;
            os << "| " << method << " |";
            for (std::size_t n : result.plan.n_list) {
                auto cit = it->second.find(n);
                if (cit == it->second.end()) {
                    os << " - |";
                } else {
                    const CellStats& c = cit->second;
                    os << " " << (want_c ? cell_text(c.mean_c, c.sd_c) : cell_text(c.mean_j, c.sd_j))
                       << " |";
                }
            }
            os << "\n";
        }
        os << "\n";
    };
    block("EISE of c(z)", true);
    block("EISE of J(z)", false);
    return os.str();
}

std::vector<double> smoke_lambda_grid() {
    std::vector<double> g;
    for (int s = 1; s <= 61; s += 6) g.push_back(std::pow(10.0, (s - 31) / 10.0));
    return g;
}

std::vector<double> smoke_h_grid() {
    std::vector<double> g;
    for (int s = 1; s <= 41; s += 4) g.push_back(std::pow(10.0, (s - 31) / 10.0));
    return g;
}

}  // namespace cutpoint
