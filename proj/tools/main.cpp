#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cutpoint/bench.hpp"
#include "cutpoint/cae.hpp"
#include "cutpoint/dataset.hpp"
#include "cutpoint/detail/text.hpp"
#include "cutpoint/errors.hpp"
#include "cutpoint/pooled.hpp"
#include "cutpoint/simulate.hpp"
#include "cutpoint/smoother.hpp"

namespace {

using cutpoint::ComputeError;
using cutpoint::ParseError;
namespace text = cutpoint::detail;

std::vector<std::string> read_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("'" + path + "' is empty (header required)");
    auto cells = text::split(line, ',');
    std::vector<std::string> names;
    names.reserve(cells.size());
    for (auto& c : cells) names.emplace_back(text::trim(c));
    return names;
}

// Columns named z1..zp, in index order.
std::vector<std::string> detect_z_columns(const std::vector<std::string>& header) {
    std::regex re("^z([0-9]+)$");
    std::map<long, std::string> found;
    for (const auto& name : header) {
        std::smatch m;
        if (std::regex_match(name, m, re)) found[std::stol(m[1])] = name;
    }
    std::vector<std::string> out;
    long expect = 1;
    for (const auto& [idx, name] : found) {
        if (idx != expect) break;
        out.push_back(name);
        ++expect;
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& csv) {
    std::vector<std::string> out;
    if (text::trim(csv).empty()) return out;
    for (auto& tok : text::split(csv, ',')) {
        auto t = text::trim(tok);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    for (auto& tok : text::split(csv, ',')) {
        auto t = std::string(text::trim(tok));
        if (t.empty()) continue;
        try {
            long v = std::stol(t);
            if (v < 2) throw std::invalid_argument("too small");
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ParseError("invalid sample size '" + t + "'");
        }
    }
    if (out.empty()) throw ParseError("empty sample-size list");
    return out;
}

// Reads the named numeric columns of a headered CSV.
std::vector<std::vector<double>> read_profiles_csv(const std::string& path,
                                                   const std::vector<std::string>& names) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("'" + path + "' is empty (header required)");
    auto header = text::split(line, ',');
    std::vector<std::size_t> idx;
    for (const auto& name : names) {
        bool ok = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (std::string(text::trim(header[i])) == name) {
                idx.push_back(i);
                ok = true;
                break;
            }
        }
        if (!ok) throw ParseError("column '" + name + "' not found in '" + path + "'");
    }
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        auto cells = text::split(line, ',');
        std::vector<double> row;
        row.reserve(idx.size());
        for (std::size_t i : idx) {
            if (i >= cells.size())
                throw ParseError("line " + std::to_string(lineno) + ": too few cells");
            double v;
            if (!text::parse_double(cells[i], v) || !std::isfinite(v))
                throw ParseError("line " + std::to_string(lineno) + ": non-numeric value '" +
                                 std::string(text::trim(cells[i])) + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

class OutputFile {
public:
    explicit OutputFile(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw ParseError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ----- per-subcommand options ------------------------------------------

struct FitOpts {
    std::string input, out = "model.json", marker, label, covariates;
    double label_neg = 0.0, label_pos = 1.0;
    double delta = 0.1, lambda = 0.0, sigma = 0.0;
    int cv_folds = 0;
    std::string kernel = "gaussian", grid = "full";
    std::uint64_t seed = 0;
    int dca_max_iter = 100, inner_max_iter = 5000;
    double dca_tol = 1e-6, inner_tol = 1e-7;
};

struct PredictOpts {
    std::string model, input, covariates, out = "-";
};

struct CurveOpts {
    std::string model, input, marker, label, covariates, query_csv, grid, out = "-";
    double label_neg = 0.0, label_pos = 1.0;
    double h = 0.0, h_pos = 0.0, h_neg = 0.0;
};

struct PooledOpts {
    std::string input, marker, label, out = "-", roc_out;
    double label_neg = 0.0, label_pos = 1.0;
};

struct SimulateOpts {
    int example = 1;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::string out = "-";
};

struct BenchOpts {
    int example = 1;
    std::string n_list = "100,250,500", methods = "cae,nrm", grid = "full", format = "csv",
                out = "-", tune = "per-rep";
    int reps = 50, threads = 0;
    std::uint64_t seed = 1;
    double delta = 0.1;
};

struct PimaOpts {
    std::string input, out, grid = "full";
    std::uint64_t seed = 0;
    int folds = 5;
    double delta = 0.1, h = 10.0;
    double age_min = 22.0, age_max = 59.0, age_step = 1.0;
};

cutpoint::CsvSchema make_schema(const std::string& input, const std::string& marker,
                                const std::string& label, const std::string& covariates,
                                double neg, double pos) {
    if (marker.empty()) throw ParseError("missing --marker (see --help)");
    if (label.empty()) throw ParseError("missing --label (see --help)");
    cutpoint::CsvSchema schema;
    schema.marker = marker;
    schema.label = label;
    schema.neg_label = neg;
    schema.pos_label = pos;
    schema.covariates = parse_name_list(covariates);
    if (schema.covariates.empty()) schema.covariates = detect_z_columns(read_header(input));
    return schema;
}

std::vector<double> resolve_lambda_grid(const std::string& grid) {
    if (grid == "full") return cutpoint::default_lambda_grid();
    if (grid == "smoke") return cutpoint::smoke_lambda_grid();
    throw ParseError("--grid must be 'full' or 'smoke'");
}

int run_fit(const FitOpts& o) {
    if (o.input.empty()) throw ParseError("missing --input (see --help)");
    cutpoint::CsvSchema schema =
        make_schema(o.input, o.marker, o.label, o.covariates, o.label_neg, o.label_pos);
    cutpoint::Dataset d = cutpoint::load_csv(o.input, schema);

    cutpoint::FitConfig cfg;
    cfg.delta = o.delta;
    cfg.kernel.kind = cutpoint::kernel_kind_from_name(o.kernel);
    cfg.kernel.sigma = o.sigma;
    cfg.seed = o.seed;
    cfg.dca_max_iter = o.dca_max_iter;
    cfg.dca_rel_tol = o.dca_tol;
    cfg.inner_max_iter = o.inner_max_iter;
    cfg.inner_rel_tol = o.inner_tol;

    if (o.lambda > 0.0 && o.cv_folds > 0)
        throw ParseError("--lambda and --cv are mutually exclusive");
    if (o.lambda > 0.0) {
        cfg.lambda = o.lambda;
    } else if (o.cv_folds > 0) {
        cfg.lambda = cutpoint::cv_select_lambda(d, cfg, resolve_lambda_grid(o.grid), o.cv_folds);
    } else {
        throw ParseError("one of --lambda or --cv is required");
    }

    cutpoint::CaeModel model = cutpoint::dca_fit(d, cfg);
    model.save(o.out);
    std::cout << "lambda=" << text::format_double(cfg.lambda)
              << " objective=" << text::format_double(model.objective_trace.back())
              << " dca_iterations=" << model.dca_iterations << "\n";
    return 0;
}

int run_predict(const PredictOpts& o) {
    if (o.model.empty()) throw ParseError("missing --model (see --help)");
    if (o.input.empty()) throw ParseError("missing --input (see --help)");
    cutpoint::CaeModel model = cutpoint::CaeModel::load(o.model);
    const std::size_t p = model.standardizer.means.size();

    std::vector<std::string> names = parse_name_list(o.covariates);
    if (names.empty()) {
        names = detect_z_columns(read_header(o.input));
        if (names.size() > p) names.resize(p);
    }
    if (names.size() != p)
        throw ParseError("model expects " + std::to_string(p) +
                         " covariates; use --covariates to name the input columns");
    auto profiles = read_profiles_csv(o.input, names);

    OutputFile of(o.out);
    auto& os = of.stream();
    for (const auto& name : names) os << name << ",";
    os << "c_hat\n";
    for (const auto& z : profiles) {
        for (double v : z) os << text::format_double(v) << ",";
        os << text::format_double(model.predict(z)) << "\n";
    }
    return 0;
}

int run_curve(const CurveOpts& o) {
    if (o.model.empty()) throw ParseError("missing --model (see --help)");
    if (o.input.empty()) throw ParseError("missing --input (see --help)");
    cutpoint::CsvSchema schema =
        make_schema(o.input, o.marker, o.label, o.covariates, o.label_neg, o.label_pos);
    cutpoint::Dataset d = cutpoint::load_csv(o.input, schema);
    cutpoint::CaeModel model = cutpoint::CaeModel::load(o.model);

    cutpoint::SmootherConfig sm;
    sm.h_pos = o.h_pos > 0.0 ? o.h_pos : o.h;
    sm.h_neg = o.h_neg > 0.0 ? o.h_neg : o.h;
    if (!(sm.h_pos > 0.0) || !(sm.h_neg > 0.0))
        throw ParseError("a positive bandwidth is required (--h or --h-pos/--h-neg)");

    std::vector<std::vector<double>> queries;
    if (!o.query_csv.empty()) {
        queries = read_profiles_csv(o.query_csv, schema.covariates);
    } else if (!o.grid.empty()) {
        if (d.dim() != 1) throw ParseError("--grid requires a single covariate");
        auto parts = text::split(o.grid, ':');
        if (parts.size() != 3) throw ParseError("--grid must be lo:hi:step");
        double lo, hi, step;
        if (!text::parse_double(parts[0], lo) || !text::parse_double(parts[1], hi) ||
            !text::parse_double(parts[2], step) || step <= 0.0)
            throw ParseError("--grid must be lo:hi:step with step > 0");
        for (double v = lo; v <= hi + 1e-12; v += step) queries.push_back({v});
    } else {
        queries = d.profiles();
    }

    auto curve = cutpoint::youden_curve(d, model, queries, sm);
    OutputFile of(o.out);
    auto& os = of.stream();
    for (std::size_t j = 0; j < d.dim(); ++j) os << schema.covariates[j] << ",";
    os << "c_hat,j_hat\n";
    for (const auto& pt : curve) {
        for (double v : pt.z) os << text::format_double(v) << ",";
        os << text::format_double(pt.c_hat) << "," << text::format_double(pt.j_hat) << "\n";
    }
    return 0;
}

int run_pooled(const PooledOpts& o) {
    if (o.input.empty()) throw ParseError("missing --input (see --help)");
    if (o.marker.empty()) throw ParseError("missing --marker (see --help)");
    if (o.label.empty()) throw ParseError("missing --label (see --help)");
    cutpoint::CsvSchema schema;
    schema.marker = o.marker;
    schema.label = o.label;
    schema.neg_label = o.label_neg;
    schema.pos_label = o.label_pos;
    cutpoint::Dataset d = cutpoint::load_csv(o.input, schema);

    cutpoint::PooledEstimate est = cutpoint::pooled_fit(d);
    OutputFile of(o.out);
    of.stream() << "cut,youden\n"
                << text::format_double(est.cut) << "," << text::format_double(est.youden) << "\n";
    if (!o.roc_out.empty()) {
        OutputFile rf(o.roc_out);
        auto& os = rf.stream();
        os << "threshold,one_minus_spec,sensitivity\n";
        for (const auto& pt : cutpoint::roc_points(d))
            os << text::format_double(pt.threshold) << "," << text::format_double(pt.one_minus_spec)
               << "," << text::format_double(pt.sensitivity) << "\n";
    }
    return 0;
}

int run_simulate(const SimulateOpts& o) {
    cutpoint::Dataset d = cutpoint::generate(cutpoint::SimSpec{o.example, o.n, o.seed});
    OutputFile of(o.out);
    cutpoint::write_csv(of.stream(), d);
    return 0;
}

int run_bench(const BenchOpts& o) {
    cutpoint::BenchPlan plan;
    plan.example_id = o.example;
    plan.n_list = parse_size_list(o.n_list);
    plan.replications = o.reps;
    plan.base_seed = o.seed;
    plan.delta = o.delta;
    plan.threads = o.threads;
    plan.run_cae = false;
    plan.run_nrm = false;
    for (const auto& m : parse_name_list(o.methods)) {
        if (m == "cae")
            plan.run_cae = true;
        else if (m == "nrm")
            plan.run_nrm = true;
        else
            throw ParseError("unknown method '" + m + "' (expected cae,nrm)");
    }
    if (o.grid == "smoke") {
        plan.lambda_grid = cutpoint::smoke_lambda_grid();
        plan.h_grid = cutpoint::smoke_h_grid();
    } else if (o.grid != "full") {
        throw ParseError("--grid must be 'full' or 'smoke'");
    }
    if (o.tune == "once")
        plan.tune_per_replication = false;
    else if (o.tune != "per-rep")
        throw ParseError("--tune must be 'per-rep' or 'once'");
    cutpoint::TableFormat fmt;
    if (o.format == "csv")
        fmt = cutpoint::TableFormat::csv;
    else if (o.format == "markdown")
        fmt = cutpoint::TableFormat::markdown;
    else
        throw ParseError("--format must be 'csv' or 'markdown'");

    cutpoint::BenchResult result = cutpoint::run_plan(plan);
    OutputFile of(o.out);
    of.stream() << cutpoint::emit_table(result, fmt);
    return 0;
}

int run_pima(const PimaOpts& o) {
    if (o.input.empty()) throw ParseError("missing --input (see --help)");
    if (o.out.empty()) throw ParseError("missing --out (see --help)");
    cutpoint::Dataset raw = cutpoint::load_csv(o.input, cutpoint::pima_schema());
    cutpoint::Dataset d = cutpoint::pima_filter(raw);

    cutpoint::FitConfig cfg;
    cfg.delta = o.delta;
    cfg.seed = o.seed;
    cfg.lambda = cutpoint::cv_select_lambda(d, cfg, resolve_lambda_grid(o.grid), o.folds);
    cutpoint::CaeModel model = cutpoint::dca_fit(d, cfg);

    cutpoint::SmootherConfig sm;
    sm.h_pos = sm.h_neg = o.h;
    std::vector<std::vector<double>> ages;
    for (double a = o.age_min; a <= o.age_max + 1e-9; a += o.age_step) ages.push_back({a});
    auto curve = cutpoint::youden_curve(d, model, ages, sm);

    OutputFile of(o.out);
    auto& os = of.stream();
    os << "age,c_hat,j_hat\n";
    for (const auto& pt : curve)
        os << text::format_double(pt.z[0]) << "," << text::format_double(pt.c_hat) << ","
           << text::format_double(pt.j_hat) << "\n";
    std::cout << "n=" << d.size() << " lambda=" << text::format_double(cfg.lambda) << "\n";
    return 0;
}

// ----- config file support ----------------------------------------------

using Setter = std::function<void(const nlohmann::json&)>;

void apply_config(const std::string& path, const std::map<std::string, Setter>& setters) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config '" + path + "': invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ParseError("config '" + path + "': expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        auto it = setters.find(key);
        if (it == setters.end()) throw ParseError("config '" + path + "': unknown key '" + key + "'");
        try {
            it->second(value);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("config '" + path + "': bad value for '" + key + "': " + e.what());
        }
    }
}

template <typename T>
Setter set(T& field) {
    return [&field](const nlohmann::json& v) { field = v.get<T>(); };
}

std::string prescan_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covariate-adjusted diagnostic cut-point and Youden index toolkit"};
    app.require_subcommand(1);
    // --h is a bandwidth below; keep help on --help only.
    app.set_help_flag("--help", "print help");

    FitOpts fit;
    PredictOpts predict;
    CurveOpts curve;
    PooledOpts pooled;
    SimulateOpts simulate;
    BenchOpts bench;
    PimaOpts pima;
    std::string config_path;

    // Config file values act as defaults; explicit flags override them.
    std::string cfg_file = prescan_config(argc, argv);
    std::string sub_name = argc > 1 ? argv[1] : "";
    try {
        if (!cfg_file.empty()) {
            if (sub_name == "fit") {
                apply_config(cfg_file,
                             {{"input", set(fit.input)},
                              {"out", set(fit.out)},
                              {"marker", set(fit.marker)},
                              {"label", set(fit.label)},
                              {"covariates", set(fit.covariates)},
                              {"label-neg", set(fit.label_neg)},
                              {"label-pos", set(fit.label_pos)},
                              {"delta", set(fit.delta)},
                              {"lambda", set(fit.lambda)},
                              {"cv", set(fit.cv_folds)},
                              {"kernel", set(fit.kernel)},
                              {"sigma", set(fit.sigma)},
                              {"grid", set(fit.grid)},
                              {"seed", set(fit.seed)},
                              {"dca-max-iter", set(fit.dca_max_iter)},
                              {"dca-tol", set(fit.dca_tol)},
                              {"inner-max-iter", set(fit.inner_max_iter)},
                              {"inner-tol", set(fit.inner_tol)}});
            } else if (sub_name == "bench") {
                apply_config(cfg_file, {{"example", set(bench.example)},
                                        {"n", set(bench.n_list)},
                                        {"reps", set(bench.reps)},
                                        {"methods", set(bench.methods)},
                                        {"grid", set(bench.grid)},
                                        {"format", set(bench.format)},
                                        {"out", set(bench.out)},
                                        {"seed", set(bench.seed)},
                                        {"delta", set(bench.delta)},
                                        {"threads", set(bench.threads)}});
            } else if (sub_name == "pima") {
                apply_config(cfg_file, {{"input", set(pima.input)},
                                        {"out", set(pima.out)},
                                        {"grid", set(pima.grid)},
                                        {"seed", set(pima.seed)},
                                        {"folds", set(pima.folds)},
                                        {"delta", set(pima.delta)},
                                        {"h", set(pima.h)},
                                        {"age-min", set(pima.age_min)},
                                        {"age-max", set(pima.age_max)},
                                        {"age-step", set(pima.age_step)}});
            } else if (!sub_name.empty() && sub_name[0] != '-') {
                throw ParseError("--config is supported by fit, bench and pima");
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto add_sub = [&app](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    auto* fit_cmd = add_sub("fit", "fit the covariate-adjusted cut-point model");
    fit_cmd->add_option("--input", fit.input, "training CSV");
    fit_cmd->add_option("--out", fit.out, "model JSON output path");
    fit_cmd->add_option("--marker", fit.marker, "marker column name");
    fit_cmd->add_option("--label", fit.label, "label column name");
    fit_cmd->add_option("--covariates", fit.covariates, "comma-separated covariate columns (default z1..zp)");
    fit_cmd->add_option("--label-neg", fit.label_neg, "label value mapped to -1");
    fit_cmd->add_option("--label-pos", fit.label_pos, "label value mapped to +1");
    fit_cmd->add_option("--delta", fit.delta, "surrogate margin width");
    fit_cmd->add_option("--lambda", fit.lambda, "ridge penalty (exclusive with --cv)");
    fit_cmd->add_option("--cv", fit.cv_folds, "select lambda by k-fold cross-validation");
    fit_cmd->add_option("--kernel", fit.kernel, "gaussian or linear");
    fit_cmd->add_option("--sigma", fit.sigma, "gaussian bandwidth (0 = median heuristic)");
    fit_cmd->add_option("--grid", fit.grid, "lambda grid for --cv: full or smoke");
    fit_cmd->add_option("--seed", fit.seed, "seed for fold assignment");
    fit_cmd->add_option("--dca-max-iter", fit.dca_max_iter, "outer iteration cap");
    fit_cmd->add_option("--dca-tol", fit.dca_tol, "outer relative tolerance");
    fit_cmd->add_option("--inner-max-iter", fit.inner_max_iter, "inner iteration cap");
    fit_cmd->add_option("--inner-tol", fit.inner_tol, "inner relative tolerance");
    fit_cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");

    auto* predict_cmd = add_sub("predict", "evaluate a fitted model at covariate profiles");
    predict_cmd->add_option("--model", predict.model, "model JSON");
    predict_cmd->add_option("--input", predict.input, "CSV with covariate columns");
    predict_cmd->add_option("--covariates", predict.covariates, "covariate columns (default z1..zp)");
    predict_cmd->add_option("--out", predict.out, "output CSV ('-' = stdout)");

    auto* curve_cmd =
        add_sub("youden-curve", "cut-point and smoothed Youden index along covariates");
    curve_cmd->add_option("--model", curve.model, "model JSON");
    curve_cmd->add_option("--input", curve.input, "training CSV used for smoothing");
    curve_cmd->add_option("--marker", curve.marker, "marker column name");
    curve_cmd->add_option("--label", curve.label, "label column name");
    curve_cmd->add_option("--covariates", curve.covariates, "covariate columns (default z1..zp)");
    curve_cmd->add_option("--label-neg", curve.label_neg, "label value mapped to -1");
    curve_cmd->add_option("--label-pos", curve.label_pos, "label value mapped to +1");
    curve_cmd->add_option("--h", curve.h, "bandwidth for both classes");
    curve_cmd->add_option("--h-pos", curve.h_pos, "bandwidth for the diseased class");
    curve_cmd->add_option("--h-neg", curve.h_neg, "bandwidth for the non-diseased class");
    curve_cmd->add_option("--query-csv", curve.query_csv, "CSV of query profiles (default: input profiles)");
    curve_cmd->add_option("--grid", curve.grid, "lo:hi:step query grid (single covariate)");
    curve_cmd->add_option("--out", curve.out, "output CSV ('-' = stdout)");

    auto* pooled_cmd = add_sub("pooled", "covariate-free cut-point, Youden index and ROC");
    pooled_cmd->add_option("--input", pooled.input, "CSV file");
    pooled_cmd->add_option("--marker", pooled.marker, "marker column name");
    pooled_cmd->add_option("--label", pooled.label, "label column name");
    pooled_cmd->add_option("--label-neg", pooled.label_neg, "label value mapped to -1");
    pooled_cmd->add_option("--label-pos", pooled.label_pos, "label value mapped to +1");
    pooled_cmd->add_option("--out", pooled.out, "summary CSV ('-' = stdout)");
    pooled_cmd->add_option("--roc-out", pooled.roc_out, "ROC points CSV path");

    auto* sim_cmd = add_sub("simulate", "draw a dataset from a simulated example design");
    sim_cmd->add_option("--example", simulate.example, "example id (1-4)")->check(CLI::Range(1, 4));
    sim_cmd->add_option("--n", simulate.n, "sample count");
    sim_cmd->add_option("--seed", simulate.seed, "random seed");
    sim_cmd->add_option("--out", simulate.out, "output CSV ('-' = stdout)");

    auto* bench_cmd = add_sub("bench", "Monte-Carlo benchmark with oracle tuning");
    bench_cmd->add_option("--example", bench.example, "example id (1-4)")->check(CLI::Range(1, 4));
    bench_cmd->add_option("--n", bench.n_list, "comma-separated sample sizes");
    bench_cmd->add_option("--reps", bench.reps, "replications");
    bench_cmd->add_option("--methods", bench.methods, "comma-separated subset of cae,nrm");
    bench_cmd->add_option("--seed", bench.seed, "base seed (replication r uses seed+r)");
    bench_cmd->add_option("--delta", bench.delta, "surrogate margin width");
    bench_cmd->add_option("--grid", bench.grid, "tuning grids: full or smoke");
    bench_cmd->add_option("--tune", bench.tune, "oracle tuning: per-rep or once");
    bench_cmd->add_option("--threads", bench.threads, "worker threads (0 = hardware)");
    bench_cmd->add_option("--format", bench.format, "csv or markdown");
    bench_cmd->add_option("--out", bench.out, "output path ('-' = stdout)");
    bench_cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");

    auto* pima_cmd = add_sub("pima", "diabetes workflow: filter, CV fit, age curve");
    pima_cmd->add_option("--input", pima.input, "Pima-format CSV (UCI column names)");
    pima_cmd->add_option("--out", pima.out, "curve CSV output path");
    pima_cmd->add_option("--seed", pima.seed, "seed for CV fold assignment");
    pima_cmd->add_option("--folds", pima.folds, "CV folds");
    pima_cmd->add_option("--delta", pima.delta, "surrogate margin width");
    pima_cmd->add_option("--h", pima.h, "smoothing bandwidth (age years)");
    pima_cmd->add_option("--age-min", pima.age_min, "age grid start");
    pima_cmd->add_option("--age-max", pima.age_max, "age grid end");
    pima_cmd->add_option("--age-step", pima.age_step, "age grid step");
    pima_cmd->add_option("--grid", pima.grid, "lambda grid for CV: full or smoke");
    pima_cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (fit_cmd->parsed()) return run_fit(fit);
        if (predict_cmd->parsed()) return run_predict(predict);
        if (curve_cmd->parsed()) return run_curve(curve);
        if (pooled_cmd->parsed()) return run_pooled(pooled);
        if (sim_cmd->parsed()) return run_simulate(simulate);
        if (bench_cmd->parsed()) return run_bench(bench);
        if (pima_cmd->parsed()) return run_pima(pima);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
