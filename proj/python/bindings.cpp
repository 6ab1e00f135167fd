#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutpoint/bench.hpp"
#include "cutpoint/cae.hpp"
#include "cutpoint/dataset.hpp"
#include "cutpoint/errors.hpp"
#include "cutpoint/nrm.hpp"
#include "cutpoint/pooled.hpp"
#include "cutpoint/simulate.hpp"
#include "cutpoint/smoother.hpp"
#include "cutpoint/special_functions.hpp"

namespace py = pybind11;
using namespace cutpoint;

namespace {

Dataset make_dataset(const std::vector<double>& x, const std::vector<int>& y,
                     const std::vector<std::vector<double>>& z) {
    if (x.size() != y.size() || (!z.empty() && z.size() != x.size()))
        throw ComputeError("Dataset: x, y and z must have matching lengths");
    std::vector<LabeledSample> samples(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        samples[i].x = x[i];
        samples[i].y = y[i];
        if (!z.empty()) samples[i].z = z[i];
    }
    return Dataset(std::move(samples));
}

FitConfig make_config(double delta, double lambda, const std::string& kernel, double sigma,
                      std::uint64_t seed) {
    FitConfig cfg;
    cfg.delta = delta;
    cfg.lambda = lambda;
    cfg.kernel.kind = kernel_kind_from_name(kernel);
    cfg.kernel.sigma = sigma;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(cutpoint, m) {
    m.doc() = "covariate-adjusted diagnostic cut-point and Youden index estimation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ComputeError>(m, "ComputeError", PyExc_RuntimeError);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&make_dataset), py::arg("x"), py::arg("y"),
             py::arg("z") = std::vector<std::vector<double>>{})
        .def_property_readonly("n", &Dataset::size)
        .def_property_readonly("n_pos", &Dataset::n_pos)
        .def_property_readonly("n_neg", &Dataset::n_neg)
        .def_property_readonly("dim", &Dataset::dim)
        .def("markers", &Dataset::markers)
        .def("labels", &Dataset::labels)
        .def("profiles", &Dataset::profiles)
        .def("__len__", &Dataset::size);

    m.def(
        "load_csv",
        [](const std::string& path, const std::string& marker, const std::string& label,
           const std::vector<std::string>& covariates, double label_neg, double label_pos) {
            CsvSchema schema;
            schema.marker = marker;
            schema.label = label;
            schema.covariates = covariates;
            schema.neg_label = label_neg;
            schema.pos_label = label_pos;
            return load_csv(path, schema);
        },
        py::arg("path"), py::arg("marker"), py::arg("label"),
        py::arg("covariates") = std::vector<std::string>{}, py::arg("label_neg") = 0.0,
        py::arg("label_pos") = 1.0);
    m.def("save_csv", &save_csv, py::arg("path"), py::arg("dataset"));
    m.def("pima_filter", &pima_filter, py::arg("dataset"), py::arg("age_index") = 0);
    m.def("class_weights", [](const Dataset& d) {
        ClassWeights w = class_weights(d);
        return std::make_pair(w.w_pos, w.w_neg);
    });

    py::class_<PooledEstimate>(m, "PooledEstimate")
        .def_readonly("cut", &PooledEstimate::cut)
        .def_readonly("youden", &PooledEstimate::youden)
        .def_readonly("objective", &PooledEstimate::objective);
    m.def("pooled_fit", &pooled_fit, py::arg("dataset"));
    m.def("roc_points", [](const Dataset& d) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& p : roc_points(d)) out.emplace_back(p.threshold, p.one_minus_spec, p.sensitivity);
        return out;
    });

    py::class_<CaeModel>(m, "Model")
        .def("predict", [](const CaeModel& m_, const std::vector<double>& z) { return m_.predict(z); })
        .def("predict_many",
             [](const CaeModel& m_, const std::vector<std::vector<double>>& zs) {
                 std::vector<double> out;
                 out.reserve(zs.size());
                 for (const auto& z : zs) out.push_back(m_.predict(z));
                 return out;
             })
        .def("save", &CaeModel::save)
        .def_static("load", &CaeModel::load)
        .def_property_readonly("b", [](const CaeModel& m_) { return m_.c_fn.b; })
        .def_property_readonly("a", [](const CaeModel& m_) { return m_.c_fn.a; })
        .def_property_readonly("lambda_", [](const CaeModel& m_) { return m_.config.lambda; })
        .def_property_readonly("delta", [](const CaeModel& m_) { return m_.config.delta; })
        .def_property_readonly("sigma", [](const CaeModel& m_) { return m_.c_fn.kernel.sigma; })
        .def_property_readonly("objective_trace",
                               [](const CaeModel& m_) { return m_.objective_trace; })
        .def_property_readonly("dca_iterations",
                               [](const CaeModel& m_) { return m_.dca_iterations; });

    m.def(
        "fit",
        [](const Dataset& d, double delta, double lambda, const std::string& kernel, double sigma,
           std::uint64_t seed) { return dca_fit(d, make_config(delta, lambda, kernel, sigma, seed)); },
        py::arg("dataset"), py::arg("delta") = 0.1, py::arg("lambda_") = 1.0,
        py::arg("kernel") = "gaussian", py::arg("sigma") = 0.0, py::arg("seed") = 0);

    m.def(
        "cv_select_lambda",
        [](const Dataset& d, const std::vector<double>& grid, int folds, double delta,
           std::uint64_t seed) {
            FitConfig cfg = make_config(delta, 1.0, "gaussian", 0.0, seed);
            std::vector<double> g = grid.empty() ? default_lambda_grid() : grid;
            return cv_select_lambda(d, cfg, g, folds);
        },
        py::arg("dataset"), py::arg("grid") = std::vector<double>{}, py::arg("folds") = 5,
        py::arg("delta") = 0.1, py::arg("seed") = 0);

    m.def(
        "youden_at",
        [](const Dataset& d, double c_hat, const std::vector<double>& z, double h_pos, double h_neg) {
            return youden_at(d, c_hat, z, SmootherConfig{h_pos, h_neg <= 0.0 ? h_pos : h_neg});
        },
        py::arg("dataset"), py::arg("c_hat"), py::arg("z"), py::arg("h"), py::arg("h_neg") = 0.0);

    m.def(
        "youden_curve",
        [](const Dataset& d, const CaeModel& model, const std::vector<std::vector<double>>& queries,
           double h_pos, double h_neg) {
            std::vector<std::tuple<std::vector<double>, double, double>> out;
            for (const auto& pt :
                 youden_curve(d, model, queries, SmootherConfig{h_pos, h_neg <= 0.0 ? h_pos : h_neg}))
                out.emplace_back(pt.z, pt.c_hat, pt.j_hat);
            return out;
        },
        py::arg("dataset"), py::arg("model"), py::arg("queries"), py::arg("h"),
        py::arg("h_neg") = 0.0);

    m.def(
        "simulate",
        [](int example, std::size_t n, std::uint64_t seed) {
            return generate(SimSpec{example, n, seed});
        },
        py::arg("example"), py::arg("n"), py::arg("seed") = 0);
    m.def(
        "true_cut",
        [](int example, const std::vector<double>& z) { return TruthOracle(example).true_cut(z); },
        py::arg("example"), py::arg("z"));
    m.def(
        "true_youden",
        [](int example, const std::vector<double>& z) { return TruthOracle(example).true_youden(z); },
        py::arg("example"), py::arg("z"));

    py::class_<NrmModel>(m, "NrmModel")
        .def_readonly("beta_pos", &NrmModel::beta_pos)
        .def_readonly("beta_neg", &NrmModel::beta_neg)
        .def_readonly("sigma_pos", &NrmModel::sigma_pos)
        .def_readonly("sigma_neg", &NrmModel::sigma_neg);
    m.def("nrm_fit", &nrm_fit, py::arg("dataset"));
    m.def("nrm_cut", &nrm_cut, py::arg("model"), py::arg("z"));
    m.def("nrm_youden", &nrm_youden, py::arg("model"), py::arg("z"));

    m.def("normal_cdf", [](double x) { return normal_cdf(x); }, py::arg("x"));
    m.def("gamma_cdf", &gamma_cdf, py::arg("x"), py::arg("shape"), py::arg("scale"));
}
