#include "cutpoint/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "cutpoint/detail/text.hpp"
#include "cutpoint/errors.hpp"

namespace cutpoint {

Dataset::Dataset(std::vector<LabeledSample> samples) : samples_(std::move(samples)) {
    if (!samples_.empty()) dim_ = samples_[0].z.size();
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.x))
            throw ParseError("sample " + std::to_string(i) + ": non-finite marker value");
        if (s.y != 1 && s.y != -1)
            throw ParseError("sample " + std::to_string(i) + ": label must be -1 or +1");
        if (s.z.size() != dim_)
            throw ParseError("sample " + std::to_string(i) + ": covariate dimension mismatch");
        for (double v : s.z)
            if (!std::isfinite(v))
                throw ParseError("sample " + std::to_string(i) + ": non-finite covariate");
        if (s.y > 0)
            ++n_pos_;
        else
            ++n_neg_;
    }
}

std::vector<double> Dataset::markers() const {
    std::vector<double> out;
    out.reserve(size());
    for (const auto& s : samples_) out.push_back(s.x);
    return out;
}

std::vector<int> Dataset::labels() const {
    std::vector<int> out;
    out.reserve(size());
    for (const auto& s : samples_) out.push_back(s.y);
    return out;
}

std::vector<std::vector<double>> Dataset::profiles() const {
    std::vector<std::vector<double>> out;
    out.reserve(size());
    for (const auto& s : samples_) out.push_back(s.z);
    return out;
}

ClassWeights class_weights(const Dataset& d) {
    if (d.n_pos() == 0 || d.n_neg() == 0)
        throw ComputeError("class_weights: both classes must be nonempty");
    double n = static_cast<double>(d.size());
    return ClassWeights{n / static_cast<double>(d.n_pos()), n / static_cast<double>(d.n_neg())};
}

namespace {

int map_label(double v, const CsvSchema& schema) {
    if (v == schema.pos_label) return 1;
    if (v == schema.neg_label) return -1;
    // Pass-through for files that already carry -1/+1 labels, only under the
    // default 0/1 encoding so a declared encoding stays strict.
    if (schema.neg_label == 0.0 && schema.pos_label == 1.0) {
        if (v == -1.0) return -1;
    }
    return 0;
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    if (schema.marker.empty() || schema.label.empty())
        throw ParseError("load_csv: schema must name a marker and a label column");
    if (schema.pos_label == schema.neg_label)
        throw ParseError("load_csv: positive and negative label values must differ");

    std::ifstream in(path);
    if (!in) throw ParseError("load_csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("load_csv: '" + path + "' is empty (header required)");

    std::vector<std::string> header = detail::split(line, ',');
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[std::string(detail::trim(header[i]))] = i;

    auto column_index = [&](const std::string& name) {
        auto it = col.find(name);
        if (it == col.end())
            throw ParseError("load_csv: column '" + name + "' not found in '" + path + "'");
        return it->second;
    };

    const std::size_t marker_col = column_index(schema.marker);
    const std::size_t label_col = column_index(schema.label);
    std::vector<std::size_t> cov_cols;
    cov_cols.reserve(schema.covariates.size());
    for (const auto& name : schema.covariates) cov_cols.push_back(column_index(name));

    std::vector<LabeledSample> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split(line, ',');
        if (cells.size() != header.size())
            throw ParseError("load_csv: line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()));
        auto cell_value = [&](std::size_t c, const char* what) {
            double v;
            if (!detail::parse_double(cells[c], v) || !std::isfinite(v))
                throw ParseError("load_csv: line " + std::to_string(lineno) + ": non-numeric " +
                                 std::string(what) + " value '" + std::string(detail::trim(cells[c])) + "'");
            return v;
        };
        LabeledSample s;
        s.x = cell_value(marker_col, "marker");
        double raw_label = cell_value(label_col, "label");
        s.y = map_label(raw_label, schema);
        if (s.y == 0)
            throw ParseError("load_csv: line " + std::to_string(lineno) + ": unmapped label value '" +
                             detail::format_double(raw_label) + "'");
        s.z.reserve(cov_cols.size());
        for (std::size_t c : cov_cols) s.z.push_back(cell_value(c, "covariate"));
        samples.push_back(std::move(s));
    }
    return Dataset(std::move(samples));
}

void write_csv(std::ostream& os, const Dataset& d) {
    os << "x,y";
    for (std::size_t j = 0; j < d.dim(); ++j) os << ",z" << (j + 1);
    os << "\n";
    for (const auto& s : d.samples()) {
        os << detail::format_double(s.x) << "," << s.y;
        for (double v : s.z) os << "," << detail::format_double(v);
        os << "\n";
    }
}

void save_csv(const std::string& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out) throw ParseError("save_csv: cannot open '" + path + "' for writing");
    write_csv(out, d);
    if (!out) throw ParseError("save_csv: write to '" + path + "' failed");
}

Dataset pima_filter(const Dataset& d, std::size_t age_index) {
    if (age_index >= d.dim())
        throw ComputeError("pima_filter: age covariate index out of range");
    std::vector<LabeledSample> kept;
    kept.reserve(d.size());
    for (const auto& s : d.samples()) {
        if (s.x == 0.0) continue;           // incomplete OGTT measurement
        if (s.z[age_index] >= 60.0) continue;
        kept.push_back(s);
    }
    if (kept.empty()) throw ComputeError("pima_filter: no rows remain after filtering");
    return Dataset(std::move(kept));
}

CsvSchema pima_schema() {
    CsvSchema s;
    s.marker = "glucose";
    s.label = "outcome";
    s.covariates = {"age"};
    return s;
}

}  // namespace cutpoint
