#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace cutpoint {

struct LabeledSample {
    double x = 0.0;          // diagnostic marker value
    int y = 0;               // class label, -1 (non-diseased) or +1 (diseased)
    std::vector<double> z;   // covariate profile, length p (p = 0 means pooled analysis)
};

// Immutable sample collection. All samples share one covariate dimension;
// marker and covariates must be finite. Input order is preserved.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<LabeledSample> samples);

    const std::vector<LabeledSample>& samples() const { return samples_; }
    const LabeledSample& operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const { return samples_.size(); }
    std::size_t n_pos() const { return n_pos_; }
    std::size_t n_neg() const { return n_neg_; }
    std::size_t dim() const { return dim_; }

    std::vector<double> markers() const;
    std::vector<int> labels() const;
    std::vector<std::vector<double>> profiles() const;

private:
    std::vector<LabeledSample> samples_;
    std::size_t n_pos_ = 0;
    std::size_t n_neg_ = 0;
    std::size_t dim_ = 0;
};

struct ClassWeights {
    double w_pos = 0.0;  // n / n_pos
    double w_neg = 0.0;  // n / n_neg
};

// Requires both classes nonempty.
ClassWeights class_weights(const Dataset& d);

struct CsvSchema {
    std::string marker;
    std::string label;
    std::vector<std::string> covariates;
    // Label encoding. Values equal to neg_label map to -1, pos_label to +1.
    // Under the default 0/1 encoding, already-encoded -1/+1 cells are also
    // accepted, so files written by write_csv re-parse unchanged.
    double neg_label = 0.0;
    double pos_label = 1.0;
};

// Header row required; plain comma-separated numerals; rows kept in file order.
// Missing columns, non-numeric cells and unmapped label values raise ParseError
// naming the offending line.
Dataset load_csv(const std::string& path, const CsvSchema& schema);

// Canonical form: header "x,y,z1,...,zp"; labels written as -1/1; doubles in
// shortest round-trip form.
void write_csv(std::ostream& os, const Dataset& d);
void save_csv(const std::string& path, const Dataset& d);

// Drops rows with marker == 0 (incomplete OGTT) and rows with age >= 60,
// where age is covariate column `age_index`. Errors if nothing remains.
Dataset pima_filter(const Dataset& d, std::size_t age_index = 0);

// UCI column order for the Pima file.
CsvSchema pima_schema();

}  // namespace cutpoint
