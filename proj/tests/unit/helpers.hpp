#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cutpoint/dataset.hpp"
#include "cutpoint/kernels.hpp"
#include "cutpoint/rng.hpp"

namespace testutil {

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/cutpoint_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

inline cutpoint::Dataset make_dataset(const std::vector<double>& cases,
                                      const std::vector<double>& controls) {
    std::vector<cutpoint::LabeledSample> ss;
    for (double x : cases) ss.push_back({x, 1, {}});
    for (double x : controls) ss.push_back({x, -1, {}});
    return cutpoint::Dataset(std::move(ss));
}

// Random dataset with 1-d covariates and both classes guaranteed.
inline cutpoint::Dataset random_dataset(cutpoint::Rng& rng, std::size_t n, std::size_t p = 0) {
    std::vector<cutpoint::LabeledSample> ss;
    for (std::size_t i = 0; i < n; ++i) {
        cutpoint::LabeledSample s;
        s.y = (i < 2) ? (i == 0 ? 1 : -1) : (rng.uniform() < 0.5 ? 1 : -1);
        s.x = rng.normal(s.y > 0 ? 1.0 : 0.0, 1.0);
        for (std::size_t j = 0; j < p; ++j) s.z.push_back(rng.uniform(-2.0, 2.0));
        ss.push_back(std::move(s));
    }
    return cutpoint::Dataset(std::move(ss));
}

// Exhaustive threshold scan sharing only the candidate definition with the
// implementation; counting and arithmetic are independent.
struct BruteForcePooled {
    double cut = 0.0;
    double objective = -1e300;
};

inline BruteForcePooled brute_force_pooled(const cutpoint::Dataset& d) {
    std::vector<double> xs;
    for (const auto& s : d.samples()) xs.push_back(s.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> candidates;
    candidates.push_back(xs.front() - 1.0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) candidates.push_back(0.5 * (xs[i] + xs[i + 1]));
    candidates.push_back(xs.back() + 1.0);

    BruteForcePooled best;
    for (double c : candidates) {
        std::size_t tp = 0, tn = 0;
        for (const auto& s : d.samples()) {
            if (s.y > 0 && s.x >= c) ++tp;
            if (s.y < 0 && s.x < c) ++tn;
        }
        double obj = 2.0 * (static_cast<double>(tp) / static_cast<double>(d.n_pos()) +
                            static_cast<double>(tn) / static_cast<double>(d.n_neg()));
        if (obj > best.objective) {
            best.objective = obj;
            best.cut = c;
        }
    }
    return best;
}

// Cyclic Jacobi eigenvalues for small symmetric matrices (test oracle).
inline std::vector<double> sym_eigenvalues(cutpoint::Matrix m) {
    const std::size_t n = m.n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m.at(i, j) * m.at(i, j);
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m.at(p, q);
                if (std::fabs(apq) < 1e-30) continue;
                double theta = 0.5 * (m.at(q, q) - m.at(p, p)) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m.at(i, i);
    return ev;
}

}  // namespace testutil
