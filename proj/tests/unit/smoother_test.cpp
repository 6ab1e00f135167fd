#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cutpoint/cae.hpp"
#include "cutpoint/errors.hpp"
#include "cutpoint/rng.hpp"
#include "cutpoint/smoother.hpp"
#include "helpers.hpp"

using namespace cutpoint;

namespace {

Dataset smoothing_dataset(Rng& rng, std::size_t n) {
    std::vector<LabeledSample> ss;
    for (std::size_t i = 0; i < n; ++i) {
        LabeledSample s;
        s.y = (i < 2) ? (i == 0 ? 1 : -1) : (rng.uniform() < 0.5 ? 1 : -1);
        s.z = {rng.uniform(0.0, 10.0)};
        s.x = (s.y > 0 ? 2.0 : 0.0) + 0.2 * s.z[0] + rng.normal();
        ss.push_back(std::move(s));
    }
    return Dataset(std::move(ss));
}

// Independent Nadaraya-Watson oracle for both conditional CDF terms.
std::pair<double, double> nw_terms(const Dataset& d, double c, const std::vector<double>& z,
                                   double h_pos, double h_neg) {
    double wp = 0, ip = 0, wn = 0, in = 0;
    for (const auto& s : d.samples()) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) d2 += (s.z[j] - z[j]) * (s.z[j] - z[j]);
        double h = s.y > 0 ? h_pos : h_neg;
        double w = std::exp(-0.5 * d2 / (h * h)) / std::pow(h * std::sqrt(2.0 * M_PI), (double)z.size());
        if (s.y > 0) {
            wp += w;
            if (s.x <= c) ip += w;
        } else {
            wn += w;
            if (s.x <= c) in += w;
        }
    }
    return {in / wn, ip / wp};
}

}  // namespace

TEST_CASE("degenerate thresholds give zero") {
    Rng rng(1);
    Dataset d = smoothing_dataset(rng, 40);
    SmootherConfig cfg{1.0, 1.0};
    CHECK(youden_at(d, -1e9, {5.0}, cfg) == 0.0);
    CHECK(youden_at(d, 1e9, {5.0}, cfg) == 0.0);
}

TEST_CASE("perfect local separation gives one") {
    std::vector<LabeledSample> ss;
    for (int i = 0; i < 10; ++i) {
        ss.push_back({10.0 + i, 1, {static_cast<double>(i)}});
        ss.push_back({-10.0 - i, -1, {static_cast<double>(i)}});
    }
    Dataset d(ss);
    CHECK(youden_at(d, 0.0, {4.5}, SmootherConfig{2.0, 2.0}) == 1.0);
}

TEST_CASE("matches an independent Nadaraya-Watson oracle") {
    Rng rng(23);
    Dataset d = smoothing_dataset(rng, 60);
    SmootherConfig cfg{0.8, 1.7};
    for (int trial = 0; trial < 40; ++trial) {
        double c = rng.uniform(-2.0, 6.0);
        std::vector<double> z = {rng.uniform(0.5, 9.5)};
        auto [neg_term, pos_term] = nw_terms(d, c, z, cfg.h_pos, cfg.h_neg);
        CHECK(youden_at(d, c, z, cfg) == doctest::Approx(neg_term - pos_term).epsilon(1e-12));
    }
}

TEST_CASE("bounded in [-1, 1] and monotone terms in the threshold") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Dataset d = smoothing_dataset(rng, 10 + rng.below(50));
        SmootherConfig cfg{0.3 + 2.0 * rng.uniform(), 0.3 + 2.0 * rng.uniform()};
        std::vector<double> z = {rng.uniform(0.0, 10.0)};
        double prev_neg = -1.0, prev_pos = -1.0;
        for (int ci = 0; ci <= 20; ++ci) {
            double c = -4.0 + 12.0 * ci / 20.0;
            double j = youden_at(d, c, z, cfg);
            CHECK(j >= -1.0);
            CHECK(j <= 1.0);
            auto [neg_term, pos_term] = nw_terms(d, c, z, cfg.h_pos, cfg.h_neg);
            CHECK(neg_term >= prev_neg - 1e-12);
            CHECK(pos_term >= prev_pos - 1e-12);
            prev_neg = neg_term;
            prev_pos = pos_term;
        }
    }
}

TEST_CASE("infinite-bandwidth limit equals the pooled CDF difference") {
    Rng rng(6);
    Dataset d = smoothing_dataset(rng, 80);
    SmootherConfig wide{1e6, 1e6};
    for (double c : {-1.0, 0.5, 2.0, 4.0}) {
        double npos = 0, nneg = 0, below_pos = 0, below_neg = 0;
        for (const auto& s : d.samples()) {
            if (s.y > 0) {
                ++npos;
                if (s.x <= c) ++below_pos;
            } else {
                ++nneg;
                if (s.x <= c) ++below_neg;
            }
        }
        double pooled = below_neg / nneg - below_pos / npos;
        CHECK(youden_at(d, c, {5.0}, wide) == doctest::Approx(pooled).epsilon(1e-6));
    }
}

TEST_CASE("far queries raise a support error") {
    Rng rng(2);
    Dataset d = smoothing_dataset(rng, 30);
    SmootherConfig cfg{0.05, 0.05};
    CHECK_THROWS_WITH_AS(youden_at(d, 1.0, {5000.0}, cfg), doctest::Contains("support"),
                         ComputeError);
    CHECK_THROWS_AS(youden_at(d, 1.0, {1.0, 2.0}, cfg), ComputeError);  // dimension mismatch
    CHECK_THROWS_AS(youden_at(d, 1.0, {1.0}, SmootherConfig{-1.0, 1.0}), ComputeError);
}

TEST_CASE("curve evaluation sorts by the first covariate and uses model predictions") {
    Rng rng(91);
    Dataset d = smoothing_dataset(rng, 60);
    FitConfig cfg;
    cfg.lambda = 0.5;
    CaeModel m = dca_fit(d, cfg);
    std::vector<std::vector<double>> queries = {{7.0}, {2.0}, {5.0}};
    auto curve = youden_curve(d, m, queries, SmootherConfig{2.0, 2.0});
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].z[0] == 2.0);
    CHECK(curve[2].z[0] == 7.0);
    for (const auto& pt : curve) {
        CHECK(pt.c_hat == doctest::Approx(m.predict(pt.z)).epsilon(1e-14));
        CHECK(pt.j_hat == doctest::Approx(youden_at(d, pt.c_hat, pt.z, SmootherConfig{2.0, 2.0}))
                              .epsilon(1e-14));
    }
}
