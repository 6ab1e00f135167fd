#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cutpoint/dataset.hpp"
#include "cutpoint/errors.hpp"
#include "helpers.hpp"

using namespace cutpoint;

TEST_CASE("load_csv maps default 0/1 labels") {
    auto path = testutil::write_temp("basic.csv", "x,y\n1.5,0\n2.5,1\n0.5,0\n");
    CsvSchema schema{"x", "y", {}, 0.0, 1.0};
    Dataset d = load_csv(path, schema);
    CHECK(d.size() == 3);
    CHECK(d.n_pos() == 1);
    CHECK(d.n_neg() == 2);
    CHECK(d.dim() == 0);
    CHECK(d[1].x == 2.5);
    CHECK(d[1].y == 1);
}

TEST_CASE("load_csv rejects unmapped labels naming the line") {
    auto path = testutil::write_temp("badlabel.csv", "x,y\n1,0\n2,2\n");
    CsvSchema schema{"x", "y", {}, 0.0, 1.0};
    CHECK_THROWS_WITH_AS(load_csv(path, schema), doctest::Contains("line 3"), ParseError);
}

TEST_CASE("load_csv errors") {
    CsvSchema schema{"x", "y", {}, 0.0, 1.0};
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", schema), ParseError);

    auto missing = testutil::write_temp("missingcol.csv", "a,y\n1,0\n");
    CHECK_THROWS_WITH_AS(load_csv(missing, schema), doctest::Contains("'x'"), ParseError);

    auto nonnum = testutil::write_temp("nonnum.csv", "x,y\n1,0\nfoo,1\n");
    CHECK_THROWS_WITH_AS(load_csv(nonnum, schema), doctest::Contains("line 3"), ParseError);

    auto ragged = testutil::write_temp("ragged.csv", "x,y\n1,0,9\n");
    CHECK_THROWS_AS(load_csv(ragged, schema), ParseError);

    auto empty = testutil::write_temp("empty.csv", "");
    CHECK_THROWS_AS(load_csv(empty, schema), ParseError);

    auto nonfinite = testutil::write_temp("inf.csv", "x,y\ninf,0\n");
    CHECK_THROWS_AS(load_csv(nonfinite, schema), ParseError);
}

TEST_CASE("load_csv accepts already-encoded labels under the default encoding") {
    auto path = testutil::write_temp("pm1.csv", "x,y\n1,-1\n2,1\n");
    Dataset d = load_csv(path, CsvSchema{"x", "y", {}, 0.0, 1.0});
    CHECK(d.n_pos() == 1);
    CHECK(d.n_neg() == 1);

    // a declared non-default encoding stays strict
    auto path2 = testutil::write_temp("pm2.csv", "x,y\n1,-1\n2,2\n");
    CsvSchema strict{"x", "y", {}, 1.0, 2.0};
    CHECK_THROWS_AS(load_csv(path2, strict), ParseError);
}

TEST_CASE("load_csv reads covariate columns in schema order") {
    auto path = testutil::write_temp("cov.csv", "age,x,y,bmi\n30,1,0,25\n40,2,1,28\n");
    CsvSchema schema{"x", "y", {"bmi", "age"}, 0.0, 1.0};
    Dataset d = load_csv(path, schema);
    CHECK(d.dim() == 2);
    CHECK(d[0].z[0] == 25.0);
    CHECK(d[0].z[1] == 30.0);
}

TEST_CASE("bundled diabetes file has the study's shape") {
    Dataset d = load_csv(std::string(CUTPOINT_DATA_DIR) + "/pima_synth.csv", pima_schema());
    CHECK(d.size() == 768);
    CHECK(d.n_pos() == 268);
    CHECK(d.n_neg() == 500);
    ClassWeights w = class_weights(d);
    CHECK(w.w_pos == doctest::Approx(768.0 / 268.0).epsilon(1e-15));
}

TEST_CASE("pima_filter drops zero glucose and age >= 60, keeps order") {
    std::vector<LabeledSample> ss = {
        {0.0, 1, {30.0}},     // zero marker: removed
        {120.0, 1, {60.0}},   // age 60: removed
        {120.0, -1, {59.0}},  // kept
        {95.0, 1, {21.0}},    // kept
    };
    Dataset d(ss);
    Dataset f = pima_filter(d);
    REQUIRE(f.size() == 2);
    CHECK(f[0].x == 120.0);
    CHECK(f[0].z[0] == 59.0);
    CHECK(f[1].x == 95.0);

    Dataset all_bad(std::vector<LabeledSample>{{0.0, 1, {30.0}}, {10.0, -1, {61.0}}});
    CHECK_THROWS_AS(pima_filter(all_bad), ComputeError);
}

TEST_CASE("class_weights formulas") {
    {
        auto d = testutil::make_dataset({1, 2, 3, 4, 5}, {0, 0, 0, 0, 0});
        ClassWeights w = class_weights(d);
        CHECK(w.w_pos == 2.0);
        CHECK(w.w_neg == 2.0);
    }
    {
        auto d = testutil::make_dataset({1, 2}, {0, 0, 0, 0, 0, 0, 0, 0});
        ClassWeights w = class_weights(d);
        CHECK(w.w_pos == 5.0);
        CHECK(w.w_neg == 1.25);
    }
    auto one_class = testutil::make_dataset({1, 2}, {});
    CHECK_THROWS_AS(class_weights(one_class), ComputeError);
}

TEST_CASE("dataset construction validates samples") {
    CHECK_THROWS_AS(Dataset(std::vector<LabeledSample>{{1.0, 2, {}}}), ParseError);
    CHECK_THROWS_AS(Dataset(std::vector<LabeledSample>{{NAN, 1, {}}}), ParseError);
    CHECK_THROWS_AS(Dataset(std::vector<LabeledSample>{{1.0, 1, {1.0}}, {2.0, -1, {}}}), ParseError);
    CHECK_THROWS_AS(Dataset(std::vector<LabeledSample>{{1.0, 1, {INFINITY}}}), ParseError);
}

TEST_CASE("csv round trip is exact for random datasets") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.below(40);
        std::size_t p = rng.below(3);
        Dataset d = testutil::random_dataset(rng, n, p);
        CHECK(d.n_pos() + d.n_neg() == d.size());

        std::ostringstream os;
        write_csv(os, d);
        auto path = testutil::write_temp("roundtrip.csv", os.str());
        CsvSchema schema{"x", "y", {}, 0.0, 1.0};
        for (std::size_t j = 0; j < p; ++j) schema.covariates.push_back("z" + std::to_string(j + 1));
        Dataset back = load_csv(path, schema);
        REQUIRE(back.size() == d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(back[i].x == d[i].x);
            CHECK(back[i].y == d[i].y);
            for (std::size_t j = 0; j < p; ++j) CHECK(back[i].z[j] == d[i].z[j]);
        }
    }
}
