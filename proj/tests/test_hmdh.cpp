#include <cmath>
#include <vector>

#include <doctest.h>

#include "hdad/dataset.hpp"
#include "hdad/hmdh.hpp"
#include "hdad/rng.hpp"
#include "hdad/scores.hpp"

namespace {

hdad::Dataset one_cat_dataset(const std::vector<std::string>& classes) {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, std::vector<double>(classes.size(), 0.0), {}};
  for (std::size_t i = 0; i < classes.size(); ++i) x.numeric[i] = static_cast<double>(i);
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, classes};
  return hdad::Dataset({x, c});
}

}  // namespace

TEST_CASE("unit rescaling reverses the overall scores and keeps density direction") {
  hdad::ScoreVector full({1, 2, 3});
  hdad::ScoreVector num({1, 2, 3});
  hdad::UnitScores u = hdad::to_unit(full, num);
  // overall: the minimum (most anomalous) maps to 1
  CHECK(u.full_unit[0] == 1.0);
  CHECK(u.full_unit[1] == 0.5);
  CHECK(u.full_unit[2] == 0.0);
  // numeric: the maximum (densest company) maps to 1
  CHECK(u.numeric_unit[0] == 0.0);
  CHECK(u.numeric_unit[1] == 0.5);
  CHECK(u.numeric_unit[2] == 1.0);
}

TEST_CASE("constant score vectors rescale to one half") {
  hdad::ScoreVector flat({4, 4, 4});
  hdad::ScoreVector num({1, 2, 3});
  hdad::UnitScores u = hdad::to_unit(flat, num);
  CHECK(u.full_unit[0] == 0.5);
  CHECK(u.full_unit[2] == 0.5);
  hdad::UnitScores v = hdad::to_unit(num, flat);
  CHECK(v.numeric_unit[1] == 0.5);
}

TEST_CASE("class-entropy weight") {
  SUBCASE("uniform two-class split carries full entropy") {
    CHECK(hdad::weight_sse(one_cat_dataset({"a", "b", "a", "b"})) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("single class carries none") {
    CHECK(hdad::weight_sse(one_cat_dataset({"a", "a", "a"})) == 0.0);
  }
  SUBCASE("no categorical columns carries none") {
    hdad::Column x{"x", hdad::ColumnKind::Numeric, {1, 2, 3}, {}};
    CHECK(hdad::weight_sse(hdad::Dataset({x})) == 0.0);
  }
  SUBCASE("skewed split against a hand computation") {
    double h = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25)) / std::log(2.0);
    CHECK(hdad::weight_sse(one_cat_dataset({"a", "a", "a", "b"})) == doctest::Approx(h));
  }
  SUBCASE("combinations span all categorical columns") {
    hdad::Column x{"x", hdad::ColumnKind::Numeric, {1, 2, 3, 4}, {}};
    hdad::Column c1{"c1", hdad::ColumnKind::Categorical, {}, {"a", "a", "b", "b"}};
    hdad::Column c2{"c2", hdad::ColumnKind::Categorical, {}, {"x", "x", "x", "y"}};
    // combinations: (a,x) twice, (b,x), (b,y) -> probabilities 1/2, 1/4, 1/4
    double h = -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25)) / std::log(3.0);
    CHECK(hdad::weight_sse(hdad::Dataset({x, c1, c2})) == doctest::Approx(h));
  }
}

TEST_CASE("density-balance weight") {
  SUBCASE("one dominant mean against two equal ones") {
    hdad::Dataset ds = one_cat_dataset({"a", "b", "c"});
    hdad::ScoreVector num({20, 10, 10});
    CHECK(hdad::weight_sden(num, ds) == doctest::Approx(0.5));
  }
  SUBCASE("tied maxima resolve to the lexically first combination") {
    hdad::Dataset ds = one_cat_dataset({"a", "b", "c"});
    hdad::ScoreVector num({10, 10, 5});
    // max is class a; harmonic mean of {10, 5} is 20/3
    CHECK(hdad::weight_sden(num, ds) == doctest::Approx((20.0 / 3.0) / 10.0));
  }
  SUBCASE("single observed combination yields one") {
    hdad::Dataset ds = one_cat_dataset({"a", "a", "a"});
    CHECK(hdad::weight_sden(hdad::ScoreVector({1, 2, 3}), ds) == 1.0);
  }
  SUBCASE("all-zero means collapse to zero instead of NaN") {
    hdad::Dataset ds = one_cat_dataset({"a", "b"});
    CHECK(hdad::weight_sden(hdad::ScoreVector({0, 0}), ds) == 0.0);
  }
  SUBCASE("the weight never leaves the unit interval") {
    hdad::Dataset ds = one_cat_dataset({"a", "b"});
    CHECK(hdad::weight_sden(hdad::ScoreVector({-1, -2}), ds) == 1.0);  // clamped
    hdad::Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::string> cls;
      std::vector<double> sc;
      for (int i = 0; i < 12; ++i) {
        cls.push_back(std::string(1, static_cast<char>('a' + rng.below(4))));
        sc.push_back(1.0 + static_cast<double>(rng.below(30)));
      }
      double w = hdad::weight_sden(hdad::ScoreVector(sc), one_cat_dataset(cls));
      REQUIRE(w >= 0.0);
      REQUIRE(w <= 1.0);
    }
  }
  SUBCASE("means group per combination, averaged over member cases") {
    hdad::Dataset ds = one_cat_dataset({"a", "a", "b", "b"});
    hdad::ScoreVector num({30, 10, 8, 12});  // means: a -> 20, b -> 10
    CHECK(hdad::weight_sden(num, ds) == doctest::Approx(0.5));
  }
}

TEST_CASE("harmonic fusion of one case") {
  CHECK(hdad::fuse_one(0.5, 0.5, 1.0) == doctest::Approx(0.5));
  CHECK(hdad::fuse_one(1.0, 1.0, 3.0) == doctest::Approx(1.0));
  CHECK(hdad::fuse_one(0.8, 0.4, 1.0) == doctest::Approx(2.0 / (1.0 / 0.8 + 1.0 / 0.4)));
  // either component at zero pins the fusion to zero
  CHECK(hdad::fuse_one(0.0, 0.9, 1.0) == 0.0);
  CHECK(hdad::fuse_one(0.9, 0.0, 1.0) == 0.0);
  // zero weight reduces to the overall score bit-for-bit
  CHECK(hdad::fuse_one(0.37, 0.9, 0.0) == 0.37);
  CHECK(hdad::fuse_one(0.123456789, 0.001, 0.0) == 0.123456789);
  // heavier weight pulls the fusion toward the numeric component
  double light = hdad::fuse_one(0.9, 0.1, 0.5);
  double heavy = hdad::fuse_one(0.9, 0.1, 4.0);
  CHECK(heavy < light);
}

TEST_CASE("full fusion pipeline promotes the class-odd dense case") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {}, {}};
  hdad::Column y{"y", hdad::ColumnKind::Numeric, {}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {}};
  hdad::Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    x.numeric.push_back(rng.normal(0.0, 1.0));
    y.numeric.push_back(rng.normal(0.0, 1.0));
    c.classes.push_back(i % 2 == 0 ? "u" : "v");
  }
  // dead centre of the cloud, but with a class of its own
  x.numeric.push_back(0.0);
  y.numeric.push_back(0.0);
  c.classes.push_back("w");
  hdad::Dataset ds({x, y, c});

  hdad::HmdhConfig cfg;
  cfg.underlying.algorithm = hdad::Algorithm::KnnAgg;
  cfg.underlying.k_max = 5;
  for (auto mode : {hdad::WeightMode::None, hdad::WeightMode::Sse, hdad::WeightMode::Sden}) {
    cfg.weight_mode = mode;
    hdad::HmdhResult res = hdad::hmdh(ds, cfg);
    INFO("mode ", hdad::weight_mode_name(mode));
    CHECK(hdad::rank_of(res.scores, 51) == 1);
    CHECK(res.scores.min() == 0.0);  // re-orientation pins the top case at zero
  }
}

TEST_CASE("degenerate entropy weight reduces the fusion to the overall ranking") {
  // single class everywhere -> entropy weight 0 -> scores must order exactly
  // like the overall detector's scores
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {}};
  hdad::Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    x.numeric.push_back(rng.uniform(0.0, 10.0));
    c.classes.push_back("only");
  }
  hdad::Dataset ds({x, c});

  hdad::HmdhConfig cfg;
  cfg.weight_mode = hdad::WeightMode::Sse;
  cfg.underlying.algorithm = hdad::Algorithm::KnnAgg;
  cfg.underlying.k_max = 4;
  hdad::HmdhResult res = hdad::hmdh(ds, cfg);
  CHECK(res.weight_used == 0.0);

  hdad::DetectionResult full =
      hdad::run_detector(cfg.underlying, ds, hdad::Scope::Full);
  CHECK(hdad::order_ascending(res.scores.values()) ==
        hdad::order_ascending(full.scores.values()));
}

TEST_CASE("weight mode names round-trip") {
  CHECK(hdad::weight_mode_from_name("sden") == hdad::WeightMode::Sden);
  CHECK(hdad::weight_mode_name(hdad::WeightMode::Sse) == "sse");
  CHECK_THROWS_AS(hdad::weight_mode_from_name("bogus"), hdad::Error);
}
