#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "hdad/dataset.hpp"
#include "hdad/ipp.hpp"
#include "hdad/rng.hpp"
#include "hdad/secoda.hpp"

namespace {

// Exact-arithmetic index of the inverse-CDF quantile: the smallest 1-based m
// with m/n >= p/q, i.e. m*q >= p*n, clamped to [1, n]. Works entirely in
// integers, so it cannot suffer the rounding the library has to guard
// against.
std::size_t exact_quantile_index(std::size_t n, long long p, long long q) {
  long long m = (p * static_cast<long long>(n) + q - 1) / q;  // ceil(p*n/q)
  if (m < 1) m = 1;
  if (m > static_cast<long long>(n)) m = static_cast<long long>(n);
  return static_cast<std::size_t>(m);
}

// Composite-score oracle: build the decimal literal "i.rank" (rank zero-padded
// to the digit count of the subset size) and let the runtime parse it.
double oracle_composite(int iteration, int rank, std::size_t subset_size) {
  std::string digits = std::to_string(subset_size);
  std::string r = std::to_string(rank);
  while (r.size() < digits.size()) r.insert(r.begin(), '0');
  return std::stod(std::to_string(iteration) + "." + r);
}

struct OracleResult {
  std::vector<double> scores;
  std::vector<bool> fallback;
};

// Independent reimplementation of the selection loop with explicit sets and
// rational quantile fractions. qfb must be a multiple of 0.25 so the shifted
// fraction stays exactly rational: (i + qd*qfb/100)/qd = (400i + qd*j)/(400qd)
// with qfb = j/4.
OracleResult oracle_selection(const std::vector<double>& full, const std::vector<double>& num,
                              int qfb_quarters, int qd) {
  std::size_t n = full.size();
  std::vector<double> sorted_full = full, sorted_num = num;
  std::sort(sorted_full.begin(), sorted_full.end());
  std::sort(sorted_num.begin(), sorted_num.end());

  OracleResult res;
  res.scores.assign(n, 0.0);
  res.fallback.assign(n, true);
  std::set<std::size_t> scored;

  for (int i = 1; i <= qd; ++i) {
    double full_cut = sorted_full[exact_quantile_index(n, i, qd) - 1];
    long long pn = 400LL * i + static_cast<long long>(qd) * qfb_quarters;
    long long qn = 400LL * qd;
    // cap at (qd-1)/qd, compared exactly by cross-multiplication
    double num_cut;
    if (pn * qd >= (static_cast<long long>(qd) - 1) * qn) {
      num_cut = sorted_num[exact_quantile_index(n, qd - 1, qd) - 1];
    } else {
      num_cut = sorted_num[exact_quantile_index(n, pn, qn) - 1];
    }

    std::set<std::size_t> isolated_full, isolated_num, subset_set;
    for (std::size_t g = 0; g < n; ++g) {
      if (full[g] < full_cut) isolated_full.insert(g);
      if (num[g] < num_cut) isolated_num.insert(g);
    }
    std::set_difference(isolated_full.begin(), isolated_full.end(), isolated_num.begin(),
                        isolated_num.end(), std::inserter(subset_set, subset_set.begin()));
    std::vector<std::size_t> subset;
    for (std::size_t g : subset_set) {
      if (scored.count(g) == 0) subset.push_back(g);
    }
    if (subset.empty()) continue;
    std::stable_sort(subset.begin(), subset.end(), [&](std::size_t a, std::size_t b) {
      if (full[a] != full[b]) return full[a] < full[b];
      return num[a] > num[b];
    });
    for (std::size_t r = 0; r < subset.size(); ++r) {
      res.scores[subset[r]] = oracle_composite(i, static_cast<int>(r) + 1, subset.size());
      res.fallback[subset[r]] = false;
      scored.insert(subset[r]);
    }
  }
  double max_num = *std::max_element(num.begin(), num.end());
  for (std::size_t g = 0; g < n; ++g) {
    if (res.fallback[g]) res.scores[g] = 1.0 + max_num - num[g] + static_cast<double>(qd);
  }
  return res;
}

}  // namespace

TEST_CASE("inverse-CDF quantile on a sorted vector") {
  std::vector<double> v = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  CHECK(hdad::quantile_sorted(v, 0.5) == 50);
  CHECK(hdad::quantile_sorted(v, 0.51) == 60);
  CHECK(hdad::quantile_sorted(v, 0.05) == 10);
  CHECK(hdad::quantile_sorted(v, 1.0) == 100);
  CHECK(hdad::quantile_sorted(v, 0.999) == 100);
  CHECK(hdad::quantile_sorted(v, 0.0) == 10);  // everything reaches fraction zero
  std::vector<double> w = {1, 2, 3};
  CHECK(hdad::quantile_sorted(w, 1.0 / 3.0) == 1);
  CHECK(hdad::quantile_sorted(w, 2.0 / 3.0) == 2);
  CHECK_THROWS_AS(hdad::quantile_sorted({}, 0.5), hdad::Error);
  CHECK_THROWS_AS(hdad::quantile_sorted(w, 1.5), hdad::Error);
  CHECK_THROWS_AS(hdad::quantile_sorted(w, -0.1), hdad::Error);
}

TEST_CASE("gridline fractions never straddle floating-point rounding") {
  // With sorted values 1..n the quantile IS the index, so the library result
  // can be compared against exact integer arithmetic for every gridline.
  for (std::size_t n : {3ul, 7ul, 10ul, 31ul, 97ul}) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
    for (int qd : {1, 3, 7, 10, 33, 100}) {
      for (int i = 1; i <= qd; ++i) {
        double qp = static_cast<double>(i) / static_cast<double>(qd);
        auto want = static_cast<double>(exact_quantile_index(n, i, qd));
        INFO("n=", n, " i=", i, " qd=", qd);
        REQUIRE(hdad::quantile_sorted(v, qp) == want);
      }
    }
  }
}

TEST_CASE("composite iteration scores are exact decimals") {
  CHECK(hdad::encode_iteration_score(3, 2, 19) == 3.02);
  CHECK(hdad::encode_iteration_score(1, 1, 5) == 1.1);
  CHECK(hdad::encode_iteration_score(2, 10, 10) == 2.10);
  CHECK(hdad::encode_iteration_score(7, 123, 500) == 7.123);
  CHECK(hdad::encode_iteration_score(12, 34, 99) == 12.34);
  CHECK(hdad::encode_iteration_score(100, 1, 1) == 100.1);
  for (int rank = 1; rank <= 200; ++rank) {
    REQUIRE(hdad::encode_iteration_score(9, rank, 200) == oracle_composite(9, rank, 200));
  }
  CHECK_THROWS_AS(hdad::encode_iteration_score(0, 1, 1), hdad::Error);
  CHECK_THROWS_AS(hdad::encode_iteration_score(1, 0, 1), hdad::Error);
  CHECK_THROWS_AS(hdad::encode_iteration_score(1, 3, 2), hdad::Error);
}

TEST_CASE("auto boost scales expected density against observed density") {
  // expected region density 1000/10^2 = 10; 2 * (10/100) * 100 = 20
  CHECK(hdad::calculate_qfb(100.0, 1000, 2, 10) == doctest::Approx(20.0));
  CHECK(hdad::calculate_qfb(50.0, 500, 3, 5) == doctest::Approx(2.0 * (500.0 / 125.0 / 50.0) * 100.0));
  CHECK_THROWS_AS(hdad::calculate_qfb(0.0, 10, 1, 2), hdad::Error);
  CHECK_THROWS_AS(hdad::calculate_qfb(5.0, 10, 1, 0), hdad::Error);
}

TEST_CASE("a case isolated overall but dense numerically is pushed out early") {
  // full scores ascending, numeric scores descending: the overall-most-
  // anomalous cases sit in the densest numeric company, worked by hand.
  hdad::ScoreVector full({1, 2, 3, 4, 5, 6});
  hdad::ScoreVector num({6, 5, 4, 3, 2, 1});
  hdad::IppResult res = hdad::ipp_from_scores(full, num, 0.0, 3);
  CHECK(res.scores[0] == 1.1);
  CHECK(res.scores[1] == 2.1);
  CHECK(res.scores[2] == 2.2);
  CHECK(res.scores[3] == 7.0);
  CHECK(res.scores[4] == 8.0);
  CHECK(res.scores[5] == 9.0);
  CHECK(res.provenance[0] == hdad::Provenance::Iteration);
  CHECK(res.provenance[2] == hdad::Provenance::Iteration);
  CHECK(res.provenance[3] == hdad::Provenance::Fallback);
  CHECK(res.provenance[5] == hdad::Provenance::Fallback);
}

TEST_CASE("subset ordering: overall score, then numeric density, then id") {
  hdad::ScoreVector full({0, 0, 0, 5});
  hdad::ScoreVector num({2, 3, 2, 0});
  hdad::IppResult res = hdad::ipp_from_scores(full, num, 0.0, 2);
  CHECK(res.scores[1] == 2.1);  // densest numeric company wins the tie
  CHECK(res.scores[0] == 2.2);  // id breaks the remaining tie
  CHECK(res.scores[2] == 2.3);
  CHECK(res.scores[3] == 6.0);  // 1 + (3 - 0) + 2
}

TEST_CASE("identical score vectors leave everything to the fallback") {
  std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  hdad::ScoreVector s(v);
  // More gridlines than cases: every numeric cut reaches the maximum, so no
  // case can be below the overall cut yet at/above the numeric cut.
  hdad::IppResult res = hdad::ipp_from_scores(s, s, 2.0, 100);
  for (std::size_t g = 0; g < v.size(); ++g) {
    CHECK(res.provenance[g] == hdad::Provenance::Fallback);
    CHECK(res.scores[g] == 111.0 - v[g]);  // 1 + (10 - v) + 100
  }
}

TEST_CASE("fallback ranks leftover cases by numeric density") {
  std::vector<double> v = {4, 1, 3, 2};
  hdad::IppResult res = hdad::ipp_from_scores(hdad::ScoreVector(v), hdad::ScoreVector(v), 0.0, 8);
  // densest numeric neighbourhood (highest numeric score) is most suspicious
  CHECK(hdad::rank_of(res.scores, 1) == 1);
  CHECK(hdad::rank_of(res.scores, 2) == 4);
}

TEST_CASE("selection matches the set-difference oracle on randomized inputs") {
  hdad::Rng rng(606);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = 3 + rng.below(90);
    std::vector<double> full(n), num(n);
    for (std::size_t i = 0; i < n; ++i) {
      // coarse grids create plenty of exact ties in both vectors
      full[i] = static_cast<double>(rng.below(20)) / 2.0;
      num[i] = static_cast<double>(rng.below(16)) / 4.0;
    }
    int qd = 1 + static_cast<int>(rng.below(40));
    if (trial % 7 == 0) qd = 100;
    int quarters = static_cast<int>(rng.below(101));  // qfb in 0 .. 25 by 0.25
    double qfb = static_cast<double>(quarters) / 4.0;

    hdad::ScoreVector fs(full), ns(num);
    hdad::IppResult seq = hdad::ipp_from_scores(fs, ns, qfb, qd);
    hdad::IppResult par = hdad::ipp_from_scores_parallel(fs, ns, qfb, qd);
    OracleResult want = oracle_selection(full, num, quarters, qd);

    for (std::size_t g = 0; g < n; ++g) {
      INFO("trial ", trial, " case ", g, " qd=", qd, " qfb=", qfb);
      REQUIRE(seq.scores[g] == want.scores[g]);
      REQUIRE((seq.provenance[g] == hdad::Provenance::Fallback) == want.fallback[g]);
      REQUIRE(par.scores[g] == seq.scores[g]);
      REQUIRE(par.provenance[g] == seq.provenance[g]);
      // scored-in-loop values stay below qd+1; fallback values start there
      if (seq.provenance[g] == hdad::Provenance::Iteration) {
        REQUIRE(seq.scores[g] < static_cast<double>(qd) + 1.0);
      } else {
        REQUIRE(seq.scores[g] >= static_cast<double>(qd) + 1.0);
      }
    }
  }
}

TEST_CASE("framework validation") {
  hdad::ScoreVector a({1, 2, 3});
  hdad::ScoreVector b({1, 2});
  CHECK_THROWS_AS(hdad::ipp_from_scores(a, b, 0.0, 10), hdad::Error);
  CHECK_THROWS_AS(hdad::ipp_from_scores(a, a, -1.0, 10), hdad::Error);
  CHECK_THROWS_AS(hdad::ipp_from_scores(a, a, 0.0, 0), hdad::Error);
  CHECK_THROWS_AS(hdad::ipp_from_scores(a, a, 0.0, 10001), hdad::Error);
}

TEST_CASE("full pipeline resolves the automatic boost from the numeric subspace") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {}, {}};
  hdad::Column y{"y", hdad::ColumnKind::Numeric, {}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {}};
  hdad::Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    x.numeric.push_back(rng.normal(5.0, 1.0));
    y.numeric.push_back(rng.normal(5.0, 1.0));
    c.classes.push_back(i % 2 == 0 ? "a" : "b");
  }
  hdad::Dataset ds({x, y, c});

  hdad::IppConfig cfg;
  cfg.underlying.algorithm = hdad::Algorithm::Secoda;
  hdad::IppResult res = hdad::ipp(ds, cfg);
  CHECK(res.scores.size() == 60);
  CHECK(res.provenance.size() == 60);

  // auto boost equals the closed-form value from a numeric-subspace pass
  hdad::Dataset numeric_only = hdad::continuous_view(ds).as_dataset();
  hdad::SecodaResult sec = hdad::secoda(numeric_only);
  double want = hdad::calculate_qfb(sec.scores.mean(), 60, 2, sec.ultimate_arity);
  CHECK(res.qfb_used == doctest::Approx(want));

  // a fixed boost is passed straight through
  cfg.qfb = 7.5;
  CHECK(hdad::ipp(ds, cfg).qfb_used == 7.5);
}

TEST_CASE("distance-based underlying detectors drive the same machinery") {
  hdad::Column x{"x", hdad::ColumnKind::Numeric, {}, {}};
  hdad::Column c{"c", hdad::ColumnKind::Categorical, {}, {}};
  hdad::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    x.numeric.push_back(rng.uniform(0.0, 1.0));
    c.classes.push_back("main");
  }
  // numerically interior case with a unique class: isolated overall, dense
  // numerically, exactly the profile the loop promotes
  x.numeric.push_back(0.5);
  c.classes.push_back("odd");
  hdad::Dataset ds({x, c});

  hdad::IppConfig cfg;
  cfg.underlying.algorithm = hdad::Algorithm::KnnAgg;
  cfg.underlying.k_max = 5;
  hdad::IppResult res = hdad::ipp(ds, cfg);
  CHECK(res.provenance[40] == hdad::Provenance::Iteration);
  CHECK(hdad::rank_of(res.scores, 41) == 1);
}
