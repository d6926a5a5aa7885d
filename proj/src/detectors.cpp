#include "hdad/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "hdad/parallel.hpp"
#include "hdad/rng.hpp"

namespace hdad {

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "knn_agg") return Algorithm::KnnAgg;
  if (name == "qsp") return Algorithm::Qsp;
  if (name == "lof") return Algorithm::Lof;
  if (name == "secoda") return Algorithm::Secoda;
  throw Error("unknown algorithm: " + name + " (expected knn_agg, qsp, lof, or secoda)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::KnnAgg: return "knn_agg";
    case Algorithm::Qsp: return "qsp";
    case Algorithm::Lof: return "lof";
    case Algorithm::Secoda: return "secoda";
  }
  throw Error("unknown algorithm value");
}

ScoreVector knn_agg(const EncodedMatrix& m, int k_min, int k_max) {
  std::size_t n = m.n_rows();
  if (k_min < 1 || k_min > k_max) throw Error("need 1 <= k_min <= k_max");
  if (static_cast<std::size_t>(k_max) >= n) throw Error("k_max must be below the case count");

  std::vector<double> raw(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> d2;
    d2.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d2.push_back(squared_distance(m, i, j));
    }
    std::nth_element(d2.begin(), d2.begin() + (k_max - 1), d2.end());
    std::sort(d2.begin(), d2.begin() + k_max);
    double s = 0.0;
    for (int k = k_min - 1; k <= k_max - 1; ++k) s += std::sqrt(d2[static_cast<std::size_t>(k)]);
    raw[i] = s;
  });
  return canonical_from_raw(std::move(raw));
}

ScoreVector qsp(const EncodedMatrix& m, int sample_size, std::uint64_t seed) {
  std::size_t n = m.n_rows();
  if (sample_size < 1 || static_cast<std::size_t>(sample_size) > n) {
    throw Error("sample size must be between 1 and the case count");
  }

  // Partial Fisher-Yates draw without replacement.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  std::size_t s = static_cast<std::size_t>(sample_size);
  for (std::size_t i = 0; i < s; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(s);

  std::vector<double> raw(n);
  parallel_for(n, [&](std::size_t i) {
    // Nearest sampled case other than the case itself; a sampled case with
    // every other sampled case identical to it still scores 0 via duplicates.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j : pool) {
      if (j == i) continue;
      double d2 = squared_distance(m, i, j);
      if (d2 < best) best = d2;
    }
    if (!std::isfinite(best)) best = 0.0;  // sample_size == 1 and that case is i
    raw[i] = std::sqrt(best);
  });
  return canonical_from_raw(std::move(raw));
}

ScoreVector lof(const EncodedMatrix& m, int min_pts) {
  std::size_t n = m.n_rows();
  if (min_pts < 1 || static_cast<std::size_t>(min_pts) >= n) {
    throw Error("min_pts must be between 1 and the case count minus one");
  }

  std::vector<double> k_dist(n);
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  std::vector<std::vector<double>> nbr_dist(n);

  parallel_for(n, [&](std::size_t i) {
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = std::sqrt(squared_distance(m, i, j));
    std::vector<double> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(d[j]);
    }
    std::nth_element(others.begin(), others.begin() + (min_pts - 1), others.end());
    double kd = others[static_cast<std::size_t>(min_pts - 1)];
    k_dist[i] = kd;
    for (std::size_t j = 0; j < n; ++j) {  // tie-inclusive neighbourhood
      if (j != i && d[j] <= kd) {
        nbrs[i].push_back(static_cast<std::uint32_t>(j));
        nbr_dist[i].push_back(d[j]);
      }
    }
  });

  // Fallback density scale for zero-distance neighbourhoods: the smallest
  // positive reachability distance anywhere in the data set.
  double min_pos_reach = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < nbrs[i].size(); ++t) {
      double reach = std::max(k_dist[nbrs[i][t]], nbr_dist[i][t]);
      if (reach > 0.0 && reach < min_pos_reach) min_pos_reach = reach;
    }
  }

  std::vector<double> lrd(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum_reach = 0.0;
    for (std::size_t t = 0; t < nbrs[i].size(); ++t) {
      sum_reach += std::max(k_dist[nbrs[i][t]], nbr_dist[i][t]);
    }
    if (sum_reach > 0.0) {
      lrd[i] = static_cast<double>(nbrs[i].size()) / sum_reach;
    } else if (std::isfinite(min_pos_reach)) {
      lrd[i] = 1.0 / min_pos_reach;
    } else {
      lrd[i] = 1.0;  // fully degenerate input: every case identical
    }
  }

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum_ratio = 0.0;
    for (std::uint32_t j : nbrs[i]) sum_ratio += lrd[j] / lrd[i];
    raw[i] = sum_ratio / static_cast<double>(nbrs[i].size());
  }
  return canonical_from_raw(std::move(raw));
}

DetectionResult run_detector(const DetectorSpec& spec, const Dataset& ds, Scope scope) {
  if (scope == Scope::Continuous) {
    (void)continuous_view(ds);  // validates the numeric subspace exists
  }
  if (spec.algorithm == Algorithm::Secoda) {
    Dataset target = scope == Scope::Full ? ds : continuous_view(ds).as_dataset();
    SecodaResult res = secoda(target, spec.discretization);
    return DetectionResult{std::move(res.scores), res.ultimate_arity};
  }

  EncodedMatrix m = encode(ds, scope == Scope::Full);
  switch (spec.algorithm) {
    case Algorithm::KnnAgg:
      return DetectionResult{knn_agg(m, spec.k_min, spec.k_max), std::nullopt};
    case Algorithm::Qsp: {
      int s = static_cast<int>(
          std::min<std::size_t>(static_cast<std::size_t>(spec.sample_size), m.n_rows()));
      return DetectionResult{qsp(m, s, spec.seed), std::nullopt};
    }
    case Algorithm::Lof:
      return DetectionResult{lof(m, spec.min_pts), std::nullopt};
    default:
      throw Error("unknown algorithm value");
  }
}

}  // namespace hdad
