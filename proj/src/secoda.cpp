#include "hdad/secoda.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace hdad {

std::vector<int> discretize(const std::vector<double>& column, int b, Discretization mode) {
  if (b < 1) throw Error("bin count must be at least 1");
  if (column.empty()) throw Error("cannot discretize an empty column");
  std::size_t n = column.size();
  std::vector<int> bins(n, 1);
  if (b == 1) return bins;

  if (mode == Discretization::Equiwidth) {
    auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
    double lo = *lo_it, hi = *hi_it;
    if (hi == lo) return bins;  // constant column: single occupied bin
    double inv = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
      double t = (column[i] - lo) * inv;  // in [0, 1]
      int bin = static_cast<int>(std::floor(t * b)) + 1;  // interior edges rise
      if (bin > b) bin = b;
      if (bin < 1) bin = 1;
      bins[i] = bin;
    }
  } else {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&column](std::size_t a, std::size_t b2) {
      return column[a] < column[b2];
    });
    for (std::size_t pos = 0; pos < n; ++pos) {
      unsigned long long rank = pos + 1;
      unsigned long long bin = (rank * static_cast<unsigned long long>(b) + n - 1) / n;  // ceil
      bins[order[pos]] = static_cast<int>(bin);
    }
  }
  return bins;
}

int default_b_max(std::size_t n_cases, std::size_t n_numeric_columns) {
  if (n_numeric_columns == 0) return 1;  // tuples cannot change with more bins
  // Smallest integer root: least m with m^p >= n, computed in exact integers
  // to dodge pow() rounding on perfect powers.
  unsigned long long n = n_cases;
  unsigned long long m = 1;
  auto power_reaches = [&](unsigned long long base) {
    unsigned long long acc = 1;
    for (std::size_t i = 0; i < n_numeric_columns; ++i) {
      if (acc > n / base + 1) return true;
      acc *= base;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  while (!power_reaches(m)) ++m;
  return static_cast<int>(4 * m);
}

SecodaResult secoda(const Dataset& ds, Discretization mode, std::optional<int> b_max_opt) {
  std::size_t n = ds.n_cases();
  auto num_idx = ds.numeric_column_indices();
  auto cat_idx = ds.categorical_column_indices();
  std::size_t p = num_idx.size();

  int b_max = b_max_opt.value_or(default_b_max(n, p));
  if (b_max < 1) throw Error("b_max must be at least 1");
  if (p == 0) b_max = 1;

  // Dense per-case class ids, fixed across passes.
  std::vector<std::vector<int>> cat_ids;
  for (std::size_t ci : cat_idx) {
    const auto& classes = ds.column(ci).classes;
    std::unordered_map<std::string, int> dict;
    std::vector<int> ids(n);
    for (std::size_t r = 0; r < n; ++r) {
      ids[r] = dict.emplace(classes[r], static_cast<int>(dict.size())).first->second;
    }
    cat_ids.push_back(std::move(ids));
  }

  std::vector<double> sum_scores(n, 0.0);
  int passes = 0;
  int b = 0;
  std::vector<std::vector<int>> bins(p);
  std::string key;
  while (true) {
    ++b;
    for (std::size_t j = 0; j < p; ++j) bins[j] = discretize(ds.column(num_idx[j]).numeric, b, mode);

    std::unordered_map<std::string, int> counts;
    counts.reserve(n * 2);
    auto build_key = [&](std::size_t r) {
      key.clear();
      for (std::size_t j = 0; j < p; ++j) {
        key.append(reinterpret_cast<const char*>(&bins[j][r]), sizeof(int));
      }
      for (const auto& ids : cat_ids) {
        key.append(reinterpret_cast<const char*>(&ids[r]), sizeof(int));
      }
    };
    for (std::size_t r = 0; r < n; ++r) {
      build_key(r);
      ++counts[key];
    }
    int max_freq = 0;
    for (std::size_t r = 0; r < n; ++r) {
      build_key(r);
      int f = counts[key];
      sum_scores[r] += f;
      if (f > max_freq) max_freq = f;
    }
    ++passes;
    if (max_freq <= 1 || b >= b_max) break;
  }

  for (double& s : sum_scores) s /= passes;
  return SecodaResult{ScoreVector(std::move(sum_scores)), b};
}

}  // namespace hdad
