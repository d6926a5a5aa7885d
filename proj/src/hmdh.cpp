#include "hdad/hmdh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace hdad {

WeightMode weight_mode_from_name(const std::string& name) {
  if (name == "none") return WeightMode::None;
  if (name == "sse") return WeightMode::Sse;
  if (name == "sden") return WeightMode::Sden;
  throw Error("unknown weight mode: " + name + " (expected none, sse, or sden)");
}

std::string weight_mode_name(WeightMode m) {
  switch (m) {
    case WeightMode::None: return "none";
    case WeightMode::Sse: return "sse";
    case WeightMode::Sden: return "sden";
  }
  throw Error("unknown weight mode value");
}

UnitScores to_unit(const ScoreVector& full_scores, const ScoreVector& numeric_scores) {
  if (full_scores.size() != numeric_scores.size()) {
    throw Error("score vectors must have equal length");
  }
  std::size_t n = full_scores.size();
  UnitScores u;
  u.full_unit.resize(n);
  u.numeric_unit.resize(n);

  double f_lo = full_scores.min(), f_hi = full_scores.max();
  if (f_hi == f_lo) {
    std::fill(u.full_unit.begin(), u.full_unit.end(), 0.5);
  } else {
    double inv = 1.0 / (f_hi - f_lo);
    for (std::size_t g = 0; g < n; ++g) u.full_unit[g] = (f_hi - full_scores[g]) * inv;
  }

  double d_lo = numeric_scores.min(), d_hi = numeric_scores.max();
  if (d_hi == d_lo) {
    std::fill(u.numeric_unit.begin(), u.numeric_unit.end(), 0.5);
  } else {
    double inv = 1.0 / (d_hi - d_lo);
    for (std::size_t g = 0; g < n; ++g) u.numeric_unit[g] = (numeric_scores[g] - d_lo) * inv;
  }
  return u;
}

namespace {

// Joins a case's categorical classes into one combination key. The separator
// sorts below printable characters, so key order follows class-wise
// lexicographic order.
std::string combination_key(const Dataset& ds, const std::vector<std::size_t>& cat_idx,
                            std::size_t row) {
  std::string key;
  for (std::size_t k = 0; k < cat_idx.size(); ++k) {
    if (k) key += '\x1f';
    key += ds.column(cat_idx[k]).classes[row];
  }
  return key;
}

}  // namespace

double weight_sse(const Dataset& ds) {
  auto cat_idx = ds.categorical_column_indices();
  std::size_t n = ds.n_cases();
  std::map<std::string, std::size_t> counts;
  for (std::size_t r = 0; r < n; ++r) ++counts[combination_key(ds, cat_idx, r)];

  std::size_t k = counts.size();
  if (k <= 1) return 0.0;
  double h = 0.0;
  for (const auto& kv : counts) {
    double p = static_cast<double>(kv.second) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(k));
}

double weight_sden(const ScoreVector& numeric_scores, const Dataset& ds) {
  if (numeric_scores.size() != ds.n_cases()) throw Error("score/dataset length mismatch");
  auto cat_idx = ds.categorical_column_indices();
  std::size_t n = ds.n_cases();

  std::map<std::string, std::pair<double, std::size_t>> groups;  // key -> (sum, count)
  for (std::size_t r = 0; r < n; ++r) {
    auto& g = groups[combination_key(ds, cat_idx, r)];
    g.first += numeric_scores[r];
    g.second += 1;
  }
  if (groups.size() <= 1) return 1.0;

  // Means in lexical key order; the first strict maximum wins ties.
  std::vector<double> means;
  means.reserve(groups.size());
  std::size_t argmax = 0;
  for (const auto& kv : groups) {
    means.push_back(kv.second.first / static_cast<double>(kv.second.second));
    if (means.back() > means[argmax]) argmax = means.size() - 1;
  }

  double inv_sum = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i != argmax) inv_sum += 1.0 / means[i];
  }
  double hm = static_cast<double>(means.size() - 1) / inv_sum;
  double w = hm / means[argmax];
  if (std::isnan(w)) return 0.0;
  return std::clamp(w, 0.0, 1.0);
}

double fuse_one(double full_unit, double numeric_unit, double weight) {
  // Zero weight drops the numeric component entirely, even when that
  // component is itself zero.
  if (weight == 0.0) return full_unit;
  if (full_unit == 0.0 || numeric_unit == 0.0) return 0.0;
  return (1.0 + weight) / (1.0 / full_unit + weight / numeric_unit);
}

HmdhResult hmdh(const Dataset& ds, const HmdhConfig& cfg) {
  DetectionResult full_res = run_detector(cfg.underlying, ds, Scope::Full);
  DetectionResult num_res = run_detector(cfg.underlying, ds, Scope::Continuous);

  double w;
  switch (cfg.weight_mode) {
    case WeightMode::None: w = 1.0; break;
    case WeightMode::Sse: w = weight_sse(ds); break;
    case WeightMode::Sden: w = weight_sden(num_res.scores, ds); break;
    default: throw Error("unknown weight mode value");
  }

  UnitScores u = to_unit(full_res.scores, num_res.scores);
  std::size_t n = ds.n_cases();
  std::vector<double> fused(n);
  for (std::size_t g = 0; g < n; ++g) fused[g] = fuse_one(u.full_unit[g], u.numeric_unit[g], w);

  double h_max = *std::max_element(fused.begin(), fused.end());
  for (double& v : fused) v = h_max - v;
  return HmdhResult{ScoreVector(std::move(fused)), w};
}

}  // namespace hdad
