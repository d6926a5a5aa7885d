#include "hdad/scores.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hdad/dataset.hpp"

namespace hdad {

ScoreVector::ScoreVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error("score vector must be non-empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("score vector contains a non-finite value");
  }
}

double ScoreVector::at_id(int id) const {
  if (id < 1 || static_cast<std::size_t>(id) > values_.size()) {
    throw Error("case id out of range: " + std::to_string(id));
  }
  return values_[static_cast<std::size_t>(id) - 1];
}

double ScoreVector::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScoreVector::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScoreVector::mean() const {
  double s = std::accumulate(values_.begin(), values_.end(), 0.0);
  return s / static_cast<double>(values_.size());
}

ScoreVector canonical_from_raw(std::vector<double> raw) {
  for (double& v : raw) v = -v;
  return ScoreVector(std::move(raw));
}

int rank_of(const ScoreVector& scores, int id) {
  double s = scores.at_id(id);
  std::size_t self = static_cast<std::size_t>(id) - 1;
  int rank = 1;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    double v = scores[i];
    if (v < s || (v == s && i < self)) ++rank;
  }
  return rank;
}

std::vector<std::size_t> order_ascending(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return idx;
}

}  // namespace hdad
