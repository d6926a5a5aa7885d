#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace hdad {

// Anomaly scores for the cases of one dataset, one value per case in case-id
// order. Orientation is fixed library-wide: the LOWEST value marks the MOST
// anomalous case. Detectors whose natural output grows with anomalousness
// are negated on the way in (see canonical_from_raw).
class ScoreVector {
 public:
  static constexpr std::string_view kOrientation = "lowest value = most anomalous";

  explicit ScoreVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t idx0) const { return values_[idx0]; }
  double at_id(int id) const;  // 1-based case id
  const std::vector<double>& values() const { return values_; }

  double min() const;
  double max() const;
  double mean() const;

 private:
  std::vector<double> values_;
};

// Negates a raw "higher = more anomalous" vector into canonical orientation.
ScoreVector canonical_from_raw(std::vector<double> raw_higher_is_anomalous);

// 1-based ascending rank of case `id` (1 = most anomalous). Ties broken by
// ascending case id.
int rank_of(const ScoreVector& scores, int id);

// 0-based case indices ordered by (value ascending, id ascending).
std::vector<std::size_t> order_ascending(const std::vector<double>& values);

}  // namespace hdad
