#pragma once

#include <string>
#include <vector>

#include "hdad/dataset.hpp"
#include "hdad/detectors.hpp"
#include "hdad/scores.hpp"

namespace hdad {

enum class WeightMode { None, Sse, Sden };

WeightMode weight_mode_from_name(const std::string& name);  // none|sse|sden
std::string weight_mode_name(WeightMode m);

struct HmdhConfig {
  WeightMode weight_mode = WeightMode::None;
  DetectorSpec underlying{};
};

struct UnitScores {
  std::vector<double> full_unit;     // 1 = most anomalous overall
  std::vector<double> numeric_unit;  // 1 = densest numeric neighbourhood
};

// Rescales the two score vectors to [0,1]: the full-space vector is reversed
// (its minimum, the most anomalous case, maps to 1) while the numeric vector
// keeps its direction (its maximum, the densest case, maps to 1). A constant
// vector maps to all 0.5.
UnitScores to_unit(const ScoreVector& full_scores, const ScoreVector& numeric_scores);

// Normalized Shannon entropy of the observed categorical class-combination
// distribution: -sum(p ln p)/ln K over the K distinct observed combinations
// (0 when K == 1).
double weight_sse(const Dataset& ds);

// Balance of per-combination mean numeric density: harmonic mean of the
// non-maximal combination means divided by the maximal mean, clamped to
// [0,1]. Ties for the maximum resolve to the lexically first combination;
// a single observed combination yields weight 1.
double weight_sden(const ScoreVector& numeric_scores, const Dataset& ds);

// Weighted harmonic fusion of one case's unit scores:
// (1+w) / (1/full_unit + w/numeric_unit), 0 if either component is 0.
double fuse_one(double full_unit, double numeric_unit, double weight);

struct HmdhResult {
  ScoreVector scores;
  double weight_used = 1.0;
};

// Harmonic-mean detection: scores both scopes with the underlying detector,
// rescales to the unit interval, fuses with the configured weight, and
// re-orients so the highest fusion value becomes the lowest final score.
HmdhResult hmdh(const Dataset& ds, const HmdhConfig& cfg);

}  // namespace hdad
