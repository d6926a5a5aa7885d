#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hdad/dataset.hpp"
#include "hdad/encode.hpp"
#include "hdad/scores.hpp"
#include "hdad/secoda.hpp"

namespace hdad {

enum class Algorithm { KnnAgg, Qsp, Lof, Secoda };

Algorithm algorithm_from_name(const std::string& name);  // knn_agg|qsp|lof|secoda
std::string algorithm_name(Algorithm a);

// Whether a detector scores the full attribute space or only the numeric
// columns.
enum class Scope { Full, Continuous };

// Configuration for one detector run. Parameters irrelevant to the chosen
// algorithm are ignored.
struct DetectorSpec {
  Algorithm algorithm = Algorithm::Secoda;
  int k_min = 1;        // knn_agg
  int k_max = 10;       // knn_agg
  int min_pts = 10;     // lof
  int sample_size = 3000;  // qsp; clamped to n at run time
  std::uint64_t seed = 1;  // qsp sampling
  Discretization discretization = Discretization::Equiwidth;  // secoda
};

// Aggregated k-nearest-neighbour distance: the raw score of a case is the sum
// of its j-th nearest-neighbour distances for j = k_min..k_max. Returned in
// canonical orientation (most isolated case has the lowest score).
ScoreVector knn_agg(const EncodedMatrix& m, int k_min, int k_max);

// Distance to the nearest member of a fixed-size random sample of the cases
// (drawn without replacement), never counting the case itself. Canonical
// orientation.
ScoreVector qsp(const EncodedMatrix& m, int sample_size, std::uint64_t seed);

// Classic local outlier factor with tie-inclusive k-distance neighbourhoods.
// A neighbourhood with zero average reachability distance falls back to the
// reciprocal of the smallest positive reachability distance in the data set,
// so duplicate-heavy inputs stay finite. Canonical orientation (high LOF,
// i.e. outlier, maps to low score).
ScoreVector lof(const EncodedMatrix& m, int min_pts);

struct DetectionResult {
  ScoreVector scores;
  std::optional<int> secoda_arity;  // set when algorithm == Secoda
};

// Runs the configured detector over the dataset at the requested scope.
// Distance-based detectors see the matrix from encode() (categorical dummies
// included only at full scope); secoda sees the dataset (numeric columns only
// at continuous scope).
DetectionResult run_detector(const DetectorSpec& spec, const Dataset& ds, Scope scope);

}  // namespace hdad
