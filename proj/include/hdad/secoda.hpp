#pragma once

#include <optional>
#include <vector>

#include "hdad/dataset.hpp"
#include "hdad/scores.hpp"

namespace hdad {

enum class Discretization { Equiwidth, Equidepth };

// Assigns every value of a numeric column to one of b 1-based bins.
//   Equiwidth: equal-width intervals over [min, max]; values on an interior
//     edge go to the higher bin, the maximum goes to bin b, and a constant
//     column collapses to bin 1.
//   Equidepth: near-equal occupancy by rank; the case with 1-based rank r
//     (ties by case order) lands in bin ceil(r*b/n).
std::vector<int> discretize(const std::vector<double>& column, int b, Discretization mode);

struct SecodaResult {
  ScoreVector scores;  // canonical orientation (low = anomalous)
  int ultimate_arity;  // number of bins at the final refinement pass
};

// Constellation-frequency anomaly detection. For b = 1, 2, 3, ... each case
// maps to the tuple of its per-column bins plus its categorical classes; the
// per-pass score is that tuple's frequency and the reported score is the
// running arithmetic mean over passes. Refinement stops once every tuple is
// unique or b reaches b_max (default 4*ceil(n^(1/p)) for p numeric columns;
// a dataset with no numeric column performs a single pass, since further
// refinement cannot change any tuple).
SecodaResult secoda(const Dataset& ds, Discretization mode = Discretization::Equiwidth,
                    std::optional<int> b_max = std::nullopt);

int default_b_max(std::size_t n_cases, std::size_t n_numeric_columns);

}  // namespace hdad
