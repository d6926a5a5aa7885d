#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hdad/dataset.hpp"
#include "hdad/detectors.hpp"
#include "hdad/scores.hpp"

namespace hdad {

struct IppConfig {
  int qd = 100;                 // quantile denominator (number of gridlines)
  std::optional<double> qfb = std::nullopt;  // quantile fraction bonus; nullopt = auto
  DetectorSpec underlying{};    // detector supplying both score vectors
};

enum class Provenance { Iteration, Fallback };

struct IppResult {
  ScoreVector scores;
  std::vector<Provenance> provenance;  // per case: scored inside the loop or by fallback
  double qfb_used = 0.0;
};

// Auto quantile-fraction-bonus: 2 * (expected_region_density / mean_density)
// * 100, where expected_region_density = n / arity^p for p numeric columns
// and mean_density is the mean constellation-frequency score of the numeric
// subspace. Errors if the mean is zero.
double calculate_qfb(double mean_density_score, std::size_t n_cases,
                     std::size_t n_numeric_columns, int ultimate_arity);

// Smallest value of the sorted data whose cumulative fraction reaches qp
// (inverse-CDF quantile); qp = 0 yields the minimum. `sorted` must be
// ascending.
double quantile_sorted(const std::vector<double>& sorted, double qp);

// Composite score i + rank/10^d for the rank-th case (1-based) selected at
// iteration i, with d the digit count of the subset size. Computed as an
// exact integer ratio so the value equals the decimal literal.
double encode_iteration_score(int iteration, int rank, std::size_t subset_size);

// Core selection loop over two precomputed score vectors (full-space and
// numeric-only, both canonical). Walks qd quantile gridlines; at each one,
// cases below the full-space gridline but not below the bonus-shifted
// numeric gridline — isolated overall yet in dense numeric company — receive
// composite scores ordered within the iteration; cases never selected get
// the isolation fallback 1 + max(numeric score) - own numeric score + qd.
IppResult ipp_from_scores(const ScoreVector& full_scores, const ScoreVector& numeric_scores,
                          double qfb, int qd);

// Same result computed case-parallel from each case's minimal qualifying
// iteration; bit-identical to ipp_from_scores.
IppResult ipp_from_scores_parallel(const ScoreVector& full_scores,
                                   const ScoreVector& numeric_scores, double qfb, int qd);

// Full pipeline: runs the underlying detector at both scopes, resolves the
// qfb (auto mode derives it from a constellation-frequency pass over the
// numeric columns), then applies the selection loop.
IppResult ipp(const Dataset& ds, const IppConfig& cfg);

}  // namespace hdad
