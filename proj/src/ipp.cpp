#include "hdad/ipp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdad/parallel.hpp"
#include "hdad/secoda.hpp"

namespace hdad {

namespace {

constexpr int kMaxQd = 10000;

void validate_qd(int qd) {
  if (qd < 1 || qd > kMaxQd) {
    throw Error("quantile denominator must be between 1 and " + std::to_string(kMaxQd));
  }
}

void validate_qfb(double qfb) {
  if (!std::isfinite(qfb) || qfb < 0.0) throw Error("qfb must be a finite non-negative value");
}

}  // namespace

double calculate_qfb(double mean_density_score, std::size_t n_cases,
                     std::size_t n_numeric_columns, int ultimate_arity) {
  if (ultimate_arity < 1) throw Error("ultimate arity must be at least 1");
  if (!(mean_density_score > 0.0)) throw Error("mean density score must be positive");
  double erd = static_cast<double>(n_cases) /
               std::pow(static_cast<double>(ultimate_arity), static_cast<double>(n_numeric_columns));
  return 2.0 * (erd / mean_density_score) * 100.0;
}

double quantile_sorted(const std::vector<double>& sorted, double qp) {
  if (sorted.empty()) throw Error("quantile of an empty vector");
  if (qp < 0.0 || qp > 1.0) throw Error("quantile fraction must be in [0, 1]");
  std::size_t n = sorted.size();
  // Index of the smallest value whose cumulative fraction reaches qp. The
  // product qp*n is snapped to the nearest integer when within 1e-9 so that
  // exactly-rational gridline fractions (i/qd) never straddle a rounding
  // error; genuine non-integer products sit at least 1/qd away.
  double t = qp * static_cast<double>(n);
  double r = std::round(t);
  std::size_t idx = std::abs(t - r) < 1e-9 ? static_cast<std::size_t>(r)
                                           : static_cast<std::size_t>(std::ceil(t));
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  return sorted[idx - 1];
}

double encode_iteration_score(int iteration, int rank, std::size_t subset_size) {
  if (iteration < 1) throw Error("iteration must be at least 1");
  if (rank < 1 || static_cast<std::size_t>(rank) > subset_size) {
    throw Error("rank must be between 1 and the subset size");
  }
  unsigned long long pow10 = 10;  // 10^(digit count of subset_size)
  while (subset_size >= pow10) pow10 *= 10;
  // Both operands are exact integers well below 2^53, so the one division
  // rounds to the same double as parsing the decimal literal i.rank.
  return (static_cast<double>(iteration) * static_cast<double>(pow10) +
          static_cast<double>(rank)) /
         static_cast<double>(pow10);
}

namespace {

struct Gridlines {
  std::vector<double> full_cut;     // quantile of the full-space scores at i
  std::vector<double> numeric_cut;  // bonus-shifted quantile of numeric scores at i
};

Gridlines compute_gridlines(const ScoreVector& full_scores, const ScoreVector& numeric_scores,
                            double qfb, int qd) {
  std::vector<double> sorted_full = full_scores.values();
  std::vector<double> sorted_num = numeric_scores.values();
  std::sort(sorted_full.begin(), sorted_full.end());
  std::sort(sorted_num.begin(), sorted_num.end());

  Gridlines g;
  g.full_cut.resize(static_cast<std::size_t>(qd) + 1);
  g.numeric_cut.resize(static_cast<std::size_t>(qd) + 1);
  double qd_d = static_cast<double>(qd);
  double cap = (qd_d - 1.0) / qd_d;
  for (int i = 1; i <= qd; ++i) {
    double qp_full = static_cast<double>(i) / qd_d;
    double qp_num = (static_cast<double>(i) + qd_d / 100.0 * qfb) / qd_d;
    if (qp_num > cap) qp_num = cap;
    g.full_cut[static_cast<std::size_t>(i)] = quantile_sorted(sorted_full, qp_full);
    g.numeric_cut[static_cast<std::size_t>(i)] = quantile_sorted(sorted_num, qp_num);
  }
  return g;
}

// Shared tail: orders one iteration's subset and assigns composite scores.
void assign_subset(const ScoreVector& full_scores, const ScoreVector& numeric_scores,
                   int iteration, std::vector<std::size_t>& subset, std::vector<double>& out,
                   std::vector<Provenance>& prov) {
  std::sort(subset.begin(), subset.end(), [&](std::size_t a, std::size_t b) {
    if (full_scores[a] != full_scores[b]) return full_scores[a] < full_scores[b];
    if (numeric_scores[a] != numeric_scores[b]) return numeric_scores[a] > numeric_scores[b];
    return a < b;
  });
  for (std::size_t r = 0; r < subset.size(); ++r) {
    out[subset[r]] = encode_iteration_score(iteration, static_cast<int>(r) + 1, subset.size());
    prov[subset[r]] = Provenance::Iteration;
  }
}

void apply_fallback(const ScoreVector& numeric_scores, int qd,
                    const std::vector<char>& scored, std::vector<double>& out,
                    std::vector<Provenance>& prov) {
  double max_num = numeric_scores.max();
  for (std::size_t g = 0; g < out.size(); ++g) {
    if (!scored[g]) {
      out[g] = 1.0 + max_num - numeric_scores[g] + static_cast<double>(qd);
      prov[g] = Provenance::Fallback;
    }
  }
}

}  // namespace

IppResult ipp_from_scores(const ScoreVector& full_scores, const ScoreVector& numeric_scores,
                          double qfb, int qd) {
  if (full_scores.size() != numeric_scores.size()) {
    throw Error("score vectors must have equal length");
  }
  validate_qd(qd);
  validate_qfb(qfb);

  std::size_t n = full_scores.size();
  Gridlines grid = compute_gridlines(full_scores, numeric_scores, qfb, qd);

  std::vector<double> out(n, 0.0);
  std::vector<Provenance> prov(n, Provenance::Fallback);
  std::vector<char> scored(n, 0);

  std::vector<std::size_t> subset;
  for (int i = 1; i <= qd; ++i) {
    double full_cut = grid.full_cut[static_cast<std::size_t>(i)];
    double num_cut = grid.numeric_cut[static_cast<std::size_t>(i)];
    subset.clear();
    for (std::size_t g = 0; g < n; ++g) {
      if (!scored[g] && full_scores[g] < full_cut && !(numeric_scores[g] < num_cut)) {
        subset.push_back(g);
      }
    }
    if (subset.empty()) continue;
    assign_subset(full_scores, numeric_scores, i, subset, out, prov);
    for (std::size_t g : subset) scored[g] = 1;
  }

  apply_fallback(numeric_scores, qd, scored, out, prov);
  return IppResult{ScoreVector(std::move(out)), std::move(prov), qfb};
}

IppResult ipp_from_scores_parallel(const ScoreVector& full_scores,
                                   const ScoreVector& numeric_scores, double qfb, int qd) {
  if (full_scores.size() != numeric_scores.size()) {
    throw Error("score vectors must have equal length");
  }
  validate_qd(qd);
  validate_qfb(qfb);

  std::size_t n = full_scores.size();
  Gridlines grid = compute_gridlines(full_scores, numeric_scores, qfb, qd);

  // Each case's earliest qualifying gridline is independent of every other
  // case, because selection depends only on the fixed quantile cuts.
  std::vector<int> min_iter(n, 0);
  parallel_for(n, [&](std::size_t g) {
    for (int i = 1; i <= qd; ++i) {
      if (full_scores[g] < grid.full_cut[static_cast<std::size_t>(i)] &&
          !(numeric_scores[g] < grid.numeric_cut[static_cast<std::size_t>(i)])) {
        min_iter[g] = i;
        break;
      }
    }
  });

  std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(qd) + 1);
  for (std::size_t g = 0; g < n; ++g) {
    if (min_iter[g] > 0) buckets[static_cast<std::size_t>(min_iter[g])].push_back(g);
  }

  std::vector<double> out(n, 0.0);
  std::vector<Provenance> prov(n, Provenance::Fallback);
  std::vector<char> scored(n, 0);
  for (int i = 1; i <= qd; ++i) {
    auto& subset = buckets[static_cast<std::size_t>(i)];
    if (subset.empty()) continue;
    assign_subset(full_scores, numeric_scores, i, subset, out, prov);
    for (std::size_t g : subset) scored[g] = 1;
  }
  apply_fallback(numeric_scores, qd, scored, out, prov);
  return IppResult{ScoreVector(std::move(out)), std::move(prov), qfb};
}

IppResult ipp(const Dataset& ds, const IppConfig& cfg) {
  validate_qd(cfg.qd);
  ContinuousView view = continuous_view(ds);  // errors when no numeric columns

  DetectionResult full_res = run_detector(cfg.underlying, ds, Scope::Full);
  DetectionResult num_res = run_detector(cfg.underlying, ds, Scope::Continuous);

  double qfb;
  if (cfg.qfb.has_value()) {
    validate_qfb(*cfg.qfb);
    qfb = *cfg.qfb;
  } else {
    // Auto mode calibrates the bonus from a constellation-frequency pass over
    // the numeric subspace; reuse the numeric run when it already is one.
    double mean_density;
    int arity;
    if (cfg.underlying.algorithm == Algorithm::Secoda) {
      mean_density = num_res.scores.mean();
      arity = num_res.secoda_arity.value();
    } else {
      SecodaResult sec = secoda(view.as_dataset(), cfg.underlying.discretization);
      mean_density = sec.scores.mean();
      arity = sec.ultimate_arity;
    }
    qfb = calculate_qfb(mean_density, ds.n_cases(), view.n_columns(), arity);
  }

  return ipp_from_scores(full_res.scores, num_res.scores, qfb, cfg.qd);
}

}  // namespace hdad
