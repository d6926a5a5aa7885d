#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdad/scores.hpp"

namespace hdad {

// Scores paired with binary ground truth (true = anomaly). Anomalies are
// expected at the LOW end of the score scale.
struct LabeledScores {
  ScoreVector scores;
  std::vector<bool> labels;

  LabeledScores(ScoreVector s, std::vector<bool> l);
  std::size_t positives() const;
  std::size_t negatives() const;
};

struct ConfusionMetrics {
  long long tp = 0, fp = 0, fn = 0, tn = 0;
  double sensitivity = 0, specificity = 0, precision = 0, accuracy = 0;
  double f1 = 0, mcc = 0, kappa = 0, gmrp = 0, hmf = 0;

  // Derives every rate from raw counts; any 0/0 ratio is defined as 0.
  static ConfusionMetrics from_counts(long long tp, long long fp, long long fn, long long tn);
};

// Area under the ROC curve with anomalies ranked by ascending score; tied
// score pairs count one half. Equals the probability a random positive
// scores below a random negative. Errors unless both classes are present.
double roc_auc(const LabeledScores& ls);

// Area under the ROC curve restricted to the high-specificity band
// (specificity in [spec_band.first, spec_band.second], i.e. false positive
// rate in [1-second, 1-first]), trapezoidal with linear interpolation at the
// band edges, normalized by the band width. Default band: specificity 0.9..1.
double partial_roc_auc(const LabeledScores& ls,
                       std::pair<double, double> spec_band = {0.9, 1.0});

// Average precision: sum over ascending-score operating points of
// (recall step) * precision.
double prc_auc(const LabeledScores& ls);

// Confusion counts and derived rates for the rule "predict anomaly when
// score < threshold".
ConfusionMetrics confusion_metrics(const LabeledScores& ls, double threshold);

// Threshold maximizing Youden's J (sensitivity + specificity - 1) over the
// candidate set {minimum score} + midpoints of consecutive distinct scores;
// ties resolve to the smallest candidate.
double youden_threshold(const LabeledScores& ls);

// Threshold whose strict-< rule predicts exactly the k lowest-scored cases
// positive (score ties on the boundary make an exact cut impossible; the
// boundary value is still returned). k == n predicts everything positive.
double topk_threshold(const ScoreVector& scores, std::size_t k);

// Bundle of everything the evaluate command reports. AUC fields are empty
// when the labels are single-class.
struct ThresholdReport {
  std::string rule;
  double threshold = 0;
  std::optional<std::size_t> k;
  ConfusionMetrics metrics;
};

struct EvalReport {
  std::size_t n_cases = 0;
  std::size_t n_positives = 0;
  std::optional<double> roc;
  std::optional<double> partial_roc;
  std::optional<double> prc;
  std::vector<ThresholdReport> thresholds;
};

EvalReport evaluate_scores(const LabeledScores& ls, std::optional<std::size_t> top_k);
std::string eval_report_json(const EvalReport& report);

}  // namespace hdad
