#include "hdad/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "hdad/dataset.hpp"

namespace hdad {

LabeledScores::LabeledScores(ScoreVector s, std::vector<bool> l)
    : scores(std::move(s)), labels(std::move(l)) {
  if (scores.size() != labels.size()) throw Error("scores/labels length mismatch");
}

std::size_t LabeledScores::positives() const {
  std::size_t p = 0;
  for (bool b : labels) p += b ? 1 : 0;
  return p;
}

std::size_t LabeledScores::negatives() const { return labels.size() - positives(); }

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// Ascending distinct-score operating points: after point i the i-th tied
// group and everything below it is predicted positive.
struct SweepPoint {
  double score = 0;        // the group's score value
  std::size_t cum_pos = 0;  // positives predicted at this cut
  std::size_t cum_neg = 0;
};

std::vector<SweepPoint> sweep_points(const LabeledScores& ls) {
  std::map<double, std::pair<std::size_t, std::size_t>> groups;  // score -> (pos, neg)
  for (std::size_t i = 0; i < ls.scores.size(); ++i) {
    auto& g = groups[ls.scores[i]];
    if (ls.labels[i]) g.first += 1;
    else g.second += 1;
  }
  std::vector<SweepPoint> pts;
  pts.reserve(groups.size());
  std::size_t cp = 0, cn = 0;
  for (const auto& kv : groups) {
    cp += kv.second.first;
    cn += kv.second.second;
    pts.push_back({kv.first, cp, cn});
  }
  return pts;
}

void require_both_classes(const LabeledScores& ls) {
  std::size_t p = ls.positives();
  if (p == 0 || p == ls.labels.size()) {
    throw Error("metric requires both an anomalous and a normal case");
  }
}

}  // namespace

ConfusionMetrics ConfusionMetrics::from_counts(long long tp, long long fp, long long fn,
                                               long long tn) {
  if (tp < 0 || fp < 0 || fn < 0 || tn < 0) throw Error("confusion counts must be non-negative");
  if (tp + fp + fn + tn == 0) throw Error("confusion counts must not all be zero");
  ConfusionMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;

  double dtp = static_cast<double>(tp), dfp = static_cast<double>(fp);
  double dfn = static_cast<double>(fn), dtn = static_cast<double>(tn);
  double n = dtp + dfp + dfn + dtn;

  m.sensitivity = safe_div(dtp, dtp + dfn);
  m.specificity = safe_div(dtn, dtn + dfp);
  m.precision = safe_div(dtp, dtp + dfp);
  m.accuracy = safe_div(dtp + dtn, n);
  m.f1 = safe_div(2.0 * dtp, 2.0 * dtp + dfp + dfn);
  m.mcc = safe_div(dtp * dtn - dfp * dfn,
                   std::sqrt((dtp + dfp) * (dtp + dfn) * (dtn + dfp) * (dtn + dfn)));
  double po = (dtp + dtn) / n;
  double pe = ((dtp + dfp) * (dtp + dfn) + (dfn + dtn) * (dfp + dtn)) / (n * n);
  m.kappa = safe_div(po - pe, 1.0 - pe);
  m.gmrp = std::sqrt(m.precision * m.sensitivity);
  if (m.sensitivity == 0 || m.specificity == 0 || m.precision == 0 || m.accuracy == 0) {
    m.hmf = 0.0;
  } else {
    m.hmf = 4.0 / (1.0 / m.sensitivity + 1.0 / m.specificity + 1.0 / m.precision +
                   1.0 / m.accuracy);
  }
  return m;
}

double roc_auc(const LabeledScores& ls) {
  require_both_classes(ls);
  double p_total = static_cast<double>(ls.positives());
  double n_total = static_cast<double>(ls.negatives());

  auto pts = sweep_points(ls);
  double favorable = 0.0;  // positive strictly below negative, plus half-ties
  std::size_t prev_pos = 0, prev_neg = 0;
  for (const auto& pt : pts) {
    double gp = static_cast<double>(pt.cum_pos - prev_pos);
    double gn = static_cast<double>(pt.cum_neg - prev_neg);
    favorable += gp * (n_total - static_cast<double>(pt.cum_neg));  // negatives above
    favorable += 0.5 * gp * gn;                                     // ties
    prev_pos = pt.cum_pos;
    prev_neg = pt.cum_neg;
  }
  return favorable / (p_total * n_total);
}

double partial_roc_auc(const LabeledScores& ls, std::pair<double, double> spec_band) {
  require_both_classes(ls);
  if (!(spec_band.first >= 0.0 && spec_band.first < spec_band.second && spec_band.second <= 1.0)) {
    throw Error("specificity band must satisfy 0 <= lo < hi <= 1");
  }
  double fpr_lo = 1.0 - spec_band.second;
  double fpr_hi = 1.0 - spec_band.first;

  double p_total = static_cast<double>(ls.positives());
  double n_total = static_cast<double>(ls.negatives());
  auto pts = sweep_points(ls);

  // Piecewise-linear empirical ROC from (0,0) through each operating point.
  double area = 0.0;
  double x0 = 0.0, y0 = 0.0;
  for (const auto& pt : pts) {
    double x1 = static_cast<double>(pt.cum_neg) / n_total;
    double y1 = static_cast<double>(pt.cum_pos) / p_total;
    double a = std::max(x0, fpr_lo);
    double b = std::min(x1, fpr_hi);
    if (b > a && x1 > x0) {
      double ya = y0 + (y1 - y0) * (a - x0) / (x1 - x0);
      double yb = y0 + (y1 - y0) * (b - x0) / (x1 - x0);
      area += 0.5 * (ya + yb) * (b - a);
    }
    x0 = x1;
    y0 = y1;
  }
  return area / (fpr_hi - fpr_lo);
}

double prc_auc(const LabeledScores& ls) {
  require_both_classes(ls);
  double p_total = static_cast<double>(ls.positives());
  auto pts = sweep_points(ls);
  double ap = 0.0;
  double recall_prev = 0.0;
  for (const auto& pt : pts) {
    double recall = static_cast<double>(pt.cum_pos) / p_total;
    double precision =
        static_cast<double>(pt.cum_pos) / static_cast<double>(pt.cum_pos + pt.cum_neg);
    ap += (recall - recall_prev) * precision;
    recall_prev = recall;
  }
  return ap;
}

ConfusionMetrics confusion_metrics(const LabeledScores& ls, double threshold) {
  long long tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < ls.scores.size(); ++i) {
    bool predicted = ls.scores[i] < threshold;
    if (predicted && ls.labels[i]) ++tp;
    else if (predicted && !ls.labels[i]) ++fp;
    else if (!predicted && ls.labels[i]) ++fn;
    else ++tn;
  }
  return ConfusionMetrics::from_counts(tp, fp, fn, tn);
}

double youden_threshold(const LabeledScores& ls) {
  double p_total = static_cast<double>(ls.positives());
  double n_total = static_cast<double>(ls.negatives());
  auto pts = sweep_points(ls);

  // Candidates in ascending order: the minimum score (predicts nothing),
  // then the midpoint after each distinct-score group. First maximum wins,
  // which realizes the smallest-threshold tie rule.
  double best_t = pts.front().score;
  double best_j = -std::numeric_limits<double>::infinity();
  auto consider = [&](double t, std::size_t tp, std::size_t fp) {
    double sens = p_total == 0.0 ? 0.0 : static_cast<double>(tp) / p_total;
    double fpr = n_total == 0.0 ? 0.0 : static_cast<double>(fp) / n_total;
    double j = sens - fpr;
    if (j > best_j) {
      best_j = j;
      best_t = t;
    }
  };
  consider(pts.front().score, 0, 0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double mid = 0.5 * (pts[i].score + pts[i + 1].score);
    consider(mid, pts[i].cum_pos, pts[i].cum_neg);
  }
  return best_t;
}

double topk_threshold(const ScoreVector& scores, std::size_t k) {
  std::size_t n = scores.size();
  if (k < 1 || k > n) throw Error("k must be between 1 and the case count");
  if (k == n) {
    return std::nextafter(scores.max(), std::numeric_limits<double>::infinity());
  }
  std::vector<double> v = scores.values();
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

EvalReport evaluate_scores(const LabeledScores& ls, std::optional<std::size_t> top_k) {
  EvalReport rep;
  rep.n_cases = ls.labels.size();
  rep.n_positives = ls.positives();
  try {
    rep.roc = roc_auc(ls);
    rep.partial_roc = partial_roc_auc(ls);
    rep.prc = prc_auc(ls);
  } catch (const Error&) {
    rep.roc.reset();
    rep.partial_roc.reset();
    rep.prc.reset();
  }

  ThresholdReport youden;
  youden.rule = "youden";
  youden.threshold = youden_threshold(ls);
  youden.metrics = confusion_metrics(ls, youden.threshold);
  rep.thresholds.push_back(std::move(youden));

  if (top_k) {
    ThresholdReport topk;
    topk.rule = "topk";
    topk.k = *top_k;
    topk.threshold = topk_threshold(ls.scores, *top_k);
    topk.metrics = confusion_metrics(ls, topk.threshold);
    rep.thresholds.push_back(std::move(topk));
  }
  return rep;
}

std::string eval_report_json(const EvalReport& report) {
  nlohmann::json j;
  j["n_cases"] = report.n_cases;
  j["n_positives"] = report.n_positives;
  auto set_auc = [&j](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  set_auc("roc_auc", report.roc);
  set_auc("partial_roc_auc", report.partial_roc);
  set_auc("prc_auc", report.prc);

  j["thresholds"] = nlohmann::json::array();
  for (const auto& th : report.thresholds) {
    nlohmann::json t;
    t["rule"] = th.rule;
    t["threshold"] = th.threshold;
    if (th.k) t["k"] = *th.k;
    const auto& m = th.metrics;
    t["counts"] = {{"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}, {"tn", m.tn}};
    t["metrics"] = {{"sensitivity", m.sensitivity}, {"specificity", m.specificity},
                    {"precision", m.precision},     {"accuracy", m.accuracy},
                    {"f1", m.f1},                   {"mcc", m.mcc},
                    {"kappa", m.kappa},             {"gmrp", m.gmrp},
                    {"hmf", m.hmf}};
    j["thresholds"].push_back(std::move(t));
  }
  return j.dump(2) + "\n";
}

}  // namespace hdad
