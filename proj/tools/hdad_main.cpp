#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdad/csv.hpp"
#include "hdad/datagen.hpp"
#include "hdad/dataset.hpp"
#include "hdad/detectors.hpp"
#include "hdad/eval.hpp"
#include "hdad/hmdh.hpp"
#include "hdad/ipp.hpp"
#include "hdad/scores.hpp"
#include "hdad/svg.hpp"

namespace {

// Bad flag combinations and malformed invocations: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string underscored(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

hdad::Dataset load_for_cli(const std::string& path, const std::string& label) {
  hdad::Schema schema = hdad::infer_schema(path);
  return hdad::load_dataset(path, schema, label);
}

void write_scores_csv(const std::string& path, const hdad::ScoreVector& scores,
                      const std::vector<std::string>& provenance) {
  hdad::CsvTable table;
  table.header = {"id", "score", "provenance"};
  char buf[64];
  for (std::size_t i = 0; i < scores.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", scores[i]);
    table.rows.push_back({std::to_string(i + 1), buf, provenance[i]});
  }
  hdad::write_csv(table, path);
}

// Scores indexed by 1-based case id (ids must form a permutation of 1..n).
std::vector<double> read_scores_csv(const std::string& path) {
  hdad::CsvTable table = hdad::read_csv(path);
  std::size_t id_col = table.column_index("id");
  std::size_t score_col = table.column_index("score");
  std::size_t n = table.rows.size();
  std::vector<double> scores(n, 0.0);
  std::vector<char> seen(n, 0);
  for (const auto& row : table.rows) {
    long long id = 0;
    try {
      id = std::stoll(row[id_col]);
    } catch (const std::exception&) {
      throw hdad::Error(path + ": bad case id '" + row[id_col] + "'");
    }
    if (id < 1 || static_cast<std::size_t>(id) > n || seen[static_cast<std::size_t>(id) - 1]) {
      throw hdad::Error(path + ": case ids must cover 1.." + std::to_string(n) +
                        " exactly once");
    }
    seen[static_cast<std::size_t>(id) - 1] = 1;
    try {
      scores[static_cast<std::size_t>(id) - 1] = std::stod(row[score_col]);
    } catch (const std::exception&) {
      throw hdad::Error(path + ": bad score '" + row[score_col] + "'");
    }
  }
  return scores;
}

std::string default_manifest_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() && out.substr(out.size() - suffix.size()) == suffix) {
    return out.substr(0, out.size() - suffix.size()) + ".manifest.json";
  }
  return out + ".manifest.json";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw hdad::Error("cannot open file for writing: " + path);
  f << text;
  if (!f) throw hdad::Error("write failed: " + path);
}

// ---- subcommand state ----

struct GenerateArgs {
  std::string set;
  std::uint64_t seed = 1;
  double scale = 1.0;
  std::string out;
  std::string manifest;
  bool verify = false;
};

struct DetectArgs {
  std::string algo;
  std::string in;
  std::string out;
  std::string label = "hda";
  std::string underlying = "secoda";
  int qd = 100;
  std::string qfb = "auto";
  std::string weight = "none";
  std::string discretization = "equiwidth";
  int k_min = 1;
  int k_max = 10;
  int min_pts = 10;
  int sample_size = 3000;
  std::uint64_t seed = 1;
};

struct EvaluateArgs {
  std::string scores;
  std::string data;
  std::string label = "hda";
  std::optional<std::size_t> k;
  std::string out;
};

struct PlotArgs {
  std::string in;
  std::string scores;
  std::string x;
  std::string y;
  std::string class_col;
  std::string label = "hda";
  int top = 0;
  int width = 800;
  int height = 600;
  std::string title;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  hdad::GenSpec spec;
  spec.set_name = hdad::set_name_from_string(a.set);
  spec.seed = a.seed;
  spec.scale = a.scale;
  hdad::GeneratedSet gs = hdad::generate(spec);
  hdad::write_generated_csv(gs, a.out);
  std::string manifest_path = a.manifest.empty() ? default_manifest_path(a.out) : a.manifest;
  write_text_file(manifest_path, hdad::manifest_json(gs, spec));
  std::cout << "generated " << a.set << ": n=" << gs.ds.n_cases() << " hda=" << gs.plants.size()
            << " -> " << a.out << " (manifest " << manifest_path << ")\n";
  if (a.verify) {
    hdad::VerifyReport rep = hdad::verify_hda_plantings(gs);
    if (!rep.ok()) {
      for (const auto& v : rep.violations) {
        std::cerr << "planting check failed: case " << v.id << " " << v.kind << ": " << v.detail
                  << "\n";
      }
      return 1;
    }
    std::cout << "planting checks passed for " << gs.plants.size() << " cases\n";
  }
  return 0;
}

int run_detect(const DetectArgs& a, const CLI::App* cmd) {
  bool is_ipp = a.algo == "ipp";
  bool is_hmdh = a.algo == "hmdh";
  bool is_secoda = a.algo == "secoda";
  if (cmd->count("--weight") > 0 && !is_hmdh) {
    throw UsageError("--weight only applies to --algo hmdh");
  }
  if ((cmd->count("--qd") > 0 || cmd->count("--qfb") > 0) && !is_ipp) {
    throw UsageError("--qd/--qfb only apply to --algo ipp");
  }
  if (cmd->count("--underlying") > 0 && !is_ipp && !is_hmdh) {
    throw UsageError("--underlying only applies to --algo ipp or hmdh");
  }
  if (cmd->count("--discretization") > 0 && !is_ipp && !is_hmdh && !is_secoda) {
    throw UsageError("--discretization only applies to secoda-based runs");
  }

  hdad::Dataset ds = load_for_cli(a.in, a.label);

  hdad::DetectorSpec under;
  under.algorithm = hdad::algorithm_from_name(underscored(is_ipp || is_hmdh ? a.underlying
                                                                            : a.algo));
  under.k_min = a.k_min;
  under.k_max = a.k_max;
  under.min_pts = a.min_pts;
  under.sample_size = a.sample_size;
  under.seed = a.seed;
  under.discretization = a.discretization == "equidepth" ? hdad::Discretization::Equidepth
                                                         : hdad::Discretization::Equiwidth;

  hdad::ScoreVector scores({0.0});
  std::vector<std::string> provenance;
  if (is_ipp) {
    hdad::IppConfig cfg;
    cfg.qd = a.qd;
    if (a.qfb == "auto") {
      cfg.qfb = std::nullopt;
    } else {
      double v;
      try {
        v = std::stod(a.qfb);
      } catch (const std::exception&) {
        throw UsageError("--qfb expects 'auto' or a real number");
      }
      if (v == -9999.0) cfg.qfb = std::nullopt;  // sentinel for auto
      else cfg.qfb = v;
    }
    cfg.underlying = under;
    hdad::IppResult res = hdad::ipp(ds, cfg);
    scores = res.scores;
    provenance.reserve(scores.size());
    for (auto p : res.provenance) {
      provenance.push_back(p == hdad::Provenance::Iteration ? "iteration" : "fallback");
    }
    std::cout << "ipp qfb=" << res.qfb_used << "\n";
  } else if (is_hmdh) {
    hdad::HmdhConfig cfg;
    cfg.weight_mode = hdad::weight_mode_from_name(a.weight);
    cfg.underlying = under;
    hdad::HmdhResult res = hdad::hmdh(ds, cfg);
    scores = res.scores;
    provenance.assign(scores.size(), "direct");
    std::cout << "hmdh weight=" << res.weight_used << "\n";
  } else {
    hdad::DetectionResult res = hdad::run_detector(under, ds, hdad::Scope::Full);
    scores = res.scores;
    provenance.assign(scores.size(), "direct");
  }

  write_scores_csv(a.out, scores, provenance);
  std::cout << "scored " << scores.size() << " cases -> " << a.out << "\n";
  return 0;
}

int run_evaluate(const EvaluateArgs& a) {
  hdad::Dataset ds = load_for_cli(a.data, a.label);
  if (!ds.has_labels()) {
    throw UsageError(a.data + " has no label column '" + a.label + "'");
  }
  std::vector<double> score_values = read_scores_csv(a.scores);
  if (score_values.size() != ds.n_cases()) {
    throw UsageError("scores have " + std::to_string(score_values.size()) + " cases, data has " +
                     std::to_string(ds.n_cases()));
  }

  hdad::LabeledScores ls(hdad::ScoreVector(std::move(score_values)), ds.labels());
  std::size_t positives = ls.positives();
  std::optional<std::size_t> k = a.k;
  if (!k && positives > 0) k = positives;  // default: number of true anomalies
  if (positives == 0 || positives == ls.labels.size()) {
    std::cerr << "warning: labels are single-class; AUC fields will be null\n";
  }

  hdad::EvalReport rep = hdad::evaluate_scores(ls, k);
  std::string json = hdad::eval_report_json(rep);
  for (const auto& th : rep.thresholds) {
    std::ostream& os = a.out.empty() ? std::cerr : std::cout;
    os << th.rule;
    if (th.k) os << "(k=" << *th.k << ")";
    os << ": threshold=" << th.threshold << " sensitivity=" << th.metrics.sensitivity
       << " precision=" << th.metrics.precision << "\n";
  }
  if (a.out.empty()) {
    std::cout << json;
  } else {
    write_text_file(a.out, json);
    std::cout << "report -> " << a.out << "\n";
  }
  return 0;
}

int run_plot(const PlotArgs& a) {
  hdad::Dataset ds = load_for_cli(a.in, a.label);
  if (!ds.has_column(a.x) || !ds.has_column(a.y)) {
    throw UsageError("unknown plot column: " + (ds.has_column(a.x) ? a.y : a.x));
  }
  if (!a.class_col.empty() && !ds.has_column(a.class_col)) {
    throw UsageError("unknown class column: " + a.class_col);
  }
  if (a.top < 0) throw UsageError("--top must be non-negative");

  hdad::PlotOptions opts;
  opts.x_column = a.x;
  opts.y_column = a.y;
  if (!a.class_col.empty()) opts.class_column = a.class_col;
  opts.width = a.width;
  opts.height = a.height;
  opts.title = a.title;

  if (a.top > 0) {
    if (a.scores.empty()) throw UsageError("--top requires --scores");
    std::vector<double> score_values = read_scores_csv(a.scores);
    if (score_values.size() != ds.n_cases()) {
      throw UsageError("scores/data case count mismatch");
    }
    auto order = hdad::order_ascending(score_values);
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(a.top), order.size());
    for (std::size_t i = 0; i < take; ++i) {
      opts.highlight_ids.push_back(static_cast<int>(order[i]) + 1);
    }
  }

  write_text_file(a.out, hdad::render_scatter_svg(ds, opts));
  std::cout << "plot -> " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-density anomaly detection toolkit"};
  app.require_subcommand(1);

  GenerateArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "Render a synthetic benchmark set");
  gen->add_option("--set", ga.set, "Set name")
      ->required()
      ->check(CLI::IsMember({"gleuf", "noisyhelix", "multiset4d", "multiset5d"}));
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--scale", ga.scale, "Case-count scale in (0,1]");
  gen->add_option("--out", ga.out, "Output CSV path")->required();
  gen->add_option("--manifest", ga.manifest, "Manifest JSON path (default: <out>.manifest.json)");
  gen->add_flag("--verify", ga.verify, "Check planted anomalies after generation");

  DetectArgs da;
  CLI::App* det = app.add_subcommand("detect", "Score a dataset");
  det->add_option("--algo", da.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"knn-agg", "qsp", "lof", "secoda", "ipp", "hmdh"}));
  det->add_option("--in", da.in, "Input dataset CSV")->required();
  det->add_option("--out", da.out, "Output scores CSV")->required();
  det->add_option("--label", da.label, "Label column to exclude from features")->capture_default_str();
  det->add_option("--underlying", da.underlying, "Underlying detector for ipp/hmdh")
      ->check(CLI::IsMember({"knn-agg", "qsp", "lof", "secoda"}));
  det->add_option("--qd", da.qd, "Quantile denominator (ipp)")->capture_default_str();
  det->add_option("--qfb", da.qfb, "Quantile fraction bonus: auto or real (ipp)")->capture_default_str();
  det->add_option("--weight", da.weight, "Fusion weight mode (hmdh)")
      ->check(CLI::IsMember({"none", "sse", "sden"}));
  det->add_option("--discretization", da.discretization, "Binning mode for secoda")
      ->check(CLI::IsMember({"equiwidth", "equidepth"}));
  det->add_option("--k-min", da.k_min, "Smallest neighbour order (knn-agg)")->capture_default_str();
  det->add_option("--k-max", da.k_max, "Largest neighbour order (knn-agg)")->capture_default_str();
  det->add_option("--min-pts", da.min_pts, "Neighbourhood size (lof)")->capture_default_str();
  det->add_option("--sample-size", da.sample_size, "Sample size (qsp)")->capture_default_str();
  det->add_option("--seed", da.seed, "Seed for sampled detectors")->capture_default_str();

  EvaluateArgs ea;
  CLI::App* eva = app.add_subcommand("evaluate", "Score quality against labels");
  eva->add_option("--scores", ea.scores, "Scores CSV")->required();
  eva->add_option("--data", ea.data, "Labelled dataset CSV")->required();
  eva->add_option("--label", ea.label, "Label column name")->capture_default_str();
  std::int64_t k_flag = -1;
  eva->add_option("--k", k_flag, "Top-k cutoff (default: number of labelled anomalies)");
  eva->add_option("--out", ea.out, "Report JSON path (default: stdout)");

  PlotArgs pa;
  CLI::App* plt = app.add_subcommand("plot", "Render a 2-D scatter SVG");
  plt->add_option("--in", pa.in, "Dataset CSV")->required();
  plt->add_option("--scores", pa.scores, "Scores CSV (for --top)");
  plt->add_option("--x", pa.x, "X column")->required();
  plt->add_option("--y", pa.y, "Y column")->required();
  plt->add_option("--class-col", pa.class_col, "Categorical colour column");
  plt->add_option("--label", pa.label, "Label column to exclude from features")->capture_default_str();
  plt->add_option("--top", pa.top, "Highlight the top-N anomalies")->capture_default_str();
  plt->add_option("--width", pa.width, "SVG width")->capture_default_str();
  plt->add_option("--height", pa.height, "SVG height")->capture_default_str();
  plt->add_option("--title", pa.title, "Plot title");
  plt->add_option("--out", pa.out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    if (gen->parsed()) return run_generate(ga);
    if (det->parsed()) return run_detect(da, det);
    if (eva->parsed()) {
      if (eva->count("--k") > 0) {
        if (k_flag < 1) throw UsageError("--k must be at least 1");
        ea.k = static_cast<std::size_t>(k_flag);
      }
      return run_evaluate(ea);
    }
    if (plt->parsed()) return run_plot(pa);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const hdad::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
