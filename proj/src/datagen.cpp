#include "hdad/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "hdad/encode.hpp"
#include "hdad/rng.hpp"

namespace hdad {

SetName set_name_from_string(const std::string& name) {
  if (name == "gleuf") return SetName::Gleuf;
  if (name == "noisyhelix") return SetName::NoisyHelix;
  if (name == "multiset4d") return SetName::Multiset4D;
  if (name == "multiset5d") return SetName::Multiset5D;
  throw Error("unknown set name: " + name +
              " (expected gleuf, noisyhelix, multiset4d, or multiset5d)");
}

std::string set_name_string(SetName s) {
  switch (s) {
    case SetName::Gleuf: return "gleuf";
    case SetName::NoisyHelix: return "noisyhelix";
    case SetName::Multiset4D: return "multiset4d";
    case SetName::Multiset5D: return "multiset5d";
  }
  throw Error("unknown set name value");
}

std::string hda_type_name(HdaType t) {
  switch (t) {
    case HdaType::UncommonClass: return "uncommon_class";
    case HdaType::UnseenCombination: return "unseen_combination";
    case HdaType::WrongCombination: return "wrong_combination";
  }
  throw Error("unknown anomaly type value");
}

namespace {

long long scaled_count(double base, double scale) { return std::llround(base * scale); }

// Largest-remainder apportionment of `total` into parts proportional to
// `weights` (remainder ties go to the earlier part).
std::vector<long long> apportion(long long total, const std::vector<double>& weights) {
  double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<long long> parts(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> rema;
  long long assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double quota = static_cast<double>(total) * weights[i] / wsum;
    parts[i] = static_cast<long long>(std::floor(quota));
    assigned += parts[i];
    rema.push_back({quota - std::floor(quota), i});
  }
  std::stable_sort(rema.begin(), rema.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (long long r = 0; r < total - assigned; ++r) parts[rema[static_cast<std::size_t>(r)].second] += 1;
  return parts;
}

// Accumulates one synthetic set: three numeric columns plus categoricals.
struct SetSink {
  std::vector<std::string> numeric_names;
  std::vector<std::string> cat_names;
  std::vector<std::vector<double>> numeric;
  std::vector<std::vector<std::string>> cats;
  std::vector<bool> labels;
  std::vector<PlantRecord> plants;
  std::map<std::string, std::size_t> counts;

  SetSink(std::vector<std::string> num_names, std::vector<std::string> cat_names_in)
      : numeric_names(std::move(num_names)), cat_names(std::move(cat_names_in)) {
    numeric.resize(numeric_names.size());
    cats.resize(cat_names.size());
  }

  void add(const std::vector<double>& coords, const std::vector<std::string>& classes,
           bool label) {
    for (std::size_t i = 0; i < numeric.size(); ++i) numeric[i].push_back(coords[i]);
    for (std::size_t i = 0; i < cats.size(); ++i) cats[i].push_back(classes[i]);
    labels.push_back(label);
  }

  void add_plant(HdaType type, const std::vector<double>& coords,
                 const std::vector<std::string>& classes, const std::string& note) {
    add(coords, classes, true);
    PlantRecord rec;
    rec.id = static_cast<int>(labels.size());  // 1-based id of the case just added
    rec.type = type;
    rec.position = coords;
    rec.note = note;
    plants.push_back(std::move(rec));
  }

  GeneratedSet finish() {
    std::vector<Column> cols;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
      Column c;
      c.name = numeric_names[i];
      c.kind = ColumnKind::Numeric;
      c.numeric = std::move(numeric[i]);
      cols.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < cats.size(); ++i) {
      Column c;
      c.name = cat_names[i];
      c.kind = ColumnKind::Categorical;
      c.classes = std::move(cats[i]);
      cols.push_back(std::move(c));
    }
    GeneratedSet gs{Dataset(std::move(cols), std::move(labels)), std::move(plants),
                    std::move(counts)};
    return gs;
  }
};

double sq(double v) { return v * v; }

// --- gleuf: two elongated clusters, one class each, with side-consistent
// noise and a handful of wrong-class cases planted at the cluster cores. ---

struct GleufGeom {
  // Cluster centres sit far apart along x1 so the inter-cluster gap dwarfs
  // every within-side neighbour distance.
  double red_cx = 2.2, blue_cx = 9.8, cy = 3.5, cz = 3.5;
  double sx = 0.55, sy = 0.2, sz = 0.2;
};

void gen_gleuf(Rng& rng, double scale, SetSink& sink) {
  GleufGeom g;
  long long n = scaled_count(25853, scale);
  if (n < 40) throw Error("scale too small for gleuf");
  long long k_hda = std::max<long long>(1, scaled_count(6, scale));
  long long far_n = std::max<long long>(12, scaled_count(0.004 * 25853, scale));
  long long mid_n = scaled_count(0.095 * 25853, scale);
  long long rest = n - k_hda - far_n - mid_n;
  if (rest < 4) throw Error("scale too small for gleuf");
  long long red_n = rest / 2;
  long long blue_n = rest - red_n;
  auto hda_split = apportion(k_hda, {2.0, 4.0});  // blue-in-red : red-in-blue

  auto cluster_point = [&](double cx, std::vector<double>& out) {
    // Rejection-sample within Mahalanobis 4 of the centre.
    while (true) {
      double dx = rng.normal(), dy = rng.normal(), dz = rng.normal();
      if (sq(dx) + sq(dy) + sq(dz) > 16.0) continue;
      out = {cx + g.sx * dx, g.cy + g.sy * dy, g.cz + g.sz * dz};
      return;
    }
  };

  std::vector<double> p;
  for (long long i = 0; i < red_n; ++i) {
    cluster_point(g.red_cx, p);
    sink.add(p, {"red"}, false);
  }
  for (long long i = 0; i < blue_n; ++i) {
    cluster_point(g.blue_cx, p);
    sink.add(p, {"blue"}, false);
  }

  // Mid-range noise: inside the side boxes, outside Mahalanobis 5 of the
  // side's own cluster; class always matches the side, so removing the class
  // columns never reorders the noise by isolation.
  auto mahal2 = [&](const std::vector<double>& q, double cx) {
    return sq((q[0] - cx) / g.sx) + sq((q[1] - g.cy) / g.sy) + sq((q[2] - g.cz) / g.sz);
  };
  for (long long i = 0; i < mid_n; ++i) {
    bool left = (i % 2) == 0;
    while (true) {
      p = {left ? rng.uniform(0.2, 4.5) : rng.uniform(7.5, 11.8), rng.uniform(0.3, 6.7),
           rng.uniform(0.3, 6.7)};
      if (mahal2(p, left ? g.red_cx : g.blue_cx) >= 25.0) break;
    }
    sink.add(p, {left ? "red" : "blue"}, false);
  }

  // Far noise: six outposts pinned near the shell corners plus a sparse random
  // shell around everything. The outposts keep mutual distances near the full
  // data diameter at every scale, so a plain isolation ranking always has
  // extremes to surface before it reaches the planted cases.
  const double outposts[6][3] = {{-2.7, -1.7, -1.7}, {-2.7, 8.7, 8.7},  {-2.7, 8.7, -1.7},
                                 {14.7, -1.7, -1.7}, {14.7, 8.7, 8.7},  {14.7, -1.7, 8.7}};
  for (const auto& o : outposts) {
    p = {o[0] + rng.uniform(-0.3, 0.3), o[1] + rng.uniform(-0.3, 0.3),
         o[2] + rng.uniform(-0.3, 0.3)};
    sink.add(p, {p[0] < 6.0 ? "red" : "blue"}, false);
  }
  for (long long i = 6; i < far_n; ++i) {
    while (true) {
      p = {rng.uniform(-3.0, 15.0), rng.uniform(-2.0, 9.0), rng.uniform(-2.0, 9.0)};
      bool in_core = p[0] >= 0.0 && p[0] <= 12.0 && p[1] >= 0.0 && p[1] <= 7.0 && p[2] >= 0.0 &&
                     p[2] <= 7.0;
      if (!in_core) break;
    }
    sink.add(p, {p[0] < 6.0 ? "red" : "blue"}, false);
  }

  auto plant = [&](double cx, const std::string& cls, const std::string& note) {
    p = {cx + 0.5 * g.sx * rng.normal(), g.cy + 0.5 * g.sy * rng.normal(),
         g.cz + 0.5 * g.sz * rng.normal()};
    sink.add_plant(HdaType::WrongCombination, p, {cls}, note);
  };
  for (long long i = 0; i < hda_split[0]; ++i) {
    plant(g.red_cx, "blue", "blue-class case at the red cluster core");
  }
  for (long long i = 0; i < hda_split[1]; ++i) {
    plant(g.blue_cx, "red", "red-class case at the blue cluster core");
  }

  sink.counts = {{"cluster_red", static_cast<std::size_t>(red_n)},
                 {"cluster_blue", static_cast<std::size_t>(blue_n)},
                 {"mid_noise", static_cast<std::size_t>(mid_n)},
                 {"far_noise", static_cast<std::size_t>(far_n)},
                 {"hda", static_cast<std::size_t>(k_hda)}};
}

// --- noisyhelix: one four-turn helix, one class per turn, structured noise
// (a clumpy field, ultra-tight condensates with lone satellites, and a
// wrong-class haze ring), six extreme "vagrant" cases with a private class,
// nine single-axis spikes, and wrong-turn cases planted on the tube. ---

struct HelixGeom {
  double cx = 5.0, cy = 5.0, radius = 3.0;
  double z0 = 1.0, pitch = 3.0;  // z rises by pitch per turn, 4 turns
  double sigma = 0.22;
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  std::vector<double> at(double t) const {
    return {cx + radius * std::cos(t), cy + radius * std::sin(t),
            z0 + pitch * (t / kTwoPi)};
  }
  int segment(double t) const {
    int s = static_cast<int>(std::floor(t / kTwoPi));
    return std::clamp(s, 0, 3);
  }
};

void gen_noisyhelix(Rng& rng, double scale, SetSink& sink) {
  HelixGeom g;
  long long n = scaled_count(9665, scale);
  if (n < 90) throw Error("scale too small for noisyhelix");
  long long k_hda = std::max<long long>(1, scaled_count(15, scale));
  long long far_n = std::max<long long>(10, scaled_count(0.0035 * 9665, scale));
  long long mid_n = scaled_count(0.075 * 9665, scale);
  long long haze_n = std::max<long long>(8, scaled_count(32, scale));
  long long cond_n = std::max<long long>(2, scaled_count(6, scale));
  const long long kCondMembers = 12;  // comfortably above the density-ratio
                                      // neighbourhood size, so the clumps
                                      // read as locally consistent
  long long sat_per = std::max<long long>(5, scaled_count(28, scale));
  long long sat_n = cond_n * sat_per;
  long long tube_n =
      n - k_hda - far_n - mid_n - haze_n - cond_n * kCondMembers - sat_n - 15;
  if (tube_n < 8) throw Error("scale too small for noisyhelix");

  const double t_max = 4.0 * HelixGeom::kTwoPi;
  auto seg_class = [](int s) { return "s" + std::to_string(s + 1); };

  // Dense parameter samples used for distance-to-curve and nearest-turn
  // queries.
  const int kCurveSamples = 480;
  std::vector<std::vector<double>> curve(kCurveSamples);
  std::vector<int> curve_seg(kCurveSamples);
  for (int i = 0; i < kCurveSamples; ++i) {
    double t = t_max * (static_cast<double>(i) + 0.5) / kCurveSamples;
    curve[i] = g.at(t);
    curve_seg[i] = g.segment(t);
  }
  auto nearest_curve = [&](const std::vector<double>& q, double& dist2) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCurveSamples; ++i) {
      double d = sq(q[0] - curve[i][0]) + sq(q[1] - curve[i][1]) + sq(q[2] - curve[i][2]);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    dist2 = bd;
    return best;
  };

  // Condensate anchor points: ultra-tight clumps hanging off the tube on the
  // outward side, spread along the curve. Fixed before any noise so the
  // field can keep clear of them.
  std::vector<std::vector<double>> cond_centers;
  for (long long j = 0; j < cond_n; ++j) {
    double t = t_max * (static_cast<double>(j) + 0.41) / static_cast<double>(cond_n);
    double ang = std::atan2(g.at(t)[1] - g.cy, g.at(t)[0] - g.cx);
    double rr = g.radius + 2.6;
    cond_centers.push_back(
        {g.cx + rr * std::cos(ang), g.cy + rr * std::sin(ang), g.at(t)[2]});
  }
  auto clear_of_condensates = [&](const std::vector<double>& q) {
    for (const auto& c : cond_centers) {
      if (sq(q[0] - c[0]) + sq(q[1] - c[1]) + sq(q[2] - c[2]) < sq(5.5)) return false;
    }
    return true;
  };

  std::vector<double> p;
  for (long long i = 0; i < tube_n; ++i) {
    double t = rng.uniform(0.0, t_max);
    p = g.at(t);
    p[0] += g.sigma * rng.normal();
    p[1] += g.sigma * rng.normal();
    p[2] += g.sigma * rng.normal();
    sink.add(p, {seg_class(g.segment(t))}, false);
  }

  // Field noise: micro-clumps and singletons in the core box, kept off the
  // tube and away from the condensates; class borrowed from the nearest
  // stretch of curve. The clump/single mix gives the local density wide
  // swings without touching class structure.
  long long placed = 0;
  while (placed < mid_n) {
    double d2;
    int ci;
    while (true) {
      p = {rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5), rng.uniform(0.5, 13.5)};
      ci = nearest_curve(p, d2);
      if (d2 >= 1.0 && clear_of_condensates(p)) break;
    }
    long long clump = 1 + (rng.below(3) > 0 ? 0 : 3 + static_cast<long long>(rng.below(5)));
    clump = std::min(clump, mid_n - placed);
    sink.add(p, {seg_class(curve_seg[ci])}, false);
    ++placed;
    for (long long m = 1; m < clump; ++m) {
      std::vector<double> q;
      double qd2;
      int qi;
      while (true) {
        q = {p[0] + 0.15 * rng.normal(), p[1] + 0.15 * rng.normal(),
             p[2] + 0.15 * rng.normal()};
        qi = nearest_curve(q, qd2);
        if (qd2 >= 1.0) break;
      }
      sink.add(q, {seg_class(curve_seg[qi])}, false);
      ++placed;
    }
  }

  // Condensates: a dozen cases almost on top of each other. Their members
  // are locally consistent, so density-contrast scores see nothing, while
  // their satellites below get extreme contrast against them.
  std::vector<std::string> cond_class;
  for (const auto& c : cond_centers) {
    double d2;
    int ci = nearest_curve(c, d2);
    cond_class.push_back(seg_class(curve_seg[ci]));
    for (long long m = 0; m < kCondMembers; ++m) {
      p = {c[0] + 0.008 * rng.normal(), c[1] + 0.008 * rng.normal(),
           c[2] + 0.008 * rng.normal()};
      sink.add(p, {cond_class.back()}, false);
    }
  }

  // Satellites: loners whose nearest neighbours are all condensate members.
  // They share the condensate's class, so only their density stands out.
  for (long long j = 0; j < sat_n; ++j) {
    std::size_t which = static_cast<std::size_t>(j) % cond_centers.size();
    const auto& c = cond_centers[which];
    double d2;
    while (true) {
      double ux = rng.normal(), uy = rng.normal(), uz = rng.normal();
      double norm = std::sqrt(sq(ux) + sq(uy) + sq(uz));
      if (norm < 1e-9) continue;
      double rad = rng.uniform(1.9, 2.7);
      p = {c[0] + rad * ux / norm, c[1] + rad * uy / norm, c[2] + rad * uz / norm};
      nearest_curve(p, d2);
      if (d2 >= sq(1.3)) break;
    }
    sink.add(p, {cond_class[which]}, false);
  }

  // Haze: wrong-turn cases floating in the sparse ring around the tube.
  // They carry a foreign class like the plants do, but sit outside the dense
  // tube, so a detector that honours the density requirement must rank them
  // after every plant. The foreign class is always the NEXT turn: its mass is
  // one pitch away, half the two-pitch gap the plants face, so every
  // isolation reading of a haze case stays milder than a plant's.
  for (long long i = 0; i < haze_n; ++i) {
    double d2;
    int ci;
    while (true) {
      p = {rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5), rng.uniform(0.5, 13.5)};
      ci = nearest_curve(p, d2);
      if (d2 >= sq(1.5) && d2 <= sq(2.2) && clear_of_condensates(p)) break;
    }
    // "Next" wraps downward on the last turn: the foreign class must come
    // from an ADJACENT turn, or its mass would sit several pitches away and
    // the haze would read as more isolated than the plants.
    int wrong = curve_seg[ci] == 3 ? 2 : curve_seg[ci] + 1;
    sink.add(p, {seg_class(wrong)}, false);
  }

  // Vagrants: six cases at opposite extremes of the bounding volume sharing
  // the private class "sx". Their class is globally rare, so any
  // class-combination scan ranks them beneath every planted case.
  const double vx[6][3] = {{-3.5, -3.5, -3.0}, {13.5, 13.5, 17.0}, {-3.5, 13.5, -3.0},
                           {13.5, -3.5, 17.0}, {-3.5, -3.5, 17.0}, {13.5, 13.5, -3.0}};
  for (int i = 0; i < 6; ++i) {
    p = {vx[i][0] + rng.uniform(0.0, 0.5), vx[i][1] + rng.uniform(0.0, 0.5),
         vx[i][2] + rng.uniform(0.0, 0.5)};
    sink.add(p, {"sx"}, false);
  }

  // Axis spikes: one coordinate far beyond the data cloud, ordinary class,
  // three per axis and mutually well separated. Value binning isolates them
  // almost immediately, and the stretched value range also delays the
  // separation of the turns; rank binning ignores the stretch entirely.
  const double sx_[9][3] = {{24.0, 5.0, 7.0}, {30.0, 5.0, 7.0}, {36.0, 5.0, 7.0},
                            {5.0, 24.0, 7.0}, {5.0, 30.0, 7.0}, {5.0, 36.0, 7.0},
                            {5.0, 5.0, 28.0}, {5.0, 5.0, 34.0}, {5.0, 5.0, 40.0}};
  for (int i = 0; i < 9; ++i) {
    p = {sx_[i][0] + rng.uniform(0.0, 0.4), sx_[i][1] + rng.uniform(0.0, 0.4),
         sx_[i][2] + rng.uniform(0.0, 0.4)};
    double d2;
    int ci = nearest_curve(p, d2);
    sink.add(p, {seg_class(curve_seg[ci])}, false);
  }

  // Far noise: sparse shell around the core box, coherent class.
  for (long long i = 0; i < far_n; ++i) {
    double d2;
    int ci;
    while (true) {
      p = {rng.uniform(-4.0, 14.0), rng.uniform(-4.0, 14.0), rng.uniform(-3.5, 17.5)};
      bool in_core = p[0] >= 0.0 && p[0] <= 10.0 && p[1] >= 0.0 && p[1] <= 10.0 &&
                     p[2] >= 0.0 && p[2] <= 14.0;
      if (!in_core && clear_of_condensates(p)) break;
    }
    ci = nearest_curve(p, d2);
    sink.add(p, {seg_class(curve_seg[ci])}, false);
  }

  // Planted anomalies: on-tube cases whose class belongs to the turn two
  // segments away, i.e. properly embedded in a dense region of a foreign
  // class.
  const double offsets[3] = {0.25, 0.55, 0.8};
  for (long long i = 0; i < k_hda; ++i) {
    int host = static_cast<int>(i % 4);
    double u = offsets[static_cast<std::size_t>((i / 4) % 3)] +
               0.05 * rng.uniform();
    double t = (static_cast<double>(host) + u) * HelixGeom::kTwoPi;
    p = g.at(t);
    // Tighter jitter than the tube's own spread: the tube dominates the case
    // count, so the dataset-median neighbourhood radius IS tube density and a
    // plant must sit inside the core to be unambiguously in dense company.
    p[0] += 0.35 * g.sigma * rng.normal();
    p[1] += 0.35 * g.sigma * rng.normal();
    p[2] += 0.35 * g.sigma * rng.normal();
    int wrong = (host + 2) % 4;
    sink.add_plant(HdaType::WrongCombination, p, {seg_class(wrong)},
                   "turn-" + std::to_string(wrong + 1) + " class on the turn-" +
                       std::to_string(host + 1) + " tube");
  }

  sink.counts = {{"tube", static_cast<std::size_t>(tube_n)},
                 {"mid_noise", static_cast<std::size_t>(mid_n)},
                 {"condensates", static_cast<std::size_t>(cond_n * kCondMembers)},
                 {"satellites", static_cast<std::size_t>(sat_n)},
                 {"haze", static_cast<std::size_t>(haze_n)},
                 {"far_noise", static_cast<std::size_t>(far_n)},
                 {"vagrants", 6},
                 {"axis_spikes", 9},
                 {"hda", static_cast<std::size_t>(k_hda)}};
}

// --- multiset4d: eight Gaussian blobs on a cube, one class per blob,
// coherent noise, wrong-class plants at antipodal blob cores. ---

void gen_multiset4d(Rng& rng, double scale, SetSink& sink) {
  long long n = scaled_count(7853, scale);
  if (n < 60) throw Error("scale too small for multiset4d");
  long long k_hda = std::max<long long>(1, scaled_count(22, scale));
  long long mid_n = scaled_count(0.06 * 7853, scale);
  long long far_n = std::max<long long>(6, scaled_count(0.004 * 7853, scale));
  long long rest = n - k_hda - mid_n - far_n;
  if (rest < 8) throw Error("scale too small for multiset4d");

  const double sigma = 0.35;
  std::vector<std::vector<double>> centers;
  for (int i = 0; i < 8; ++i) {
    centers.push_back({(i & 1) ? 7.5 : 2.5, (i & 2) ? 7.5 : 2.5, (i & 4) ? 7.5 : 2.5});
  }
  auto blob_class = [](int i) { return "g" + std::to_string(i + 1); };
  auto nearest_blob = [&](const std::vector<double>& q) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
      double d = sq(q[0] - centers[i][0]) + sq(q[1] - centers[i][1]) + sq(q[2] - centers[i][2]);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    return best;
  };

  auto blob_sizes = apportion(rest, std::vector<double>(8, 1.0));
  std::vector<double> p;
  for (int b = 0; b < 8; ++b) {
    for (long long i = 0; i < blob_sizes[static_cast<std::size_t>(b)]; ++i) {
      while (true) {
        double dx = rng.normal(), dy = rng.normal(), dz = rng.normal();
        if (sq(dx) + sq(dy) + sq(dz) > 16.0) continue;
        p = {centers[b][0] + sigma * dx, centers[b][1] + sigma * dy, centers[b][2] + sigma * dz};
        break;
      }
      sink.add(p, {blob_class(b)}, false);
    }
  }

  for (long long i = 0; i < mid_n; ++i) {
    while (true) {
      p = {rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5)};
      int nb = nearest_blob(p);
      double d2 = sq(p[0] - centers[nb][0]) + sq(p[1] - centers[nb][1]) +
                  sq(p[2] - centers[nb][2]);
      if (d2 >= sq(6.0 * sigma)) {
        sink.add(p, {blob_class(nb)}, false);
        break;
      }
    }
  }

  for (long long i = 0; i < far_n; ++i) {
    while (true) {
      p = {rng.uniform(-3.0, 13.0), rng.uniform(-3.0, 13.0), rng.uniform(-3.0, 13.0)};
      bool in_core = p[0] >= 0.0 && p[0] <= 10.0 && p[1] >= 0.0 && p[1] <= 10.0 &&
                     p[2] >= 0.0 && p[2] <= 10.0;
      if (!in_core) break;
    }
    sink.add(p, {blob_class(nearest_blob(p))}, false);
  }

  for (long long i = 0; i < k_hda; ++i) {
    int host = static_cast<int>(i % 8);
    int wrong = 7 - host;  // antipodal corner of the cube
    p = {centers[host][0] + 0.5 * sigma * rng.normal(),
         centers[host][1] + 0.5 * sigma * rng.normal(),
         centers[host][2] + 0.5 * sigma * rng.normal()};
    sink.add_plant(HdaType::WrongCombination, p, {blob_class(wrong)},
                   blob_class(wrong) + "-class case at the " + blob_class(host) + " blob core");
  }

  sink.counts = {{"blobs", static_cast<std::size_t>(rest)},
                 {"mid_noise", static_cast<std::size_t>(mid_n)},
                 {"far_noise", static_cast<std::size_t>(far_n)},
                 {"hda", static_cast<std::size_t>(k_hda)}};
}

// --- multiset5d: a 3x3x2 grid of blobs minus the three sites that would
// carry the (C,Y) combination, two categorical columns tied to the x and z
// layers, one ultra-tight blob, and all three anomaly flavours. ---

struct M5dSite {
  std::vector<double> center;
  std::string c1, c2;
  double sigma;
};

std::vector<M5dSite> m5d_sites() {
  const double xs[3] = {2.0, 5.0, 8.0};
  const char* c1s[3] = {"A", "B", "C"};
  const double ys[3] = {2.0, 5.0, 8.0};
  const double zs[2] = {2.5, 7.5};
  const char* c2s[2] = {"X", "Y"};
  std::vector<M5dSite> sites;
  for (int ix = 0; ix < 3; ++ix) {
    for (int iy = 0; iy < 3; ++iy) {
      for (int iz = 0; iz < 2; ++iz) {
        if (ix == 2 && iz == 1) continue;  // (C,Y) stays unseen
        M5dSite s;
        s.center = {xs[ix], ys[iy], zs[iz]};
        s.c1 = c1s[ix];
        s.c2 = c2s[iz];
        s.sigma = 0.22;
        sites.push_back(std::move(s));
      }
    }
  }
  // One extremely concentrated blob: its score extremes flatten naive unit
  // rescaling downstream without disturbing rank-based methods.
  sites.front().sigma = 0.01;
  return sites;
}

void gen_multiset5d(Rng& rng, double scale, SetSink& sink) {
  long long n = scaled_count(70767, scale);
  if (n < 120) throw Error("scale too small for multiset5d");
  long long k_hda = std::max<long long>(1, scaled_count(40, scale));
  auto type_split = apportion(k_hda, {8.0, 12.0, 20.0});  // uncommon/unseen/wrong
  long long mid_n = scaled_count(0.005 * 70767, scale);
  long long rest = n - k_hda - mid_n;
  auto sites = m5d_sites();
  long long ns = static_cast<long long>(sites.size());
  if (rest < ns) throw Error("scale too small for multiset5d");

  auto site_sizes = apportion(rest, std::vector<double>(sites.size(), 1.0));
  std::vector<double> p;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    for (long long i = 0; i < site_sizes[s]; ++i) {
      while (true) {
        double dx = rng.normal(), dy = rng.normal(), dz = rng.normal();
        if (sq(dx) + sq(dy) + sq(dz) > 16.0) continue;
        p = {sites[s].center[0] + sites[s].sigma * dx, sites[s].center[1] + sites[s].sigma * dy,
             sites[s].center[2] + sites[s].sigma * dz};
        break;
      }
      sink.add(p, {sites[s].c1, sites[s].c2}, false);
    }
  }

  // Sparse noise with a legal combination, kept clear of every site.
  for (long long i = 0; i < mid_n; ++i) {
    while (true) {
      p = {rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5), rng.uniform(0.5, 9.5)};
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& s : sites) {
        dmin = std::min(dmin, sq(p[0] - s.center[0]) + sq(p[1] - s.center[1]) +
                                  sq(p[2] - s.center[2]));
      }
      // Clearance well beyond the blob tails: the noise must drop out of the
      // blobs' value bins within the first few refinement passes so its
      // numeric-density floor sits clearly below every blob member's.
      if (dmin >= sq(1.9)) break;
    }
    const auto& combo = sites[rng.below(sites.size())];
    sink.add(p, {combo.c1, combo.c2}, false);
  }

  auto core_point = [&](const M5dSite& s) {
    return std::vector<double>{s.center[0] + 0.5 * s.sigma * rng.normal(),
                               s.center[1] + 0.5 * s.sigma * rng.normal(),
                               s.center[2] + 0.5 * s.sigma * rng.normal()};
  };

  // Uncommon class: "Q" exists only in these plants.
  for (long long i = 0; i < type_split[0]; ++i) {
    const auto& host = sites[static_cast<std::size_t>((1 + 2 * i) % ns)];
    p = core_point(host);
    sink.add_plant(HdaType::UncommonClass, p, {"Q", host.c2},
                   "class Q inside the (" + host.c1 + "," + host.c2 + ") blob");
  }
  // Unseen combination: C and Y are both frequent, the pair never occurs.
  for (long long i = 0; i < type_split[1]; ++i) {
    const auto& host = sites[static_cast<std::size_t>((2 + 3 * i) % ns)];
    p = core_point(host);
    sink.add_plant(HdaType::UnseenCombination, p, {"C", "Y"},
                   "unseen pairing (C,Y) inside the (" + host.c1 + "," + host.c2 + ") blob");
  }
  // Wrong combination: a pairing that is common elsewhere in the grid.
  const char* c1s[3] = {"A", "B", "C"};
  const char* c2s[2] = {"X", "Y"};
  for (long long i = 0; i < type_split[2]; ++i) {
    const auto& host = sites[static_cast<std::size_t>((3 + 5 * i) % ns)];
    int hx = host.c1 == "A" ? 0 : host.c1 == "B" ? 1 : 2;
    int hz = host.c2 == "X" ? 0 : 1;
    int wx = (hx + 1) % 3;
    int wz = (hz + 1) % 2;
    if (wx == 2 && wz == 1) wx = (hx + 2) % 3;  // never the unseen (C,Y)
    p = core_point(host);
    sink.add_plant(HdaType::WrongCombination, p, {c1s[wx], c2s[wz]},
                   "combination (" + std::string(c1s[wx]) + "," + c2s[wz] + ") inside the (" +
                       host.c1 + "," + host.c2 + ") blob");
  }

  sink.counts = {{"blobs", static_cast<std::size_t>(rest)},
                 {"noise", static_cast<std::size_t>(mid_n)},
                 {"hda", static_cast<std::size_t>(k_hda)},
                 {"hda_uncommon_class", static_cast<std::size_t>(type_split[0])},
                 {"hda_unseen_combination", static_cast<std::size_t>(type_split[1])},
                 {"hda_wrong_combination", static_cast<std::size_t>(type_split[2])}};
}

}  // namespace

GeneratedSet generate(const GenSpec& spec) {
  if (!(spec.scale > 0.0 && spec.scale <= 1.0)) throw Error("scale must be in (0, 1]");
  Rng rng(spec.seed);
  switch (spec.set_name) {
    case SetName::Gleuf: {
      SetSink sink({"x1", "x2", "x3"}, {"color"});
      gen_gleuf(rng, spec.scale, sink);
      return sink.finish();
    }
    case SetName::NoisyHelix: {
      SetSink sink({"x", "y", "z"}, {"segment"});
      gen_noisyhelix(rng, spec.scale, sink);
      return sink.finish();
    }
    case SetName::Multiset4D: {
      SetSink sink({"x1", "x2", "x3"}, {"group"});
      gen_multiset4d(rng, spec.scale, sink);
      return sink.finish();
    }
    case SetName::Multiset5D: {
      SetSink sink({"x1", "x2", "x3"}, {"cat1", "cat2"});
      gen_multiset5d(rng, spec.scale, sink);
      return sink.finish();
    }
  }
  throw Error("unknown set name value");
}

VerifyReport verify_hda_plantings(const GeneratedSet& gs) {
  VerifyReport report;
  const Dataset& ds = gs.ds;
  std::size_t n = ds.n_cases();
  EncodedMatrix m = encode(ds, false);
  std::size_t k = std::min<std::size_t>(12, n - 1);
  auto cat_idx = ds.categorical_column_indices();

  auto combo_of = [&](std::size_t row) {
    std::string key;
    for (std::size_t ci : cat_idx) {
      key += ds.column(ci).classes[row];
      key += '\x1f';
    }
    return key;
  };

  // Mean distance to the k nearest numeric neighbours of one case.
  auto knn_mean = [&](std::size_t row, std::vector<std::size_t>* neighbours) {
    std::vector<std::pair<double, std::size_t>> d;
    d.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != row) d.push_back({squared_distance(m, row, j), j});
    }
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
    std::sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k));
    double sum = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      sum += std::sqrt(d[t].first);
      if (neighbours) neighbours->push_back(d[t].second);
    }
    return sum / static_cast<double>(k);
  };

  // Median neighbourhood radius over a deterministic subsample of cases.
  std::size_t stride = std::max<std::size_t>(1, n / 500);
  std::vector<double> radii;
  for (std::size_t row = 0; row < n; row += stride) radii.push_back(knn_mean(row, nullptr));
  std::sort(radii.begin(), radii.end());
  double median_radius = radii[radii.size() / 2];

  for (const auto& plant : gs.plants) {
    std::size_t row = static_cast<std::size_t>(plant.id) - 1;
    std::vector<std::size_t> nbrs;
    double radius = knn_mean(row, &nbrs);
    if (radius > median_radius) {
      report.violations.push_back(
          {plant.id, "region_not_dense",
           "neighbourhood radius " + std::to_string(radius) + " above the dataset median " +
               std::to_string(median_radius)});
    }
    if (!cat_idx.empty()) {
      std::string mine = combo_of(row);
      std::size_t same = 0;
      for (std::size_t j : nbrs) {
        if (combo_of(j) == mine) ++same;
      }
      if (same * 5 > nbrs.size()) {  // over 20% of neighbours share the combination
        report.violations.push_back(
            {plant.id, "combination_not_rare",
             std::to_string(same) + " of " + std::to_string(nbrs.size()) +
                 " nearest neighbours share the planted combination"});
      }
    }
  }
  return report;
}

void write_generated_csv(const GeneratedSet& gs, const std::string& path) {
  write_dataset_csv(gs.ds, path, "hda");
}

std::string manifest_json(const GeneratedSet& gs, const GenSpec& spec) {
  nlohmann::json j;
  j["set"] = set_name_string(spec.set_name);
  j["seed"] = spec.seed;
  j["scale"] = spec.scale;
  j["n_cases"] = gs.ds.n_cases();
  j["n_hda"] = gs.plants.size();
  j["columns"] = nlohmann::json::array();
  for (const auto& col : gs.ds.columns()) {
    j["columns"].push_back({{"name", col.name},
                            {"kind", col.kind == ColumnKind::Numeric ? "numeric" : "categorical"}});
  }
  j["counts"] = nlohmann::json::object();
  for (const auto& kv : gs.counts) j["counts"][kv.first] = kv.second;
  j["plants"] = nlohmann::json::array();
  for (const auto& plant : gs.plants) {
    j["plants"].push_back({{"id", plant.id},
                           {"type", hda_type_name(plant.type)},
                           {"position", plant.position},
                           {"note", plant.note}});
  }
  return j.dump(2) + "\n";
}

}  // namespace hdad
