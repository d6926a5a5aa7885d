#include "hdad/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace hdad {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_scatter_svg(const Dataset& ds, const PlotOptions& opts) {
  const Column& xcol = ds.column(opts.x_column);
  const Column& ycol = ds.column(opts.y_column);
  if (xcol.kind != ColumnKind::Numeric || ycol.kind != ColumnKind::Numeric) {
    throw Error("plot axes must be numeric columns");
  }

  const Column* ccol = nullptr;
  if (opts.class_column) {
    ccol = &ds.column(*opts.class_column);
    if (ccol->kind != ColumnKind::Categorical) throw Error("class column must be categorical");
  } else {
    auto cats = ds.categorical_column_indices();
    if (!cats.empty()) ccol = &ds.column(cats.front());
  }

  std::map<std::string, std::size_t> class_color;
  if (ccol) {
    for (const auto& cls : ccol->classes) {
      class_color.emplace(cls, class_color.size());
    }
  }

  double x_lo = *std::min_element(xcol.numeric.begin(), xcol.numeric.end());
  double x_hi = *std::max_element(xcol.numeric.begin(), xcol.numeric.end());
  double y_lo = *std::min_element(ycol.numeric.begin(), ycol.numeric.end());
  double y_hi = *std::max_element(ycol.numeric.begin(), ycol.numeric.end());
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;

  const double margin = 48.0;
  double w = static_cast<double>(opts.width);
  double h = static_cast<double>(opts.height);
  auto px = [&](double v) { return margin + (v - x_lo) / (x_hi - x_lo) * (w - 2 * margin); };
  auto py = [&](double v) { return h - margin - (v - y_lo) / (y_hi - y_lo) * (h - 2 * margin); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width
      << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << " "
      << opts.height << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty()) {
    out << "  <text x=\"" << fmt(w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(opts.title)
        << "</text>\n";
  }
  // Axis lines and labels.
  out << "  <line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(h - margin) << "\" x2=\""
      << fmt(w - margin) << "\" y2=\"" << fmt(h - margin) << "\" stroke=\"#333\"/>\n"
      << "  <line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(margin)
      << "\" y2=\"" << fmt(h - margin) << "\" stroke=\"#333\"/>\n"
      << "  <text x=\"" << fmt(w / 2) << "\" y=\"" << fmt(h - 12) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(opts.x_column)
      << "</text>\n"
      << "  <text x=\"14\" y=\"" << fmt(h / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 " << fmt(h / 2)
      << ")\">" << xml_escape(opts.y_column) << "</text>\n";

  std::vector<char> highlight(ds.n_cases(), 0);
  for (int id : opts.highlight_ids) {
    if (id < 1 || static_cast<std::size_t>(id) > ds.n_cases()) {
      throw Error("highlight id out of range: " + std::to_string(id));
    }
    highlight[static_cast<std::size_t>(id) - 1] = 1;
  }
  for (std::size_t r = 0; r < ds.n_cases(); ++r) {
    const char* color = "#1f77b4";
    if (ccol) {
      std::size_t ci = class_color[ccol->classes[r]] % (sizeof(kPalette) / sizeof(kPalette[0]));
      color = kPalette[ci];
    }
    double cx = px(xcol.numeric[r]);
    double cy = py(ycol.numeric[r]);
    if (highlight[r]) {
      // Highlighted cases get a larger ringed marker so they stay visible.
      out << "  <circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
          << "\" r=\"5\" fill=\"" << color << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    } else {
      out << "  <circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"2\" fill=\""
          << color << "\" fill-opacity=\"0.55\"/>\n";
    }
  }

  // Legend for the class colours.
  if (ccol) {
    double lx = w - margin - 80.0;
    double ly = margin + 8.0;
    for (const auto& kv : class_color) {
      const char* color = kPalette[kv.second % (sizeof(kPalette) / sizeof(kPalette[0]))];
      out << "  <circle cx=\"" << fmt(lx) << "\" cy=\"" << fmt(ly) << "\" r=\"4\" fill=\""
          << color << "\"/>\n"
          << "  <text x=\"" << fmt(lx + 10) << "\" y=\"" << fmt(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(kv.first)
          << "</text>\n";
      ly += 16.0;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hdad
