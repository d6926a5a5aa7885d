#include "hdad/encode.hpp"

#include <algorithm>
#include <set>

namespace hdad {

EncodedMatrix::EncodedMatrix(std::size_t n_rows, std::vector<EncodedColumnInfo> info,
                             std::vector<double> row_major)
    : n_rows_(n_rows), info_(std::move(info)), data_(std::move(row_major)) {
  if (data_.size() != n_rows_ * info_.size()) throw Error("encoded matrix shape mismatch");
  if (n_rows_ == 0 || info_.empty()) throw Error("encoded matrix must be non-empty");
}

EncodedMatrix EncodedMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error("encoded matrix must be non-empty");
  std::size_t m = rows.front().size();
  std::vector<EncodedColumnInfo> info(m);
  for (std::size_t c = 0; c < m; ++c) info[c].source_column = "c" + std::to_string(c + 1);
  std::vector<double> data;
  data.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw Error("encoded matrix rows must have equal length");
    data.insert(data.end(), row.begin(), row.end());
  }
  return EncodedMatrix(rows.size(), std::move(info), std::move(data));
}

namespace {

// Min-max scales one already-materialized column in place; a constant column
// collapses to all zeros.
void min_max_scale(std::vector<double>& v) {
  auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi == lo) {
    std::fill(v.begin(), v.end(), 0.0);
    return;
  }
  double inv = 1.0 / (hi - lo);
  for (double& x : v) x = (x - lo) * inv;
}

}  // namespace

EncodedMatrix encode(const Dataset& ds, bool include_categoricals) {
  std::size_t n = ds.n_cases();
  std::vector<EncodedColumnInfo> info;
  std::vector<std::vector<double>> cols;

  for (const auto& col : ds.columns()) {
    if (col.kind == ColumnKind::Numeric) {
      std::vector<double> v = col.numeric;
      min_max_scale(v);
      info.push_back({col.name, std::nullopt});
      cols.push_back(std::move(v));
    } else if (include_categoricals) {
      std::set<std::string> classes(col.classes.begin(), col.classes.end());
      for (const auto& cls : classes) {
        std::vector<double> v(n, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
          if (col.classes[r] == cls) v[r] = 1.0;
        }
        min_max_scale(v);
        info.push_back({col.name, cls});
        cols.push_back(std::move(v));
      }
    }
  }
  if (cols.empty()) throw Error("encode: no columns selected");

  std::vector<double> data(n * cols.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) data[r * cols.size() + c] = cols[c][r];
  }
  return EncodedMatrix(n, std::move(info), std::move(data));
}

double squared_distance(const EncodedMatrix& m, std::size_t a, std::size_t b) {
  const double* ra = m.row(a);
  const double* rb = m.row(b);
  double s = 0.0;
  for (std::size_t c = 0; c < m.n_cols(); ++c) {
    double d = ra[c] - rb[c];
    s += d * d;
  }
  return s;
}

}  // namespace hdad
