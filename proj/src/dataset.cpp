#include "hdad/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "hdad/csv.hpp"

namespace hdad {

namespace {

bool parse_finite_real(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + text.size()) return false;
  if (!std::isfinite(v)) return false;
  out = v;
  return true;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_label(const std::string& text, bool& out) {
  std::string t = lowercase(text);
  if (t == "0" || t == "false") {
    out = false;
    return true;
  }
  if (t == "1" || t == "true") {
    out = true;
    return true;
  }
  return false;
}

}  // namespace

Dataset::Dataset(std::vector<Column> columns, std::optional<std::vector<bool>> labels)
    : columns_(std::move(columns)), labels_(std::move(labels)) {
  if (columns_.empty()) throw Error("dataset needs at least one column");
  n_ = columns_.front().size();
  if (n_ == 0) throw Error("dataset needs at least one case");
  std::set<std::string> names;
  for (const auto& col : columns_) {
    if (col.name.empty()) throw Error("column names must be non-empty");
    if (!names.insert(col.name).second) throw Error("duplicate column name: " + col.name);
    if (col.size() != n_) {
      throw Error("column " + col.name + " has " + std::to_string(col.size()) +
                  " values, expected " + std::to_string(n_));
    }
    if (col.kind == ColumnKind::Numeric) {
      for (double v : col.numeric) {
        if (!std::isfinite(v)) throw Error("column " + col.name + " contains a non-finite value");
      }
    }
  }
  if (labels_ && labels_->size() != n_) {
    throw Error("label vector has " + std::to_string(labels_->size()) + " values, expected " +
                std::to_string(n_));
  }
}

const Column& Dataset::column(const std::string& name) const {
  for (const auto& col : columns_) {
    if (col.name == name) return col;
  }
  throw Error("no such column: " + name);
}

bool Dataset::has_column(const std::string& name) const {
  for (const auto& col : columns_) {
    if (col.name == name) return true;
  }
  return false;
}

std::vector<std::size_t> Dataset::numeric_column_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].kind == ColumnKind::Numeric) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Dataset::categorical_column_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].kind == ColumnKind::Categorical) out.push_back(i);
  }
  return out;
}

const std::vector<bool>& Dataset::labels() const {
  if (!labels_) throw Error("dataset has no labels");
  return *labels_;
}

ContinuousView::ContinuousView(const Dataset& parent)
    : parent_(&parent), indices_(parent.numeric_column_indices()) {
  if (indices_.empty()) throw Error("dataset has no numeric columns");
}

Dataset ContinuousView::as_dataset() const {
  std::vector<Column> cols;
  cols.reserve(indices_.size());
  for (std::size_t idx : indices_) cols.push_back(parent_->column(idx));
  std::optional<std::vector<bool>> labels;
  if (parent_->has_labels()) labels = parent_->labels();
  return Dataset(std::move(cols), std::move(labels));
}

ContinuousView continuous_view(const Dataset& ds) { return ContinuousView(ds); }

Dataset load_dataset(const std::string& path, const Schema& schema,
                     const std::optional<std::string>& label_column) {
  CsvTable table = read_csv(path);
  if (table.rows.empty()) throw Error(path + ": no data rows");

  std::optional<std::size_t> label_idx;
  if (label_column && table.has_column(*label_column)) {
    label_idx = table.column_index(*label_column);
  }

  std::vector<Column> cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (label_idx && c == *label_idx) continue;
    const std::string& name = table.header[c];
    auto it = schema.find(name);
    if (it == schema.end()) throw Error(path + ": column " + name + " missing from schema");
    Column col;
    col.name = name;
    col.kind = it->second;
    if (col.kind == ColumnKind::Numeric) {
      col.numeric.reserve(table.rows.size());
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        double v;
        if (!parse_finite_real(table.rows[r][c], v)) {
          throw Error(path + ": row " + std::to_string(r + 1) + ", column " + name +
                      ": cannot parse '" + table.rows[r][c] + "' as a finite real");
        }
        col.numeric.push_back(v);
      }
    } else {
      col.classes.reserve(table.rows.size());
      for (const auto& row : table.rows) col.classes.push_back(row[c]);
    }
    cols.push_back(std::move(col));
  }

  std::optional<std::vector<bool>> labels;
  if (label_idx) {
    std::vector<bool> lab;
    lab.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      bool b;
      if (!parse_label(table.rows[r][*label_idx], b)) {
        throw Error(path + ": row " + std::to_string(r + 1) + ", column " + *label_column +
                    ": label must be one of 0, 1, true, false (got '" +
                    table.rows[r][*label_idx] + "')");
      }
      lab.push_back(b);
    }
    labels = std::move(lab);
  }

  return Dataset(std::move(cols), std::move(labels));
}

Schema infer_schema(const std::string& path) {
  CsvTable table = read_csv(path);
  Schema schema;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    bool numeric = !table.rows.empty();
    for (const auto& row : table.rows) {
      double v;
      if (!parse_finite_real(row[c], v)) {
        numeric = false;
        break;
      }
    }
    schema[table.header[c]] = numeric ? ColumnKind::Numeric : ColumnKind::Categorical;
  }
  return schema;
}

void write_dataset_csv(const Dataset& ds, const std::string& path,
                       const std::string& label_column_name) {
  CsvTable table;
  for (const auto& col : ds.columns()) table.header.push_back(col.name);
  if (ds.has_labels()) table.header.push_back(label_column_name);

  char buf[64];
  table.rows.reserve(ds.n_cases());
  for (std::size_t r = 0; r < ds.n_cases(); ++r) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    for (const auto& col : ds.columns()) {
      if (col.kind == ColumnKind::Numeric) {
        std::snprintf(buf, sizeof(buf), "%.6f", col.numeric[r]);
        row.emplace_back(buf);
      } else {
        row.push_back(col.classes[r]);
      }
    }
    if (ds.has_labels()) row.emplace_back(ds.labels()[r] ? "1" : "0");
    table.rows.push_back(std::move(row));
  }
  write_csv(table, path);
}

}  // namespace hdad
