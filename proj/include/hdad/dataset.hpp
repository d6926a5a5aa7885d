#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdad {

// Library-wide error type. CLI maps these to exit code 1 (runtime) or 2 (usage).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ColumnKind { Numeric, Categorical };

// One named column of a rectangular dataset. Exactly one of the two value
// stores is populated, according to `kind`.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Numeric;
  std::vector<double> numeric;        // kind == Numeric
  std::vector<std::string> classes;   // kind == Categorical

  std::size_t size() const {
    return kind == ColumnKind::Numeric ? numeric.size() : classes.size();
  }
};

// Mixed-type rectangular dataset. Cases are identified by dense 1-based ids
// in row order. Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<Column> columns, std::optional<std::vector<bool>> labels = std::nullopt);

  std::size_t n_cases() const { return n_; }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t idx) const { return columns_.at(idx); }
  const Column& column(const std::string& name) const;
  bool has_column(const std::string& name) const;

  std::vector<std::size_t> numeric_column_indices() const;
  std::vector<std::size_t> categorical_column_indices() const;

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<bool>& labels() const;

 private:
  std::size_t n_ = 0;
  std::vector<Column> columns_;
  std::optional<std::vector<bool>> labels_;
};

// View over exactly the numeric columns of a parent dataset (the columns used
// for neighborhood-density assessment).
class ContinuousView {
 public:
  explicit ContinuousView(const Dataset& parent);

  const Dataset& parent() const { return *parent_; }
  const std::vector<std::size_t>& column_indices() const { return indices_; }
  std::size_t n_columns() const { return indices_.size(); }

  // Materializes the view as a standalone numeric-only dataset.
  Dataset as_dataset() const;

 private:
  const Dataset* parent_;
  std::vector<std::size_t> indices_;
};

ContinuousView continuous_view(const Dataset& ds);

using Schema = std::map<std::string, ColumnKind>;

// Reads an RFC-4180-style CSV with a mandatory header row. Every non-label
// header name must appear in `schema`; values of declared numeric columns must
// parse as finite reals ("." decimal separator). Label values are restricted
// to {0,1,true,false}.
Dataset load_dataset(const std::string& path, const Schema& schema,
                     const std::optional<std::string>& label_column = std::nullopt);

// Scans a CSV and declares a column numeric iff every value parses as a
// finite real; otherwise categorical. Convenience for the CLI.
Schema infer_schema(const std::string& path);

// Writes a dataset back to CSV (numerics with 6 decimal places; labels, if
// present, appended as a 0/1 column).
void write_dataset_csv(const Dataset& ds, const std::string& path,
                       const std::string& label_column_name = "hda");

}  // namespace hdad
