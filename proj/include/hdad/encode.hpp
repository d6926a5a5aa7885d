#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hdad/dataset.hpp"

namespace hdad {

// Description of one column of an encoded matrix.
struct EncodedColumnInfo {
  std::string source_column;               // originating dataset column
  std::optional<std::string> class_label;  // set for categorical dummy columns
};

// Dense row-major numeric matrix produced by encode(): every value in [0,1].
class EncodedMatrix {
 public:
  EncodedMatrix(std::size_t n_rows, std::vector<EncodedColumnInfo> info,
                std::vector<double> row_major);

  // Builds a matrix directly from rows (used for hand-constructed inputs).
  static EncodedMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return info_.size(); }
  const std::vector<EncodedColumnInfo>& column_info() const { return info_; }

  double at(std::size_t row, std::size_t col) const { return data_[row * info_.size() + col]; }
  const double* row(std::size_t r) const { return data_.data() + r * info_.size(); }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_rows_;
  std::vector<EncodedColumnInfo> info_;
  std::vector<double> data_;
};

// Encodes a dataset for distance-based detectors: numeric columns min-max
// scaled to [0,1] (constant columns collapse to zero); when requested, each
// categorical column expands into one dummy column per class (classes in
// sorted order), likewise scaled, so a class mismatch contributes exactly one
// unit difference per endpoint. Column order follows dataset column order.
EncodedMatrix encode(const Dataset& ds, bool include_categoricals);

// Squared Euclidean distance between two rows of a matrix.
double squared_distance(const EncodedMatrix& m, std::size_t a, std::size_t b);

}  // namespace hdad
