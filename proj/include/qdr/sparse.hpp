// Compressed-row sparse matrix with triplet assembly and text export.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "qdr/errors.hpp"

namespace qdr {

struct Triplet {
  int row;
  int col;
  double value;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Set by the assemblers of symmetric forms; implies entrywise symmetry to
  /// 1e-12 relative (see symmetry_defect).
  bool symmetric = false;

  /// Deduplicating triplet assembly; entries with the same (row, col) are
  /// summed in input order, so the result is deterministic.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
    for (std::size_t k = 0; k < triplets.size();) {
      const int r = triplets[k].row, c = triplets[k].col;
      double sum = 0.0;
      while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c)
        sum += triplets[k++].value;
      m.col_idx_.push_back(c);
      m.values_.push_back(sum);
      ++m.row_ptr_[static_cast<std::size_t>(r) + 1];
    }
    for (int r = 0; r < rows; ++r)
      m.row_ptr_[static_cast<std::size_t>(r) + 1] += m.row_ptr_[static_cast<std::size_t>(r)];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(rows_), 0.0);
    for (int r = 0; r < rows_; ++r) {
      double sum = 0.0;
      for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
        sum += values_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)])];
      y[static_cast<std::size_t>(r)] = sum;
    }
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y;
    apply(x, y);
    return y;
  }

  double coeff(int row, int col) const {
    for (int k = row_ptr_[static_cast<std::size_t>(row)]; k < row_ptr_[static_cast<std::size_t>(row) + 1]; ++k)
      if (col_idx_[static_cast<std::size_t>(k)] == col) return values_[static_cast<std::size_t>(k)];
    return 0.0;
  }

  std::vector<double> diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(rows_), 0.0);
    for (int r = 0; r < std::min(rows_, cols_); ++r) d[static_cast<std::size_t>(r)] = coeff(r, r);
    return d;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Largest relative symmetry defect max |a_ij - a_ji| / max |a_ij|.
  double symmetry_defect() const {
    double defect = 0.0;
    for (int r = 0; r < rows_; ++r)
      for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
        defect = std::max(defect, std::abs(values_[static_cast<std::size_t>(k)] -
                                           coeff(col_idx_[static_cast<std::size_t>(k)], r)));
    const double scale = max_abs();
    return scale > 0.0 ? defect / scale : 0.0;
  }

  SparseMatrix multiply(const SparseMatrix& other) const {
    std::vector<Triplet> triplets;
    for (int r = 0; r < rows_; ++r) {
      for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
        const int mid = col_idx_[static_cast<std::size_t>(k)];
        const double v = values_[static_cast<std::size_t>(k)];
        for (int j = other.row_ptr_[static_cast<std::size_t>(mid)];
             j < other.row_ptr_[static_cast<std::size_t>(mid) + 1]; ++j)
          triplets.push_back({r, other.col_idx_[static_cast<std::size_t>(j)],
                              v * other.values_[static_cast<std::size_t>(j)]});
      }
    }
    return from_triplets(rows_, other.cols_, std::move(triplets));
  }

  /// Coordinate text format: one "row col value" line per stored entry.
  void write_coordinate(std::ostream& out) const {
    out << rows_ << ' ' << cols_ << ' ' << nonzeros() << '\n';
    char buf[96];
    for (int r = 0; r < rows_; ++r)
      for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, col_idx_[static_cast<std::size_t>(k)],
                      values_[static_cast<std::size_t>(k)]);
        out << buf;
      }
  }

  void write_coordinate(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_coordinate(out);
  }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

}  // namespace qdr
