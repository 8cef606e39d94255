#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace curkit {

/// Row-major dense real matrix; the universal carrier for data matrices,
/// factors, and solver iterates.
using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<Index>;

/// A dense matrix with optional row/column labels and an optional class id
/// per row. Label vectors are either empty or exactly as long as the
/// corresponding dimension.
struct LabeledMatrix {
  DenseMatrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::string> class_of_row;

  Index rows() const { return matrix.rows(); }
  Index cols() const { return matrix.cols(); }
};

}  // namespace curkit
