#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace sawtooth {

// Real symmetric matrix in upper-triangle coordinate storage. The diagonal
// is kept densely; off-diagonal entries satisfy row < col and appear once.
struct SparseOperator {
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  std::size_t dim = 0;
  std::vector<double> diag;
  std::vector<Entry> offdiag;
};

// w = H v with the implicit lower triangle expanded. Deterministic
// summation order independent of thread count.
Eigen::VectorXd apply(const SparseOperator& H, const Eigen::VectorXd& v);
Eigen::VectorXcd apply(const SparseOperator& H, const Eigen::VectorXcd& v);

Eigen::MatrixXd to_dense(const SparseOperator& H);

double trace(const SparseOperator& H);

// Coordinate-format dump: header "# dim=<dim> sym=upper", then
// "row col value" lines (0-based), diagonal first.
void dump_operator(const SparseOperator& H, std::ostream& os);

}  // namespace sawtooth
