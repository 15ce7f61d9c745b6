#include "sawtooth/sparse.hpp"

#include <ostream>
#include <stdexcept>

namespace sawtooth {

namespace {

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> apply_impl(
    const SparseOperator& H, const Eigen::Vector<Scalar, Eigen::Dynamic>& v) {
  if (static_cast<std::size_t>(v.size()) != H.dim) {
    throw std::invalid_argument("apply: vector length does not match dim");
  }
  Eigen::Vector<Scalar, Eigen::Dynamic> w(v.size());
  for (std::size_t i = 0; i < H.dim; ++i) {
    w[static_cast<Eigen::Index>(i)] =
        H.diag[i] * v[static_cast<Eigen::Index>(i)];
  }
  for (const auto& e : H.offdiag) {
    const auto r = static_cast<Eigen::Index>(e.row);
    const auto c = static_cast<Eigen::Index>(e.col);
    w[r] += e.value * v[c];
    w[c] += e.value * v[r];
  }
  return w;
}

}  // namespace

Eigen::VectorXd apply(const SparseOperator& H, const Eigen::VectorXd& v) {
  return apply_impl<double>(H, v);
}

Eigen::VectorXcd apply(const SparseOperator& H, const Eigen::VectorXcd& v) {
  return apply_impl<std::complex<double>>(H, v);
}

Eigen::MatrixXd to_dense(const SparseOperator& H) {
  const auto n = static_cast<Eigen::Index>(H.dim);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < H.dim; ++i) {
    M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = H.diag[i];
  }
  for (const auto& e : H.offdiag) {
    M(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) =
        e.value;
    M(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row)) =
        e.value;
  }
  return M;
}

double trace(const SparseOperator& H) {
  double t = 0.0;
  for (double d : H.diag) t += d;
  return t;
}

void dump_operator(const SparseOperator& H, std::ostream& os) {
  os << "# dim=" << H.dim << " sym=upper\n";
  os.precision(17);
  for (std::size_t i = 0; i < H.dim; ++i) {
    if (H.diag[i] != 0.0) os << i << ' ' << i << ' ' << H.diag[i] << '\n';
  }
  for (const auto& e : H.offdiag) {
    os << e.row << ' ' << e.col << ' ' << e.value << '\n';
  }
}

}  // namespace sawtooth
