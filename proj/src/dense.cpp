#include <Eigen/Eigenvalues>

#include <string>

#include "anderson/limits.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

std::vector<double> dense_eigenvalues(const TridiagonalOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.size());
  const auto guard = resource_limits().max_dense;
  if (n > guard)
    throw ResourceError("dense eigensolver limited to n <= " + std::to_string(guard) + ", got " +
                        std::to_string(n));
  if (n == 0) return {};
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(op.diag.data(), n);
  Eigen::VectorXd e(n > 1 ? n - 1 : 0);
  for (Eigen::Index i = 0; i + 1 < n; ++i) e[i] = op.offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + n};
}

}  // namespace anderson
