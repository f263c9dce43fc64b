#include "archegraph/spectral.hpp"

#include <cmath>

#include "archegraph/error.hpp"

namespace archegraph {

EigenDecomposition sym_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("sym_eig: matrix is not square");
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("sym_eig: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("sym_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void canonicalize_signs(Eigen::MatrixXd& columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    const double top = columns.col(c).cwiseAbs().maxCoeff();
    Eigen::Index arg = 0;
    while (std::abs(columns(arg, c)) < top * (1.0 - 1e-12)) ++arg;
    if (columns(arg, c) < 0) columns.col(c) *= -1.0;
  }
}

Embedding embed(const Graph& g, int k) {
  const auto n = static_cast<int>(g.num_vertices());
  if (k < 1 || k > n - 2) {
    throw InputError("embedding dimension k=" + std::to_string(k) + " must lie in [1, " +
                     std::to_string(n - 2) + "]");
  }
  if (!is_connected(g)) {
    throw InputError("graph is disconnected; embed its largest component instead");
  }
  const auto lap = normalized_laplacian(g);
  auto eig = sym_eig(lap.entries);

  const double zero_tol = 1e-8 * lap.entries.trace();
  if (std::abs(eig.values(0)) > zero_tol) {
    throw NumericalError("normalized Laplacian has no zero eigenvalue");
  }
  if (eig.values(1) <= zero_tol) {
    throw NumericalError("normalized Laplacian has a repeated zero eigenvalue");
  }

  Embedding out;
  out.coords = eig.vectors.middleCols(1, k);
  out.eigenvalues = eig.values.segment(1, k);
  canonicalize_signs(out.coords);
  out.vertices.reserve(n);
  for (int v = 0; v < n; ++v) out.vertices.push_back(g.label(v));
  return out;
}

}  // namespace archegraph
