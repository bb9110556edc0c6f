#include "walkmix/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace walkmix {

SpectralDecomposition decompose(const Eigen::MatrixXd& matrix, double group_tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    throw NotSquareError(matrix.rows(), matrix.cols());
  }
  const double asymmetry = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-10) {
    throw NotSymmetricError(asymmetry);
  }
  if (!(group_tol > 0.0)) {
    throw Error("group_tol must be positive");
  }
  const int n = static_cast<int>(matrix.rows());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigensolver failed to converge");
  }
  // Solver returns ascending order; flip to descending.
  Eigen::VectorXd w(n);
  Eigen::MatrixXd v(n, n);
  for (int i = 0; i < n; ++i) {
    w(i) = solver.eigenvalues()(n - 1 - i);
    v.col(i) = solver.eigenvectors().col(n - 1 - i);
  }

  const double radius = std::max(std::abs(w(0)), std::abs(w(n - 1)));
  const double threshold = group_tol * std::max(1.0, radius);

  SpectralDecomposition out;
  bool ambiguous = false;
  std::vector<double> distinct;
  int start = 0;
  for (int i = 0; i <= n; ++i) {
    if (i < n && i > 0) {
      const double gap = w(i - 1) - w(i);
      if (gap >= threshold / 10.0 && gap <= threshold * 10.0) {
        ambiguous = true;
      }
    }
    if (i == n || (i > start && w(i - 1) - w(i) > threshold)) {
      const int count = i - start;
      const Eigen::MatrixXd block = v.middleCols(start, count);
      Eigen::MatrixXd e = block * block.transpose();
      e = ((e + e.transpose()) / 2.0).eval();
      out.idempotents.push_back(std::move(e));
      out.multiplicities.push_back(count);
      distinct.push_back(w.segment(start, count).mean());
      start = i;
    }
  }
  out.eigenvalues = Eigen::Map<Eigen::VectorXd>(distinct.data(), distinct.size());
  out.grouping_ambiguous = ambiguous;
  return out;
}

SpectralDecomposition decompose_discriminant(const Discriminant& disc, double group_tol) {
  SpectralDecomposition out = decompose(disc.matrix, group_tol);
  for (int r = 0; r < out.groups(); ++r) {
    double& lambda = out.eigenvalues(r);
    if (std::abs(lambda) > 1.0) {
      if (std::abs(lambda) - 1.0 > 1e-9) {
        throw EigenvalueOutOfRangeError(lambda);
      }
      lambda = lambda > 0.0 ? 1.0 : -1.0;
    }
  }
  return out;
}

Eigen::MatrixXd reconstruct(const SpectralDecomposition& decomp) {
  const int n = decomp.size();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < decomp.groups(); ++r) {
    sum += decomp.eigenvalues(r) * decomp.idempotents[r];
  }
  return sum;
}

std::vector<bool> flat_eigenvector_test(const SpectralDecomposition& decomp, double tol) {
  const int n = decomp.size();
  std::vector<bool> out;
  out.reserve(decomp.groups());
  for (int r = 0; r < decomp.groups(); ++r) {
    bool flat = decomp.multiplicities[r] == 1;
    if (flat) {
      const double target = 1.0 / n;
      const Eigen::MatrixXd& e = decomp.idempotents[r];
      flat = (e.cwiseAbs().array() - target).abs().maxCoeff() <= tol;
    }
    out.push_back(flat);
  }
  return out;
}

}  // namespace walkmix
