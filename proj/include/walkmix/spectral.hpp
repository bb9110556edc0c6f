#pragma once

#include <Eigen/Dense>
#include <vector>

#include "walkmix/chain.hpp"
#include "walkmix/errors.hpp"

namespace walkmix {

/// Relative tolerance for merging nearby eigenvalues into one group.
inline constexpr double kDefaultGroupTol = 1e-8;

/// Eigendecomposition of a real symmetric matrix collected into distinct
/// eigenvalues and the projections onto their eigenspaces.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;               ///< distinct, strictly descending
  std::vector<Eigen::MatrixXd> idempotents;  ///< E_r = V_r V_r^T per group
  std::vector<int> multiplicities;
  /// Set when some eigenvalue gap lies within a factor of 10 of the grouping
  /// threshold, so the grouping (and hence the idempotents) is sensitive to it.
  bool grouping_ambiguous = false;

  int size() const { return idempotents.empty() ? 0 : static_cast<int>(idempotents[0].rows()); }
  int groups() const { return static_cast<int>(idempotents.size()); }
};

/// Requires max |M - M^T| <= 1e-10. Consecutive eigenvalues within
/// group_tol * max(1, spectral radius) are merged.
SpectralDecomposition decompose(const Eigen::MatrixXd& matrix,
                                double group_tol = kDefaultGroupTol);

/// decompose() plus clamping of eigenvalues to [-1, 1]; an overshoot beyond
/// 1e-9 throws EigenvalueOutOfRangeError. Use for discriminants so arccos is
/// defined downstream.
SpectralDecomposition decompose_discriminant(const Discriminant& disc,
                                             double group_tol = kDefaultGroupTol);

/// Sum of lambda_r E_r; round-trip oracle for decompose().
Eigen::MatrixXd reconstruct(const SpectralDecomposition& decomp);

/// Per eigenvalue: multiplicity one and every |E_r entry| equal to 1/n
/// within tol (the unit eigenvector has all entries of modulus 1/sqrt(n)).
std::vector<bool> flat_eigenvector_test(const SpectralDecomposition& decomp,
                                        double tol = 1e-8);

}  // namespace walkmix
