#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "walkmix/chain.hpp"
#include "walkmix/spectral.hpp"

namespace walkmix {

/// Arc (x, y) lives at flat index x*n + y (row-major).
inline int arc_index(int x, int y, int n) { return x * n + y; }
inline int arc_reverse_index(int index, int n) { return (index % n) * n + index / n; }

/// Absolute tolerance for routing discriminant eigenvalues to the +-1
/// eigenprojector branches instead of the rotating-pair formulas.
inline constexpr double kPlusMinusOneTol = 1e-8;

/// Quantized chain on the n^2-dimensional arc space: the coherent vertex
/// embedding S (column y is sum_z sqrt(p(y,z)) e_y (x) e_z), the arc-reversal
/// permutation R, and the real orthogonal step operator U = R (2 S S^T - I).
/// All three are dense; construction verifies S^T S = I, R^2 = I, U U^T = I
/// and S^T R S = D.
class SzegedyWalk {
 public:
  static constexpr int kDefaultMaxStates = 64;

  explicit SzegedyWalk(MarkovChain chain, int max_states = kDefaultMaxStates);

  int states() const { return n_; }
  int arcs() const { return n_ * n_; }
  const MarkovChain& chain() const { return chain_; }
  const Eigen::MatrixXd& state_embedding() const { return s_; }
  const Eigen::MatrixXd& arc_reversal() const { return r_; }
  const Eigen::MatrixXd& transition() const { return u_; }

 private:
  void verify_invariants() const;

  MarkovChain chain_;
  int n_;
  Eigen::MatrixXd s_;
  Eigen::MatrixXd r_;
  Eigen::MatrixXd u_;
};

SzegedyWalk build_walk(const MarkovChain& chain, int max_states = SzegedyWalk::kDefaultMaxStates);

struct WalkEigenprojector {
  std::complex<double> eigenvalue;  ///< unit-modulus eigenvalue of U
  Eigen::MatrixXcd projector;       ///< Hermitian idempotent onto its eigenspace
};

/// Eigenprojectors of U relevant to states in col(S): the +-1 pieces S E S^T
/// and one conjugate pair per remaining discriminant eigenvalue. Projections
/// onto subspaces orthogonal to col(S) annihilate every initial state S e_y
/// and are never materialized.
struct WalkIdempotents {
  std::vector<WalkEigenprojector> entries;
};

/// Builds the projectors from the decomposition of the walk's discriminant.
/// Eigenvalues within pm_one_tol of +-1 go to the S E S^T branch; any other
/// eigenvalue with sin^2(theta) < 1e-14 signals a grouping failure and throws
/// DegenerateAngleError.
WalkIdempotents walk_idempotents(const SzegedyWalk& walk,
                                 const SpectralDecomposition& disc_decomp,
                                 double pm_one_tol = kPlusMinusOneTol);

/// Full-space alternative built straight from U: symmetric eigendecomposition
/// of (U + U^T)/2 groups the eigenphases by their cosine, and the rotating
/// pairs are completed with the antisymmetric part. Covers chains where the
/// discriminant route is unavailable or suspect; sums to the identity.
WalkIdempotents walk_idempotents_direct(const SzegedyWalk& walk,
                                        double group_tol = kDefaultGroupTol,
                                        double pm_one_tol = kPlusMinusOneTol);

/// Max |(sum_F F) S - S| entry: how completely the projectors resolve col(S).
double idempotent_completeness_residual(const SzegedyWalk& walk,
                                        const WalkIdempotents& idem);

/// U^t state by repeated multiplication. The state must be unit within 1e-10.
Eigen::VectorXcd evolve(const SzegedyWalk& walk, const Eigen::VectorXcd& state, long t);

/// Entrywise squared modulus.
Eigen::VectorXd arc_distribution(const Eigen::VectorXcd& state);

/// out[x] = sum_z arc_dist[arc_index(x, z)].
Eigen::VectorXd vertex_marginal(const Eigen::VectorXd& arc_dist);

}  // namespace walkmix
