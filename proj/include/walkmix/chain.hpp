#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "walkmix/errors.hpp"

namespace walkmix {

/// Tolerance for |row sum - 1| when validating transition matrices.
inline constexpr double kRowSumTol = 1e-12;
/// Tolerance for the detailed-balance residual when deciding reversibility.
inline constexpr double kDetailedBalanceTol = 1e-10;
/// Tolerance for |p(x,y) - p(y,x)| when deciding symmetry.
inline constexpr double kSymmetryTol = 1e-12;

/// A finite Markov chain held as a validated row-stochastic matrix.
/// Rows are never renormalized: a row that does not sum to 1 within
/// kRowSumTol is rejected at construction.
class MarkovChain {
 public:
  explicit MarkovChain(Eigen::MatrixXd transition, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(p_.rows()); }
  const Eigen::MatrixXd& transition() const { return p_; }
  double prob(int x, int y) const { return p_(x, y); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Eigen::MatrixXd p_;
  std::vector<std::string> labels_;
};

MarkovChain load_chain(const Eigen::MatrixXd& transition, std::vector<std::string> labels = {});

struct ChainClassification {
  bool ergodic = false;
  bool reversible = false;
  bool symmetric = false;
  /// Present iff the chain is ergodic; solves pi P = pi with sum(pi) = 1.
  std::optional<Eigen::VectorXd> stationary;
};

/// Symmetric matrix with entries sqrt(p(x,y) p(y,x)). Built one unordered
/// pair at a time so it is bit-exactly symmetric.
struct Discriminant {
  Eigen::MatrixXd matrix;
};

/// Ergodicity here means the support digraph (arc iff p(x,y) > 0) is
/// strongly connected; periodic chains qualify. Reversibility requires
/// ergodicity plus detailed balance against the stationary distribution.
ChainClassification classify(const MarkovChain& chain);

Discriminant discriminant(const MarkovChain& chain);

/// Max absolute entry of D - D_pi P D_pi^{-1} where D_pi = diag(sqrt(pi)).
/// Throws NotReversibleError unless the chain is ergodic and reversible.
double verify_similarity(const MarkovChain& chain, const Discriminant& disc);

}  // namespace walkmix
