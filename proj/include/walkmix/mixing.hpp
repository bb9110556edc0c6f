#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walkmix/chain.hpp"
#include "walkmix/constructions.hpp"
#include "walkmix/spectral.hpp"
#include "walkmix/walk.hpp"

namespace walkmix {

enum class MixingKind { kDiscrete, kContinuous };

enum class MixingMethod {
  kEmpirical,         ///< finite-horizon time average of the walk
  kWalkIdempotents,   ///< sum over walk eigenprojectors
  kClosedForm,        ///< discriminant-spectrum formula (reversible chains)
  kIdempotentSquares, ///< sum of entrywise-squared discriminant idempotents
  kTimeIntegral,      ///< midpoint-rule average of |exp(itD)|^2
};

/// Column-stochastic limiting distribution matrix: column y is the
/// time-averaged vertex distribution of the walk started at vertex y.
/// Entries are clamped at 0 when cancellation leaves them above -1e-10;
/// anything more negative fails construction.
struct MixingMatrix {
  Eigen::MatrixXd m;
  MixingKind kind = MixingKind::kDiscrete;
  MixingMethod method = MixingMethod::kEmpirical;
  long horizon = 0;  ///< T for kEmpirical; integration endpoint for kTimeIntegral
  long steps = 0;    ///< midpoint panels for kTimeIntegral

  int size() const { return static_cast<int>(m.rows()); }
};

std::string method_label(const MixingMatrix& mix);

/// Default time horizon for the empirical average.
inline constexpr long kDefaultEmpiricalT = 20000;

/// (1/T) sum_{t<T} of vertex marginals of U^t S e_y, one column per start
/// vertex, each column evolved incrementally with one multiplication by U
/// per step.
MixingMatrix mixing_empirical(const SzegedyWalk& walk, long T);

/// m[x][y] = sum_r sum_z |(F_r S e_y)[arc(x,z)]|^2. Requires the projectors
/// to resolve col(S) within 1e-7.
MixingMatrix mixing_from_walk_idempotents(const SzegedyWalk& walk,
                                          const WalkIdempotents& idem);

/// Exact limit for ergodic reversible chains:
///   sum_r E_r^o2  +  (1/2) (P^T - I) sum_{r>=2} E_r^o2 / (1 - lambda_r^2),
/// with E^o2 the entrywise square and lambda_1 = 1 the top eigenvalue.
MixingMatrix mixing_closed(const MarkovChain& chain, const SpectralDecomposition& disc_decomp);

/// Continuous-walk limit: sum_r E_r^o2.
MixingMatrix continuous_mixing_closed(const SpectralDecomposition& disc_decomp);

/// Midpoint-rule average of exp(itD) o conj(exp(itD)) over [0, T]; converges
/// to continuous_mixing_closed as T grows.
MixingMatrix continuous_mixing_numerical(const Discriminant& disc, double T, long steps);

bool is_uniform_mixing(const MixingMatrix& mix, double tol);
/// Method-aware default: 1e-8 for exact formulas, 5e-3 for time-averaged ones.
bool is_uniform_mixing(const MixingMatrix& mix);

/// True iff every discriminant eigenvalue is simple with a flat eigenvector;
/// exactly the chains whose continuous walk mixes to uniform (and then the
/// discrete walk does too).
bool uniform_mixing_criterion(const SpectralDecomposition& disc_decomp, double tol = 1e-8);

struct PropertyReport {
  double trace_discrete = 0.0;
  double trace_continuous = 0.0;
  bool trace_inequality_ok = false;
  std::optional<bool> symmetric_ok;       ///< set only when the chain is symmetric
  double column_stochastic_residual = 0.0;
  /// (sigma, max_{x,y} |m[x][y] - m[sigma(x)][sigma(y)]|) per automorphism.
  std::vector<std::pair<std::vector<int>, double>> automorphism_residuals;

  bool all_ok(double automorphism_tol = 1e-8, double column_tol = 1e-8) const;
};

/// Checks the limiting-matrix properties: trace(discrete) <= trace(continuous)
/// + 1e-9, symmetry when the chain is symmetric, column stochasticity, and
/// invariance under each supplied automorphism (validated exactly first).
PropertyReport verify_properties(const MarkovChain& chain, const MixingMatrix& discrete,
                                 const MixingMatrix& continuous,
                                 const std::vector<Automorphism>& automorphisms);

}  // namespace walkmix
