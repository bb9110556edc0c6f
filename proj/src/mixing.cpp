#include "walkmix/mixing.hpp"

#include <cmath>

namespace walkmix {

namespace {

constexpr double kClampTol = 1e-10;
constexpr double kColumnTol = 1e-8;

// Clamps cancellation residue and verifies column stochasticity; every
// mixing matrix funnels through here.
MixingMatrix finalize(Eigen::MatrixXd m, MixingKind kind, MixingMethod method,
                      long horizon = 0, long steps = 0) {
  const double min_entry = m.minCoeff();
  if (min_entry < -kClampTol) {
    throw Error("mixing matrix has entry " + detail::fmt_g(min_entry) +
                " below the clamping tolerance");
  }
  m = m.cwiseMax(0.0);
  const int n = static_cast<int>(m.rows());
  for (int y = 0; y < n; ++y) {
    const double sum = m.col(y).sum();
    if (std::abs(sum - 1.0) > kColumnTol) {
      throw Error("mixing matrix column " + std::to_string(y) + " sums to " +
                  detail::fmt_g(sum));
    }
  }
  return MixingMatrix{std::move(m), kind, method, horizon, steps};
}

Eigen::MatrixXd entrywise_square(const Eigen::MatrixXd& m) {
  return m.cwiseProduct(m);
}

}  // namespace

std::string method_label(const MixingMatrix& mix) {
  switch (mix.method) {
    case MixingMethod::kEmpirical:
      return "empirical(T=" + std::to_string(mix.horizon) + ")";
    case MixingMethod::kWalkIdempotents:
      return "walk-idempotents";
    case MixingMethod::kClosedForm:
      return "closed-form";
    case MixingMethod::kIdempotentSquares:
      return "idempotent-squares";
    case MixingMethod::kTimeIntegral:
      return "time-integral(T=" + std::to_string(mix.horizon) +
             ", steps=" + std::to_string(mix.steps) + ")";
  }
  return "unknown";
}

MixingMatrix mixing_empirical(const SzegedyWalk& walk, long T) {
  if (T < 1) {
    throw Error("empirical horizon T must be at least 1");
  }
  const int n = walk.states();
  // U is real and the start states S e_y are real, so the whole trajectory
  // stays real.
  Eigen::MatrixXd states = walk.state_embedding();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (long t = 0; t < T; ++t) {
    if (t > 0) {
      states = (walk.transition() * states).eval();
    }
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        acc(x, y) += states.col(y).segment(x * n, n).squaredNorm();
      }
    }
  }
  return finalize(acc / static_cast<double>(T), MixingKind::kDiscrete,
                  MixingMethod::kEmpirical, T);
}

MixingMatrix mixing_from_walk_idempotents(const SzegedyWalk& walk,
                                          const WalkIdempotents& idem) {
  const double residual = idempotent_completeness_residual(walk, idem);
  if (residual > 1e-7) {
    throw IncompleteIdempotentsError(residual);
  }
  const int n = walk.states();
  const Eigen::MatrixXcd s = walk.state_embedding().cast<std::complex<double>>();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (const auto& entry : idem.entries) {
    const Eigen::MatrixXcd projected = entry.projector * s;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        acc(x, y) += projected.col(y).segment(x * n, n).squaredNorm();
      }
    }
  }
  return finalize(std::move(acc), MixingKind::kDiscrete, MixingMethod::kWalkIdempotents);
}

MixingMatrix mixing_closed(const MarkovChain& chain, const SpectralDecomposition& disc_decomp) {
  const ChainClassification cls = classify(chain);
  if (!cls.ergodic) {
    throw NotErgodicError();
  }
  if (!cls.reversible) {
    throw NotReversibleError();
  }
  const int n = chain.size();
  if (disc_decomp.size() != n) {
    throw Error("decomposition size does not match chain");
  }
  if (std::abs(disc_decomp.eigenvalues(0) - 1.0) > kPlusMinusOneTol) {
    throw Error("top discriminant eigenvalue " + detail::fmt_g(disc_decomp.eigenvalues(0)) +
                " is not 1; decomposition does not belong to an ergodic chain");
  }
  Eigen::MatrixXd squares_sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd weighted_tail = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < disc_decomp.groups(); ++r) {
    const double lambda = disc_decomp.eigenvalues(r);
    const Eigen::MatrixXd sq = entrywise_square(disc_decomp.idempotents[r]);
    squares_sum += sq;
    if (r == 0) continue;
    if (std::abs(lambda + 1.0) <= kPlusMinusOneTol) {
      throw MinusOneEigenvalueError(lambda);
    }
    weighted_tail += sq / (1.0 - lambda * lambda);
  }
  const Eigen::MatrixXd pt_minus_i =
      chain.transition().transpose() - Eigen::MatrixXd::Identity(n, n);
  // Product order matters: (P^T - I) multiplies the weighted sum from the left.
  Eigen::MatrixXd m = squares_sum + 0.5 * (pt_minus_i * weighted_tail);
  return finalize(std::move(m), MixingKind::kDiscrete, MixingMethod::kClosedForm);
}

MixingMatrix continuous_mixing_closed(const SpectralDecomposition& disc_decomp) {
  const int n = disc_decomp.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Eigen::MatrixXd& e : disc_decomp.idempotents) {
    m += entrywise_square(e);
  }
  return finalize(std::move(m), MixingKind::kContinuous, MixingMethod::kIdempotentSquares);
}

MixingMatrix continuous_mixing_numerical(const Discriminant& disc, double T, long steps) {
  if (!(T > 0.0) || steps < 1) {
    throw Error("time-integral requires T > 0 and steps >= 1");
  }
  const SpectralDecomposition decomp = decompose_discriminant(disc);
  const int n = decomp.size();
  const int groups = decomp.groups();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd re(n, n);
  Eigen::MatrixXd im(n, n);
  for (long k = 0; k < steps; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * T / static_cast<double>(steps);
    re.setZero();
    im.setZero();
    for (int r = 0; r < groups; ++r) {
      const double angle = t * decomp.eigenvalues(r);
      re += std::cos(angle) * decomp.idempotents[r];
      im += std::sin(angle) * decomp.idempotents[r];
    }
    acc += entrywise_square(re) + entrywise_square(im);
  }
  return finalize(acc / static_cast<double>(steps), MixingKind::kContinuous,
                  MixingMethod::kTimeIntegral, static_cast<long>(T), steps);
}

bool is_uniform_mixing(const MixingMatrix& mix, double tol) {
  const double target = 1.0 / mix.size();
  return (mix.m.array() - target).abs().maxCoeff() <= tol;
}

bool is_uniform_mixing(const MixingMatrix& mix) {
  const bool time_averaged = mix.method == MixingMethod::kEmpirical ||
                             mix.method == MixingMethod::kTimeIntegral;
  return is_uniform_mixing(mix, time_averaged ? 5e-3 : 1e-8);
}

bool uniform_mixing_criterion(const SpectralDecomposition& disc_decomp, double tol) {
  for (bool flat : flat_eigenvector_test(disc_decomp, tol)) {
    if (!flat) return false;
  }
  return true;
}

bool PropertyReport::all_ok(double automorphism_tol, double column_tol) const {
  if (!trace_inequality_ok) return false;
  if (symmetric_ok.has_value() && !*symmetric_ok) return false;
  if (column_stochastic_residual > column_tol) return false;
  for (const auto& [sigma, residual] : automorphism_residuals) {
    if (residual > automorphism_tol) return false;
  }
  return true;
}

PropertyReport verify_properties(const MarkovChain& chain, const MixingMatrix& discrete,
                                 const MixingMatrix& continuous,
                                 const std::vector<Automorphism>& automorphisms) {
  const int n = chain.size();
  if (discrete.size() != n || continuous.size() != n) {
    throw Error("mixing matrices do not match the chain size");
  }
  const Eigen::MatrixXd& p = chain.transition();
  for (const Automorphism& a : automorphisms) {
    if (static_cast<int>(a.sigma.size()) != n) {
      throw AutomorphismInvalidError("permutation length does not match the chain");
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (p(a.sigma[x], a.sigma[y]) != p(x, y)) {
          throw AutomorphismInvalidError("p(sigma(" + std::to_string(x) + "), sigma(" +
                                         std::to_string(y) + ")) != p(" + std::to_string(x) +
                                         ", " + std::to_string(y) + ")");
        }
      }
    }
  }

  PropertyReport report;
  report.trace_discrete = discrete.m.trace();
  report.trace_continuous = continuous.m.trace();
  report.trace_inequality_ok = report.trace_discrete <= report.trace_continuous + 1e-9;
  if ((p - p.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol) {
    report.symmetric_ok =
        (discrete.m - discrete.m.transpose()).cwiseAbs().maxCoeff() <= 1e-8;
  }
  double column_residual = 0.0;
  for (int y = 0; y < n; ++y) {
    column_residual = std::max(column_residual, std::abs(discrete.m.col(y).sum() - 1.0));
  }
  report.column_stochastic_residual = column_residual;
  for (const Automorphism& a : automorphisms) {
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        worst = std::max(worst,
                         std::abs(discrete.m(x, y) - discrete.m(a.sigma[x], a.sigma[y])));
      }
    }
    report.automorphism_residuals.emplace_back(a.sigma, worst);
  }
  return report;
}

}  // namespace walkmix
