#include "walkmix/walk.hpp"

#include <cmath>

namespace walkmix {

namespace {
using Complex = std::complex<double>;
}

SzegedyWalk::SzegedyWalk(MarkovChain chain, int max_states)
    : chain_(std::move(chain)), n_(chain_.size()) {
  if (n_ > max_states) {
    throw SizeExceededError(n_, max_states);
  }
  const int nn = n_ * n_;
  const Eigen::MatrixXd& p = chain_.transition();

  s_ = Eigen::MatrixXd::Zero(nn, n_);
  for (int y = 0; y < n_; ++y) {
    for (int z = 0; z < n_; ++z) {
      s_(arc_index(y, z, n_), y) = std::sqrt(p(y, z));
    }
  }

  r_ = Eigen::MatrixXd::Zero(nn, nn);
  for (int i = 0; i < nn; ++i) {
    r_(arc_reverse_index(i, n_), i) = 1.0;
  }

  // U = R (2 S S^T - I); applying R is a row permutation, so the reflection
  // is materialized once and its rows are rearranged in place.
  Eigen::MatrixXd reflection = 2.0 * (s_ * s_.transpose());
  reflection.diagonal().array() -= 1.0;
  u_.resize(nn, nn);
  for (int i = 0; i < nn; ++i) {
    u_.row(arc_reverse_index(i, n_)) = reflection.row(i);
  }

  verify_invariants();
}

void SzegedyWalk::verify_invariants() const {
  const int nn = n_ * n_;
  const Eigen::MatrixXd gram = s_.transpose() * s_;
  const double iso = (gram - Eigen::MatrixXd::Identity(n_, n_)).cwiseAbs().maxCoeff();
  if (iso > 1e-10) {
    throw Error("walk construction: S^T S deviates from I by " + detail::fmt_g(iso));
  }
  if (((r_ * r_) - Eigen::MatrixXd::Identity(nn, nn)).cwiseAbs().maxCoeff() != 0.0) {
    throw Error("walk construction: R^2 != I");
  }
  // U U^T - I = R (2SS^T-I)^2 R - I reduces to 4 R S (S^T S - I) S^T R, so the
  // orthogonality defect is bounded without forming the n^2 x n^2 product.
  const double ortho = 4.0 * (s_ * ((gram - Eigen::MatrixXd::Identity(n_, n_)) *
                                    s_.transpose()))
                                .cwiseAbs()
                                .maxCoeff();
  if (ortho > 1e-9) {
    throw Error("walk construction: U U^T deviates from I by " + detail::fmt_g(ortho));
  }
  const Eigen::MatrixXd d = discriminant(chain_).matrix;
  const double disc_res = (s_.transpose() * r_ * s_ - d).cwiseAbs().maxCoeff();
  if (disc_res > 1e-10) {
    throw Error("walk construction: S^T R S deviates from D by " + detail::fmt_g(disc_res));
  }
}

SzegedyWalk build_walk(const MarkovChain& chain, int max_states) {
  return SzegedyWalk(chain, max_states);
}

WalkIdempotents walk_idempotents(const SzegedyWalk& walk,
                                 const SpectralDecomposition& disc_decomp,
                                 double pm_one_tol) {
  const Eigen::MatrixXd& s = walk.state_embedding();
  const Eigen::MatrixXd rs = walk.arc_reversal() * s;

  WalkIdempotents out;
  for (int r = 0; r < disc_decomp.groups(); ++r) {
    const double lambda = disc_decomp.eigenvalues(r);
    const Eigen::MatrixXd& e = disc_decomp.idempotents[r];
    if (std::abs(lambda - 1.0) <= pm_one_tol) {
      out.entries.push_back({Complex(1.0, 0.0), (s * e * s.transpose()).cast<Complex>()});
      continue;
    }
    if (std::abs(lambda + 1.0) <= pm_one_tol) {
      out.entries.push_back({Complex(-1.0, 0.0), (s * e * s.transpose()).cast<Complex>()});
      continue;
    }
    const double sin_sq = 1.0 - lambda * lambda;
    if (sin_sq < 1e-14) {
      throw DegenerateAngleError(lambda);
    }
    const double theta = std::acos(lambda);
    for (const int sign : {+1, -1}) {
      const Complex phase = std::polar(1.0, sign * theta);
      const Eigen::MatrixXcd a = s.cast<Complex>() - phase * rs.cast<Complex>();
      Eigen::MatrixXcd f = (a * e.cast<Complex>() * a.adjoint()) / (2.0 * sin_sq);
      out.entries.push_back({phase, std::move(f)});
    }
  }
  return out;
}

WalkIdempotents walk_idempotents_direct(const SzegedyWalk& walk, double group_tol,
                                        double pm_one_tol) {
  const Eigen::MatrixXd& u = walk.transition();
  const Eigen::MatrixXd sym = (u + u.transpose()) / 2.0;
  const Eigen::MatrixXd asym = (u - u.transpose()) / 2.0;

  SpectralDecomposition decomp = decompose(sym, group_tol);
  // Spectrum of (U + U^T)/2 lies in [-1, 1]; clamp solver overshoot.
  for (int r = 0; r < decomp.groups(); ++r) {
    double& c = decomp.eigenvalues(r);
    if (std::abs(c) > 1.0) {
      if (std::abs(c) - 1.0 > 1e-9) {
        throw EigenvalueOutOfRangeError(c);
      }
      c = c > 0.0 ? 1.0 : -1.0;
    }
  }

  WalkIdempotents out;
  for (int r = 0; r < decomp.groups(); ++r) {
    const double c = decomp.eigenvalues(r);
    const Eigen::MatrixXd& proj = decomp.idempotents[r];
    if (std::abs(c - 1.0) <= pm_one_tol) {
      out.entries.push_back({Complex(1.0, 0.0), proj.cast<Complex>()});
      continue;
    }
    if (std::abs(c + 1.0) <= pm_one_tol) {
      out.entries.push_back({Complex(-1.0, 0.0), proj.cast<Complex>()});
      continue;
    }
    const double theta = std::acos(c);
    const double sin_theta = std::sin(theta);
    // On the cos(theta) eigenspace of the symmetric part, U acts as a
    // rotation; the antisymmetric part supplies the complex structure.
    // Symmetrizing the commuting product keeps the result exactly Hermitian.
    const Eigen::MatrixXd cross = (asym * proj + proj * asym) / 2.0;
    for (const int sign : {+1, -1}) {
      Eigen::MatrixXcd f =
          0.5 * proj.cast<Complex>() -
          Complex(0.0, sign / (2.0 * sin_theta)) * cross.cast<Complex>();
      out.entries.push_back({std::polar(1.0, sign * theta), std::move(f)});
    }
  }
  return out;
}

double idempotent_completeness_residual(const SzegedyWalk& walk,
                                        const WalkIdempotents& idem) {
  const Eigen::MatrixXcd s = walk.state_embedding().cast<Complex>();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(walk.arcs(), walk.states());
  for (const auto& entry : idem.entries) {
    acc += entry.projector * s;
  }
  return (acc - s).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd evolve(const SzegedyWalk& walk, const Eigen::VectorXcd& state, long t) {
  if (state.size() != walk.arcs()) {
    throw Error("state dimension " + std::to_string(state.size()) +
                " does not match arc space " + std::to_string(walk.arcs()));
  }
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw NotUnitError(norm);
  }
  if (t < 0) {
    throw Error("time step must be nonnegative");
  }
  Eigen::VectorXd re = state.real();
  Eigen::VectorXd im = state.imag();
  for (long k = 0; k < t; ++k) {
    re = (walk.transition() * re).eval();
    im = (walk.transition() * im).eval();
  }
  Eigen::VectorXcd out(state.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

Eigen::VectorXd arc_distribution(const Eigen::VectorXcd& state) {
  return state.cwiseAbs2();
}

Eigen::VectorXd vertex_marginal(const Eigen::VectorXd& arc_dist) {
  const int nn = static_cast<int>(arc_dist.size());
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nn))));
  if (n * n != nn) {
    throw Error("arc distribution length " + std::to_string(nn) + " is not a square");
  }
  Eigen::VectorXd out(n);
  for (int x = 0; x < n; ++x) {
    out(x) = arc_dist.segment(x * n, n).sum();
  }
  return out;
}

}  // namespace walkmix
