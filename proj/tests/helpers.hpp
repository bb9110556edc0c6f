#pragma once

#include <Eigen/Dense>
#include <random>

namespace testutil {

template <typename Derived>
double maxabs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Row-normalized positive matrix: ergodic, generally neither symmetric nor
/// reversible.
inline Eigen::MatrixXd random_stochastic(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Eigen::MatrixXd p(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      p(x, y) = unif(rng);
    }
  }
  for (int x = 0; x < n; ++x) {
    p.row(x) /= p.row(x).sum();
  }
  return p;
}

/// Symmetrizes a random positive matrix and rescales it symmetrically
/// (Sinkhorn iteration with one scaling vector) until it is doubly
/// stochastic, so the result is a symmetric ergodic chain.
inline Eigen::MatrixXd random_symmetric_stochastic(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      a(x, y) = unif(rng);
    }
  }
  Eigen::MatrixXd b = (a + a.transpose()) / 2.0;
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  Eigen::MatrixXd scaled = b;
  for (int it = 0; it < 500; ++it) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        scaled(x, y) = d(x) * b(x, y) * d(y);
      }
    }
    const Eigen::VectorXd sums = scaled.rowwise().sum();
    if ((sums.array() - 1.0).abs().maxCoeff() < 1e-15) break;
    d = d.array() / sums.array().sqrt();
  }
  scaled = ((scaled + scaled.transpose()) / 2.0).eval();
  return scaled;
}

/// Tridiagonal chain with positive up/down rates; detailed balance holds by
/// construction, and the matrix is generally not symmetric.
inline Eigen::MatrixXd random_birth_death(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.1, 0.4);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    double up = x + 1 < n ? unif(rng) : 0.0;
    double down = x > 0 ? unif(rng) : 0.0;
    if (x + 1 < n) p(x, x + 1) = up;
    if (x > 0) p(x, x - 1) = down;
    p(x, x) = 1.0 - up - down;
  }
  return p;
}

inline Eigen::MatrixXd random_symmetric(int n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Eigen::MatrixXd a(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      a(x, y) = gauss(rng);
    }
  }
  return (a + a.transpose()) / 2.0;
}

inline Eigen::MatrixXd directed_cycle(int n) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    p(x, (x + 1) % n) = 1.0;
  }
  return p;
}

/// Complete-graph random walk (J - I)/(n - 1): symmetric with an eigenvalue
/// of multiplicity n - 1.
inline Eigen::MatrixXd complete_graph_walk(int n) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(n, n, 1.0 / (n - 1));
  p.diagonal().setZero();
  return p;
}

}  // namespace testutil
