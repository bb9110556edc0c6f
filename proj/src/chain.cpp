#include "walkmix/chain.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace walkmix {

namespace detail {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

MarkovChain::MarkovChain(Eigen::MatrixXd transition, std::vector<std::string> labels)
    : p_(std::move(transition)), labels_(std::move(labels)) {
  if (p_.rows() != p_.cols() || p_.rows() < 1) {
    throw NotSquareError(p_.rows(), p_.cols());
  }
  const int n = static_cast<int>(p_.rows());
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!(p_(x, y) >= 0.0)) {  // also rejects NaN
        throw NegativeEntryError(x, y, p_(x, y));
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    const double sum = p_.row(x).sum();
    if (std::abs(sum - 1.0) > kRowSumTol) {
      throw RowSumViolationError(x, sum);
    }
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n) {
    throw ValidationError("label count " + std::to_string(labels_.size()) +
                          " does not match n = " + std::to_string(n));
  }
}

MarkovChain load_chain(const Eigen::MatrixXd& transition, std::vector<std::string> labels) {
  return MarkovChain(transition, std::move(labels));
}

namespace {

// Strong connectivity of the support digraph: every vertex reachable from 0
// and 0 reachable from every vertex.
bool strongly_connected(const Eigen::MatrixXd& p) {
  const int n = static_cast<int>(p.rows());
  auto reach = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y) {
        const double w = forward ? p(x, y) : p(y, x);
        if (w > 0.0 && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    for (int x = 0; x < n; ++x) {
      if (!seen[x]) return false;
    }
    return true;
  };
  return reach(true) && reach(false);
}

// Direct solve of pi (P - I) = 0 with the normalization sum(pi) = 1 appended.
// Works for periodic ergodic chains where power iteration would not settle.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p) {
  const int n = static_cast<int>(p.rows());
  Eigen::MatrixXd a(n + 1, n);
  a.topRows(n) = p.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.bottomRows(1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b(n) = 1.0;
  Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
  pi /= pi.sum();
  return pi;
}

}  // namespace

ChainClassification classify(const MarkovChain& chain) {
  const Eigen::MatrixXd& p = chain.transition();
  const int n = chain.size();
  ChainClassification out;
  out.symmetric = (p - p.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol;
  out.ergodic = strongly_connected(p);
  if (out.ergodic) {
    Eigen::VectorXd pi = stationary_distribution(p);
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        worst = std::max(worst, std::abs(pi(x) * p(x, y) - pi(y) * p(y, x)));
      }
    }
    out.reversible = worst <= kDetailedBalanceTol;
    out.stationary = std::move(pi);
  }
  return out;
}

Discriminant discriminant(const MarkovChain& chain) {
  const Eigen::MatrixXd& p = chain.transition();
  const int n = chain.size();
  Eigen::MatrixXd d(n, n);
  for (int x = 0; x < n; ++x) {
    d(x, x) = p(x, x);
    for (int y = x + 1; y < n; ++y) {
      const double pxy = p(x, y);
      const double pyx = p(y, x);
      // Equal probabilities short-circuit so symmetric chains get D == P
      // without sqrt round-off.
      const double v = (pxy == pyx) ? pxy : std::sqrt(pxy * pyx);
      d(x, y) = v;
      d(y, x) = v;
    }
  }
  return Discriminant{std::move(d)};
}

double verify_similarity(const MarkovChain& chain, const Discriminant& disc) {
  const ChainClassification cls = classify(chain);
  if (!cls.ergodic || !cls.reversible) {
    throw NotReversibleError();
  }
  const Eigen::VectorXd& pi = *cls.stationary;
  const int n = chain.size();
  Eigen::VectorXd sqrt_pi = pi.cwiseSqrt();
  Eigen::MatrixXd similar(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      similar(x, y) = sqrt_pi(x) * chain.prob(x, y) / sqrt_pi(y);
    }
  }
  return (disc.matrix - similar).cwiseAbs().maxCoeff();
}

}  // namespace walkmix
