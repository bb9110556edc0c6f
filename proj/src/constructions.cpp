#include "walkmix/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace walkmix {

namespace {

bool is_odd_prime(long q) {
  if (q < 3 || q % 2 == 0) return false;
  for (long d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const int na = static_cast<int>(a.rows());
  const int nb = static_cast<int>(b.rows());
  Eigen::MatrixXd c(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      c.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    }
  }
  return c;
}

void require_permutation(const std::vector<int>& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) {
    throw ValidationError("permutation length " + std::to_string(sigma.size()) +
                          " does not match n = " + std::to_string(n));
  }
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) {
      throw ValidationError("sigma is not a bijection on {0..n-1}");
    }
    seen[v] = 1;
  }
}

Automorphism make_automorphism(std::vector<int> sigma, int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    m(sigma[x], x) = 1.0;
  }
  return Automorphism{std::move(sigma), std::move(m)};
}

}  // namespace

MarkovChain two_state_chain(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw OutOfRangeError(p);
  }
  Eigen::MatrixXd m(2, 2);
  m << p, 1.0 - p, 1.0 - p, p;
  return MarkovChain(std::move(m));
}

MarkovChain tensor_product(const std::vector<MarkovChain>& chains) {
  if (chains.empty()) {
    throw ValidationError("tensor_product requires at least one factor");
  }
  for (size_t i = 0; i < chains.size(); ++i) {
    const Eigen::MatrixXd& p = chains[i].transition();
    if ((p - p.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
      throw NotSymmetricFactorError(static_cast<int>(i));
    }
  }
  Eigen::MatrixXd acc = chains[0].transition();
  for (size_t i = 1; i < chains.size(); ++i) {
    acc = kron(acc, chains[i].transition());
  }
  return MarkovChain(std::move(acc));
}

MarkovChain prime_family_chain(const std::vector<long>& primes, int sign) {
  if (sign != 1 && sign != -1) {
    throw ValidationError("sign must be +1 or -1");
  }
  if (primes.empty()) {
    throw ValidationError("prime_family_chain requires at least one prime");
  }
  std::set<long> seen;
  std::vector<MarkovChain> factors;
  factors.reserve(primes.size());
  for (long q : primes) {
    if (!is_odd_prime(q)) {
      throw NotOddPrimeError(q);
    }
    if (!seen.insert(q).second) {
      throw DuplicatePrimeError(q);
    }
    factors.push_back(two_state_chain(0.5 * (1.0 + sign / static_cast<double>(q))));
  }
  return tensor_product(factors);
}

std::vector<Automorphism> find_automorphisms(const MarkovChain& chain, int budget) {
  const int n = chain.size();
  if (n > budget) {
    throw BudgetExceededError(n, budget);
  }
  const Eigen::MatrixXd& p = chain.transition();
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<Automorphism> out;
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      for (int y = 0; y < n; ++y) {
        if (p(sigma[x], sigma[y]) != p(x, y)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      out.push_back(make_automorphism(sigma, n));
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

Automorphism check_automorphism(const MarkovChain& chain, const std::vector<int>& sigma) {
  const int n = chain.size();
  require_permutation(sigma, n);
  const Eigen::MatrixXd& p = chain.transition();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (p(sigma[x], sigma[y]) != p(x, y)) {
        throw NotAutomorphismError(x, y);
      }
    }
  }
  return make_automorphism(sigma, n);
}

Automorphism check_automorphism(const MarkovChain& chain, const std::vector<int>& sigma,
                                const SzegedyWalk& walk) {
  Automorphism out = check_automorphism(chain, sigma);
  const Eigen::MatrixXd pair_perm = kron(out.matrix, out.matrix);
  const Eigen::MatrixXd& r = walk.arc_reversal();
  const Eigen::MatrixXd& s = walk.state_embedding();
  if (((r * pair_perm) - (pair_perm * r)).cwiseAbs().maxCoeff() != 0.0) {
    throw Error("automorphism check: R does not commute with the arc permutation");
  }
  if (((s * out.matrix) - (pair_perm * s)).cwiseAbs().maxCoeff() != 0.0) {
    throw Error("automorphism check: S P_sigma != (P_sigma (x) P_sigma) S");
  }
  return out;
}

}  // namespace walkmix
