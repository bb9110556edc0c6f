#pragma once

#include <Eigen/Dense>
#include <vector>

#include "walkmix/chain.hpp"
#include "walkmix/walk.hpp"

namespace walkmix {

/// State relabeling that preserves every transition probability exactly:
/// p(sigma(x), sigma(y)) == p(x, y) bit for bit. The permutation matrix
/// satisfies matrix * e_x = e_{sigma(x)}.
struct Automorphism {
  std::vector<int> sigma;
  Eigen::MatrixXd matrix;
};

/// [[p, 1-p], [1-p, p]] for p in (0, 1).
MarkovChain two_state_chain(double p);

/// Kronecker product in list order; every factor must be symmetric. The flat
/// state index is mixed-radix with the leftmost factor most significant.
MarkovChain tensor_product(const std::vector<MarkovChain>& chains);

/// Tensor product of two-state chains with p_i = (1 + sign/q_i)/2 over
/// distinct odd primes q_i. The 2^k eigenvalues are the subset products of
/// the sign/q_i and are all simple.
MarkovChain prime_family_chain(const std::vector<long>& primes, int sign = +1);

inline constexpr int kDefaultAutomorphismBudget = 8;

/// Exhaustive search over all n! permutations, in lexicographic order.
std::vector<Automorphism> find_automorphisms(const MarkovChain& chain,
                                             int budget = kDefaultAutomorphismBudget);

Automorphism check_automorphism(const MarkovChain& chain, const std::vector<int>& sigma);

/// Additionally verifies, with exact equality, that R commutes with
/// P_sigma (x) P_sigma and that S P_sigma = (P_sigma (x) P_sigma) S.
Automorphism check_automorphism(const MarkovChain& chain, const std::vector<int>& sigma,
                                const SzegedyWalk& walk);

}  // namespace walkmix
