#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "helpers.hpp"
#include "walkmix/chain.hpp"
#include "walkmix/constructions.hpp"
#include "walkmix/spectral.hpp"

using namespace walkmix;
using testutil::maxabs;

namespace {

void check_decomposition_invariants(const Eigen::MatrixXd& m,
                                    const SpectralDecomposition& d) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  int total_multiplicity = 0;
  double trace_sum = 0.0;
  for (int r = 0; r < d.groups(); ++r) {
    const Eigen::MatrixXd& e = d.idempotents[r];
    CHECK(maxabs(e * e - e) <= 1e-9);
    CHECK(maxabs(m * e - d.eigenvalues(r) * e) <= 1e-9);
    CHECK(std::abs(e.trace() - d.multiplicities[r]) <= 1e-8);
    for (int s = r + 1; s < d.groups(); ++s) {
      CHECK(maxabs(e * d.idempotents[s]) <= 1e-9);
      CHECK(d.eigenvalues(r) > d.eigenvalues(s));
    }
    sum += e;
    total_multiplicity += d.multiplicities[r];
    trace_sum += e.trace();
  }
  CHECK(maxabs(sum - Eigen::MatrixXd::Identity(n, n)) <= 1e-9);
  CHECK(total_multiplicity == n);
  CHECK(std::abs(trace_sum - n) <= 1e-8);
}

}  // namespace

TEST_CASE("two-state chain decomposes into the half-J idempotents") {
  for (double p : {0.7, 0.3, 0.5}) {
    const MarkovChain chain = two_state_chain(p);
    const SpectralDecomposition d = decompose(chain.transition());
    REQUIRE(d.groups() == 2);
    CHECK(std::abs(d.eigenvalues(0) - 1.0) <= 1e-12);
    CHECK(std::abs(d.eigenvalues(1) - (2.0 * p - 1.0)) <= 1e-12);
    const Eigen::MatrixXd half_j = Eigen::MatrixXd::Constant(2, 2, 0.5);
    CHECK(maxabs(d.idempotents[0] - half_j) <= 1e-12);
    CHECK(maxabs(d.idempotents[1] - (Eigen::MatrixXd::Identity(2, 2) - half_j)) <= 1e-12);
  }
}

TEST_CASE("identity matrix has a single idempotent") {
  const SpectralDecomposition d = decompose(Eigen::MatrixXd::Identity(4, 4));
  REQUIRE(d.groups() == 1);
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.multiplicities[0] == 4);
  CHECK(maxabs(d.idempotents[0] - Eigen::MatrixXd::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("prime family (3,5) has the four simple subset-product eigenvalues") {
  const MarkovChain chain = prime_family_chain({3, 5});
  const SpectralDecomposition d = decompose_discriminant(discriminant(chain));
  REQUIRE(d.groups() == 4);
  const double expected[] = {1.0, 1.0 / 3, 1.0 / 5, 1.0 / 15};
  for (int r = 0; r < 4; ++r) {
    CHECK(std::abs(d.eigenvalues(r) - expected[r]) <= 1e-12);
    CHECK(d.multiplicities[r] == 1);
  }
}

TEST_CASE("decompose rejects asymmetric input") {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(decompose(m), NotSymmetricError);
}

TEST_CASE("reconstruct round-trips") {
  std::mt19937 rng(23);
  SUBCASE("random symmetric matrices") {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 10);
      const Eigen::MatrixXd m = testutil::random_symmetric(n, rng);
      CHECK(maxabs(reconstruct(decompose(m)) - m) <= 1e-9);
    }
  }
  SUBCASE("hand-built scalar decomposition") {
    SpectralDecomposition d;
    d.eigenvalues = Eigen::VectorXd::Constant(1, 0.25);
    d.idempotents = {Eigen::MatrixXd::Identity(3, 3)};
    d.multiplicities = {3};
    CHECK(maxabs(reconstruct(d) - 0.25 * Eigen::MatrixXd::Identity(3, 3)) == 0.0);
  }
  SUBCASE("two-state chain entries are recovered") {
    const MarkovChain chain = two_state_chain(0.7);
    CHECK(maxabs(reconstruct(decompose(chain.transition())) - chain.transition()) <= 1e-12);
  }
}

TEST_CASE("decomposition invariants hold on random symmetric matrices") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const Eigen::MatrixXd m = testutil::random_symmetric(n, rng);
    check_decomposition_invariants(m, decompose(m));
  }
}

TEST_CASE("decomposition invariants hold with repeated eigenvalues") {
  for (int n : {3, 4, 6}) {
    const Eigen::MatrixXd m = testutil::complete_graph_walk(n);
    const SpectralDecomposition d = decompose(m);
    REQUIRE(d.groups() == 2);
    CHECK(d.multiplicities[1] == n - 1);
    check_decomposition_invariants(m, d);
  }
}

TEST_CASE("decompose is permutation equivariant") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Eigen::MatrixXd m = testutil::random_symmetric(n, rng);
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) q(sigma[i], i) = 1.0;

    const SpectralDecomposition base = decompose(m);
    const SpectralDecomposition permuted = decompose(q * m * q.transpose());
    REQUIRE(base.groups() == permuted.groups());
    for (int r = 0; r < base.groups(); ++r) {
      CHECK(std::abs(base.eigenvalues(r) - permuted.eigenvalues(r)) <= 1e-9);
      CHECK(base.multiplicities[r] == permuted.multiplicities[r]);
      CHECK(maxabs(permuted.idempotents[r] - q * base.idempotents[r] * q.transpose()) <= 1e-9);
    }
  }
}

TEST_CASE("eigenvalue grouping warns near the tolerance") {
  SUBCASE("a gap within 10x of the threshold is flagged") {
    Eigen::MatrixXd m = Eigen::Vector3d(1.0, 1.0 + 5e-8, 2.0).asDiagonal();
    const SpectralDecomposition d = decompose(m);
    CHECK(d.groups() == 3);
    CHECK(d.grouping_ambiguous);
  }
  SUBCASE("a tiny gap merges without warning") {
    Eigen::MatrixXd m = Eigen::Vector3d(1.0, 1.0 + 1e-9, 2.0).asDiagonal();
    const SpectralDecomposition d = decompose(m);
    CHECK(d.groups() == 2);
    CHECK_FALSE(d.grouping_ambiguous);
  }
  SUBCASE("well separated eigenvalues stay quiet") {
    Eigen::MatrixXd m = Eigen::Vector3d(1.0, 0.5, 2.0).asDiagonal();
    const SpectralDecomposition d = decompose(m);
    CHECK(d.groups() == 3);
    CHECK_FALSE(d.grouping_ambiguous);
  }
}

TEST_CASE("discriminant eigenvalues are clamped to [-1, 1]") {
  SUBCASE("small overshoot is clamped") {
    Discriminant d{Eigen::MatrixXd::Constant(1, 1, 1.0 + 2e-10)};
    const SpectralDecomposition dec = decompose_discriminant(d);
    CHECK(dec.eigenvalues(0) == 1.0);
  }
  SUBCASE("large overshoot is an error") {
    Discriminant d{Eigen::MatrixXd::Constant(1, 1, 1.0 + 2e-8)};
    CHECK_THROWS_AS(decompose_discriminant(d), EigenvalueOutOfRangeError);
  }
}

TEST_CASE("flat eigenvector test") {
  SUBCASE("two-state idempotents are flat") {
    const SpectralDecomposition d = decompose(two_state_chain(0.7).transition());
    const std::vector<bool> flat = flat_eigenvector_test(d);
    REQUIRE(flat.size() == 2);
    CHECK(flat[0]);
    CHECK(flat[1]);
  }
  SUBCASE("repeated eigenvalue fails simplicity") {
    const SpectralDecomposition d = decompose(Eigen::MatrixXd::Identity(2, 2));
    const std::vector<bool> flat = flat_eigenvector_test(d);
    REQUIRE(flat.size() == 1);
    CHECK_FALSE(flat[0]);
  }
  SUBCASE("complete graph on three vertices") {
    const SpectralDecomposition d = decompose(testutil::complete_graph_walk(3));
    const std::vector<bool> flat = flat_eigenvector_test(d);
    REQUIRE(flat.size() == 2);
    CHECK(flat[0]);        // all-ones eigenvector
    CHECK_FALSE(flat[1]);  // multiplicity 2
  }
}
