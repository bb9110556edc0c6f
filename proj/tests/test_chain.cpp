#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "helpers.hpp"
#include "walkmix/chain.hpp"

using namespace walkmix;
using testutil::maxabs;

namespace {

Eigen::MatrixXd two_state(double p) {
  Eigen::MatrixXd m(2, 2);
  m << p, 1.0 - p, 1.0 - p, p;
  return m;
}

}  // namespace

TEST_CASE("load_chain accepts valid chains") {
  const MarkovChain sym = load_chain(two_state(0.7));
  CHECK(sym.size() == 2);
  CHECK(sym.prob(0, 1) == doctest::Approx(0.3));

  const MarkovChain single = load_chain(Eigen::MatrixXd::Ones(1, 1));
  CHECK(single.size() == 1);
}

TEST_CASE("load_chain rejects bad input") {
  Eigen::MatrixXd bad_sum(2, 2);
  bad_sum << 0.5, 0.6, 0.5, 0.5;
  CHECK_THROWS_AS(load_chain(bad_sum), RowSumViolationError);
  try {
    load_chain(bad_sum);
  } catch (const RowSumViolationError& e) {
    CHECK(e.row == 0);
    CHECK(e.sum == doctest::Approx(1.1));
  }

  Eigen::MatrixXd negative(2, 2);
  negative << 1.2, -0.2, 0.5, 0.5;
  CHECK_THROWS_AS(load_chain(negative), NegativeEntryError);

  CHECK_THROWS_AS(load_chain(Eigen::MatrixXd::Ones(2, 3)), NotSquareError);

  CHECK_THROWS_AS(load_chain(two_state(0.5), {"only-one-label"}), ValidationError);

  // Rows are validated, never renormalized: off by 2e-12 is already too much.
  Eigen::MatrixXd off(1, 1);
  off << 1.0 + 2e-12;
  CHECK_THROWS_AS(load_chain(off), RowSumViolationError);
}

TEST_CASE("classify: symmetric two-state chain") {
  const auto cls = classify(load_chain(two_state(0.7)));
  CHECK(cls.ergodic);
  CHECK(cls.reversible);
  CHECK(cls.symmetric);
  REQUIRE(cls.stationary.has_value());
  CHECK((*cls.stationary - Eigen::Vector2d(0.5, 0.5)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("classify: directed 3-cycle is ergodic but not reversible") {
  const auto cls = classify(load_chain(testutil::directed_cycle(3)));
  CHECK(cls.ergodic);
  CHECK_FALSE(cls.reversible);
  CHECK_FALSE(cls.symmetric);
  REQUIRE(cls.stationary.has_value());
  CHECK((*cls.stationary - Eigen::Vector3d::Constant(1.0 / 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("classify: disconnected chain is not ergodic") {
  const auto cls = classify(load_chain(Eigen::MatrixXd::Identity(2, 2)));
  CHECK_FALSE(cls.ergodic);
  CHECK_FALSE(cls.reversible);
  CHECK(cls.symmetric);
  CHECK_FALSE(cls.stationary.has_value());
}

TEST_CASE("classify is deterministic across calls") {
  std::mt19937 rng(7);
  const MarkovChain chain = load_chain(testutil::random_stochastic(5, rng));
  const auto a = classify(chain);
  const auto b = classify(chain);
  CHECK(a.ergodic == b.ergodic);
  CHECK(a.reversible == b.reversible);
  CHECK(a.symmetric == b.symmetric);
  REQUIRE(a.stationary.has_value());
  REQUIRE(b.stationary.has_value());
  CHECK(*a.stationary == *b.stationary);  // bitwise
}

TEST_CASE("discriminant of a symmetric chain equals the transition matrix") {
  std::mt19937 rng(11);
  const MarkovChain chain = load_chain(testutil::random_symmetric_stochastic(4, rng));
  CHECK(discriminant(chain).matrix == chain.transition());  // bitwise by construction
}

TEST_CASE("discriminant of the directed cycle is zero") {
  const MarkovChain chain = load_chain(testutil::directed_cycle(3));
  CHECK(maxabs(discriminant(chain).matrix) == 0.0);
}

TEST_CASE("discriminant is symmetric with entries in [0,1]") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const MarkovChain chain = load_chain(testutil::random_stochastic(n, rng));
    const Eigen::MatrixXd d = discriminant(chain).matrix;
    CHECK(maxabs(d - d.transpose()) == 0.0);
    CHECK(d.minCoeff() >= 0.0);
    CHECK(d.maxCoeff() <= 1.0);
  }
}

TEST_CASE("similarity identity holds for reversible chains") {
  std::mt19937 rng(17);
  SUBCASE("symmetric chains have near-zero residual") {
    const MarkovChain chain = load_chain(two_state(0.3));
    CHECK(verify_similarity(chain, discriminant(chain)) <= 1e-12);
  }
  SUBCASE("random birth-death chains") {
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 3);
      const MarkovChain chain = load_chain(testutil::random_birth_death(n, rng));
      const auto cls = classify(chain);
      REQUIRE(cls.ergodic);
      REQUIRE(cls.reversible);
      CHECK(verify_similarity(chain, discriminant(chain)) <= 1e-10);
    }
  }
  SUBCASE("non-reversible chain is rejected") {
    const MarkovChain cycle = load_chain(testutil::directed_cycle(3));
    CHECK_THROWS_AS(verify_similarity(cycle, discriminant(cycle)), NotReversibleError);
  }
}

TEST_CASE("stationary distribution solves pi P = pi") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Eigen::MatrixXd p;
    switch (trial % 3) {
      case 0: p = testutil::random_stochastic(n, rng); break;
      case 1: p = testutil::random_symmetric_stochastic(n, rng); break;
      default: p = testutil::directed_cycle(n); break;
    }
    const MarkovChain chain = load_chain(p);
    const auto cls = classify(chain);
    REQUIRE(cls.ergodic);
    const Eigen::VectorXd& pi = *cls.stationary;
    CHECK((pi.transpose() * p - pi.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(pi.sum() - 1.0) <= 1e-12);
    CHECK(pi.minCoeff() >= 0.0);
    if (cls.reversible) {
      CHECK(verify_similarity(chain, discriminant(chain)) <= 1e-9);
    }
    if (cls.symmetric) {
      CHECK((pi.array() - 1.0 / n).abs().maxCoeff() <= 1e-10);
      CHECK(cls.reversible);
    }
  }
}
