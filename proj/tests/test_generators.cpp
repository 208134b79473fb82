#include "bopcrit/generators.hpp"

#include "bopcrit/graph.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace bopcrit;

TEST_CASE("erdos_renyi basics") {
  Graph full = erdos_renyi(6, 1.0, 1);
  CHECK(full.edge_count() == 15);

  Graph a = erdos_renyi(40, 0.2, 9);
  Graph b = erdos_renyi(40, 0.2, 9);
  CHECK((a.weights() - b.weights()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.weights() - erdos_renyi(40, 0.2, 10).weights()).cwiseAbs().maxCoeff() > 0.0);

  CHECK_THROWS_AS(erdos_renyi(0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(erdos_renyi(5, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(erdos_renyi(5, 1.5, 1), std::invalid_argument);
}

TEST_CASE("erdos_renyi mean edge count sits inside binomial bounds") {
  const int n = 200;
  const double p = 0.1;
  const double pairs = n * (n - 1) / 2.0;  // 19900
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    total += erdos_renyi(n, p, seed).edge_count();
  const double mean = total / 100.0;
  const double sigma = std::sqrt(pairs * p * (1.0 - p));
  CHECK(std::abs(mean - pairs * p) <= 3.0 * sigma);
}

TEST_CASE("albert_barabasi construction guarantees") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 40 + static_cast<int>(seed);
    const int m = 1 + static_cast<int>(seed % 4);
    Graph g = albert_barabasi(n, m, seed);
    CHECK(g.edge_count() == m * (m + 1) / 2 + m * (n - m - 1));
    double degree_sum = 0.0;
    double min_degree = 1e300;
    for (int i = 0; i < n; ++i) {
      degree_sum += g.degree(i);
      min_degree = std::min(min_degree, g.degree(i));
    }
    CHECK(degree_sum == doctest::Approx(2.0 * g.edge_count()));
    CHECK(min_degree >= m);
    CHECK(g.is_connected());
  }

  Graph a = albert_barabasi(50, 2, 3);
  Graph b = albert_barabasi(50, 2, 3);
  CHECK((a.weights() - b.weights()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(albert_barabasi(2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(albert_barabasi(10, 0, 1), std::invalid_argument);
}

TEST_CASE("albert_barabasi grows heavier degree tails than matched ER") {
  const int n = 500;
  const int m = 2;
  const int edges = m * (m + 1) / 2 + m * (n - m - 1);
  const double p_match = static_cast<double>(edges) / (n * (n - 1) / 2.0);
  int heavier = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph ab = albert_barabasi(n, m, seed);
    Graph er = erdos_renyi(n, p_match, seed + 1000);
    double ab_max = 0.0, er_max = 0.0;
    for (int i = 0; i < n; ++i) {
      ab_max = std::max(ab_max, ab.degree(i));
      er_max = std::max(er_max, er.degree(i));
    }
    if (ab_max > 2.0 * er_max) ++heavier;
  }
  CHECK(heavier >= 90);
}

TEST_CASE("generate dispatches on the spec kind") {
  GeneratorSpec er{GeneratorSpec::Kind::ER, 30, 0.2, 0, 5};
  CHECK((generate(er).weights() - erdos_renyi(30, 0.2, 5).weights()).cwiseAbs().maxCoeff() == 0.0);
  GeneratorSpec ab{GeneratorSpec::Kind::AB, 30, 0.0, 3, 5};
  CHECK((generate(ab).weights() - albert_barabasi(30, 3, 5).weights()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK(er.kind_name() == "er");
  CHECK(ab.kind_name() == "ab");
  CHECK(er.param() == doctest::Approx(0.2));
  CHECK(ab.param() == doctest::Approx(3.0));
}

TEST_CASE("sample_population") {
  auto pop = sample_population(40, GeneratorSpec::Kind::ER, 10, 60, 7);
  REQUIRE(pop.size() == 40);
  for (const auto& entry : pop) {
    CHECK(entry.spec.n >= 10);
    CHECK(entry.spec.n <= 60);
    CHECK(entry.spec.p > 0.0);
    CHECK(entry.spec.p <= 0.5);
    CHECK(entry.graph.size() == entry.spec.n);
  }

  auto ab = sample_population(40, GeneratorSpec::Kind::AB, 5, 50, 7);
  for (const auto& entry : ab) {
    CHECK(entry.spec.m >= 1);
    CHECK(entry.spec.m <= 6);
    CHECK(entry.spec.n >= entry.spec.m + 1);
  }

  auto again = sample_population(40, GeneratorSpec::Kind::ER, 10, 60, 7);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    CHECK(pop[i].spec.seed == again[i].spec.seed);
    CHECK((pop[i].graph.weights() - again[i].graph.weights()).cwiseAbs().maxCoeff() == 0.0);
  }
}
