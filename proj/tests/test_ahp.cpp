#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qoekit/ahp.hpp"
#include "qoekit/error.hpp"

using namespace qoekit;
using namespace qoekit::ahp;

namespace {

const std::vector<Criterion> kLdj{"loss", "delay", "jitter"};

PairwiseMatrix table1() { return {kLdj, {1, 5.74, 5.48, 0.95, 1, 2.48, 0.67, 1.95, 1}}; }

JudgmentSet single(double loss_vs_delay) {
  return {"e1", kLdj, {{"loss", "delay", loss_vs_delay}, {"loss", "jitter", 1.0}, {"delay", "jitter", 1.0}}};
}

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 10.0);
  std::vector<double> w(n);
  for (auto& v : w) v = u(rng);
  return w;
}

std::vector<Criterion> labels(std::size_t n) {
  std::vector<Criterion> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back("c" + std::to_string(i));
  return c;
}

}  // namespace

TEST_CASE("pairwise matrix invariants") {
  CHECK_THROWS_AS(PairwiseMatrix(kLdj, {1, 2, 3, 0.5, 1, 2, 1, 1}), ValidationError);
  CHECK_THROWS_AS(PairwiseMatrix(kLdj, {1, 2, 3, 0.5, 2, 2, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(PairwiseMatrix(kLdj, {1, -2, 3, 0.5, 1, 2, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(PairwiseMatrix({"a", "a"}, {1, 1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(PairwiseMatrix({"a", ""}, {1, 1, 1, 1}), ValidationError);
  // Non-reciprocal is fine.
  CHECK_NOTHROW(table1());
}

TEST_CASE("judgment set validation") {
  CHECK_NOTHROW(validate(single(5)));
  CHECK_THROWS_AS(validate(single(10)), ValidationError);
  CHECK_THROWS_AS(validate(single(2.5)), ValidationError);
  JudgmentSet missing{"e", kLdj, {{"loss", "delay", 3}, {"loss", "jitter", 3}}};
  CHECK_THROWS_AS(validate(missing), ValidationError);
  JudgmentSet dup{"e", kLdj, {{"loss", "delay", 3}, {"delay", "loss", 3}, {"delay", "jitter", 1}}};
  CHECK_THROWS_AS(validate(dup), ValidationError);
  JudgmentSet unknown{"e", kLdj, {{"loss", "delay", 3}, {"loss", "bw", 3}, {"delay", "jitter", 1}}};
  CHECK_THROWS_AS(validate(unknown), ValidationError);
  CHECK(on_saaty_scale(1.0 / 9.0));
  CHECK(on_saaty_scale(9));
  CHECK_FALSE(on_saaty_scale(0.1));
  CHECK_FALSE(on_saaty_scale(0.0));
}

TEST_CASE("aggregate_judgments") {
  SUBCASE("single evaluator identity") {
    const auto sets = std::vector{single(5)};
    const auto m = aggregate_judgments(sets);
    CHECK(m(0, 1) == 5.0);
    CHECK(m(1, 0) == doctest::Approx(0.2).epsilon(1e-15));
    const auto direct = expand(sets[0]);
    CHECK(m.cells() == direct.cells());
  }
  SUBCASE("two evaluators, arithmetic vs geometric") {
    const std::vector sets{single(9), single(1.0 / 3.0)};
    const auto a = aggregate_judgments(sets, Aggregation::arithmetic_mean);
    CHECK(a(0, 1) == doctest::Approx((9 + 1.0 / 3.0) / 2).epsilon(1e-14));
    CHECK(a(0, 1) == doctest::Approx(4.667).epsilon(1e-3));
    CHECK(a(1, 0) == doctest::Approx((1.0 / 9 + 3) / 2).epsilon(1e-14));
    CHECK(a(1, 0) == doctest::Approx(1.556).epsilon(1e-3));
    CHECK(a(0, 1) * a(1, 0) != doctest::Approx(1.0));

    const auto g = aggregate_judgments(sets, Aggregation::geometric_mean);
    CHECK(g(0, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(g(1, 0) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  }
  SUBCASE("criteria order follows the first set") {
    JudgmentSet reordered{"e2", {"jitter", "loss", "delay"},
                          {{"delay", "loss", 1.0 / 3}, {"jitter", "loss", 1}, {"delay", "jitter", 1}}};
    const std::vector sets{single(3), reordered};
    const auto m = aggregate_judgments(sets);
    CHECK(m.criteria() == kLdj);
    CHECK(m(0, 1) == doctest::Approx(3.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(aggregate_judgments(std::vector<JudgmentSet>{}), ValidationError);
    JudgmentSet other{"e2", {"loss", "delay", "bw"}, {{"loss", "delay", 1}, {"loss", "bw", 1}, {"delay", "bw", 1}}};
    CHECK_THROWS_AS(aggregate_judgments(std::vector{single(3), other}), ValidationError);
  }
}

TEST_CASE("geometric aggregation preserves reciprocity") {
  std::mt19937_64 rng(7);
  const double scale[] = {1.0 / 9, 1.0 / 7, 1.0 / 5, 1.0 / 3, 1, 2, 3, 5, 7, 9};
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<JudgmentSet> sets;
    const int evaluators = 1 + trial % 7;
    for (int e = 0; e < evaluators; ++e) {
      sets.push_back({"e", kLdj,
                      {{"loss", "delay", scale[pick(rng)]},
                       {"loss", "jitter", scale[pick(rng)]},
                       {"delay", "jitter", scale[pick(rng)]}}});
    }
    const auto g = aggregate_judgments(sets, Aggregation::geometric_mean);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(g(i, j) * g(j, i) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("column-average derivation") {
  SUBCASE("Table I -> Table II") {
    const auto r = derive_weights_column_average(table1());
    const double expected_avg[] = {0.55, 0.25, 0.20};
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.weights[i] - expected_avg[i]) <= 0.005);
    // Eight of nine cells match the printed table; (delay, delay) = 1/8.69
    // is 0.11507 against a printed 0.11 (checked in the acceptance suite).
    const double printed[] = {0.38, 0.66, 0.61, 0.36, 0.11, 0.28, 0.26, 0.22, 0.11};
    for (std::size_t k = 0; k < 9; ++k) {
      if (k == 4) continue;
      CHECK(std::abs(r.normalized[k] - printed[k]) <= 0.005);
    }
    CHECK(r.normalized[4] == doctest::Approx(1.0 / 8.69).epsilon(1e-14));
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(r.normalized[j] + r.normalized[3 + j] + r.normalized[6 + j] == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("consistent matrix") {
    const PairwiseMatrix m(kLdj, {1, 2, 4, 0.5, 1, 2, 0.25, 0.5, 1});
    const auto w = derive_weights_column_average(m).weights;
    CHECK(std::abs(w[0] - 4.0 / 7) < 1e-12);
    CHECK(std::abs(w[1] - 2.0 / 7) < 1e-12);
    CHECK(std::abs(w[2] - 1.0 / 7) < 1e-12);
  }
  SUBCASE("all ones") {
    const auto w = derive_weights_column_average(PairwiseMatrix::ones(kLdj)).weights;
    for (double v : w.values()) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
}

TEST_CASE("eigenvector derivation") {
  const PairwiseMatrix consistent(kLdj, {1, 2, 4, 0.5, 1, 2, 0.25, 0.5, 1});
  const auto w = derive_weights_eigenvector(consistent);
  CHECK(std::abs(w[0] - 4.0 / 7) < 1e-9);
  CHECK(std::abs(w[1] - 2.0 / 7) < 1e-9);
  CHECK(std::abs(w[2] - 1.0 / 7) < 1e-9);

  const auto ones = derive_weights_eigenvector(PairwiseMatrix::ones(kLdj));
  for (double v : ones.values()) CHECK(std::abs(v - 1.0 / 3) < 1e-12);

  SUBCASE("non-convergence is reported") {
    CHECK_THROWS_AS(principal_eigenvector(table1(), 1e-300, 3), ConvergenceError);
    CHECK_THROWS_AS(principal_eigenvector(table1(), 0.0, 10), ValidationError);
  }
  SUBCASE("Table I eigenpair against an independent cubic solver") {
    const double a[3][3] = {{1, 5.74, 5.48}, {0.95, 1, 2.48}, {0.67, 1.95, 1}};
    const double lambda = oracle::lambda_max_3x3(a);
    CHECK(lambda == doctest::Approx(5.305119941693422).epsilon(1e-9));
    const auto eig = principal_eigenvector(table1());
    CHECK(eig.lambda_max == doctest::Approx(lambda).epsilon(1e-9));
    // A w = lambda w for the returned vector.
    const auto m = table1();
    for (std::size_t i = 0; i < 3; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += m(i, j) * eig.weights[j];
      CHECK(s == doctest::Approx(lambda * eig.weights[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("construct-then-recover and method agreement") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 4);
    const auto w = random_weights(rng, n);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const auto m = PairwiseMatrix::from_weights(labels(n), w);
    const auto ca = derive_weights_column_average(m).weights;
    const auto ev = derive_weights_eigenvector(m);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(ca[i] - w[i] / total) < 1e-9);
      CHECK(std::abs(ev[i] - w[i] / total) < 1e-9);
    }
    const auto cr = consistency(m);
    CHECK(std::abs(cr.consistency_ratio) < 1e-9);
    CHECK(cr.consistency_index >= -1e-9);
    CHECK(cr.acceptable);
  }
}

TEST_CASE("weights sum to one and permute with the matrix") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.1, 9.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    std::vector<double> cells(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = i == j ? 1.0 : u(rng);
    }
    const PairwiseMatrix m(labels(n), cells);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto p = m.permuted(perm);
    for (auto method : {WeightMethod::column_average, WeightMethod::eigenvector}) {
      const auto w = derive_weights(m, method);
      const auto wp = derive_weights(p, method);
      CHECK(std::accumulate(w.values().begin(), w.values().end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(w[i] >= 0.0);
        CHECK(wp[i] == doctest::Approx(w[perm[i]]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("consistency report") {
  SUBCASE("consistent and all-ones matrices") {
    const PairwiseMatrix consistent(kLdj, {1, 2, 4, 0.5, 1, 2, 0.25, 0.5, 1});
    CHECK(std::abs(consistency(consistent).consistency_ratio) < 1e-9);
    CHECK(consistency(consistent).acceptable);
    CHECK(std::abs(consistency(PairwiseMatrix::ones(kLdj)).consistency_ratio) < 1e-12);
  }
  SUBCASE("Table I is judged by the independent eigenvalue") {
    const double a[3][3] = {{1, 5.74, 5.48}, {0.95, 1, 2.48}, {0.67, 1.95, 1}};
    const double oracle_cr = (oracle::lambda_max_3x3(a) - 3.0) / 2.0 / 0.58;
    const auto cr = consistency(table1());
    CHECK(cr.consistency_ratio == doctest::Approx(oracle_cr).epsilon(1e-9));
    CHECK(cr.acceptable == (oracle_cr <= 0.1));
    CHECK_FALSE(cr.acceptable);
  }
  SUBCASE("n = 2 is always acceptable") {
    const PairwiseMatrix m({"a", "b"}, {1, 7, 3, 1});
    const auto cr = consistency(m);
    CHECK(cr.consistency_ratio == 0.0);
    CHECK(cr.acceptable);
  }
  CHECK(random_index(3) == 0.58);
  CHECK_THROWS_AS(random_index(16), ValidationError);
}

TEST_CASE("weight vector invariants") {
  CHECK_NOTHROW(WeightVector(kLdj, {0.55, 0.25, 0.20}));
  CHECK_THROWS_AS(WeightVector(kLdj, {0.5, 0.25, 0.20}), ValidationError);
  CHECK_THROWS_AS(WeightVector(kLdj, {1.2, -0.2, 0.0}), ValidationError);
  CHECK(WeightVector(kLdj, {0.55, 0.25, 0.20}).at("delay") == 0.25);
}
