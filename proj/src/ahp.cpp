#include "qoekit/ahp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "qoekit/error.hpp"

namespace qoekit::ahp {

namespace {

void check_criteria(const std::vector<Criterion>& criteria) {
  std::set<Criterion> seen;
  for (const auto& c : criteria) {
    if (c.empty()) throw ValidationError("criterion label must be non-empty");
    if (!seen.insert(c).second) throw ValidationError("duplicate criterion '" + c + "'");
  }
}

bool near_integer(double x, int k) { return std::abs(x - k) <= 1e-4 * k; }

}  // namespace

bool on_saaty_scale(double value) noexcept {
  if (!std::isfinite(value) || value <= 0.0) return false;
  for (int k = 1; k <= 9; ++k) {
    if (near_integer(value, k) || near_integer(1.0 / value, k)) return true;
  }
  return false;
}

void validate(const JudgmentSet& set) {
  const auto& criteria = set.criteria;
  if (criteria.size() < 2) throw ValidationError("judgment set needs at least 2 criteria");
  check_criteria(criteria);

  std::set<std::pair<Criterion, Criterion>> covered;
  for (const auto& j : set.judgments) {
    const bool known_a = std::find(criteria.begin(), criteria.end(), j.a) != criteria.end();
    const bool known_b = std::find(criteria.begin(), criteria.end(), j.b) != criteria.end();
    if (!known_a || !known_b) {
      throw ValidationError("judgment references unknown criterion in pair (" + j.a + ", " + j.b + ")");
    }
    if (j.a == j.b) throw ValidationError("judgment compares '" + j.a + "' with itself");
    if (!on_saaty_scale(j.value)) {
      throw ValidationError("judgment (" + j.a + ", " + j.b + ") = " + std::to_string(j.value) +
                            " is not on the 1..9 scale");
    }
    auto key = std::minmax(j.a, j.b);
    if (!covered.emplace(key.first, key.second).second) {
      throw ValidationError("pair (" + j.a + ", " + j.b + ") judged more than once");
    }
  }
  const std::size_t n = criteria.size();
  if (covered.size() != n * (n - 1) / 2) {
    throw ValidationError("evaluator '" + set.evaluator_id + "' judged " + std::to_string(covered.size()) + " of " +
                          std::to_string(n * (n - 1) / 2) + " pairs");
  }
}

PairwiseMatrix::PairwiseMatrix(std::vector<Criterion> criteria, std::vector<double> cells)
    : criteria_(std::move(criteria)), cells_(std::move(cells)) {
  const std::size_t n = criteria_.size();
  if (n == 0) throw ValidationError("pairwise matrix needs at least one criterion");
  check_criteria(criteria_);
  if (cells_.size() != n * n) throw ValidationError("pairwise matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = cells_[i * n + j];
      if (!std::isfinite(v) || v <= 0.0) {
        throw ValidationError("cell (" + criteria_[i] + ", " + criteria_[j] + ") must be positive");
      }
      if (i == j && v != 1.0) throw ValidationError("diagonal cell for '" + criteria_[i] + "' must be 1");
    }
  }
}

PairwiseMatrix PairwiseMatrix::ones(std::vector<Criterion> criteria) {
  const std::size_t n = criteria.size();
  return PairwiseMatrix(std::move(criteria), std::vector<double>(n * n, 1.0));
}

PairwiseMatrix PairwiseMatrix::from_weights(std::vector<Criterion> criteria, std::span<const double> w) {
  const std::size_t n = criteria.size();
  if (w.size() != n) throw ValidationError("weight count does not match criteria");
  std::vector<double> cells(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = i == j ? 1.0 : w[i] / w[j];
  }
  return PairwiseMatrix(std::move(criteria), std::move(cells));
}

std::size_t PairwiseMatrix::index_of(const Criterion& c) const {
  auto it = std::find(criteria_.begin(), criteria_.end(), c);
  if (it == criteria_.end()) throw ValidationError("unknown criterion '" + c + "'");
  return static_cast<std::size_t>(it - criteria_.begin());
}

PairwiseMatrix PairwiseMatrix::permuted(std::span<const std::size_t> perm) const {
  const std::size_t n = size();
  if (perm.size() != n) throw ValidationError("permutation size mismatch");
  for (std::size_t p : perm) {
    if (p >= n) throw ValidationError("permutation index out of range");
  }
  std::vector<Criterion> criteria(n);
  std::vector<double> cells(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    criteria[i] = criteria_[perm[i]];
    for (std::size_t j = 0; j < n; ++j) cells[i * n + j] = (*this)(perm[i], perm[j]);
  }
  return PairwiseMatrix(std::move(criteria), std::move(cells));
}

WeightVector::WeightVector(std::vector<Criterion> criteria, std::vector<double> weights, double tol)
    : criteria_(std::move(criteria)), weights_(std::move(weights)) {
  if (criteria_.size() != weights_.size()) throw ValidationError("weight count does not match criteria");
  if (criteria_.empty()) throw ValidationError("weight vector is empty");
  check_criteria(criteria_);
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw ValidationError("weight for '" + criteria_[i] + "' must be nonnegative");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > tol) {
    throw ValidationError("weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

double WeightVector::at(const Criterion& c) const {
  auto it = std::find(criteria_.begin(), criteria_.end(), c);
  if (it == criteria_.end()) throw ValidationError("no weight for criterion '" + c + "'");
  return weights_[static_cast<std::size_t>(it - criteria_.begin())];
}

PairwiseMatrix expand(const JudgmentSet& set) {
  validate(set);
  const std::size_t n = set.criteria.size();
  std::vector<double> cells(n * n, 1.0);
  auto index = [&](const Criterion& c) {
    return static_cast<std::size_t>(std::find(set.criteria.begin(), set.criteria.end(), c) - set.criteria.begin());
  };
  for (const auto& j : set.judgments) {
    const std::size_t a = index(j.a);
    const std::size_t b = index(j.b);
    cells[a * n + b] = j.value;
    cells[b * n + a] = 1.0 / j.value;
  }
  return PairwiseMatrix(set.criteria, std::move(cells));
}

PairwiseMatrix aggregate_judgments(std::span<const JudgmentSet> sets, Aggregation method) {
  if (sets.empty()) throw ValidationError("no judgment sets to aggregate");
  const std::vector<Criterion>& order = sets.front().criteria;
  const std::set<Criterion> reference(order.begin(), order.end());
  const std::size_t n = order.size();

  std::vector<double> acc(n * n, 0.0);
  for (const auto& set : sets) {
    if (std::set<Criterion>(set.criteria.begin(), set.criteria.end()) != reference ||
        set.criteria.size() != n) {
      throw ValidationError("evaluator '" + set.evaluator_id + "' covers different criteria");
    }
    const PairwiseMatrix m = expand(set);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t mi = m.index_of(order[i]);
      for (std::size_t j = 0; j < n; ++j) {
        const double v = m(mi, m.index_of(order[j]));
        acc[i * n + j] += method == Aggregation::arithmetic_mean ? v : std::log(v);
      }
    }
  }
  const double count = static_cast<double>(sets.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double& cell = acc[i * n + j];
      cell = i == j ? 1.0 : (method == Aggregation::arithmetic_mean ? cell / count : std::exp(cell / count));
    }
  }
  return PairwiseMatrix(order, std::move(acc));
}

ColumnAverageResult derive_weights_column_average(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> normalized(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += m(i, j);
    for (std::size_t i = 0; i < n; ++i) normalized[i * n + j] = m(i, j) / col;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += normalized[i * n + j];
    w[i] = row / static_cast<double>(n);
  }
  return {WeightVector(m.criteria(), std::move(w)), std::move(normalized)};
}

EigenResult principal_eigenvector(const PairwiseMatrix& m, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ValidationError("eigenvector tolerance must be positive");
  if (max_iter < 1) throw ValidationError("eigenvector max_iter must be at least 1");
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int iter = 1; iter <= max_iter; ++iter) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
      next[i] = s;
      total += s;
    }
    // With sum(x) == 1, sum(A x) is the Rayleigh-style eigenvalue estimate.
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (delta < tol) {
      double lambda = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
        lambda += s;
      }
      const double sum = std::accumulate(x.begin(), x.end(), 0.0);
      for (double& v : x) v /= sum;
      return {WeightVector(m.criteria(), std::move(x)), lambda / sum, iter};
    }
  }
  throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iter) + " iterations");
}

WeightVector derive_weights_eigenvector(const PairwiseMatrix& m, double tol, int max_iter) {
  return principal_eigenvector(m, tol, max_iter).weights;
}

WeightVector derive_weights(const PairwiseMatrix& m, WeightMethod method) {
  return method == WeightMethod::column_average ? derive_weights_column_average(m).weights
                                                : derive_weights_eigenvector(m);
}

double random_index(std::size_t n) {
  static constexpr double kTable[] = {0.0,  0.0,  0.0,  0.58, 0.90, 1.12, 1.24, 1.32,
                                      1.41, 1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59};
  if (n == 0 || n >= std::size(kTable)) {
    throw ValidationError("no random index for " + std::to_string(n) + " criteria");
  }
  return kTable[n];
}

ConsistencyReport consistency(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw ValidationError("consistency needs at least 2 criteria");
  const double ri = random_index(n);
  const EigenResult eig = principal_eigenvector(m);
  ConsistencyReport report;
  report.lambda_max = eig.lambda_max;
  if (n == 2) {
    // RI(2) = 0; any 2x2 judgment is trivially consistent.
    report.consistency_index = (eig.lambda_max - 2.0);
    report.consistency_ratio = 0.0;
    report.acceptable = true;
    return report;
  }
  report.consistency_index = (eig.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  report.consistency_ratio = report.consistency_index / ri;
  report.acceptable = report.consistency_ratio <= kConsistencyThreshold;
  return report;
}

}  // namespace qoekit::ahp
