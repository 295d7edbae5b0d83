#pragma once

// Pairwise-comparison weighting: aggregation of evaluator judgments,
// weight derivation and consistency checking.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qoekit::ahp {

using Criterion = std::string;

// One evaluator's answer for the ordered pair (a, b): how much more
// important `a` is than `b`. Values below 1 favour `b`.
struct Judgment {
  Criterion a;
  Criterion b;
  double value = 1.0;
};

struct JudgmentSet {
  std::string evaluator_id;
  std::vector<Criterion> criteria;
  std::vector<Judgment> judgments;
};

// Throws ValidationError unless every unordered pair is judged exactly once
// with a value on the 1..9 scale (or its reciprocal).
void validate(const JudgmentSet& set);

// True when `value` is one of 1/9 .. 1/2, 1, 2 .. 9.
bool on_saaty_scale(double value) noexcept;

// Square positive matrix with unit diagonal. Reciprocity is not required.
class PairwiseMatrix {
 public:
  PairwiseMatrix(std::vector<Criterion> criteria, std::vector<double> cells);

  static PairwiseMatrix ones(std::vector<Criterion> criteria);
  // a_ij = w_i / w_j
  static PairwiseMatrix from_weights(std::vector<Criterion> criteria, std::span<const double> w);

  std::size_t size() const noexcept { return criteria_.size(); }
  const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
  double operator()(std::size_t row, std::size_t col) const { return cells_[row * size() + col]; }
  const std::vector<double>& cells() const noexcept { return cells_; }
  std::size_t index_of(const Criterion& c) const;

  // Reorders rows and columns: result(i, j) = this(perm[i], perm[j]).
  PairwiseMatrix permuted(std::span<const std::size_t> perm) const;

 private:
  std::vector<Criterion> criteria_;
  std::vector<double> cells_;
};

class WeightVector {
 public:
  WeightVector() = default;
  // Throws ValidationError if entries are negative or do not sum to 1 within `tol`.
  WeightVector(std::vector<Criterion> criteria, std::vector<double> weights, double tol = 1e-9);

  std::size_t size() const noexcept { return criteria_.size(); }
  const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
  const std::vector<double>& values() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  double at(const Criterion& c) const;

 private:
  std::vector<Criterion> criteria_;
  std::vector<double> weights_;
};

struct ConsistencyReport {
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
  bool acceptable = true;
};

enum class Aggregation { arithmetic_mean, geometric_mean };
enum class WeightMethod { column_average, eigenvector };

// Expands each set to a full matrix (reciprocal cells filled in) and
// averages cell by cell. Criterion order follows the first set.
PairwiseMatrix aggregate_judgments(std::span<const JudgmentSet> sets,
                                   Aggregation method = Aggregation::arithmetic_mean);

PairwiseMatrix expand(const JudgmentSet& set);

struct ColumnAverageResult {
  WeightVector weights;
  // Row-major n*n; each column sums to 1.
  std::vector<double> normalized;
};

ColumnAverageResult derive_weights_column_average(const PairwiseMatrix& m);

struct EigenResult {
  WeightVector weights;
  double lambda_max = 0.0;
  int iterations = 0;
};

inline constexpr double kDefaultEigenTol = 1e-10;
inline constexpr int kDefaultEigenMaxIter = 10'000;

// Power iteration from the uniform vector, normalized to unit sum after each
// step. Throws ConvergenceError after `max_iter` steps without convergence.
EigenResult principal_eigenvector(const PairwiseMatrix& m, double tol = kDefaultEigenTol,
                                  int max_iter = kDefaultEigenMaxIter);

WeightVector derive_weights_eigenvector(const PairwiseMatrix& m, double tol = kDefaultEigenTol,
                                        int max_iter = kDefaultEigenMaxIter);

WeightVector derive_weights(const PairwiseMatrix& m, WeightMethod method);

// Saaty random index for n = 1..15.
double random_index(std::size_t n);

inline constexpr double kConsistencyThreshold = 0.1;

ConsistencyReport consistency(const PairwiseMatrix& m);

}  // namespace qoekit::ahp
