#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace infolab {

using Labels = std::vector<std::string>;
using Count = std::uint64_t;

// Tolerance on |sum(probs) - 1| accepted when building a distribution.
inline constexpr double kNormalizationTolerance = 1e-9;

enum class Renormalize : bool { No = false, Yes = true };

/// Observed integer counts per outcome label. Zero counts are kept; they
/// matter for support alignment.
class CountHistogram {
 public:
  CountHistogram() = default;
  /// Throws Error(DuplicateLabel) or Error(InvalidValue) on length mismatch.
  CountHistogram(Labels labels, std::vector<Count> counts);

  const Labels& labels() const noexcept { return labels_; }
  std::span<const Count> counts() const noexcept { return counts_; }
  Count total() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }

  friend bool operator==(const CountHistogram&, const CountHistogram&) = default;

 private:
  Labels labels_;
  std::vector<Count> counts_;
  Count total_ = 0;
};

/// Normalized probabilities over a labeled support.
///
/// Construction checks that every probability is finite and in [0, 1] and
/// that the total is within kNormalizationTolerance of one. With
/// Renormalize::Yes the probabilities are instead divided by their total,
/// which must be positive.
class Distribution {
 public:
  Distribution() = default;
  Distribution(Labels labels, std::vector<double> probs,
               Renormalize renormalize = Renormalize::No);

  const Labels& labels() const noexcept { return labels_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Labels labels_;
  std::vector<double> probs_;
};

/// Two-variable counts, row-major with rows indexed by x.
class JointCountTable {
 public:
  JointCountTable() = default;
  JointCountTable(Labels x_labels, Labels y_labels, std::vector<Count> counts);

  const Labels& x_labels() const noexcept { return x_labels_; }
  const Labels& y_labels() const noexcept { return y_labels_; }
  std::span<const Count> counts() const noexcept { return counts_; }
  Count at(std::size_t x, std::size_t y) const { return counts_.at(x * y_labels_.size() + y); }
  Count total() const noexcept { return total_; }

 private:
  Labels x_labels_;
  Labels y_labels_;
  std::vector<Count> counts_;
  Count total_ = 0;
};

/// Joint distribution p(x, y), row-major with rows indexed by x.
class JointDistribution {
 public:
  JointDistribution() = default;
  JointDistribution(Labels x_labels, Labels y_labels, std::vector<double> probs,
                    Renormalize renormalize = Renormalize::No);

  const Labels& x_labels() const noexcept { return x_labels_; }
  const Labels& y_labels() const noexcept { return y_labels_; }
  std::span<const double> probs() const noexcept { return probs_; }
  double at(std::size_t x, std::size_t y) const { return probs_.at(x * y_labels_.size() + y); }

 private:
  Labels x_labels_;
  Labels y_labels_;
  std::vector<double> probs_;
};

/// c_i / n. Throws Error(EmptyHistogram) when n == 0.
Distribution normalize(const CountHistogram& h);
JointDistribution normalize(const JointCountTable& table);

/// (p(x), p(y)): row sums and column sums.
std::pair<Distribution, Distribution> marginals(const JointDistribution& joint);

/// The joint p(x) p(y) built from the marginals of `joint`.
JointDistribution product_of_marginals(const JointDistribution& joint);

JointDistribution transpose(const JointDistribution& joint);

/// Row-major flattening; cell (x, y) is labelled "x|y".
Distribution flatten(const JointDistribution& joint);

/// Re-expresses both inputs over the union of their labels, zero-filled and
/// sorted lexicographically (byte order).
std::pair<Distribution, Distribution> align(const Distribution& p, const Distribution& q);
std::pair<CountHistogram, Distribution> align(const CountHistogram& c, const Distribution& q);

}  // namespace infolab
