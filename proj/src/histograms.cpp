#include "infolab/histograms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

#include "infolab/compensated_sum.hpp"
#include "infolab/error.hpp"

namespace infolab {

namespace {

void require_unique(const Labels& labels, std::string_view what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(ErrorKind::DuplicateLabel,
                  std::string(what) + " label '" + label + "' appears more than once");
    }
  }
}

Count checked_total(std::span<const Count> counts) {
  Count total = 0;
  for (Count c : counts) {
    if (c > std::numeric_limits<Count>::max() - total) {
      throw Error(ErrorKind::InvalidValue, "total count overflows 64 bits");
    }
    total += c;
  }
  return total;
}

// Validates probabilities in place; renormalizes when asked.
void check_probabilities(std::vector<double>& probs, Renormalize renormalize) {
  CompensatedSum sum;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::InvalidValue, "probability must be finite and nonnegative, got " +
                                               std::to_string(p));
    }
    sum += p;
  }
  const double total = sum.value();
  if (renormalize == Renormalize::Yes) {
    if (!(total > 0.0)) {
      throw Error(ErrorKind::InvalidValue, "cannot renormalize: probabilities sum to zero");
    }
    for (double& p : probs) p /= total;
    return;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorKind::InvalidValue,
                "probabilities sum to " + std::to_string(total) + ", not 1");
  }
  // Sums of probabilities (marginals) can land an ulp above one.
  for (double& p : probs) {
    if (p > 1.0 + kNormalizationTolerance) {
      throw Error(ErrorKind::InvalidValue, "probability exceeds 1: " + std::to_string(p));
    }
    p = std::min(p, 1.0);
  }
}

std::vector<double> row_sums(const JointDistribution& j) {
  const auto kx = j.x_labels().size();
  const auto ky = j.y_labels().size();
  std::vector<double> out(kx);
  for (std::size_t x = 0; x < kx; ++x) {
    CompensatedSum s;
    for (std::size_t y = 0; y < ky; ++y) s += j.at(x, y);
    out[x] = s.value();
  }
  return out;
}

std::vector<double> column_sums(const JointDistribution& j) {
  const auto kx = j.x_labels().size();
  const auto ky = j.y_labels().size();
  std::vector<double> out(ky);
  for (std::size_t y = 0; y < ky; ++y) {
    CompensatedSum s;
    for (std::size_t x = 0; x < kx; ++x) s += j.at(x, y);
    out[y] = s.value();
  }
  return out;
}

Labels sorted_union(const Labels& a, const Labels& b) {
  Labels out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename T>
std::vector<T> reindex(const Labels& from, std::span<const T> values, const Labels& to) {
  std::map<std::string_view, T> lookup;
  for (std::size_t i = 0; i < from.size(); ++i) lookup.emplace(from[i], values[i]);
  std::vector<T> out;
  out.reserve(to.size());
  for (const auto& label : to) {
    auto it = lookup.find(label);
    out.push_back(it == lookup.end() ? T{0} : it->second);
  }
  return out;
}

}  // namespace

CountHistogram::CountHistogram(Labels labels, std::vector<Count> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
  if (labels_.size() != counts_.size()) {
    throw Error(ErrorKind::InvalidValue, "histogram has " + std::to_string(labels_.size()) +
                                             " labels but " + std::to_string(counts_.size()) +
                                             " counts");
  }
  require_unique(labels_, "histogram");
  total_ = checked_total(counts_);
}

Distribution::Distribution(Labels labels, std::vector<double> probs, Renormalize renormalize)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) {
    throw Error(ErrorKind::InvalidValue, "distribution has " + std::to_string(labels_.size()) +
                                             " labels but " + std::to_string(probs_.size()) +
                                             " probabilities");
  }
  require_unique(labels_, "distribution");
  check_probabilities(probs_, renormalize);
}

JointCountTable::JointCountTable(Labels x_labels, Labels y_labels, std::vector<Count> counts)
    : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)), counts_(std::move(counts)) {
  if (counts_.size() != x_labels_.size() * y_labels_.size()) {
    throw Error(ErrorKind::InvalidValue, "joint table shape does not match its labels");
  }
  require_unique(x_labels_, "row");
  require_unique(y_labels_, "column");
  total_ = checked_total(counts_);
}

JointDistribution::JointDistribution(Labels x_labels, Labels y_labels, std::vector<double> probs,
                                     Renormalize renormalize)
    : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)), probs_(std::move(probs)) {
  if (probs_.size() != x_labels_.size() * y_labels_.size()) {
    throw Error(ErrorKind::InvalidValue, "joint distribution shape does not match its labels");
  }
  require_unique(x_labels_, "row");
  require_unique(y_labels_, "column");
  check_probabilities(probs_, renormalize);
}

Distribution normalize(const CountHistogram& h) {
  if (h.total() == 0) {
    throw Error(ErrorKind::EmptyHistogram, "cannot normalize a histogram with zero total count");
  }
  const auto n = static_cast<double>(h.total());
  std::vector<double> probs;
  probs.reserve(h.size());
  for (Count c : h.counts()) probs.push_back(static_cast<double>(c) / n);
  return Distribution(h.labels(), std::move(probs));
}

JointDistribution normalize(const JointCountTable& table) {
  if (table.total() == 0) {
    throw Error(ErrorKind::EmptyHistogram, "cannot normalize a joint table with zero total count");
  }
  const auto n = static_cast<double>(table.total());
  std::vector<double> probs;
  probs.reserve(table.counts().size());
  for (Count c : table.counts()) probs.push_back(static_cast<double>(c) / n);
  return JointDistribution(table.x_labels(), table.y_labels(), std::move(probs));
}

std::pair<Distribution, Distribution> marginals(const JointDistribution& joint) {
  return {Distribution(joint.x_labels(), row_sums(joint)),
          Distribution(joint.y_labels(), column_sums(joint))};
}

JointDistribution product_of_marginals(const JointDistribution& joint) {
  const auto px = row_sums(joint);
  const auto py = column_sums(joint);
  std::vector<double> probs;
  probs.reserve(px.size() * py.size());
  for (double a : px) {
    for (double b : py) probs.push_back(a * b);
  }
  return JointDistribution(joint.x_labels(), joint.y_labels(), std::move(probs));
}

JointDistribution transpose(const JointDistribution& joint) {
  const auto kx = joint.x_labels().size();
  const auto ky = joint.y_labels().size();
  std::vector<double> probs(kx * ky);
  for (std::size_t x = 0; x < kx; ++x) {
    for (std::size_t y = 0; y < ky; ++y) probs[y * kx + x] = joint.at(x, y);
  }
  return JointDistribution(joint.y_labels(), joint.x_labels(), std::move(probs));
}

Distribution flatten(const JointDistribution& joint) {
  Labels labels;
  labels.reserve(joint.probs().size());
  for (const auto& x : joint.x_labels()) {
    for (const auto& y : joint.y_labels()) labels.push_back(x + "|" + y);
  }
  return Distribution(std::move(labels), {joint.probs().begin(), joint.probs().end()});
}

std::pair<Distribution, Distribution> align(const Distribution& p, const Distribution& q) {
  const Labels support = sorted_union(p.labels(), q.labels());
  return {Distribution(support, reindex(p.labels(), p.probs(), support)),
          Distribution(support, reindex(q.labels(), q.probs(), support))};
}

std::pair<CountHistogram, Distribution> align(const CountHistogram& c, const Distribution& q) {
  const Labels support = sorted_union(c.labels(), q.labels());
  return {CountHistogram(support, reindex(c.labels(), c.counts(), support)),
          Distribution(support, reindex(q.labels(), q.probs(), support))};
}

}  // namespace infolab
