#include "infolab/measures.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <span>

#include "infolab/compensated_sum.hpp"
#include "infolab/error.hpp"

namespace infolab {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Terms are accumulated in nats; callers convert once at the end.
double kl_nats(std::span<const double> p, std::span<const double> q) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInfinity;
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return sum.value();
}

void require_same_support(const Distribution& p, const Distribution& q) {
  if (p.labels() != q.labels()) {
    throw Error(ErrorKind::SupportMismatch,
                "distributions must share identical, identically ordered labels; align them first");
  }
}

Bits to_bits(double nats) { return Bits(nats / std::numbers::ln2); }

}  // namespace

Bits entropy(const Distribution& p) {
  CompensatedSum sum;
  for (double pi : p.probs()) {
    if (pi > 0.0) sum += -pi * std::log(pi);
  }
  // Rounding can leave a point mass at -0 or a hair below zero.
  return to_bits(std::max(0.0, sum.value()));
}

Bits kl_divergence(const Distribution& p, const Distribution& q) {
  require_same_support(p, q);
  return to_bits(kl_nats(p.probs(), q.probs()));
}

Bits cross_entropy(const Distribution& p, const Distribution& q) {
  require_same_support(p, q);
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.probs()[i];
    if (pi == 0.0) continue;
    const double qi = q.probs()[i];
    if (qi == 0.0) return Bits(kInfinity);
    sum += -pi * std::log(qi);
  }
  return to_bits(sum.value());
}

Bits mutual_information(const JointDistribution& joint) {
  const auto [px, py] = marginals(joint);
  CompensatedSum sum;
  // p(x,y) > 0 forces p(x) > 0 and p(y) > 0. Dividing one marginal at a time
  // keeps p(x) p(y) from underflowing for tiny cells.
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < py.size(); ++y) {
      const double pxy = joint.at(x, y);
      if (pxy > 0.0) sum += pxy * std::log(pxy / px.probs()[x] / py.probs()[y]);
    }
  }
  return to_bits(std::max(0.0, sum.value()));
}

}  // namespace infolab
