#pragma once

#include <cmath>
#include <compare>

#include "infolab/histograms.hpp"

namespace infolab {

/// An information quantity in bits (log base 2). KL divergence and cross
/// entropy may be +infinity; nothing here produces NaN.
struct Bits {
  double value = 0.0;

  constexpr Bits() = default;
  constexpr explicit Bits(double v) : value(v) {}

  bool is_infinite() const noexcept { return std::isinf(value); }

  friend constexpr auto operator<=>(Bits, Bits) = default;
};

/// -sum p log2 p, with 0 log 0 = 0.
Bits entropy(const Distribution& p);

/// sum over p_i > 0 of p_i log2(p_i / q_i). +infinity when some p_i > 0 has
/// q_i = 0. Labels of p and q must be identical and in the same order
/// (see align()); otherwise throws Error(SupportMismatch).
Bits kl_divergence(const Distribution& p, const Distribution& q);

/// -sum p log2 q = entropy(p) + kl_divergence(p, q).
Bits cross_entropy(const Distribution& p, const Distribution& q);

/// KL divergence of the joint from the product of its marginals. Always
/// finite and nonnegative.
Bits mutual_information(const JointDistribution& joint);

}  // namespace infolab
