#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "infolab/histograms.hpp"
#include "infolab/measures.hpp"

namespace infolab {

/// How log n! terms are evaluated.
///
/// Exact    big-integer arithmetic for n <= kBigIntegerLimit, compensated
///          summation of logarithms above it. Used as the reference.
/// Lgamma   the platform log-gamma function.
/// Stirling n ln n - n, the large-n approximation.
enum class Method { Exact, Lgamma, Stirling };

inline constexpr Count kBigIntegerLimit = 10'000;

std::string_view to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// log2(n!). The Stirling value is defined as 0 for n in {0, 1}, where
/// n ln n - n would be negative while the true value is 0.
double log2_factorial(Count n, Method method);

/// log2(n! / prod c_i!). Throws Error(EmptyHistogram) when n == 0.
///
/// With Method::Stirling every factorial, including 0! and 1!, is replaced
/// by the unclamped n ln n - n, so the linear terms cancel and the result is
/// n log2 n - sum c_i log2 c_i.
double log2_multinomial_coefficient(const CountHistogram& counts, Method method);

struct LogLikelihoodResult {
  double log2_likelihood = 0.0;  // -infinity for an impossible observation
  Count n = 0;
  Method method = Method::Exact;
};

/// log2 L(c | q) = log2_multinomial_coefficient(c) + sum c_i log2 q_i.
/// Zero counts contribute nothing even where q_i = 0. Returns -infinity when
/// some c_i > 0 has q_i = 0.
///
/// Labels of `counts` and `model` must match exactly (see align()).
LogLikelihoodResult multinomial_log2_likelihood(const CountHistogram& counts,
                                                const Distribution& model, Method method);

/// -(1/n) log2 L(c | q). Tends to kl_divergence(p, q) as n grows when the
/// counts are drawn from p. With Method::Stirling it equals
/// kl_divergence(normalize(c), q) for every n.
Bits avg_neg_log2_likelihood(const CountHistogram& counts, const Distribution& model,
                             Method method);

/// avg_neg_log2_likelihood(c, q, Exact) - kl_divergence(normalize(c), q).
///
/// The gap is entropy(normalize(c)) - log2_multinomial_coefficient(c) / n and
/// does not depend on q; the two forms are cross-checked on every call and a
/// disagreement throws std::logic_error. When q vanishes somewhere c is
/// positive both terms are infinite and the q-free form is returned.
Bits stirling_residual(const CountHistogram& counts, const Distribution& model);

}  // namespace infolab
