#include "infolab/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "infolab/compensated_sum.hpp"
#include "infolab/error.hpp"

namespace infolab {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

// log2 of a positive big integer from its top 53 bits. Truncating the rest
// costs at most 2^-52 relative, i.e. < 4e-16 in the logarithm.
double log2_big(const BigInt& x) {
  const auto top = boost::multiprecision::msb(x);
  if (top < 53) return std::log2(x.convert_to<double>());
  const auto shift = top - 52;
  const BigInt mantissa = x >> shift;
  return std::log2(mantissa.convert_to<double>()) + static_cast<double>(shift);
}

double ln_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

double ln_factorial_by_summation(Count n) {
  CompensatedSum sum;
  for (Count k = 2; k <= n; ++k) sum += std::log(static_cast<double>(k));
  return sum.value();
}

double stirling_ln(Count n) {
  if (n == 0) return 0.0;
  const auto x = static_cast<double>(n);
  return x * std::log(x) - x;
}

double exact_log2_factorial(Count n) {
  if (n <= kBigIntegerLimit) {
    BigInt f = 1;
    for (Count k = 2; k <= n; ++k) f *= k;
    return log2_big(f);
  }
  return ln_factorial_by_summation(n) / std::numbers::ln2;
}

std::vector<Count> descending(std::span<const Count> counts) {
  std::vector<Count> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// The coefficient is the product over categories of C(t_i, c_i), where t_i is
// the running total. Taking the largest category first makes its binomial 1.
double exact_log2_multinomial(std::span<const Count> counts, Count n) {
  const auto sorted = descending(counts);
  if (n <= kBigIntegerLimit) {
    BigInt m = 1;
    Count t = sorted.front();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      for (Count j = 1; j <= sorted[i]; ++j) {
        ++t;
        // m * t is divisible by j: the quotient is m_prev * C(t_prev + j, j).
        m *= t;
        m /= j;
      }
    }
    return log2_big(m);
  }
  // ln C(t + c, c) = sum_j ln(1 + t / j); all terms are positive, so the sum
  // has no cancellation.
  CompensatedSum sum;
  Count t = sorted.front();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    for (Count j = 1; j <= sorted[i]; ++j) {
      sum += std::log1p(static_cast<double>(t) / static_cast<double>(j));
    }
    t += sorted[i];
  }
  return sum.value() / std::numbers::ln2;
}

void require_same_support(const CountHistogram& counts, const Distribution& model) {
  if (counts.labels() != model.labels()) {
    throw Error(ErrorKind::SupportMismatch,
                "counts and model must share identical, identically ordered labels; align them "
                "first");
  }
}

void require_nonempty(const CountHistogram& counts) {
  if (counts.total() == 0) {
    throw Error(ErrorKind::EmptyHistogram, "likelihood needs at least one observation");
  }
}

// sum c_i log2 q_i over c_i > 0; -infinity if some such q_i is 0.
double log2_model_term(const CountHistogram& counts, const Distribution& model) {
  CompensatedSum sum;  // in nats
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Count c = counts.counts()[i];
    if (c == 0) continue;
    const double q = model.probs()[i];
    if (q == 0.0) return kNegInfinity;
    sum += static_cast<double>(c) * std::log(q);
  }
  return sum.value() / std::numbers::ln2;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Exact: return "exact";
    case Method::Lgamma: return "lgamma";
    case Method::Stirling: return "stirling";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "exact") return Method::Exact;
  if (name == "lgamma") return Method::Lgamma;
  if (name == "stirling") return Method::Stirling;
  return std::nullopt;
}

double log2_factorial(Count n, Method method) {
  switch (method) {
    case Method::Exact:
      return exact_log2_factorial(n);
    case Method::Lgamma:
      return ln_gamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
    case Method::Stirling:
      return n <= 1 ? 0.0 : stirling_ln(n) / std::numbers::ln2;
  }
  throw std::invalid_argument("unknown method");
}

double log2_multinomial_coefficient(const CountHistogram& counts, Method method) {
  require_nonempty(counts);
  const Count n = counts.total();
  switch (method) {
    case Method::Exact:
      return exact_log2_multinomial(counts.counts(), n);
    case Method::Lgamma: {
      CompensatedSum sum;
      sum += ln_gamma(static_cast<double>(n) + 1.0);
      for (Count c : counts.counts()) sum += -ln_gamma(static_cast<double>(c) + 1.0);
      return sum.value() / std::numbers::ln2;
    }
    case Method::Stirling: {
      CompensatedSum sum;
      sum += stirling_ln(n);
      for (Count c : counts.counts()) sum += -stirling_ln(c);
      return sum.value() / std::numbers::ln2;
    }
  }
  throw std::invalid_argument("unknown method");
}

LogLikelihoodResult multinomial_log2_likelihood(const CountHistogram& counts,
                                                const Distribution& model, Method method) {
  require_same_support(counts, model);
  require_nonempty(counts);
  const double model_term = log2_model_term(counts, model);
  if (std::isinf(model_term)) return {kNegInfinity, counts.total(), method};
  return {log2_multinomial_coefficient(counts, method) + model_term, counts.total(), method};
}

Bits avg_neg_log2_likelihood(const CountHistogram& counts, const Distribution& model,
                             Method method) {
  const auto result = multinomial_log2_likelihood(counts, model, method);
  return Bits(-result.log2_likelihood / static_cast<double>(result.n));
}

Bits stirling_residual(const CountHistogram& counts, const Distribution& model) {
  require_same_support(counts, model);
  require_nonempty(counts);

  const auto empirical = normalize(counts);
  const double n = static_cast<double>(counts.total());
  const double coefficient = log2_multinomial_coefficient(counts, Method::Exact);
  const double q_free = entropy(empirical).value - coefficient / n;

  const double model_term = log2_model_term(counts, model);
  if (std::isinf(model_term)) return Bits(q_free);

  // Same expression as avg_neg_log2_likelihood(counts, model, Exact).
  const double avg = -(coefficient + model_term) / n;
  const double residual = avg - kl_divergence(empirical, model).value;
  const double tolerance = 1e-9 * std::max(1.0, std::abs(avg));
  if (std::abs(residual - q_free) > tolerance) {
    throw std::logic_error("stirling residual depends on the model: " + std::to_string(residual) +
                           " vs " + std::to_string(q_free));
  }
  return Bits(residual);
}

}  // namespace infolab
