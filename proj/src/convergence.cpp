#include "infolab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "infolab/error.hpp"
#include "infolab/histogram_io.hpp"
#include "infolab/likelihood.hpp"
#include "infolab/measures.hpp"

namespace infolab {

namespace {

constexpr double kRecordTolerance = 1e-10;

// Runs fn(i) for i in [0, count). Each index writes only its own output slot.
template <typename Fn>
void for_each_index(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Job {
  Count n;
  std::size_t replicate;
};

std::vector<Job> jobs_for(const SampleSchedule& schedule) {
  std::vector<Job> jobs;
  jobs.reserve(schedule.sizes().size() * schedule.replicates());
  for (Count n : schedule.sizes()) {
    for (std::size_t r = 0; r < schedule.replicates(); ++r) jobs.push_back({n, r});
  }
  return jobs;
}

}  // namespace

SampleSchedule::SampleSchedule(std::vector<Count> sizes, std::size_t replicates,
                               std::uint64_t seed)
    : sizes_(std::move(sizes)), replicates_(replicates), seed_(seed) {
  if (sizes_.empty()) throw Error(ErrorKind::InvalidValue, "schedule needs at least one size");
  if (sizes_.front() == 0) throw Error(ErrorKind::InvalidValue, "sample sizes must be positive");
  if (std::adjacent_find(sizes_.begin(), sizes_.end(), std::greater_equal<>()) != sizes_.end()) {
    throw Error(ErrorKind::InvalidValue, "sample sizes must be strictly increasing");
  }
  if (replicates_ == 0) throw Error(ErrorKind::InvalidValue, "replicates must be at least 1");
}

ConvergenceRecord make_convergence_record(Count n, std::size_t replicate, double avg_neg_loglik,
                                          double kl_empirical, double kl_true, double residual) {
  const bool consistent =
      std::isinf(avg_neg_loglik)
          ? avg_neg_loglik == kl_empirical && std::isfinite(residual)
          : std::abs(avg_neg_loglik - (kl_empirical + residual)) <=
                kRecordTolerance * std::max(1.0, std::abs(avg_neg_loglik));
  if (!consistent) {
    throw std::logic_error("convergence record at n=" + std::to_string(n) +
                           " violates avg_neg_loglik = kl_empirical + residual");
  }
  return {n, replicate, avg_neg_loglik, kl_empirical, kl_true, residual};
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_subseed(std::uint64_t seed, Count n, std::size_t replicate) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ n) ^ static_cast<std::uint64_t>(replicate));
}

CountHistogram sample_counts(const Distribution& p, Count n, std::uint64_t seed) {
  const auto k = p.size();
  if (k == 0) throw Error(ErrorKind::InvalidValue, "cannot sample from an empty support");

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p.labels()[a] < p.labels()[b]; });

  std::vector<double> cdf(k);
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double pi = p.probs()[order[i]];
    running += pi;
    cdf[i] = running;
    if (pi > 0.0) last_positive = i;
  }

  std::mt19937_64 engine(seed);
  std::vector<Count> counts(k, 0);
  for (Count draw = 0; draw < n; ++draw) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    // First slot whose CDF exceeds u; zero-probability slots never qualify.
    auto slot = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (slot >= k) slot = last_positive;  // cdf.back() rounded below 1
    ++counts[order[slot]];
  }
  return CountHistogram(p.labels(), std::move(counts));
}

std::vector<ConvergenceRecord> convergence_series(const Distribution& p, const Distribution& q,
                                                  const SampleSchedule& schedule,
                                                  std::size_t workers) {
  const double kl_true = kl_divergence(p, q).value;  // also checks the supports
  const auto jobs = jobs_for(schedule);
  std::vector<ConvergenceRecord> records(jobs.size());
  for_each_index(jobs.size(), workers, [&](std::size_t i) {
    const auto [n, r] = jobs[i];
    const auto counts = sample_counts(p, n, derive_subseed(schedule.seed(), n, r));
    const double avg = avg_neg_log2_likelihood(counts, q, Method::Exact).value;
    const double kl_empirical = kl_divergence(normalize(counts), q).value;
    const double residual = stirling_residual(counts, q).value;
    records[i] = make_convergence_record(n, r, avg, kl_empirical, kl_true, residual);
  });
  return records;
}

std::vector<CombinatorialEntropyRecord> combinatorial_entropy_series(
    const Distribution& p, const SampleSchedule& schedule, std::size_t workers) {
  const auto jobs = jobs_for(schedule);
  std::vector<CombinatorialEntropyRecord> records(jobs.size());
  for_each_index(jobs.size(), workers, [&](std::size_t i) {
    const auto [n, r] = jobs[i];
    const auto counts = sample_counts(p, n, derive_subseed(schedule.seed(), n, r));
    const double per_symbol =
        log2_multinomial_coefficient(counts, Method::Exact) / static_cast<double>(n);
    const double empirical = entropy(normalize(counts)).value;
    // The gap is the Stirling residual; p itself serves as a model that is
    // positive wherever counts can be.
    const double residual = stirling_residual(counts, p).value;
    if (std::abs((per_symbol - empirical) + residual) > kRecordTolerance) {
      throw std::logic_error("combinatorial entropy gap disagrees with the Stirling residual at n=" +
                             std::to_string(n));
    }
    records[i] = {n, r, per_symbol, empirical};
  });
  return records;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << "n,replicate,avg_neg_loglik,kl_empirical,kl_true,residual\n";
  for (const auto& rec : records) {
    out << rec.n << ',' << rec.replicate << ',' << format_real(rec.avg_neg_loglik_exact) << ','
        << format_real(rec.kl_empirical_vs_q) << ',' << format_real(rec.kl_true_vs_q) << ','
        << format_real(rec.residual) << '\n';
  }
}

void write_combinatorial_entropy_csv(std::ostream& out,
                                     const std::vector<CombinatorialEntropyRecord>& records) {
  out << "n,replicate,per_symbol_log2_coeff,empirical_entropy\n";
  for (const auto& rec : records) {
    out << rec.n << ',' << rec.replicate << ',' << format_real(rec.per_symbol_log2_coeff) << ','
        << format_real(rec.empirical_entropy) << '\n';
  }
}

}  // namespace infolab
