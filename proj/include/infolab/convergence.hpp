#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "infolab/histograms.hpp"

namespace infolab {

/// Sample sizes (strictly increasing, positive), replicates per size (>= 1)
/// and the master seed.
class SampleSchedule {
 public:
  /// Throws Error(InvalidValue) if the invariants do not hold.
  SampleSchedule(std::vector<Count> sizes, std::size_t replicates, std::uint64_t seed);

  const std::vector<Count>& sizes() const noexcept { return sizes_; }
  std::size_t replicates() const noexcept { return replicates_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::vector<Count> sizes_;
  std::size_t replicates_;
  std::uint64_t seed_;
};

/// One (n, replicate) row. Built only through make_convergence_record, which
/// enforces avg_neg_loglik_exact = kl_empirical_vs_q + residual.
struct ConvergenceRecord {
  Count n = 0;
  std::size_t replicate = 0;
  double avg_neg_loglik_exact = 0.0;  // -(1/n) log2 L(c | q)
  double kl_empirical_vs_q = 0.0;     // D(p_hat || q)
  double kl_true_vs_q = 0.0;          // D(p || q)
  double residual = 0.0;              // stirling_residual(c, q)
};

/// Throws std::logic_error when the decomposition is off by more than 1e-10
/// (relative to the magnitude of the likelihood term once it exceeds 1).
ConvergenceRecord make_convergence_record(Count n, std::size_t replicate, double avg_neg_loglik,
                                          double kl_empirical, double kl_true, double residual);

struct CombinatorialEntropyRecord {
  Count n = 0;
  std::size_t replicate = 0;
  double per_symbol_log2_coeff = 0.0;  // (1/n) log2(n! / prod c_i!)
  double empirical_entropy = 0.0;      // entropy(normalize(c))
};

/// splitmix64 finalizer (Steele, Lea and Flood).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// subseed = splitmix64(splitmix64(splitmix64(seed) ^ n) ^ replicate)
std::uint64_t derive_subseed(std::uint64_t seed, Count n, std::size_t replicate) noexcept;

/// Counts of n categorical draws from p.
///
/// The generator is std::mt19937_64 seeded with `seed`; each draw takes one
/// 64-bit output u, forms the double (u >> 11) * 2^-53 in [0, 1), and picks
/// the outcome by inverse CDF over p's labels in lexicographic order. All of
/// this is fixed by the C++ standard or by this code, so the counts are
/// identical on every conforming platform.
CountHistogram sample_counts(const Distribution& p, Count n, std::uint64_t seed);

/// One record per (n, replicate), ordered by n then replicate. Counts for
/// each record come from sample_counts(p, n, derive_subseed(seed, n, r)).
///
/// `workers` > 1 spreads records over threads; output is identical to the
/// sequential run. p and q must share labels (Error(SupportMismatch)).
std::vector<ConvergenceRecord> convergence_series(const Distribution& p, const Distribution& q,
                                                  const SampleSchedule& schedule,
                                                  std::size_t workers = 1);

/// Same sampling as convergence_series (identical counts for identical seed);
/// reports the per-symbol log multinomial coefficient next to the empirical
/// entropy it approaches.
std::vector<CombinatorialEntropyRecord> combinatorial_entropy_series(
    const Distribution& p, const SampleSchedule& schedule, std::size_t workers = 1);

// CSV output, 17 significant digits, infinities as inf / -inf.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);
void write_combinatorial_entropy_csv(std::ostream& out,
                                     const std::vector<CombinatorialEntropyRecord>& records);

}  // namespace infolab
