// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "infolab/convergence.hpp"
#include "infolab/likelihood.hpp"
#include "infolab/measures.hpp"
#include "oracle.hpp"

using namespace infolab;
namespace fs = std::filesystem;

namespace {

// Collects failures for one criterion; the first few are reported.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  bool passed() const { return failures_ == 0; }
  std::string detail() const {
    return failures_ > 3 ? detail_ + "; ... (" + std::to_string(failures_) + " failures)" : detail_;
  }
  void note(const std::string& text) { note_ = text; }
  const std::string& note() const { return note_; }

 private:
  int failures_ = 0;
  std::string detail_;
  std::string note_;
};

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double to_double(const oracle::BigFloat& x) { return x.convert_to<double>(); }

Distribution two(double a, double b) { return {{"a", "b"}, {a, b}}; }
Distribution uniform6() { return {testgen::letters(6), std::vector<double>(6, 1.0 / 6)}; }

// 1. KL divergence against a 50-digit direct summation.
void kl_matches_oracle(Verdict& v) {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + trial % 9;
    const auto p = testgen::random_distribution(rng, k, 0.2);
    const auto q = testgen::random_distribution(rng, k);
    const std::vector<double> pv(p.probs().begin(), p.probs().end());
    const std::vector<double> qv(q.probs().begin(), q.probs().end());
    const double kl = kl_divergence(p, q).value;
    const double err = std::abs(kl - to_double(oracle::kl_bits(pv, qv)));
    worst = std::max(worst, err);
    v.expect(err <= 1e-12, "oracle error " + fmt(err));
    v.expect(kl >= -1e-12, "Gibbs violated: " + fmt(kl));
    v.expect(kl_divergence(p, p).value <= 1e-12, "KL(p,p) > 1e-12");
  }
  v.note("max |error| " + fmt(worst) + " over 1000 pairs");
}

// 2. Asymmetry and the infinite case.
void kl_asymmetry_and_infinity(Verdict& v) {
  const double forward = kl_divergence(two(0.5, 0.5), two(0.25, 0.75)).value;
  const double backward = kl_divergence(two(0.25, 0.75), two(0.5, 0.5)).value;
  const double forward_oracle = to_double(oracle::kl_bits({0.5, 0.5}, {0.25, 0.75}));
  const double backward_oracle = to_double(oracle::kl_bits({0.25, 0.75}, {0.5, 0.5}));
  v.expect(std::abs(forward - forward_oracle) <= 1e-9, "forward " + fmt(forward));
  v.expect(std::abs(backward - backward_oracle) <= 1e-9, "backward " + fmt(backward));
  // The published 7-digit values.
  v.expect(std::round(forward * 1e7) / 1e7 == 0.2075187, "forward does not round to 0.2075187");
  v.expect(std::round(backward * 1e7) / 1e7 == 0.1887219, "backward does not round to 0.1887219");
  v.expect(forward != backward, "symmetric");
  const auto inf = kl_divergence(two(0.5, 0.5), two(1.0, 0.0));
  v.expect(inf.is_infinite() && inf.value > 0, "q-zero on p's support is not +inf");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10f vs %.10f", forward, backward);
  v.note(buf);
}

// 3. Mutual information as KL from the product of marginals.
void mutual_information_is_kl(Verdict& v) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto j = testgen::random_joint(rng, 1 + trial % 6, 1 + (trial / 6) % 6, 0.25);
    const double mi = mutual_information(j).value;
    const double kl = kl_divergence(flatten(j), flatten(product_of_marginals(j))).value;
    v.expect(std::abs(mi - kl) <= 1e-12, "MI vs KL gap " + fmt(mi - kl));

    const auto a = testgen::random_probs(rng, 2 + trial % 4);
    const auto b = testgen::random_probs(rng, 2 + trial % 5);
    std::vector<double> outer;
    for (double x : a) for (double y : b) outer.push_back(x * y);
    const JointDistribution product(testgen::letters(a.size()), testgen::letters(b.size()), outer);
    v.expect(std::abs(mutual_information(product).value) <= 1e-12, "product-form MI not 0");
  }
  const JointDistribution diagonal({"0", "1"}, {"0", "1"}, {0.5, 0, 0, 0.5});
  v.expect(std::abs(mutual_information(diagonal).value - 1.0) <= 1e-12, "diagonal MI != 1");
  v.note("1000 random joints + 1000 product joints");
}

// 4. lgamma log-likelihood against big-integer factorials.
void lgamma_matches_big_integers(Verdict& v) {
  std::vector<oracle::BigInt> factorials(501);
  factorials[0] = 1;
  for (std::size_t i = 1; i <= 500; ++i) factorials[i] = factorials[i - 1] * i;

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick_k(1, 6);
  std::uniform_int_distribution<Count> pick_n(1, 500);
  double worst = 0.0;
  for (int trial = 0; trial < 10'000; ++trial) {
    const std::size_t k = pick_k(rng);
    const auto q = testgen::random_distribution(rng, k);
    const auto counts = sample_counts(testgen::random_distribution(rng, k, 0.3), pick_n(rng), rng());

    oracle::BigInt coefficient = factorials[counts.total()];
    for (Count c : counts.counts()) coefficient /= factorials[c];
    oracle::BigFloat expected = oracle::log2_big(coefficient);
    for (std::size_t i = 0; i < k; ++i) {
      if (counts.counts()[i] > 0) {
        expected += oracle::BigFloat(counts.counts()[i]) *
                    boost::multiprecision::log(oracle::BigFloat(q.probs()[i])) / oracle::ln2();
      }
    }
    const double lg = multinomial_log2_likelihood(counts, q, Method::Lgamma).log2_likelihood;
    const double ex = multinomial_log2_likelihood(counts, q, Method::Exact).log2_likelihood;
    const double err = std::abs(lg - to_double(expected));
    worst = std::max(worst, err);
    v.expect(err <= 1e-9, "lgamma error " + fmt(err) + " at n=" + std::to_string(counts.total()));
    v.expect(std::abs(ex - to_double(expected)) <= 1e-9, "exact method off the oracle");
  }
  v.note("max |lgamma - oracle| " + fmt(worst) + " bits over 10^4 cases");
}

// 5. -(1/n) log2 L approaches D(p || q).
void likelihood_converges_to_kl(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  struct Scenario {
    const char* name;
    Distribution p, q;
    double kl;
  };
  const std::vector<Scenario> scenarios = {
      {"uniform6", uniform6(), uniform6(), 0.0},
      {"half/quarter", two(0.5, 0.5), two(0.25, 0.75),
       to_double(oracle::kl_bits({0.5, 0.5}, {0.25, 0.75}))},
  };
  const SampleSchedule schedule({1'000, 10'000, 100'000}, 20, 20240501);
  std::string summary;
  for (const auto& s : scenarios) {
    const auto records = convergence_series(s.p, s.q, schedule);
    std::vector<double> mean(3, 0.0), mean_abs_gap(3, 0.0);
    for (const auto& rec : records) {
      const std::size_t slot = rec.n == 1'000 ? 0 : rec.n == 10'000 ? 1 : 2;
      mean[slot] += rec.avg_neg_loglik_exact / 20.0;
      mean_abs_gap[slot] += std::abs(rec.avg_neg_loglik_exact - s.kl) / 20.0;
    }
    v.expect(std::abs(mean[2] - s.kl) <= 0.01,
             std::string(s.name) + ": mean at 1e5 is " + fmt(mean[2]));
    v.expect(mean_abs_gap[1] <= mean_abs_gap[0] && mean_abs_gap[2] <= mean_abs_gap[1],
             std::string(s.name) + ": gap not non-increasing");
    summary += std::string(s.name) + " gaps " + fmt(mean_abs_gap[0]) + "/" + fmt(mean_abs_gap[1]) +
               "/" + fmt(mean_abs_gap[2]) + "  ";
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.expect(seconds <= 60.0, "took " + fmt(seconds) + " s");
  v.note(summary + fmt(seconds) + " s");
}

// 6. Exact decomposition into empirical KL plus a q-free residual.
void residual_identity(Verdict& v) {
  std::mt19937_64 rng(6);
  double worst_identity = 0.0, worst_spread = 0.0;
  for (int fixed = 0; fixed < 50; ++fixed) {
    const std::size_t k = 2 + fixed % 9;
    const auto counts = testgen::random_counts(rng, k, fixed % 5 == 0 ? 3 : 4000);
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < 100; ++i) {
      const auto q = testgen::random_distribution(rng, k);
      const double residual = stirling_residual(counts, q).value;
      const double lhs = avg_neg_log2_likelihood(counts, q, Method::Exact).value;
      const double rhs = kl_divergence(normalize(counts), q).value + residual;
      worst_identity = std::max(worst_identity, std::abs(lhs - rhs));
      v.expect(std::abs(lhs - rhs) <= 1e-10, "identity off by " + fmt(lhs - rhs));
      lo = std::min(lo, residual);
      hi = std::max(hi, residual);
    }
    worst_spread = std::max(worst_spread, hi - lo);
    v.expect(hi - lo <= 1e-10, "residual varies with q by " + fmt(hi - lo));
  }
  v.note("max identity gap " + fmt(worst_identity) + ", max q-spread " + fmt(worst_spread));
}

// 7. Stirling's formula is within 1% of ln n! from n = 100 on, and improving.
void stirling_quality(Verdict& v) {
  oracle::BigFloat ln_factorial = 0;
  for (Count k = 2; k < 100; ++k) ln_factorial += boost::multiprecision::log(oracle::BigFloat(k));
  double previous = INFINITY;
  double at_100 = 0.0;
  for (Count n = 100; n <= 100'000; ++n) {
    ln_factorial += boost::multiprecision::log(oracle::BigFloat(n));
    const double exact = to_double(ln_factorial);
    const double stirling = log2_factorial(n, Method::Stirling) * std::numbers::ln2;
    const double relative = (exact - stirling) / exact;
    if (n == 100) at_100 = relative;
    v.expect(relative <= 0.01, "relative error " + fmt(relative) + " at n=" + std::to_string(n));
    v.expect(relative < previous, "not decreasing at n=" + std::to_string(n));
    previous = relative;
  }
  const double spot = to_double(
      (boost::multiprecision::log(oracle::BigFloat(oracle::factorial(100))) -
       (100 * boost::multiprecision::log(oracle::BigFloat(100)) - 100)) /
      boost::multiprecision::log(oracle::BigFloat(oracle::factorial(100))));
  v.expect(std::abs(at_100 - spot) <= 1e-12, "n=100 disagrees with the big-integer factorial");
  v.expect(std::round(at_100 * 1e5) / 1e3 == 0.886, "n=100 is not ~0.886%");
  v.note("n=100: " + fmt(100 * at_100) + "%, n=1e5: " + fmt(100 * previous) + "%");
}

// 8. Per-symbol log multinomial coefficient approaches the empirical entropy.
void entropy_from_combinatorics(Verdict& v) {
  const std::vector<Count> near_uniform{16667, 16667, 16666, 16667, 16666, 16667};
  const CountHistogram fixed(testgen::letters(6), near_uniform);
  const double n = static_cast<double>(fixed.total());
  const double per_symbol = log2_multinomial_coefficient(fixed, Method::Exact) / n;
  const double h = entropy(normalize(fixed)).value;
  const double residual = stirling_residual(fixed, uniform6()).value;
  v.expect(std::abs(per_symbol - h) <= 1e-3, "gap " + fmt(per_symbol - h));
  v.expect(std::abs((per_symbol - h) + residual) <= 1e-10, "gap != -residual");

  const SampleSchedule schedule({100'000}, 10, 8);
  const auto records = combinatorial_entropy_series(uniform6(), schedule);
  const auto conv = convergence_series(uniform6(), uniform6(), schedule);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double gap = records[i].per_symbol_log2_coeff - records[i].empirical_entropy;
    v.expect(std::abs(gap) <= 1e-3, "sampled gap " + fmt(gap));
    v.expect(std::abs(gap + conv[i].residual) <= 1e-10, "sampled gap != -residual");
  }
  v.note("deterministic gap " + fmt(per_symbol - h) + " bits");
}

// 9. The converge command is byte-for-byte reproducible.
void converge_is_deterministic(Verdict& v) {
  const fs::path data = INFOLAB_TEST_DATA_DIR;
  const fs::path dir = fs::temp_directory_path();
  std::string outputs[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / ("infolab_acceptance_converge_" + std::to_string(run) + ".csv");
    fs::remove(out);
    const std::string command = std::string("\"") + INFOLAB_CLI_PATH + "\" converge --p \"" +
                                (data / "half.csv").string() + "\" --q \"" +
                                (data / "quarter.csv").string() +
                                "\" --sizes 100,1000,10000 --replicates 5 --seed 99 --out \"" +
                                out.string() + "\" > /dev/null";
    v.expect(std::system(command.c_str()) == 0, "converge exited nonzero");
    std::ifstream in(out, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    outputs[run] = text.str();
  }
  v.expect(!outputs[0].empty(), "no output written");
  v.expect(outputs[0] == outputs[1], "outputs differ");
  v.note(std::to_string(outputs[0].size()) + " identical bytes");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"KL divergence matches 50-digit oracle; Gibbs; KL(p,p)=0", kl_matches_oracle},
      {"KL asymmetry values and +inf on q-zero support", kl_asymmetry_and_infinity},
      {"mutual information = KL(joint || product of marginals)", mutual_information_is_kl},
      {"lgamma log-likelihood = big-integer oracle (n<=500, k<=6)", lgamma_matches_big_integers},
      {"-(1/n) log2 L -> KL at n=1e5, gaps non-increasing, <=60 s", likelihood_converges_to_kl},
      {"exact = KL(p_hat||q) + residual; residual independent of q", residual_identity},
      {"Stirling within 1% for n in [100,1e5], decreasing", stirling_quality},
      {"per-symbol log coefficient -> entropy, gap = -residual", entropy_from_combinatorics},
      {"converge CSV byte-identical across runs", converge_is_deterministic},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict verdict;
    try {
      criteria[i].second(verdict);
    } catch (const std::exception& e) {
      verdict.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (verdict.passed() ? "PASS" : "FAIL") << "  " << (i + 1) << ". "
              << criteria[i].first;
    if (!verdict.passed()) std::cout << "  [" << verdict.detail() << "]";
    if (!verdict.note().empty()) std::cout << "  (" << verdict.note() << ")";
    std::cout << std::endl;
    if (!verdict.passed()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
