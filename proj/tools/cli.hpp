#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "infolab/histograms.hpp"
#include "infolab/likelihood.hpp"

namespace infolab::cli {

enum class Command { Entropy, Kl, Mi, Loglik, Converge, EntropyCombinatorics };

struct CliConfig {
  Command command = Command::Entropy;
  std::filesystem::path p;        // entropy, kl, converge, entropy-combinatorics
  std::filesystem::path q;        // kl, loglik, converge
  std::filesystem::path joint;    // mi
  std::filesystem::path counts;   // loglik
  std::filesystem::path out;      // converge, entropy-combinatorics
  std::optional<std::filesystem::path> write_dist;  // entropy: echo the parsed distribution
  Method method = Method::Exact;
  Renormalize renormalize = Renormalize::No;
  std::vector<Count> sizes;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// Parses argv into a config. Returns the exit code instead when parsing
/// finishes the run (help, or a usage error already reported on `err`).
std::variant<CliConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                        std::ostream& err);

/// Executes a parsed command. Library errors propagate as exceptions.
void run(const CliConfig& config, std::ostream& out);

/// parse_args + run with the process conventions: one-line diagnostic and
/// exit status 1 on any failure, 0 on success (infinite results included).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fixed 12-decimal rendering used for every scalar result, e.g.
/// "0.207518749640 bits". Infinities print as "inf bits" / "-inf bits".
std::string format_bits(double value);

}  // namespace infolab::cli
