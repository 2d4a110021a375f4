#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string_view>

#include <CLI11.hpp>

#include "infolab/convergence.hpp"
#include "infolab/error.hpp"
#include "infolab/histogram_io.hpp"
#include "infolab/measures.hpp"

namespace infolab::cli {

namespace {

constexpr const char* kSeedVariable = "INFOLAB_SEED";

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::InvalidValue, "cannot write '" + path.string() + "'");
  return file;
}

void print_line(std::ostream& out, std::string_view name, double value) {
  out << name << ' ' << format_bits(value) << '\n';
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv(kSeedVariable);
  if (raw == nullptr) return std::nullopt;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError,
                std::string(kSeedVariable) + " must be an unsigned integer, got '" + raw + "'");
  }
  return value;
}

void run_entropy(const CliConfig& config, std::ostream& out) {
  const auto p = load_distribution(config.p, config.renormalize);
  out << format_bits(entropy(p).value) << '\n';
  if (config.write_dist) {
    auto file = open_output(*config.write_dist);
    write_csv(file, p);
  }
}

void run_kl(const CliConfig& config, std::ostream& out) {
  const auto [p, q] = align(load_distribution(config.p, config.renormalize),
                            load_distribution(config.q, config.renormalize));
  out << format_bits(kl_divergence(p, q).value) << '\n';
}

void run_mi(const CliConfig& config, std::ostream& out) {
  out << format_bits(mutual_information(load_joint(config.joint, config.renormalize)).value)
      << '\n';
}

void run_loglik(const CliConfig& config, std::ostream& out) {
  const auto [counts, q] =
      align(load_counts(config.counts), load_distribution(config.q, config.renormalize));
  const auto result = multinomial_log2_likelihood(counts, q, config.method);
  print_line(out, "log2_likelihood", result.log2_likelihood);
  print_line(out, "avg_neg_log2_likelihood",
             -result.log2_likelihood / static_cast<double>(result.n));
}

void run_converge(const CliConfig& config, std::ostream& out) {
  const auto [p, q] = align(load_distribution(config.p, config.renormalize),
                            load_distribution(config.q, config.renormalize));
  const SampleSchedule schedule(config.sizes, config.replicates, config.seed);
  const auto records = convergence_series(p, q, schedule, config.threads);
  auto file = open_output(config.out);
  write_convergence_csv(file, records);
  out << "wrote " << records.size() << " records to " << config.out.string() << '\n';
}

void run_entropy_combinatorics(const CliConfig& config, std::ostream& out) {
  const auto p = load_distribution(config.p, config.renormalize);
  const SampleSchedule schedule(config.sizes, config.replicates, config.seed);
  const auto records = combinatorial_entropy_series(p, schedule, config.threads);
  auto file = open_output(config.out);
  write_combinatorial_entropy_csv(file, records);
  out << "wrote " << records.size() << " records to " << config.out.string() << '\n';
}

}  // namespace

std::string format_bits(double value) {
  if (std::isinf(value)) return value > 0 ? "inf bits" : "-inf bits";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12f", value);
  std::string text(buffer);
  // A tiny negative rounding residue would otherwise print as -0.000000000000.
  if (text.starts_with('-') && text.find_first_not_of("-0.") == std::string::npos) {
    text.erase(0, 1);
  }
  return text + " bits";
}

std::variant<CliConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                        std::ostream& err) {
  CliConfig config;
  CLI::App app{"Discrete information measures and multinomial likelihoods", "infolab"};
  app.require_subcommand(1);

  std::string method_name = "exact";
  std::optional<std::uint64_t> seed;
  bool renormalize = false;

  auto add_renormalize = [&](CLI::App* sub) {
    sub->add_flag("--renormalize", renormalize,
                  "Rescale probability files whose total is not within 1e-9 of one");
  };
  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--sizes", config.sizes, "Strictly increasing sample sizes, comma separated")
        ->required()
        ->delimiter(',');
    sub->add_option("--replicates", config.replicates, "Independent runs per size")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, std::string("Master seed (default: $") + kSeedVariable +
                                        ", then 0)");
    sub->add_option("--out", config.out, "Output CSV")->required();
    sub->add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of a distribution");
  entropy_cmd->add_option("--p", config.p, "Distribution or counts file")->required();
  entropy_cmd->add_option("--write-dist", config.write_dist,
                          "Also write the parsed distribution as CSV");
  add_renormalize(entropy_cmd);

  auto* kl_cmd = app.add_subcommand("kl", "KL divergence D(p || q) over the union support");
  kl_cmd->add_option("--p", config.p)->required();
  kl_cmd->add_option("--q", config.q)->required();
  add_renormalize(kl_cmd);

  auto* mi_cmd = app.add_subcommand("mi", "Mutual information of a joint table");
  mi_cmd->add_option("--joint", config.joint)->required();
  add_renormalize(mi_cmd);

  auto* loglik_cmd = app.add_subcommand("loglik", "Multinomial log-likelihood of counts under q");
  loglik_cmd->add_option("--counts", config.counts, "Integer counts file")->required();
  loglik_cmd->add_option("--q", config.q)->required();
  loglik_cmd->add_option("--method", method_name)
      ->check(CLI::IsMember({"exact", "lgamma", "stirling"}));
  add_renormalize(loglik_cmd);

  auto* converge_cmd =
      app.add_subcommand("converge", "Monte Carlo series of -(1/n) log2 L against D(p || q)");
  converge_cmd->add_option("--p", config.p, "Source distribution")->required();
  converge_cmd->add_option("--q", config.q, "Model distribution")->required();
  add_schedule(converge_cmd);
  add_renormalize(converge_cmd);

  auto* combinatorics_cmd = app.add_subcommand(
      "entropy-combinatorics", "Series of per-symbol log multinomial coefficient vs entropy");
  combinatorics_cmd->add_option("--p", config.p, "Source distribution")->required();
  add_schedule(combinatorics_cmd);
  add_renormalize(combinatorics_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (entropy_cmd->parsed()) config.command = Command::Entropy;
  if (kl_cmd->parsed()) config.command = Command::Kl;
  if (mi_cmd->parsed()) config.command = Command::Mi;
  if (loglik_cmd->parsed()) config.command = Command::Loglik;
  if (converge_cmd->parsed()) config.command = Command::Converge;
  if (combinatorics_cmd->parsed()) config.command = Command::EntropyCombinatorics;

  config.method = *parse_method(method_name);
  config.renormalize = renormalize ? Renormalize::Yes : Renormalize::No;
  if (config.command == Command::Converge || config.command == Command::EntropyCombinatorics) {
    if (!seed) seed = seed_from_environment();
    config.seed = seed.value_or(0);
  }
  return config;
}

void run(const CliConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::Entropy: return run_entropy(config, out);
    case Command::Kl: return run_kl(config, out);
    case Command::Mi: return run_mi(config, out);
    case Command::Loglik: return run_loglik(config, out);
    case Command::Converge: return run_converge(config, out);
    case Command::EntropyCombinatorics: return run_entropy_combinatorics(config, out);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    auto parsed = parse_args(argc, argv, out, err);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    run(std::get<CliConfig>(parsed), out);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace infolab::cli
