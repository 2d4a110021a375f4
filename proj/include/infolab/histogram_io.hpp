#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "infolab/histograms.hpp"

namespace infolab {

// File formats
// ------------
// One-variable CSV:   header `label,value`, one row per outcome.
// Joint CSV:          header row of y labels (the first cell is a corner
//                     placeholder and is ignored), then one row per x label.
// One-variable JSON:  {"labels": [...], "values": [...]}
// Joint JSON:         {"x_labels": [...], "y_labels": [...], "matrix": [[...]]}
//
// Values are kept as raw tokens until the caller decides whether the file
// holds counts (nonnegative integers) or probabilities (nonnegative decimals).

struct LabeledValues {
  Labels labels;
  std::vector<std::string> values;
};

struct LabeledMatrix {
  Labels x_labels;
  Labels y_labels;
  std::vector<std::string> values;  // row-major
};

LabeledValues parse_labeled_csv(std::string_view text);
LabeledValues parse_labeled_json(std::string_view text);
LabeledMatrix parse_matrix_csv(std::string_view text);
LabeledMatrix parse_matrix_json(std::string_view text);

/// True when every token is a plain nonnegative integer.
bool all_integers(const std::vector<std::string>& tokens);

/// Rejects any token that is not a nonnegative integer.
CountHistogram to_counts(const LabeledValues& values);
JointCountTable to_counts(const LabeledMatrix& values);

/// Integer-only inputs are read as counts and normalized; anything else must
/// already be a valid probability vector (or is rescaled with Renormalize::Yes).
Distribution to_distribution(const LabeledValues& values, Renormalize renormalize);
JointDistribution to_distribution(const LabeledMatrix& values, Renormalize renormalize);

// Path-based loaders pick JSON for a `.json` extension and CSV otherwise.
CountHistogram load_counts(const std::filesystem::path& path);
Distribution load_distribution(const std::filesystem::path& path, Renormalize renormalize);
JointDistribution load_joint(const std::filesystem::path& path, Renormalize renormalize);

// Writers emit probabilities with 17 significant digits.
void write_csv(std::ostream& out, const Distribution& p);
void write_csv(std::ostream& out, const CountHistogram& c);
void write_json(std::ostream& out, const Distribution& p);

/// printf("%.17g") with the C locale, so `inf`/`-inf`/`nan` spell the same
/// everywhere.
std::string format_real(double value);

}  // namespace infolab
