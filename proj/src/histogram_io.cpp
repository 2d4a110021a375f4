#include "infolab/histogram_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infolab/error.hpp"

namespace infolab {

namespace {

using Row = std::vector<std::string>;

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorKind::ParseError, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas and "" as an
// escaped quote; unquoted fields are trimmed.
Row split_record(std::string_view line, std::size_t line_number) {
  Row fields;
  std::size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.push_back(line[i++]);
      }
      if (!closed) parse_error("unterminated quote on line " + std::to_string(line_number));
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        parse_error("unexpected text after quoted field on line " + std::to_string(line_number));
      }
    } else {
      const auto end = line.find(',', i);
      field = std::string(trim(line.substr(i, end == std::string_view::npos ? end : end - i)));
      i = end == std::string_view::npos ? line.size() : end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // skip the comma
  }
  return fields;
}

std::vector<Row> read_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  std::size_t line_number = 0;
  while (!text.empty()) {
    ++line_number;
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (trim(line).empty()) continue;
    rows.push_back(split_record(line, line_number));
  }
  return rows;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_json(const std::filesystem::path& path) { return path.extension() == ".json"; }

Count parse_count(const std::string& token) {
  Count value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    parse_error("expected a nonnegative integer count, got '" + token + "'");
  }
  return value;
}

double parse_probability(const std::string& token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value) || value < 0.0) {
    parse_error("expected a nonnegative decimal, got '" + token + "'");
  }
  return value;
}

std::vector<Count> parse_counts(const std::vector<std::string>& tokens) {
  std::vector<Count> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_count(t));
  return out;
}

std::vector<double> parse_probabilities(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_probability(t));
  return out;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

Labels json_labels(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array()) {
    parse_error(std::string("JSON object needs an array field '") + key + "'");
  }
  Labels out;
  for (const auto& item : doc[key]) {
    if (!item.is_string()) parse_error(std::string("'") + key + "' must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

// Numbers keep their JSON spelling so that 2 and 2.0 stay distinguishable.
std::string json_number_token(const nlohmann::json& item) {
  if (!item.is_number()) parse_error("JSON values must be numbers");
  return item.dump();
}

std::string csv_field(const std::string& label) {
  if (label.find_first_of(",\"\n\r") == std::string::npos && trim(label) == label &&
      !label.empty()) {
    return label;
  }
  std::string quoted = "\"";
  for (char ch : label) {
    if (ch == '"') quoted.push_back('"');
    quoted.push_back(ch);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace

LabeledValues parse_labeled_csv(std::string_view text) {
  auto rows = read_records(text);
  if (rows.empty()) parse_error("CSV input is empty");
  if (rows.front().size() != 2 || rows.front()[0] != "label" || rows.front()[1] != "value") {
    parse_error("CSV header must be 'label,value'");
  }
  LabeledValues out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) {
      parse_error("CSV row " + std::to_string(r + 1) + " must have exactly two fields");
    }
    out.labels.push_back(std::move(rows[r][0]));
    out.values.push_back(std::move(rows[r][1]));
  }
  return out;
}

LabeledValues parse_labeled_json(std::string_view text) {
  const auto doc = parse_json(text);
  LabeledValues out;
  out.labels = json_labels(doc, "labels");
  if (!doc.contains("values") || !doc["values"].is_array()) {
    parse_error("JSON object needs an array field 'values'");
  }
  for (const auto& item : doc["values"]) out.values.push_back(json_number_token(item));
  if (out.labels.size() != out.values.size()) {
    parse_error("'labels' and 'values' differ in length");
  }
  return out;
}

LabeledMatrix parse_matrix_csv(std::string_view text) {
  auto rows = read_records(text);
  if (rows.empty()) parse_error("CSV input is empty");
  if (rows.front().size() < 2) parse_error("joint CSV header needs at least one column label");
  LabeledMatrix out;
  out.y_labels.assign(rows.front().begin() + 1, rows.front().end());
  const auto width = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      parse_error("joint CSV row " + std::to_string(r + 1) + " has " +
                  std::to_string(rows[r].size()) + " fields, expected " + std::to_string(width));
    }
    out.x_labels.push_back(std::move(rows[r][0]));
    for (std::size_t c = 1; c < width; ++c) out.values.push_back(std::move(rows[r][c]));
  }
  if (out.x_labels.empty()) parse_error("joint CSV has no rows");
  return out;
}

LabeledMatrix parse_matrix_json(std::string_view text) {
  const auto doc = parse_json(text);
  LabeledMatrix out;
  out.x_labels = json_labels(doc, "x_labels");
  out.y_labels = json_labels(doc, "y_labels");
  if (!doc.contains("matrix") || !doc["matrix"].is_array() ||
      doc["matrix"].size() != out.x_labels.size()) {
    parse_error("'matrix' must be an array with one row per x label");
  }
  for (const auto& row : doc["matrix"]) {
    if (!row.is_array() || row.size() != out.y_labels.size()) {
      parse_error("every 'matrix' row needs one value per y label");
    }
    for (const auto& item : row) out.values.push_back(json_number_token(item));
  }
  return out;
}

bool all_integers(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) return false;
  }
  return true;
}

CountHistogram to_counts(const LabeledValues& values) {
  return CountHistogram(values.labels, parse_counts(values.values));
}

JointCountTable to_counts(const LabeledMatrix& values) {
  return JointCountTable(values.x_labels, values.y_labels, parse_counts(values.values));
}

Distribution to_distribution(const LabeledValues& values, Renormalize renormalize) {
  if (all_integers(values.values)) return normalize(to_counts(values));
  return Distribution(values.labels, parse_probabilities(values.values), renormalize);
}

JointDistribution to_distribution(const LabeledMatrix& values, Renormalize renormalize) {
  if (all_integers(values.values)) return normalize(to_counts(values));
  return JointDistribution(values.x_labels, values.y_labels, parse_probabilities(values.values),
                           renormalize);
}

CountHistogram load_counts(const std::filesystem::path& path) {
  const auto text = read_file(path);
  return to_counts(is_json(path) ? parse_labeled_json(text) : parse_labeled_csv(text));
}

Distribution load_distribution(const std::filesystem::path& path, Renormalize renormalize) {
  const auto text = read_file(path);
  return to_distribution(is_json(path) ? parse_labeled_json(text) : parse_labeled_csv(text),
                         renormalize);
}

JointDistribution load_joint(const std::filesystem::path& path, Renormalize renormalize) {
  const auto text = read_file(path);
  return to_distribution(is_json(path) ? parse_matrix_json(text) : parse_matrix_csv(text),
                         renormalize);
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_csv(std::ostream& out, const Distribution& p) {
  out << "label,value\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << csv_field(p.labels()[i]) << ',' << format_real(p.probs()[i]) << '\n';
  }
}

void write_csv(std::ostream& out, const CountHistogram& c) {
  out << "label,value\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << csv_field(c.labels()[i]) << ',' << c.counts()[i] << '\n';
  }
}

void write_json(std::ostream& out, const Distribution& p) {
  nlohmann::json doc;
  doc["labels"] = p.labels();
  doc["values"] = std::vector<double>(p.probs().begin(), p.probs().end());
  out << doc.dump() << '\n';
}

}  // namespace infolab
