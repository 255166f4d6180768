#ifndef OPZ_REPORT_HPP
#define OPZ_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opz/recursion.hpp"

namespace opz {

struct ModelFile {
  Model model;
  std::optional<std::string> label;
  /// Odd Verblunsky period: the coefficients will be doubled.
  bool doubled = false;
};

/// Parses {"model": "jacobi", "a": [...], "b": [...]} or
/// {"model": "verblunsky", "alpha": [[re, im], ...]} with optional "label".
/// Throws Error(ParseError) with line and column on malformed JSON and
/// Error(ValidationError) naming the offending field otherwise.
ModelFile parse_model(std::string_view text);

/// Inverse of parse_model for the original (undoubled) coefficients.
std::string serialize_model(const ModelFile& file);

enum class Format { Csv, Json };

struct RunConfig {
  std::vector<int> n_list;
  std::optional<int> m;
  std::optional<int> offset;
  double tol = 1e-8;
  Format format = Format::Csv;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string subcommand;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table&) const = default;
};

/// Shortest round-trip decimal form.
std::string format_double(double x);

std::string render_csv(const Table& t);
/// {"columns": [...], "rows": [{column: value}], "subcommand": ...} with
/// sorted keys and two-space indentation.
std::string render_json(const Table& t);
std::string render(const Table& t, Format f);
/// Parses render_json output back into a table.
Table parse_table_json(std::string_view text);

struct RunResult {
  Table table;
  /// Set when a checked quantity exceeded its tolerance (exit status 3).
  bool verification_failed = false;
  std::vector<std::string> warnings;
};

inline const std::vector<std::string> kSubcommands = {"bands", "equilibrium", "dirichlet", "zeros",
                                                      "predict", "clock", "jost", "verify"};

/// Throws Error(InvalidArgument) on an unknown subcommand and propagates
/// module errors.
RunResult run_subcommand(std::string_view name, const ModelFile& model, const RunConfig& config);

/// Writes to a temporary sibling file and renames it over path.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace opz

#endif  // OPZ_REPORT_HPP
