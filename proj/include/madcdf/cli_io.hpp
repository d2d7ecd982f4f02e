#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "madcdf/mad_curve.hpp"
#include "madcdf/sample.hpp"
#include "madcdf/shape.hpp"
#include "madcdf/simbench.hpp"

namespace madcdf {

enum class MissingPolicy { Error, Skip };

struct ColumnSelector {
  std::string path;
  /// Header name or 0-based index; unset picks the first numeric column.
  std::optional<std::string> column;
  MissingPolicy missing = MissingPolicy::Error;
};

/// RFC 4180 records: quoted fields may hold commas, doubled quotes and line
/// breaks. CRLF and LF are both accepted; a trailing newline ends the last
/// record instead of opening an empty one.
[[nodiscard]] std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Strict decimal parse (surrounding blanks and a leading '+' allowed).
[[nodiscard]] std::optional<double> parse_double(std::string_view cell);

/// Empty cells and NA / N/A / NaN spellings.
[[nodiscard]] bool is_missing_cell(std::string_view cell);

/// Reads one column. The first row is taken as a header when any of its
/// cells is neither numeric nor missing. Errors: FileNotFound,
/// ColumnNotFound, ParseError (1-based row and the column), EmptyAfterFilter.
[[nodiscard]] std::vector<double> load_column(const ColumnSelector& sel);
[[nodiscard]] Sample load_csv(const ColumnSelector& sel);

/// Shortest decimal string that parses back to the same double.
[[nodiscard]] std::string format_double(double x);
/// Quotes a CSV field when it contains a comma, quote or line break.
[[nodiscard]] std::string csv_field(std::string_view s);

[[nodiscard]] std::string shape_json(const ShapeSummary& s);
[[nodiscard]] std::string mad_curve_csv(const MadCurve& c);
[[nodiscard]] std::string cdf_csv(const CdfEstimate& e, const std::vector<ConfidencePoint>* ci = nullptr);
[[nodiscard]] std::string bench_csv(const BenchReport& r);
/// Config echo, seed, version and all cells. Thread count is left out since
/// it does not affect the numbers.
[[nodiscard]] std::string bench_json(const BenchReport& r);

struct Table1Row {
  std::string dist;
  ShapeSummary shape;
};
[[nodiscard]] std::vector<Table1Row> table1(std::size_t grid_n);
[[nodiscard]] std::string table1_csv(const std::vector<Table1Row>& rows);

/// Command-line entry point. Returns 0 on success, 1 on usage errors (usage
/// text goes to err), 2 when the data or configuration is rejected.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, const char* const* argv);

}  // namespace madcdf
