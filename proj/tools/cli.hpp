#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uwofdm/experiment.hpp"

namespace uwofdm::cli {

/// Everything the command line resolves to before running: the sweep spec,
/// where the CSV goes, and how chatty to be.
struct Invocation {
    ExperimentSpec spec;
    std::string output_path = "./results.csv";
    bool verbose = false;
};

/// Round-trip-exact decimal rendering of a double (shortest form).
std::string format_number(double value);

/// Parses a double, accepting "inf"/"nan" spellings; throws
/// std::invalid_argument on malformed input.
double parse_number(const std::string& text);

/// Parses flat `key = value` text: one pair per line, `#` starts a comment,
/// blank lines ignored. Returns pairs in file order.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

/// Applies one configuration key to an ExperimentSpec; throws
/// std::invalid_argument for unknown keys or unparseable values. Keys match
/// the CSV header echo.
void apply_config_entry(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Loads a config file and applies every entry.
void apply_config_file(ExperimentSpec& spec, const std::string& path);

/// Fills an ExperimentSpec with one of the three canned experiments
/// ("fig2", "fig3", "fig4").
void apply_preset(ExperimentSpec& spec, std::string_view name);

/// Writes the `#`-prefixed self-describing header: tool version, bit mapping,
/// and every effective parameter as a `key = value` line, then the column
/// names.
void write_csv_header(std::ostream& out, const ExperimentSpec& spec);

/// Writes one data row in the fixed column order.
void write_csv_row(std::ostream& out, const ExperimentSpec& spec, const BerRecord& record);

/// Result of argument parsing: either an Invocation to run, or an exit code
/// to return right away (--help, flag errors; diagnostics already printed).
struct ParseResult {
    std::optional<Invocation> invocation;
    int exit_code = 0;
};

/// Parses argv. Precedence: defaults, then --preset, then --config, then
/// explicit flags. Semantic errors (bad values, unknown keys) throw
/// std::invalid_argument.
ParseResult parse_arguments(int argc, const char* const* argv);

/// Full front end: parse, run the sweep, stream rows to the output file.
/// Returns the process exit code.
int run(int argc, const char* const* argv);

} // namespace uwofdm::cli
