#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hypenergy/suites.hpp"

namespace hypenergy {

enum class OutputFormat { Csv, Json };

/// "csv" or "json"; throws ConfigError otherwise.
OutputFormat parse_output_format(std::string_view text);

/// Column order of both formats.
const std::vector<std::string>& report_columns();

/// RFC 4180 CSV with a header line; doubles use the shortest round-trip form.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
/// Array of objects keyed by report_columns().
void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_rows(std::ostream& out, const std::vector<ExperimentRow>& rows, OutputFormat format);

std::string to_csv(const std::vector<ExperimentRow>& rows);

}  // namespace hypenergy
