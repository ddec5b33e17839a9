#include "hypenergy/report_io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace hypenergy {

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError(fmt::format("unknown format '{}' (expected csv or json)", text));
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "suite", "check", "p",     "A",    "B",      "C",        "D",       "lambda", "lhs",
      "main_term", "rhs", "ratio", "exponent", "pass", "millis", "asserted", "notes"};
  return cols;
}

namespace {

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string number(double x) { return fmt::format("{}", x); }

std::string joined_notes(const ExperimentRow& r) { return fmt::format("{}", fmt::join(r.notes, "; ")); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << fmt::format("{}\n", fmt::join(report_columns(), ","));
  for (const auto& r : rows) {
    const std::string fields[] = {
        quote(r.suite),
        quote(r.check),
        std::to_string(r.p),
        quote(r.a),
        quote(r.b),
        quote(r.c),
        quote(r.d),
        quote(r.lambda),
        quote(r.lhs),
        quote(r.main_term),
        number(r.rhs),
        number(r.ratio),
        r.exponent ? number(*r.exponent) : std::string(),
        r.pass ? "true" : "false",
        number(r.millis),
        r.asserted ? "true" : "false",
        quote(joined_notes(r)),
    };
    out << fmt::format("{}\n", fmt::join(fields, ","));
  }
}

void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  auto num = [](double x) -> nlohmann::ordered_json {
    if (std::isfinite(x)) return x;
    return number(x);
  };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["suite"] = r.suite;
    o["check"] = r.check;
    o["p"] = r.p;
    o["A"] = r.a;
    o["B"] = r.b;
    o["C"] = r.c;
    o["D"] = r.d;
    o["lambda"] = r.lambda;
    o["lhs"] = r.lhs;
    o["main_term"] = r.main_term;
    o["rhs"] = num(r.rhs);
    o["ratio"] = num(r.ratio);
    o["exponent"] = r.exponent ? num(*r.exponent) : nlohmann::ordered_json(nullptr);
    o["pass"] = r.pass;
    o["millis"] = r.millis;
    o["asserted"] = r.asserted;
    o["notes"] = r.notes;
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

void write_rows(std::ostream& out, const std::vector<ExperimentRow>& rows, OutputFormat format) {
  if (format == OutputFormat::Csv) write_csv(out, rows);
  else write_json(out, rows);
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

}  // namespace hypenergy
