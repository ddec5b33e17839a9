// hypenergy <suite> [options]: run one experiment suite and emit CSV or JSON.

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hypenergy/report_io.hpp"
#include "hypenergy/set_spec.hpp"
#include "hypenergy/suites.hpp"

using namespace hypenergy;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::vector<std::uint32_t> parse_primes(const std::string& text) {
  if (text.empty() || text == "default") return {};
  if (text == "grid") return kDefaultPrimes;
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    std::uint32_t p = 0;
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec != std::errc() || ptr != last)
      throw ConfigError(fmt::format("bad prime '{}' at position {}", std::string(first, last), start));
    out.push_back(p);
    start = end + 1;
  }
  return out;
}

std::optional<SetSpec> parse_optional_set(const std::string& flag, const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return parse_set_spec(text);
  } catch (const SetSpecError& e) {
    throw ConfigError(fmt::format("--{}: {}", flag, e.what()));
  }
}

void list_suites() {
  for (const auto& s : suite_registry()) {
    fmt::print("{:<18} {}\n", s.name, s.summary);
    fmt::print("{:<18} ops: {}\n", "", fmt::join(s.ops, ", "));
    if (!s.default_primes.empty())
      fmt::print("{:<18} primes: {}\n", "", fmt::join(s.default_primes, ","));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbola incidences, SL2 energies and Kloosterman forms: experiment runner"};
  std::string suite, prime, a, b, c, d, out, format = "csv";
  std::optional<std::int64_t> lambda;
  std::optional<double> envelope;
  std::uint64_t seed = 1;
  bool timing = false, list = false;

  app.add_option("suite", suite, "Suite name (see --list)");
  app.add_option("--prime,-p", prime, "A prime, a comma list, 'grid' or 'default'");
  app.add_option("--A", a, "Set description, e.g. interval:1..10");
  app.add_option("--B", b, "Set description");
  app.add_option("--C", c, "Set description");
  app.add_option("--D", d, "Set description");
  app.add_option("--lambda", lambda, "lambda (omega for prop-Re)");
  app.add_option("--seed", seed, "Master seed")->capture_default_str();
  app.add_option("--out,-o", out, "Output file (stdout when absent)");
  app.add_option("--format", format, "csv or json")->capture_default_str();
  app.add_option("--envelope", envelope, "Override the envelope of log-factor bounds");
  app.add_flag("--timing", timing, "Record wall time per row (breaks byte-stable output)");
  app.add_flag("--list", list, "List suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list) {
    list_suites();
    return 0;
  }

  std::vector<ExperimentRow> rows;
  OutputFormat fmt_kind{};
  try {
    if (suite.empty()) throw ConfigError("missing suite name (try --list)");
    fmt_kind = parse_output_format(format);
    SuiteConfig cfg;
    cfg.primes = parse_primes(prime);
    cfg.a = parse_optional_set("A", a);
    cfg.b = parse_optional_set("B", b);
    cfg.c = parse_optional_set("C", c);
    cfg.d = parse_optional_set("D", d);
    cfg.lambda = lambda;
    cfg.seed = seed;
    cfg.envelope = envelope;
    cfg.timing = timing;
    rows = run_suite(suite, cfg);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kExitConfig;
  }

  if (out.empty()) {
    write_rows(std::cout, rows, fmt_kind);
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      fmt::print(stderr, "configuration error: cannot open '{}'\n", out);
      return kExitConfig;
    }
    write_rows(file, rows, fmt_kind);
  }

  const auto failed = failed_rows(rows);
  if (failed.empty()) return 0;
  fmt::print(stderr, "{} of {} asserted rows failed:\n", failed.size(), rows.size());
  for (const auto* r : failed)
    fmt::print(stderr, "  {} {} p={} A={} B={} C={} D={} lambda={} lhs={} rhs={} ratio={} [{}]\n",
               r->suite, r->check, r->p, r->a, r->b, r->c, r->d, r->lambda, r->lhs, r->rhs,
               r->ratio, fmt::join(r->notes, "; "));
  return kExitFailure;
}
