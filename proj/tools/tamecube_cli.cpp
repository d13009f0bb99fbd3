// tamecube: run verification suites, sample maps to CSV, print the report
// schema version.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tamecube/errors.hpp"
#include "tamecube/report.hpp"
#include "tamecube/retract.hpp"
#include "tamecube/sexpr.hpp"
#include "tamecube/suites.hpp"

namespace {

using namespace tamecube;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

// retraction:n:eps -> the default approximate retraction; an existing file
// -> its contents; anything else is map text.
SmoothMap resolve_map(const std::string& desc) {
  if (desc.rfind("retraction:", 0) == 0) {
    const auto rest = desc.substr(11);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw DomainError("expected retraction:<n>:<eps>");
    try {
      const int n = std::stoi(rest.substr(0, colon));
      const double eps = std::stod(rest.substr(colon + 1));
      return approx_retraction(RetractionParams::with_defaults(n, eps));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DomainError*>(&e)) throw;
      throw DomainError("bad retraction descriptor '" + desc + "'");
    }
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(desc, ec)) return parse_map(read_file(desc));
  return parse_map(desc);
}

void append_number(std::string& out, double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, ptr);
}

std::string sample_csv(const SmoothMap& f, int grid) {
  const int n = f.in_dim();
  const int m = f.out_dim();
  std::string out;
  for (int i = 0; i < n; ++i) out += (i ? ",t" : "t") + std::to_string(i + 1);
  for (int i = 0; i < m; ++i) out += (n + i ? ",y" : "y") + std::to_string(i + 1);
  out += '\n';
  std::vector<int> idx(n, 0);
  Point p(n);
  while (true) {
    for (int i = 0; i < n; ++i) p[i] = grid == 1 ? 0.0 : double(idx[i]) / (grid - 1);
    const auto y = f(p);
    bool first = true;
    for (double v : p) {
      if (!first) out += ',';
      append_number(out, v);
      first = false;
    }
    for (double v : y) {
      if (!first) out += ',';
      append_number(out, v);
      first = false;
    }
    out += '\n';
    int k = n - 1;
    while (k >= 0 && ++idx[k] == grid) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smash functions, tame maps and admissible replacement on cubes"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run a property suite and write a JSON report");
  std::string suite_help = "Suite name: all";
  for (const auto& s : suite_names()) suite_help += ", " + s;
  verify->add_option("--suite", cfg.suite, suite_help)->required();
  verify->add_option("--n", cfg.n, "Dimensions, comma separated")->delimiter(',');
  verify->add_option("--eps", cfg.eps, "Collar widths, comma separated")->delimiter(',');
  verify->add_option("--grid", cfg.tol.grid_res, "Samples per axis");
  verify->add_option("--eq-tol", cfg.tol.eq_tol, "Value equality tolerance");
  verify->add_option("--deriv-tol", cfg.tol.deriv_tol, "Finite-difference tolerance");
  verify->add_option("--seed", cfg.tol.seed, "Seed for random samples and generated maps");
  verify->add_option("--out", verify_out, "Report path (stdout when omitted)");

  std::string map_desc, sample_out;
  int grid = 11;
  auto* sample = app.add_subcommand("sample", "Evaluate a map on a grid and write CSV");
  sample->add_option("--map", map_desc, "Map file, inline map text, or retraction:<n>:<eps>")->required();
  sample->add_option("--grid", grid, "Samples per axis")->check(CLI::Range(1, 100000));
  sample->add_option("--out", sample_out, "CSV path (stdout when omitted)");

  auto* schema = app.add_subcommand("schema", "Print the report schema version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*schema) {
      std::cout << kReportSchemaVersion << '\n';
      return kExitPass;
    }
    if (*verify) {
      const auto results = run_suite(cfg);
      Json report = suite_report(cfg, results);
      report["generated_at"] = utc_now();
      const bool passed = report["passed"].get<bool>();
      write_output(verify_out, report.dump(2) + "\n");
      int failures = 0;
      for (const auto& r : results) failures += r.passed ? 0 : 1;
      std::cerr << cfg.suite << ": " << results.size() - failures << "/" << results.size()
                << " properties passed\n";
      for (const auto& r : results) {
        if (!r.passed) std::cerr << "  FAIL " << r.name << " " << r.params.dump() << " worst=" << r.worst << "\n";
      }
      return passed ? kExitPass : kExitFail;
    }
    if (*sample) {
      const SmoothMap f = resolve_map(map_desc);
      write_output(sample_out, sample_csv(f, grid));
      return kExitPass;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
