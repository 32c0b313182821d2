// latmass: nonfreeness verifier for symmetric Hilbert modular form algebras.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "latmass/bruinier.hpp"
#include "latmass/lfunction.hpp"
#include "latmass/report.hpp"

namespace {

using namespace latmass;
using nlohmann::json;

constexpr int kExitNotFree = 0;
constexpr int kExitFeasible = 1;
constexpr int kExitError = 2;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("latmass");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LATMASS_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

int cmd_verify(std::int64_t d, const std::string& format, Mode mode) {
  const auto spec = make_discriminant_spec(d);
  spdlog::info("verify d={} D={} residue={}", spec.d, spec.D, spec.residue);
  const auto record = make_record(verdict(spec, mode));
  if (format == "csv") {
    std::cout << csv_header() << '\n' << csv_row(record) << '\n';
  } else {
    std::cout << json(record).dump(2) << '\n';
  }
  return record.feasible() ? kExitFeasible : kExitNotFree;
}

int cmd_scan(std::int64_t lo, std::int64_t hi, const std::string& format, Mode mode, unsigned jobs) {
  spdlog::info("scan [{}, {}] mode={} jobs={}", lo, hi, to_string(mode), jobs);
  std::vector<ReportRecord> records;
  for (const auto& v : scan(lo, hi, mode, jobs)) records.push_back(make_record(v));
  const std::string summary = survivor_summary(records);
  if (format == "csv") {
    std::cout << csv_header() << '\n';
    for (const auto& r : records) std::cout << csv_row(r) << '\n';
    std::cout << "# " << summary << '\n';
  } else {
    json out = {{"records", records}, {"summary", summary}};
    std::cout << out.dump(2) << '\n';
  }
  return 0;
}

int cmd_prime_table(std::int64_t max_p, const std::string& format) {
  if (max_p < 5) throw std::invalid_argument("max_p must be >= 5");
  json rows = json::array();
  for (std::int64_t p = 5; p <= max_p; p += 4) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    const Rational z = compute_ldata(p).zetaKm1;
    const Rational K = K_prime(p);
    rows.push_back({{"p", p},
                    {"zetaKm1", z.str()},
                    {"K", K.str()},
                    {"integral", K.is_integer()},
                    {"admissible", K.is_integer() && K >= Rational(8)}});
  }
  if (format == "csv") {
    std::cout << "p,zetaKm1,K,integral,admissible\n";
    for (const auto& r : rows) {
      std::cout << r["p"].get<std::int64_t>() << ',' << r["zetaKm1"].get<std::string>() << ','
                << r["K"].get<std::string>() << ',' << (r["integral"].get<bool>() ? "true" : "false") << ','
                << (r["admissible"].get<bool>() ? "true" : "false") << '\n';
    }
  } else {
    std::cout << rows.dump(2) << '\n';
  }
  return 0;
}

int cmd_lvalue(std::int64_t D, const std::string& format) {
  const LData data = compute_ldata(D);
  const NumericL numeric = l_numeric(D, 2.0, 1'000'000);
  const double exact = data.q.to_double() * std::sqrt(static_cast<double>(D)) * M_PI * M_PI;
  json out = {{"D", D},
              {"B2chi", data.B2chi.str()},
              {"q", data.q.str()},
              {"zetaKm1", data.zetaKm1.str()},
              {"lvalue", render_lvalue(data)},
              {"numeric", numeric.value},
              {"residual", numeric.value - exact},
              {"error_bound", numeric.error_bound}};
  if (format == "csv") {
    std::cout << "D,B2chi,q,zetaKm1,lvalue,residual\n"
              << D << ',' << data.B2chi.str() << ',' << data.q.str() << ',' << data.zetaKm1.str() << ','
              << render_lvalue(data) << ',' << (numeric.value - exact) << '\n';
  } else {
    std::cout << out.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Exact verifier for nonfreeness of symmetric Hilbert modular form algebras over Q(sqrt d)"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string mode_name = "exact";
  unsigned jobs = 1;
  const std::set<std::string> formats{"json", "csv"};

  std::int64_t verify_d = 0;
  auto* verify = app.add_subcommand("verify", "Verdict, root inventory and L-data for one d");
  verify->add_option("d", verify_d, "square-free d >= 2")->required();
  verify->add_option("--format", format, "output format")->capture_default_str()->check(CLI::IsMember(formats));
  verify->add_option("--mode", mode_name, "exact: tabulated exact volumes where known; bound: closed-form bound everywhere")->capture_default_str()->check(CLI::IsMember({"bound", "exact"}));

  std::int64_t lo = 0, hi = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Verdicts for every square-free d in [min, max]");
  scan_cmd->add_option("min", lo, "smallest d")->required();
  scan_cmd->add_option("max", hi, "largest d")->required();
  scan_cmd->add_option("--format", format, "output format")->capture_default_str()->check(CLI::IsMember(formats));
  scan_cmd->add_option("--mode", mode_name, "exact: tabulated exact volumes where known; bound: closed-form bound everywhere")->capture_default_str()->check(CLI::IsMember({"bound", "exact"}));
  scan_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  std::int64_t max_p = 0;
  auto* table = app.add_subcommand("prime-table", "K = (p+3)/(12 zeta_K(-1)) for primes p = 1 (mod 4)");
  table->add_option("max_p", max_p, "largest prime to list")->required();
  table->add_option("--format", format, "output format")->capture_default_str()->check(CLI::IsMember(formats));

  std::int64_t lvalue_D = 0;
  auto* lvalue = app.add_subcommand("lvalue", "Exact L(2, chi_D) for a fundamental discriminant");
  lvalue->add_option("D", lvalue_D, "fundamental discriminant > 1")->required();
  lvalue->add_option("--format", format, "output format")->capture_default_str()->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    const Mode mode = mode_from_string(mode_name);
    if (*verify) return cmd_verify(verify_d, format, mode);
    if (*scan_cmd) return cmd_scan(lo, hi, format, mode, jobs);
    if (*table) return cmd_prime_table(max_p, format);
    if (*lvalue) return cmd_lvalue(lvalue_D, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
