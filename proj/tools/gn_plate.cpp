#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "gnplate/config.hpp"
#include "gnplate/csv.hpp"
#include "gnplate/errors.hpp"
#include "gnplate/experiments.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// The solver is single threaded, so the cap only has to be well formed.
bool threads_env_ok() {
  const char* raw = std::getenv("GN_PLATE_THREADS");
  if (raw == nullptr) return true;
  const std::string_view s(raw);
  if (s.empty()) return true;
  int n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 0) {
    std::cerr << "gn-plate: GN_PLATE_THREADS must be a nonnegative integer, got '" << s << "'\n";
    return false;
  }
  return true;
}

int cmd_run(const std::string& path, const std::string& out_override) {
  const gnplate::Config cfg = gnplate::load_config(path);
  const std::string out = out_override.empty() ? cfg.output.dir : out_override;
  const gnplate::ExperimentResult res = gnplate::run_experiment(cfg, out);
  for (const auto& row : res.rows) {
    std::cout << (row.pass ? "pass " : "FAIL ") << row.criterion << " = " << gnplate::format_double(row.value)
              << " (threshold " << row.threshold << ")\n";
  }
  std::cout << "wrote " << out << "/summary.csv\n";
  return res.passed() ? 0 : kExitFail;
}

int cmd_validate(const std::string& path) {
  const gnplate::Config cfg = gnplate::parse_config_unvalidated(gnplate::read_config_file(path));
  const gnplate::ValidationReport rep = gnplate::validate(cfg.material);
  for (const auto& c : rep.conditions) {
    std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << " margin " << gnplate::format_double(c.margin)
              << "\n";
  }
  std::cout << (rep.passed() ? "material admissible" : "material rejected: " + rep.failures()) << "\n";
  return rep.passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermoelastic-diffusion plate simulator and diagnostics"};
  app.require_subcommand(1);

  std::string run_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run the experiment named in a config file");
  run->add_option("config", run_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides [output] dir)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check the material parameters of a config file");
  validate->add_option("config", validate_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);
  if (!threads_env_ok()) return kExitUsage;

  try {
    if (*run) return cmd_run(run_path, out_dir);
    return cmd_validate(validate_path);
  } catch (const gnplate::Error& e) {
    std::cerr << "gn-plate: " << gnplate::to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "gn-plate: " << e.what() << "\n";
    return kExitUsage;
  }
}
