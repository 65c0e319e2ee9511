#include "gnplate/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "gnplate/errors.hpp"

namespace gnplate {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 7> kExperimentNames{{
    {ExperimentKind::type2_conservation, "type2_conservation"},
    {ExperimentKind::type3_decay, "type3_decay"},
    {ExperimentKind::spatial_decay, "spatial_decay"},
    {ExperimentKind::backward_uniqueness, "backward_uniqueness"},
    {ExperimentKind::forward_backward_roundtrip, "forward_backward_roundtrip"},
    {ExperimentKind::mms_convergence, "mms_convergence"},
    {ExperimentKind::resolvent_check, "resolvent_check"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    parse_fail(line, "key '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

int parse_int(std::string_view v, int line, std::string_view key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    parse_fail(line, "key '" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view v, int line, std::string_view key) {
  if (v == "true") return true;
  if (v == "false") return false;
  parse_fail(line, "key '" + std::string(key) + "' expects true or false");
}

// "a, b" -> two numbers.
std::pair<std::string_view, std::string_view> split_pair(std::string_view v, int line, std::string_view key) {
  const auto comma = v.find(',');
  if (comma == std::string_view::npos) {
    parse_fail(line, "key '" + std::string(key) + "' expects two comma-separated values");
  }
  return {trim(v.substr(0, comma)), trim(v.substr(comma + 1))};
}

using Setter = std::function<void(Config&, std::string_view value, int line)>;

struct Key {
  Setter set;
  bool required = false;
};

std::map<std::string, std::map<std::string, Key>> key_table() {
  std::map<std::string, std::map<std::string, Key>> t;

  auto material_number = [](std::string_view key, double MaterialParams::*field) {
    return Key{[key, field](Config& c, std::string_view v, int line) {
                 c.material.*field = parse_number(v, line, key);
               },
               true};
  };
  auto& mat = t["material"];
  mat["lambda"] = material_number("lambda", &MaterialParams::lambda);
  mat["mu"] = material_number("mu", &MaterialParams::mu);
  mat["d1"] = material_number("d1", &MaterialParams::d1);
  mat["d2"] = material_number("d2", &MaterialParams::d2);
  mat["c"] = material_number("c", &MaterialParams::c);
  mat["kappa"] = material_number("kappa", &MaterialParams::kappa);
  mat["r"] = material_number("r", &MaterialParams::r);
  mat["k1"] = material_number("k1", &MaterialParams::k1);
  mat["h1"] = material_number("h1", &MaterialParams::h1);
  mat["hbar1"] = material_number("hbar1", &MaterialParams::hbar1);
  mat["k2"] = material_number("k2", &MaterialParams::k2);
  mat["h2"] = material_number("h2", &MaterialParams::h2);
  mat["hbar2"] = material_number("hbar2", &MaterialParams::hbar2);
  mat["rho"] = material_number("rho", &MaterialParams::rho);
  mat["T0"] = material_number("T0", &MaterialParams::T0);
  mat["T0"].required = false;
  mat["h"] = material_number("h", &MaterialParams::half_thickness);
  mat["model_type"] = {[](Config& c, std::string_view v, int line) {
                         if (v == "TypeII") {
                           c.material.model_type = ModelType::TypeII;
                         } else if (v == "TypeIII") {
                           c.material.model_type = ModelType::TypeIII;
                         } else {
                           parse_fail(line, "model_type must be TypeII or TypeIII");
                         }
                       },
                       true};

  auto& grid = t["grid"];
  grid["Lx"] = {[](Config& c, std::string_view v, int l) { c.grid.Lx = parse_number(v, l, "Lx"); }, true};
  grid["Ly"] = {[](Config& c, std::string_view v, int l) { c.grid.Ly = parse_number(v, l, "Ly"); }, true};
  grid["nx"] = {[](Config& c, std::string_view v, int l) { c.grid.nx = parse_int(v, l, "nx"); }, true};
  grid["ny"] = {[](Config& c, std::string_view v, int l) { c.grid.ny = parse_int(v, l, "ny"); }, true};

  auto& time = t["time"];
  time["dt"] = {[](Config& c, std::string_view v, int l) { c.time.dt = parse_number(v, l, "dt"); }};
  time["t_end"] = {[](Config& c, std::string_view v, int l) { c.time.t_end = parse_number(v, l, "t_end"); }};
  time["snapshot_every"] = {
      [](Config& c, std::string_view v, int l) { c.time.snapshot_every = parse_int(v, l, "snapshot_every"); }};

  auto& exp = t["experiment"];
  exp["name"] = {[](Config& c, std::string_view v, int l) {
    c.experiment.kind = experiment_from_name(v);
    if (!c.experiment.kind) parse_fail(l, "unknown experiment '" + std::string(v) + "'");
  }};
  exp["asymptotic"] = {
      [](Config& c, std::string_view v, int l) { c.experiment.asymptotic = parse_bool(v, l, "asymptotic"); }};
  exp["decay_factor"] = {[](Config& c, std::string_view v, int l) {
    c.experiment.decay_factor = parse_number(v, l, "decay_factor");
  }};
  exp["t_min"] = {[](Config& c, std::string_view v, int l) { c.experiment.t_min = parse_number(v, l, "t_min"); }};
  exp["epsilon"] = {
      [](Config& c, std::string_view v, int l) { c.experiment.epsilon = parse_number(v, l, "epsilon"); }};

  auto& ic = t["ic"];
  ic["preset"] = {[](Config& c, std::string_view v, int l) {
    const auto p = ic_preset_from_name(v);
    if (!p) parse_fail(l, "unknown ic preset '" + std::string(v) + "'");
    c.ic.preset = *p;
  }};
  ic["target_field"] = {[](Config& c, std::string_view v, int l) {
    const auto comp = component_from_name(v);
    if (!comp) parse_fail(l, "unknown field '" + std::string(v) + "'");
    c.ic.target = *comp;
  }};
  ic["amplitude"] = {
      [](Config& c, std::string_view v, int l) { c.ic.amplitude = parse_number(v, l, "amplitude"); }};
  ic["center"] = {[](Config& c, std::string_view v, int l) {
    const auto [a, b] = split_pair(v, l, "center");
    c.ic.center_x = parse_number(a, l, "center");
    c.ic.center_y = parse_number(b, l, "center");
  }};
  ic["width"] = {[](Config& c, std::string_view v, int l) { c.ic.width = parse_number(v, l, "width"); }};
  ic["cutoff"] = {[](Config& c, std::string_view v, int l) { c.ic.cutoff = parse_number(v, l, "cutoff"); }};
  ic["mode_numbers"] = {[](Config& c, std::string_view v, int l) {
    const auto [a, b] = split_pair(v, l, "mode_numbers");
    c.ic.mode_m = parse_int(a, l, "mode_numbers");
    c.ic.mode_n = parse_int(b, l, "mode_numbers");
  }};

  auto& out = t["output"];
  out["dir"] = {[](Config& c, std::string_view v, int) { c.output.dir = std::string(v); }};
  out["write_snapshots"] = {[](Config& c, std::string_view v, int l) {
    c.output.write_snapshots = parse_bool(v, l, "write_snapshots");
  }};
  return t;
}

void check_ranges(const Config& c) {
  auto bad = [](const std::string& msg) { fail(ErrorCode::InvalidArgument, msg); };
  if (!(c.grid.Lx > 0.0) || !(c.grid.Ly > 0.0)) bad("grid lengths must be positive");
  if (c.grid.nx < 3 || c.grid.ny < 3) bad("grid needs nx, ny >= 3");
  if (!(c.time.dt > 0.0) || !(c.time.t_end >= 0.0)) bad("time step must be positive and t_end nonnegative");
  if (c.time.snapshot_every < 1) bad("snapshot_every must be at least 1");
  if (c.ic.preset == IcPreset::gaussian_bump && !(c.ic.width > 0.0)) bad("ic width must be positive");
  if (c.ic.preset == IcPreset::sine_mode && (c.ic.mode_m < 1 || c.ic.mode_n < 1)) {
    bad("ic mode numbers must be positive");
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ExperimentKind> experiment_from_name(std::string_view name) {
  for (const auto& [k, n] : kExperimentNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Config parse_config(std::string_view text) {
  Config cfg = parse_config_unvalidated(text);
  require_valid(cfg.material);
  return cfg;
}

Config parse_config_unvalidated(std::string_view text) {
  static const auto table = key_table();
  Config cfg;
  std::set<std::string> sections_seen;
  std::map<std::string, std::set<std::string>> seen;
  std::string section;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!table.count(section)) fail(ErrorCode::UnknownKey, "unknown section [" + section + "]");
      if (!sections_seen.insert(section).second) parse_fail(line_no, "duplicate section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) parse_fail(line_no, "key '" + key + "' outside any section");
    if (key.empty()) parse_fail(line_no, "empty key");
    if (value.empty()) parse_fail(line_no, "key '" + key + "' has no value");

    const auto& keys = table.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) fail(ErrorCode::UnknownKey, "unknown key '" + key + "' in [" + section + "]");
    if (!seen[section].insert(key).second) parse_fail(line_no, "duplicate key '" + key + "'");
    it->second.set(cfg, value, line_no);
  }

  for (const char* required : {"material", "grid"}) {
    if (!sections_seen.count(required)) {
      fail(ErrorCode::MissingRequired, "missing section [" + std::string(required) + "]");
    }
  }
  for (const auto& [sec, keys] : table) {
    if (!sections_seen.count(sec)) continue;
    for (const auto& [key, spec] : keys) {
      if (spec.required && !seen[sec].count(key)) {
        fail(ErrorCode::MissingRequired, "missing key '" + key + "' in [" + sec + "]");
      }
    }
  }
  check_ranges(cfg);
  return cfg;
}

std::string read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config load_config(const std::string& path) { return parse_config(read_config_file(path)); }

}  // namespace gnplate
