#include "paprsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "paprsim/errors.hpp"

namespace paprsim {

std::string_view to_string(Method m) noexcept {
  return m == Method::existing ? "existing" : "proposed";
}

std::string_view to_string(PaprDomain d) noexcept {
  return d == PaprDomain::baseband ? "baseband" : "passband";
}

std::string_view to_string(ProposedMode m) noexcept {
  return m == ProposedMode::replace ? "replace" : "chain";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("config key '" + std::string(key) + "': " + std::string(why) + " (got '" +
                    std::string(value) + "')");
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  // strtod accepts exponents like 8e6 and keeps us locale-independent enough
  // for plain numbers.
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    bad_value(key, text, "expected a finite number");
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    bad_value(key, text, "expected an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  bad_value(key, text, "expected true or false");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

BandEdges parse_edges(std::string_view key, std::string_view text) {
  const auto v = parse_double_list(key, text);
  if (v.size() != 2) bad_value(key, text, "expected two comma-separated frequencies");
  return {v[0], v[1]};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    if (item.empty()) bad_value(key, text, "empty list element");
    out.push_back(parse_double(key, item));
  }
  return out;
}

BandpassSpec SimulationConfig::bandpass() const {
  BandpassSpec s;
  s.fs = fs;
  s.pass = pass_edges.value_or(BandEdges{fc - bw / 2.0, fc + bw / 2.0});
  s.stop = stop_edges.value_or(BandEdges{fc - 0.75 * bw, fc + 0.75 * bw});
  s.rp_db = rp_db;
  s.rs_db = rs_db;
  s.order = filter_order;
  return s;
}

void apply_setting(SimulationConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = trim(raw_key);
  if (key == "U") {
    cfg.U = parse_int<std::size_t>(key, value);
  } else if (key == "V") {
    cfg.V = parse_int<int>(key, value);
  } else if (key == "fs") {
    cfg.fs = parse_double(key, value);
  } else if (key == "fc") {
    cfg.fc = parse_double(key, value);
  } else if (key == "bw") {
    cfg.bw = parse_double(key, value);
  } else if (key == "cp_len") {
    cfg.cp_len = parse_int<std::size_t>(key, value);
  } else if (key == "cr_list") {
    cfg.cr_list = parse_double_list(key, value);
  } else if (key == "modulation") {
    const std::string v = lower(trim(value));
    if (v == "both") {
      cfg.modulation = {ModScheme::qpsk, ModScheme::qam4};
    } else {
      try {
        cfg.modulation = {parse_mod_scheme(v)};
      } catch (const std::invalid_argument&) {
        bad_value(key, value, "expected qpsk, qam4 or both");
      }
    }
  } else if (key == "method") {
    const std::string v = lower(trim(value));
    if (v == "both") cfg.method = {Method::existing, Method::proposed};
    else if (v == "existing") cfg.method = {Method::existing};
    else if (v == "proposed") cfg.method = {Method::proposed};
    else bad_value(key, value, "expected existing, proposed or both");
  } else if (key == "n_symbols") {
    cfg.n_symbols = parse_int<std::size_t>(key, value);
  } else if (key == "ebn0_list_db") {
    cfg.ebn0_list_db = parse_double_list(key, value);
  } else if (key == "ccdf_prob") {
    cfg.ccdf_prob = parse_double(key, value);
  } else if (key == "seed") {
    const std::string v = lower(trim(value));
    if (v == "random") {
      cfg.seed_random = true;
      cfg.seed.reset();
    } else {
      cfg.seed = parse_int<std::uint64_t>(key, value);
      cfg.seed_random = false;
    }
  } else if (key == "filter_order") {
    cfg.filter_order = parse_int<int>(key, value);
  } else if (key == "rp_db") {
    cfg.rp_db = parse_double(key, value);
  } else if (key == "rs_db") {
    cfg.rs_db = parse_double(key, value);
  } else if (key == "pass_edges") {
    cfg.pass_edges = parse_edges(key, value);
  } else if (key == "stop_edges") {
    cfg.stop_edges = parse_edges(key, value);
  } else if (key == "out_dir") {
    cfg.out_dir = trim(value);
  } else if (key == "ber_bits") {
    cfg.ber_bits = parse_int<std::size_t>(key, value);
  } else if (key == "ber_table_ebn0_db") {
    cfg.ber_table_ebn0_db = parse_double(key, value);
  } else if (key == "papr_domain") {
    const std::string v = lower(trim(value));
    if (v == "baseband") cfg.papr_domain = PaprDomain::baseband;
    else if (v == "passband") cfg.papr_domain = PaprDomain::passband;
    else bad_value(key, value, "expected baseband or passband");
  } else if (key == "proposed_mode") {
    const std::string v = lower(trim(value));
    if (v == "replace") cfg.proposed_mode = ProposedMode::replace;
    else if (v == "chain") cfg.proposed_mode = ProposedMode::chain;
    else bad_value(key, value, "expected replace or chain");
  } else if (key == "ebn0_charge_cp") {
    cfg.ebn0_charge_cp = parse_bool(key, value);
  } else if (key == "workers") {
    cfg.workers = parse_int<int>(key, value);
  } else if (key == "ccdf_step_db") {
    cfg.ccdf_step_db = parse_double(key, value);
  } else if (key == "ccdf_max_db") {
    cfg.ccdf_max_db = parse_double(key, value);
  } else if (key == "calibration_papr_db") {
    cfg.calibration_papr_db = parse_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void SimulationConfig::validate() const {
  auto fail = [](std::string_view key, const std::string& why) {
    throw ConfigError("config key '" + std::string(key) + "': " + why);
  };
  if (U < 2 || !is_power_of_two(U)) fail("U", "must be a power of two >= 2");
  if (V < 1 || !is_power_of_two(static_cast<std::size_t>(V)))
    fail("V", "must be a power of two >= 1");
  if (!(fs > 0.0)) fail("fs", "must be > 0");
  if (!(fc > 0.0) || !(fc < fs / 2.0)) fail("fc", "must lie in (0, fs/2)");
  if (!(bw > 0.0) || !(fc - bw / 2.0 > 0.0) || !(fc + bw / 2.0 < fs / 2.0))
    fail("bw", "band fc +- bw/2 must lie inside (0, fs/2)");
  if (cp_len >= U * static_cast<std::size_t>(V)) fail("cp_len", "must be smaller than U*V");
  if (cr_list.empty()) fail("cr_list", "must not be empty");
  for (double cr : cr_list)
    if (!(cr > 0.0)) fail("cr_list", "clipping ratios must be > 0");
  if (modulation.empty()) fail("modulation", "must not be empty");
  if (method.empty()) fail("method", "must not be empty");
  if (n_symbols == 0) fail("n_symbols", "must be >= 1");
  if (!(ccdf_prob > 0.0 && ccdf_prob < 1.0)) fail("ccdf_prob", "must lie in (0, 1)");
  if (filter_order < 0) fail("filter_order", "must be >= 0 (0 selects the minimum order)");
  if (!(rp_db > 0.0)) fail("rp_db", "must be > 0");
  if (!(rs_db > rp_db)) fail("rs_db", "must exceed rp_db");
  if (ber_bits == 0) fail("ber_bits", "must be >= 1");
  if (workers < 0) fail("workers", "must be >= 0");
  if (!(ccdf_step_db > 0.0)) fail("ccdf_step_db", "must be > 0");
  if (!(ccdf_max_db > 0.0)) fail("ccdf_max_db", "must be > 0");
  const auto bp = bandpass();
  try {
    equivalent_lowpass_stop_ratio(bp.pass, bp.stop, fs);
  } catch (const std::invalid_argument& e) {
    fail(pass_edges || stop_edges ? "stop_edges" : "bw", e.what());
  }
}

SimulationConfig load_config(const std::optional<std::filesystem::path>& file,
                             const std::vector<std::pair<std::string, std::string>>& overrides) {
  SimulationConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot read config file '" + file->string() + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(file->string() + ":" + std::to_string(lineno) +
                          ": expected 'key = value'");
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
  }
  for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
  if (cfg.seed_random && !cfg.seed) {
    std::random_device rd;
    cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  cfg.validate();
  return cfg;
}

std::string echo_config(const SimulationConfig& cfg) {
  std::ostringstream os;
  const auto bp = cfg.bandpass();
  os << "U = " << cfg.U << '\n'
     << "V = " << cfg.V << '\n'
     << "fs = " << fmt(cfg.fs) << '\n'
     << "fc = " << fmt(cfg.fc) << '\n'
     << "bw = " << fmt(cfg.bw) << '\n'
     << "cp_len = " << cfg.cp_len << '\n'
     << "cr_list = " << join(cfg.cr_list) << '\n';
  os << "modulation = "
     << (cfg.modulation.size() == 2 ? std::string("both") : std::string(to_string(cfg.modulation[0])))
     << '\n';
  os << "method = "
     << (cfg.method.size() == 2 ? std::string("both") : std::string(to_string(cfg.method[0])))
     << '\n';
  os << "n_symbols = " << cfg.n_symbols << '\n'
     << "ebn0_list_db = " << join(cfg.ebn0_list_db) << '\n'
     << "ccdf_prob = " << fmt(cfg.ccdf_prob) << '\n';
  if (cfg.seed) os << "seed = " << *cfg.seed << '\n';
  os << "filter_order = " << cfg.filter_order << '\n'
     << "rp_db = " << fmt(cfg.rp_db) << '\n'
     << "rs_db = " << fmt(cfg.rs_db) << '\n'
     << "pass_edges = " << fmt(bp.pass.lo_hz) << ',' << fmt(bp.pass.hi_hz) << '\n'
     << "stop_edges = " << fmt(bp.stop.lo_hz) << ',' << fmt(bp.stop.hi_hz) << '\n'
     << "out_dir = " << cfg.out_dir << '\n'
     << "ber_bits = " << cfg.ber_bits << '\n'
     << "ber_table_ebn0_db = " << fmt(cfg.ber_table_ebn0_db) << '\n'
     << "papr_domain = " << to_string(cfg.papr_domain) << '\n'
     << "proposed_mode = " << to_string(cfg.proposed_mode) << '\n'
     << "ebn0_charge_cp = " << (cfg.ebn0_charge_cp ? "true" : "false") << '\n'
     << "ccdf_step_db = " << fmt(cfg.ccdf_step_db) << '\n'
     << "ccdf_max_db = " << fmt(cfg.ccdf_max_db) << '\n'
     << "calibration_papr_db = " << fmt(cfg.calibration_papr_db) << '\n';
  return os.str();
}

}  // namespace paprsim
