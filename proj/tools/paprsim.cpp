#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "paprsim/config.hpp"
#include "paprsim/errors.hpp"
#include "paprsim/experiment.hpp"
#include "paprsim/report.hpp"

using namespace paprsim;

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct CommonArgs {
  std::string config;
  std::vector<std::string> sets;
  std::string method, mod, cr, ebn0, seed, out;
  std::optional<std::size_t> symbols;
  std::optional<int> workers;
  bool serial = false;
};

void add_common(CLI::App* app, CommonArgs& a, bool with_ebn0) {
  app->add_option("--config", a.config, "key = value configuration file")->check(CLI::ExistingFile);
  app->add_option("--method", a.method, "existing | proposed | both");
  app->add_option("--mod", a.mod, "qpsk | qam4 | both");
  app->add_option("--cr", a.cr, "clipping ratios, comma separated");
  app->add_option("--symbols", a.symbols, "OFDM symbols per PAPR estimate");
  if (with_ebn0) app->add_option("--ebn0", a.ebn0, "Eb/N0 points in dB, comma separated");
  app->add_option("--seed", a.seed, "master seed, or 'random'");
  app->add_option("--out", a.out, "output directory");
  app->add_option("--workers", a.workers, "OpenMP threads (0: default)");
  app->add_option("--set", a.sets, "extra key=value setting (repeatable)");
  app->add_flag("--serial", a.serial, "use the serial reference kernels");
}

Overrides collect(const CommonArgs& a) {
  Overrides ov;
  for (const auto& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    ov.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  auto put = [&ov](const char* key, const std::string& v) {
    if (!v.empty()) ov.emplace_back(key, v);
  };
  put("method", a.method);
  put("modulation", a.mod);
  put("cr_list", a.cr);
  put("ebn0_list_db", a.ebn0);
  put("seed", a.seed);
  put("out_dir", a.out);
  if (a.symbols) ov.emplace_back("n_symbols", std::to_string(*a.symbols));
  if (a.workers) ov.emplace_back("workers", std::to_string(*a.workers));
  return ov;
}

std::optional<std::filesystem::path> config_path(const std::string& p) {
  if (p.empty()) return std::nullopt;
  return std::filesystem::path(p);
}

void print_summary(const RunReport& rep) {
  std::printf("filter: elliptic order %d, %zu sections, max pole radius %.6f\n",
              rep.filter.lowpass_spec.order, rep.filter.cascade.sections.size(),
              rep.filter.cascade.max_pole_radius());
  for (const auto& cal : rep.calibration) {
    std::printf("%s: calibrated p* = %g%s\n", std::string(to_string(cal.mod)).c_str(),
                cal.probability, cal.beyond_tail ? " (deepest resolvable)" : "");
  }
  std::printf("%-6s %-9s %-6s %12s %12s\n", "mod", "method", "cr", "papr@p", "papr@p*");
  for (const auto& r : rep.results) {
    for (std::size_t s = 0; s < r.papr_at_prob.size(); ++s) {
      const double cr = s == 0 ? INFINITY : rep.config.cr_list[s - 1];
      std::printf("%-6s %-9s %-6s %12s %12s\n", std::string(to_string(r.mod)).c_str(),
                  std::string(to_string(r.method)).c_str(), fmt_num(cr).c_str(),
                  fmt_num(r.papr_at_prob[s]).c_str(), fmt_num(r.papr_calibrated[s]).c_str());
    }
  }
  std::printf("elapsed %.2f s on %d worker(s)\n", rep.elapsed_s, rep.workers_used);
}

int run_simulation(const CommonArgs& a, bool papr_only) {
  auto cfg = load_config(config_path(a.config), collect(a));
  if (papr_only) cfg.ebn0_list_db.clear();
  if (!cfg.seed)
    throw ConfigError("config key 'seed': --seed is required (use --seed random for a fresh one)");
  const auto rep = run_scenario(cfg, !a.serial);
  write_outputs(rep, cfg.out_dir);
  print_summary(rep);
  std::printf("wrote %s\n", cfg.out_dir.c_str());
  return 0;
}

struct FilterArgs {
  std::string config, pass, stop, out;
  std::optional<double> rp, rs, fs;
  std::optional<int> order;
};

int run_design(const FilterArgs& a) {
  Overrides ov;
  if (a.rp) ov.emplace_back("rp_db", fmt_num(*a.rp));
  if (a.rs) ov.emplace_back("rs_db", fmt_num(*a.rs));
  if (a.fs) ov.emplace_back("fs", fmt_num(*a.fs));
  if (a.order) ov.emplace_back("filter_order", std::to_string(*a.order));
  if (!a.pass.empty()) ov.emplace_back("pass_edges", a.pass);
  if (!a.stop.empty()) ov.emplace_back("stop_edges", a.stop);
  if (!a.out.empty()) ov.emplace_back("out_dir", a.out);
  const auto cfg = load_config(config_path(a.config), ov);
  const auto design = design_elliptic_bandpass(cfg.bandpass());
  write_filter_outputs(design, cfg.out_dir);
  const auto& lp = design.lowpass_spec;
  std::printf("elliptic bandpass: order %d (lowpass prototype), %zu sections\n", lp.order,
              design.cascade.sections.size());
  std::printf("pass %s-%s Hz, stop %s-%s Hz, rp %s dB, rs %s dB, fs %s Hz\n",
              fmt_num(design.spec.pass.lo_hz).c_str(), fmt_num(design.spec.pass.hi_hz).c_str(),
              fmt_num(design.spec.stop.lo_hz).c_str(), fmt_num(design.spec.stop.hi_hz).c_str(),
              fmt_num(design.spec.rp_db).c_str(), fmt_num(design.spec.rs_db).c_str(),
              fmt_num(design.spec.fs).c_str());
  std::printf("max pole radius %.9f\n", design.cascade.max_pole_radius());
  std::printf("wrote %s\n", cfg.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM clipping-and-filtering PAPR simulator"};
  app.require_subcommand(1);

  CommonArgs sim_args, papr_args;
  auto* sim = app.add_subcommand("simulate", "PAPR and BER experiment");
  add_common(sim, sim_args, true);
  auto* papr = app.add_subcommand("papr", "PAPR CCDF only, no BER");
  add_common(papr, papr_args, false);

  FilterArgs fa;
  auto* design = app.add_subcommand("design-filter", "design the elliptic bandpass and export it");
  design->add_option("--config", fa.config, "key = value configuration file")
      ->check(CLI::ExistingFile);
  design->add_option("--rp-db", fa.rp, "passband ripple in dB");
  design->add_option("--rs-db", fa.rs, "stopband attenuation in dB");
  design->add_option("--pass-edges", fa.pass, "lo,hi passband edges in Hz");
  design->add_option("--stop-edges", fa.stop, "lo,hi stopband edges in Hz");
  design->add_option("--fs", fa.fs, "sample rate in Hz");
  design->add_option("--order", fa.order, "prototype order (0: smallest meeting the spec)");
  design->add_option("--out", fa.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*sim) return run_simulation(sim_args, false);
    if (*papr) return run_simulation(papr_args, true);
    return run_design(fa);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const DesignError& e) {
    std::fprintf(stderr, "design error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
