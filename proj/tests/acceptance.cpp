// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// hard criterion fails. Usage: acceptance <path-to-paprsim-cli> [workdir]
// ACCEPTANCE_ONLY=3,5 restricts the run to the listed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "paprsim/clipper.hpp"
#include "paprsim/elliptic.hpp"
#include "paprsim/experiment.hpp"
#include "paprsim/iir.hpp"
#include "paprsim/metrics.hpp"
#include "paprsim/report.hpp"
#include "paprsim/spectral.hpp"

using namespace paprsim;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double db(double g) { return 20.0 * std::log10(g); }

// ---- 1 -------------------------------------------------------------------

void criterion_fft() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::size_t n = 2; n <= 1024; n *= 2) {
    for (bool inverse : {false, true}) {
      const auto x = random_complex(n, 100 + n + inverse);
      std::vector<cplx> y = x;
      fft_inplace(y, inverse ? Direction::inverse : Direction::forward);
      const auto ref = naive_dft(x, inverse);
      worst = std::max(worst, max_abs_diff(y, ref) / max_abs(ref));
    }
  }
  const double t = seconds_since(t0);
  report(1, worst <= 1e-9 && t < 1.0,
         "max rel err " + fmt("%.3g", worst) + ", " + fmt("%.3f", t) + " s");
}

// ---- 2 -------------------------------------------------------------------

void criterion_design() {
  const BandpassSpec spec{};
  const auto d = design_elliptic_bandpass(spec);
  const auto& c = d.cascade;
  std::vector<double> freqs(10001);
  for (std::size_t i = 0; i < freqs.size(); ++i) freqs[i] = spec.fs / 2.0 * i / 10000.0;
  const auto g = magnitude_response(c, freqs, spec.fs);
  double pass_lo = 1e9, pass_hi = -1e9, stop_hi = -1e9;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] >= spec.pass.lo_hz && freqs[i] <= spec.pass.hi_hz) {
      pass_lo = std::min(pass_lo, g[i]);
      pass_hi = std::max(pass_hi, g[i]);
    }
    if (freqs[i] <= spec.stop.lo_hz || freqs[i] >= spec.stop.hi_hz) stop_hi = std::max(stop_hi, g[i]);
  }
  const double ripple = pass_hi - pass_lo;
  const double atten = -stop_hi;
  const double radius = c.max_pole_radius();

  const double eps = d.lowpass_spec.ripple_factor();
  const double want = 1.0 / std::sqrt(1.0 + eps * eps);
  const double got = std::abs(d.lowpass.response({0.0, d.lowpass.cutoff_rad}));
  const double formula = elliptic_gain(d.lowpass_spec, d.lowpass_spec.w0);
  const double gain_err = std::max(std::abs(got - want), std::abs(formula - want));

  const bool ok = ripple <= 0.55 && atten >= 39.95 && radius < 1.0 && gain_err <= 1e-6;
  report(2, ok,
         "order " + std::to_string(d.lowpass_spec.order) + ", ripple " + fmt("%.4f", ripple) +
             " dB, stopband " + fmt("%.3f", atten) + " dB, max |pole| " + fmt("%.6f", radius) +
             ", cutoff gain err " + fmt("%.2g", gain_err));
}

// ---- 3 -------------------------------------------------------------------

double chebyshev_t(int n, double x) {
  if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
  return std::cosh(n * std::acosh(std::abs(x))) * ((x < 0 && n % 2) ? -1.0 : 1.0);
}

double analog_db(const AnalogPrototype& p, double w) { return db(std::abs(p.response({0.0, w}))); }

double chebyshev_gap(int n, double rs_db) {
  const EllipticSpec s{n, 0.5, rs_db, 1.0};
  const auto p = design_elliptic_lowpass(s);
  const double eps = s.ripple_factor();
  double gap = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double w = i / 2000.0;
    const double t = chebyshev_t(n, w);
    gap = std::max(gap, std::abs(analog_db(p, w) - db(1.0 / std::sqrt(1.0 + eps * eps * t * t))));
  }
  return gap;
}

// Butterworth of the same order aligned on the -3 dB point, compared over
// [0, 2 w3].
double butterworth_gap(int n, double rp_db) {
  const EllipticSpec s{n, rp_db, 250.0, 1.0};
  const auto p = design_elliptic_lowpass(s);
  double lo = 1.0, hi = 1e6;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (analog_db(p, mid) > -10.0 * std::log10(2.0) ? lo : hi) = mid;
  }
  double gap = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double w = 2.0 * lo * i / 2000.0;
    const double ref = 1.0 / std::sqrt(1.0 + std::pow(w / lo, 2.0 * n));
    gap = std::max(gap, std::abs(analog_db(p, w) - db(ref)));
  }
  return gap;
}

// Each ripple is driven toward zero along a fixed sequence; the gap must
// shrink at every step and end below 0.1 dB. The Butterworth gap decays only
// like eps^(2/n), so higher orders need the deeper steps.
void criterion_limits() {
  bool ok = true;
  double cheb_last = 0.0, bw_last = 0.0;
  for (int n : {2, 3, 4, 5, 6}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double rs : {60.0, 100.0, 150.0, 200.0}) {
      const double g = chebyshev_gap(n, rs);
      ok = ok && g <= prev;
      prev = g;
    }
    ok = ok && prev < 0.1;
    cheb_last = std::max(cheb_last, prev);
  }
  for (int n : {2, 3, 4, 5}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double rp : {1e-6, 1e-8, 1e-10, 1e-12}) {
      const double g = butterworth_gap(n, rp);
      ok = ok && g <= prev;
      prev = g;
    }
    ok = ok && prev < 0.1;
    bw_last = std::max(bw_last, prev);
  }
  report(3, ok,
         "orders 2-6 Chebyshev-I gap " + fmt("%.3g", cheb_last) + " dB at rs 200, orders 2-5 "
         "Butterworth gap " + fmt("%.3g", bw_last) + " dB at rp 1e-12 / rs 250");
}

// ---- 4 -------------------------------------------------------------------

void criterion_papr(const fs::path& work) {
  SimulationConfig cfg;
  cfg.n_symbols = 100000;
  cfg.ebn0_list_db.clear();
  cfg.seed = 20240601;
  const auto t0 = Clock::now();
  const auto rep = run_scenario(cfg);
  const double t = seconds_since(t0);
  write_outputs(rep, work / "papr");

  bool inc = true, order = true, abs_ok = true;
  std::string detail;
  for (ModScheme mod : cfg.modulation) {
    const auto* ex = rep.find(Method::existing, mod);
    const auto* pr = rep.find(Method::proposed, mod);
    const auto ref = reference_proposed_papr(mod);
    double p_star = 0.0;
    for (const auto& cal : rep.calibration)
      if (cal.mod == mod) p_star = cal.probability;
    detail += std::string(to_string(mod)) + " p*=" + fmt("%.3g", p_star) + " [";
    for (std::size_t s = 1; s < ex->papr_calibrated.size(); ++s) {
      const double e = ex->papr_calibrated[s], p = pr->papr_calibrated[s];
      if (s > 1) {
        inc = inc && e > ex->papr_calibrated[s - 1] && p > pr->papr_calibrated[s - 1];
        detail += "; ";
      }
      const double imp = e - p;
      order = order && std::isfinite(imp) && imp >= 0.1 && imp <= 1.5;
      abs_ok = abs_ok && std::abs(p - ref[s - 1]) <= kReferenceTolDb;
      detail += fmt("%.2f", e) + "/" + fmt("%.2f", p);
    }
    detail += "] ";
  }
  detail += "(existing/proposed dB) ";
  detail += std::string("(a) ") + (inc ? "ok" : "no") + " (b) " + (order ? "ok" : "no") +
            " (c) " + (abs_ok ? "ok" : "no, deviation noted in run_meta") + ", " +
            fmt("%.0f", t) + " s";
  // (c) is advisory: the reading level is not pinned down, so only (a) and
  // (b) gate the result.
  report(4, inc && order, detail);
}

// ---- 5 -------------------------------------------------------------------

void criterion_ber_analytical() {
  SimulationConfig cfg;
  cfg.method = {Method::existing};
  cfg.modulation = {ModScheme::qpsk};
  cfg.cr_list = {1.0};
  cfg.n_symbols = 100;
  cfg.ebn0_list_db = {0.0, 2.0, 4.0, 6.0, 8.0};
  cfg.ber_bits = 1000000;
  cfg.seed = 77;
  const auto t0 = Clock::now();
  const auto rep = run_scenario(cfg);
  const double t = seconds_since(t0);

  bool ok = t < 120.0;
  int checked = 0;
  std::string detail;
  for (const auto& r : rep.find(Method::existing, ModScheme::qpsk)->ber) {
    if (!std::isinf(r.cr)) continue;
    ok = ok && r.bits >= 1000000;
    const double a = analytical_ber(ModScheme::qpsk, r.ebn0_db);
    if (a * static_cast<double>(r.bits) < 1000.0) continue;
    const double rel = std::abs(r.ber() - a) / a;
    ok = ok && rel <= 0.10;
    ++checked;
    detail += fmt("%g dB: ", r.ebn0_db) + fmt("%.4g", r.ber()) + " vs " + fmt("%.4g", a) + ", ";
  }
  ok = ok && checked > 0;
  report(5, ok, detail + std::to_string(rep.ber_trials * 2 * cfg.U) + " bits/point, " +
                    fmt("%.1f", t) + " s");
}

// ---- 6 -------------------------------------------------------------------

void criterion_ber_ordering() {
  SimulationConfig cfg;
  cfg.n_symbols = 100;
  cfg.ebn0_list_db = {2.0, 4.0};
  cfg.ber_bits = 200000;
  cfg.seed = 91;
  const auto rep = run_scenario(cfg);

  bool mono = true, above = true;
  std::string detail;
  const std::size_t n_e = cfg.ebn0_list_db.size();
  for (const auto& r : rep.results) {
    for (std::size_t e = 0; e < n_e; ++e) {
      const double unclipped = r.ber[e].ber();
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t s = 1; s <= cfg.cr_list.size(); ++s) {
        const double b = r.ber[s * n_e + e].ber();
        mono = mono && b <= prev;
        above = above && b >= unclipped;
        prev = b;
      }
      if (e == 0) {
        detail += std::string(to_string(r.method)) + "/" + std::string(to_string(r.mod)) + " " +
                  fmt("%.4f", r.ber[n_e].ber()) + "->" +
                  fmt("%.4f", r.ber[cfg.cr_list.size() * n_e].ber()) + " (unclipped " +
                  fmt("%.4f", unclipped) + "), ";
      }
    }
  }
  report(6, mono && above,
         "at 2 dB " + detail + "non-increasing " + (mono ? "yes" : "no") + ", clipped >= unclipped " +
             (above ? "yes" : "no"));
}

// ---- 7 -------------------------------------------------------------------

void criterion_clipper() {
  const auto x = random_complex(100000, 7);
  const ComplexSequence s(x, 1.0);
  const double j = clip_level(0.8, s).level;
  const auto once = clip_baseband(s, j);
  const bool idem = clip_baseband(once, j).samples() == once.samples();
  double peak = 0.0, phase = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    peak = std::max(peak, std::abs(once[i]));
    double d = std::abs(std::arg(once[i]) - std::arg(x[i]));
    d = std::min(d, 2.0 * std::numbers::pi - d);
    phase = std::max(phase, d);
  }

  std::vector<cplx> re(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) re[i] = x[i].real();
  const ComplexSequence r(re, 1.0);
  const double p = clip_level(1.0, r).level;
  const auto ponce = clip_passband(r, p);
  const bool pidem = clip_passband(ponce, p).samples() == ponce.samples();
  double ppeak = 0.0;
  bool sign_ok = true;
  for (std::size_t i = 0; i < re.size(); ++i) {
    ppeak = std::max(ppeak, std::abs(ponce[i].real()));
    sign_ok = sign_ok && (ponce[i].real() == 0.0 || (ponce[i].real() > 0) == (re[i].real() > 0));
  }

  const bool ok = idem && peak <= j && phase <= 1e-12 && pidem && ppeak <= p && sign_ok;
  report(7, ok,
         std::string("idempotent ") + (idem && pidem ? "yes" : "no") + ", peak/level " +
             fmt("%.17g", peak / j) + ", max phase err " + fmt("%.3g", phase) +
             ", passband peak/level " + fmt("%.17g", ppeak / p));
}

// ---- 8 -------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_determinism(const std::string& cli, const fs::path& work) {
  auto run = [&](int workers, const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" simulate --seed 4242 --symbols 2000 --ebn0 0,4 --set ber_bits=20000" +
                            " --workers " + std::to_string(workers) + " --out \"" + out.string() +
                            "\" > /dev/null";
    return std::system(cmd.c_str());
  };
  const fs::path a = work / "det_w1", b = work / "det_w4", c = work / "det_w1b";
  const int rc = run(1, a) | run(4, b) | run(1, c);
  if (rc != 0) {
    report(8, false, "simulate exited with status " + std::to_string(rc));
    return;
  }
  int files = 0, diffs = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    if (e.path().extension() != ".csv") continue;
    ++files;
    const auto name = e.path().filename();
    const auto ref = slurp(e.path());
    if (!fs::exists(b / name) || slurp(b / name) != ref) ++diffs;
    if (!fs::exists(c / name) || slurp(c / name) != ref) ++diffs;
  }
  report(8, files > 0 && diffs == 0,
         std::to_string(files) + " CSV files compared across workers 1/4 and a rerun, " +
             std::to_string(diffs) + " differ");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <paprsim-cli> [workdir]\n");
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "paprsim_acceptance";
  fs::create_directories(work);

  const char* only = std::getenv("ACCEPTANCE_ONLY");
  auto guarded = [only](int id, auto&& fn) {
    if (only && std::string(",") .append(only).append(",").find("," + std::to_string(id) + ",") ==
                    std::string::npos)
      return;
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  };
  guarded(1, criterion_fft);
  guarded(2, criterion_design);
  guarded(3, criterion_limits);
  guarded(4, [&] { criterion_papr(work); });
  guarded(5, criterion_ber_analytical);
  guarded(6, criterion_ber_ordering);
  guarded(7, criterion_clipper);
  guarded(8, [&] { criterion_determinism(cli, work); });

  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
