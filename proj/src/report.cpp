#include "paprsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "paprsim/errors.hpp"

namespace paprsim {

namespace fs = std::filesystem;

std::array<double, 5> reference_proposed_papr(ModScheme mod) noexcept {
  if (mod == ModScheme::qam4) return {4.199, 4.655, 5.201, 5.717, 6.254};
  return {4.204, 4.669, 5.181, 5.706, 6.213};
}

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

class CsvFile {
 public:
  explicit CsvFile(fs::path path) : path_(std::move(path)), os_(path_, std::ios::binary) {
    if (!os_) throw IoError("cannot open " + path_.string() + " for writing");
  }
  std::ostream& out() { return os_; }
  void close() {
    os_.flush();
    if (!os_) throw IoError("write failed: " + path_.string());
    os_.close();
  }

 private:
  fs::path path_;
  std::ofstream os_;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

std::string file_tag(const MethodResult& r) {
  return std::string(to_string(r.method)) + "_" + std::string(to_string(r.mod));
}

double slot_cr(const RunReport& rep, std::size_t s) {
  return s == 0 ? std::numeric_limits<double>::infinity() : rep.config.cr_list[s - 1];
}

double ber_at(const MethodResult* r, double cr, double ebn0) {
  if (!r) return std::numeric_limits<double>::quiet_NaN();
  for (const auto& b : r->ber)
    if (b.cr == cr && b.ebn0_db == ebn0) return b.ber();
  return std::numeric_limits<double>::quiet_NaN();
}

void write_filter_files(const BandpassDesign& design, const fs::path& dir) {
  {
    CsvFile f(dir / "filter_coeffs.csv");
    write_coefficients_csv(f.out(), design.cascade);
    f.close();
  }
  const double fsr = design.spec.fs;
  const std::size_t n = 2001;
  std::vector<double> freqs(n);
  for (std::size_t i = 0; i < n; ++i) freqs[i] = fsr / 2.0 * static_cast<double>(i) / (n - 1);
  const auto gains = magnitude_response(design.cascade, freqs, fsr);
  CsvFile f(dir / "filter_response.csv");
  write_response_csv(f.out(), freqs, gains);
  f.close();
}

}  // namespace

void write_filter_outputs(const BandpassDesign& design, const fs::path& dir) {
  ensure_dir(dir);
  write_filter_files(design, dir);
}

std::string reference_comparison(const RunReport& rep) {
  const std::vector<double> grid{0.8, 1.0, 1.2, 1.4, 1.6};
  if (rep.config.cr_list != grid) return {};
  std::ostringstream os;
  for (const auto& cal : rep.calibration) {
    const MethodResult* r = rep.find(Method::proposed, cal.mod);
    if (!r) continue;
    const auto ref = reference_proposed_papr(cal.mod);
    bool within = true;
    os << "reference_comparison " << to_string(cal.mod) << " (proposed, p = "
       << fmt_num(cal.probability) << ")\n";
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double got = r->papr_calibrated[i + 1];
      const double diff = got - ref[i];
      if (!(std::fabs(diff) <= kReferenceTolDb)) within = false;
      os << "  cr " << fmt_num(grid[i]) << ": simulated " << fmt_num(got) << " dB, reference "
         << fmt_num(ref[i]) << " dB, diff " << fmt_num(diff) << " dB\n";
    }
    if (within) {
      os << "  all values within " << fmt_num(kReferenceTolDb) << " dB of the reference\n";
    } else {
      os << "  DEVIATION: absolute values differ from the reference by more than "
         << fmt_num(kReferenceTolDb)
         << " dB; the reference does not state its CCDF reading level or measurement domain ("
         << "this run: papr_domain = " << to_string(rep.config.papr_domain) << ")\n";
    }
  }
  return os.str();
}

void write_outputs(const RunReport& rep, const fs::path& dir) {
  ensure_dir(dir);
  const auto& cfg = rep.config;

  for (const auto& r : rep.results) {
    {
      CsvFile f(dir / ("ccdf_" + file_tag(r) + ".csv"));
      auto& os = f.out();
      os << "cr,papr0_db,ccdf\n";
      for (std::size_t s = 0; s < r.curves.size(); ++s) {
        const auto& c = r.curves[s];
        const std::string cr = fmt_num(slot_cr(rep, s));
        for (std::size_t i = 0; i < c.probs.size(); ++i)
          os << cr << ',' << fmt_num(c.thresholds_db[i]) << ',' << fmt_num(c.probs[i]) << '\n';
      }
      f.close();
    }
    {
      CsvFile f(dir / ("ber_" + file_tag(r) + ".csv"));
      auto& os = f.out();
      os << "cr,ebn0_db,ber,errors,bits\n";
      for (const auto& b : r.ber)
        os << fmt_num(b.cr) << ',' << fmt_num(b.ebn0_db) << ',' << fmt_num(b.ber()) << ','
           << b.errors << ',' << b.bits << '\n';
      f.close();
    }
  }

  {
    CsvFile f(dir / "summary.csv");
    auto& os = f.out();
    os << "mod,cr,papr_existing_db,papr_proposed_db,improvement_db,ber_existing,ber_proposed\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (ModScheme mod : cfg.modulation) {
      const MethodResult* ex = rep.find(Method::existing, mod);
      const MethodResult* pr = rep.find(Method::proposed, mod);
      for (std::size_t s = 0; s < cfg.cr_list.size() + 1; ++s) {
        const double cr = slot_cr(rep, s);
        const double pe = ex ? ex->papr_at_prob[s] : nan;
        const double pp = pr ? pr->papr_at_prob[s] : nan;
        os << to_string(mod) << ',' << fmt_num(cr) << ',' << fmt_num(pe) << ',' << fmt_num(pp)
           << ',' << fmt_num(pe - pp) << ',' << fmt_num(ber_at(ex, cr, cfg.ber_table_ebn0_db))
           << ',' << fmt_num(ber_at(pr, cr, cfg.ber_table_ebn0_db)) << '\n';
      }
    }
    f.close();
  }

  write_filter_files(rep.filter, dir);

  CsvFile f(dir / "run_meta.txt");
  auto& os = f.out();
  os << "paprsim " << kVersion << '\n'
     << "seed = " << rep.seed << '\n'
     << "elapsed_s = " << fmt_num(rep.elapsed_s) << '\n'
     << "workers = " << rep.workers_used << '\n'
     << "filter_order = " << rep.filter.lowpass_spec.order << '\n'
     << "filter_sections = " << rep.filter.cascade.sections.size() << '\n'
     << "filter_max_pole_radius = " << fmt_num(rep.filter.cascade.max_pole_radius()) << '\n'
     << "ber_trials = " << rep.ber_trials << '\n'
     << "ebn0_definition = Eb = mean transmitted power * " << fmt_num(cfg.V)
     << " samples per constellation symbol / bits per symbol"
     << (cfg.ebn0_charge_cp ? ", scaled by (N + cp_len) / N for the cyclic prefix"
                            : "; cyclic prefix energy not charged")
     << "; N0 from real passband noise of variance N0/2\n";
  for (const auto& cal : rep.calibration) {
    os << "calibration " << to_string(cal.mod) << ": target " << fmt_num(cal.target_db)
       << " dB on the unclipped reference, p* = " << fmt_num(cal.probability)
       << (cal.beyond_tail ? " (target beyond observed tail; deepest resolvable level)" : "")
       << '\n';
  }
  os << reference_comparison(rep);
  os << "\n# configuration\n" << echo_config(cfg);
  f.close();
}

}  // namespace paprsim
