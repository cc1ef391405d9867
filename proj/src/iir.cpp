#include "paprsim/iir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "paprsim/errors.hpp"

namespace paprsim {

namespace {

double section_pole_radius(const Biquad& s) {
  // Roots of z^2 + a1 z + a2.
  const cplx disc = std::sqrt(cplx{s.a1 * s.a1 - 4.0 * s.a2, 0.0});
  const cplx r1 = (-s.a1 + disc) / 2.0;
  const cplx r2 = (-s.a1 - disc) / 2.0;
  return std::max(std::abs(r1), std::abs(r2));
}

// Splits roots into conjugate pairs (represented by their upper member) and
// leftover real roots.
struct RootGroups {
  std::vector<cplx> upper;
  std::vector<double> real;
};

RootGroups group_roots(const std::vector<cplx>& roots) {
  RootGroups g;
  for (const auto& r : roots) {
    const double tol = 1e-9 * std::max(1.0, std::abs(r));
    if (std::abs(r.imag()) <= tol)
      g.real.push_back(r.real());
    else if (r.imag() > 0.0)
      g.upper.push_back(r);
  }
  if (2 * g.upper.size() + g.real.size() != roots.size())
    throw DesignError("bilinear: roots do not form conjugate pairs");
  std::sort(g.real.begin(), g.real.end());
  return g;
}

// Quadratic (1, c1, c2) factors; a lone real root gives (1, -r, 0).
std::vector<std::array<double, 2>> quadratic_factors(const RootGroups& g) {
  std::vector<std::array<double, 2>> out;
  for (const auto& r : g.upper) out.push_back({-2.0 * r.real(), std::norm(r)});
  for (std::size_t i = 0; i + 1 < g.real.size(); i += 2)
    out.push_back({-(g.real[i] + g.real[i + 1]), g.real[i] * g.real[i + 1]});
  if (g.real.size() % 2 == 1) out.push_back({-g.real.back(), 0.0});
  return out;
}

cplx section_response(const Biquad& s, cplx zinv) {
  return (s.b0 + zinv * (s.b1 + zinv * s.b2)) / (1.0 + zinv * (s.a1 + zinv * s.a2));
}

}  // namespace

double BiquadCascade::max_pole_radius() const {
  double r = 0.0;
  for (const auto& s : sections) r = std::max(r, section_pole_radius(s));
  return r;
}

BiquadCascade bilinear(const AnalogPrototype& proto, double fs) {
  if (!(fs > 0.0)) throw std::invalid_argument("bilinear: fs must be > 0");
  for (double f : proto.critical_hz)
    if (!(f < fs / 2.0))
      throw std::invalid_argument("bilinear: critical frequency " + std::to_string(f) +
                                  " Hz is not below fs/2");
  if (proto.zeros.size() > proto.poles.size())
    throw std::invalid_argument("bilinear: improper prototype (more zeros than poles)");
  const double c = 2.0 * fs;

  std::vector<cplx> zd, pd;
  cplx k{proto.gain, 0.0};
  for (const auto& z : proto.zeros) {
    zd.push_back((c + z) / (c - z));
    k *= c - z;
  }
  for (const auto& p : proto.poles) {
    pd.push_back((c + p) / (c - p));
    k /= c - p;
  }
  while (zd.size() < pd.size()) zd.emplace_back(-1.0, 0.0);

  const auto pole_factors = quadratic_factors(group_roots(pd));
  auto zero_groups = group_roots(zd);

  // Pair each pole factor with the nearest remaining zero factor, starting
  // from the poles closest to the unit circle.
  struct PoleFactor {
    std::array<double, 2> coeffs;
    double radius;
    cplx rep;
  };
  std::vector<PoleFactor> poles;
  for (const auto& f : pole_factors) {
    const cplx disc = std::sqrt(cplx{f[0] * f[0] - 4.0 * f[1], 0.0});
    const cplx rep = (-f[0] + disc) / 2.0;
    poles.push_back({f, std::max(std::abs(rep), std::abs((-f[0] - disc) / 2.0)), rep});
  }
  std::sort(poles.begin(), poles.end(),
            [](const PoleFactor& a, const PoleFactor& b) { return a.radius > b.radius; });

  auto zero_factors = quadratic_factors(zero_groups);
  std::vector<cplx> zero_reps;
  for (const auto& f : zero_factors) {
    const cplx disc = std::sqrt(cplx{f[0] * f[0] - 4.0 * f[1], 0.0});
    zero_reps.push_back((-f[0] + disc) / 2.0);
  }

  BiquadCascade out;
  for (const auto& p : poles) {
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t i = 0; i < zero_factors.size(); ++i) {
      const double d = std::abs(zero_reps[i] - p.rep);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    Biquad s;
    if (!zero_factors.empty()) {
      s.b1 = zero_factors[best][0];
      s.b2 = zero_factors[best][1];
      zero_factors.erase(zero_factors.begin() + static_cast<std::ptrdiff_t>(best));
      zero_reps.erase(zero_reps.begin() + static_cast<std::ptrdiff_t>(best));
    }
    s.a1 = p.coeffs[0];
    s.a2 = p.coeffs[1];
    out.sections.push_back(s);
  }
  out.overall_gain = k.real();

  // Scale each section to unit magnitude where the whole cascade peaks, so
  // intermediate signal levels stay near the output level.
  constexpr int kGrid = 2048;
  double f_peak = 0.0, peak = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double f = 0.5 * fs * i / kGrid;
    const double m = std::abs(frequency_response(out, f, fs));
    if (m > peak) {
      peak = m;
      f_peak = f;
    }
  }
  const cplx zinv = std::polar(1.0, -2.0 * std::numbers::pi * f_peak / fs);
  for (auto& s : out.sections) {
    const double m = std::abs(section_response(s, zinv));
    if (m > 0.0 && std::isfinite(m)) {
      s.b0 /= m;
      s.b1 /= m;
      s.b2 /= m;
      out.overall_gain *= m;
    }
  }
  return out;
}

namespace {

void require_stable(const BiquadCascade& cascade) {
  if (!cascade.is_stable())
    throw std::invalid_argument("filter_apply: cascade is unstable (pole radius " +
                                std::to_string(cascade.max_pole_radius()) + ")");
}

// Sample-major: every section advances once per input sample, which lets
// neighbouring sections overlap in the pipeline.
template <typename T>
void run_sections(const BiquadCascade& cascade, std::vector<T>& y) {
  const auto& sec = cascade.sections;
  std::vector<T> s1(sec.size(), T{}), s2(sec.size(), T{});
  for (auto& v : y) {
    T x = v;
    for (std::size_t k = 0; k < sec.size(); ++k) {
      const Biquad& s = sec[k];
      const T out = s.b0 * x + s1[k];
      s1[k] = s.b1 * x - s.a1 * out + s2[k];
      s2[k] = s.b2 * x - s.a2 * out;
      x = out;
    }
    v = x * cascade.overall_gain;
  }
}

}  // namespace

ComplexSequence filter_apply(const BiquadCascade& cascade, const ComplexSequence& x) {
  require_stable(cascade);
  std::vector<cplx> y = x.samples();
  run_sections(cascade, y);
  return x.with_samples(std::move(y));
}

std::size_t settling_samples(const BiquadCascade& cascade, double tol) {
  const double r = cascade.max_pole_radius();
  if (r <= 0.0) return 0;
  // A few extra poles at the same radius add polynomial growth; pad a bit.
  const double n = std::log(tol) / std::log(r);
  return static_cast<std::size_t>(std::ceil(n)) + 4 * cascade.sections.size();
}

ComplexSequence filter_apply_periodic(const BiquadCascade& cascade, const ComplexSequence& x) {
  require_stable(cascade);
  const std::size_t n = x.size();
  const std::size_t warm = settling_samples(cascade);
  const std::size_t lead = n - warm % n;
  std::vector<cplx> out(n);
  // ext[i] holds x[(i - warm) mod n]; only the last n outputs are kept.
  if (x.is_real()) {
    std::vector<double> ext(warm + n);
    for (std::size_t i = 0, j = lead % n; i < ext.size(); ++i, j = (j + 1 == n ? 0 : j + 1))
      ext[i] = x[j].real();
    run_sections(cascade, ext);
    for (std::size_t i = 0; i < n; ++i) out[i] = ext[warm + i];
  } else {
    std::vector<cplx> ext(warm + n);
    for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = x[(i + lead) % n];
    run_sections(cascade, ext);
    std::copy(ext.begin() + static_cast<std::ptrdiff_t>(warm), ext.end(), out.begin());
  }
  return x.with_samples(std::move(out));
}

cplx frequency_response(const BiquadCascade& cascade, double f_hz, double fs) {
  const cplx zinv = std::polar(1.0, -2.0 * std::numbers::pi * f_hz / fs);
  cplx h{cascade.overall_gain, 0.0};
  for (const auto& s : cascade.sections) h *= section_response(s, zinv);
  return h;
}

std::vector<double> magnitude_response(const BiquadCascade& cascade,
                                       std::span<const double> freqs_hz, double fs) {
  std::vector<double> out;
  out.reserve(freqs_hz.size());
  for (double f : freqs_hz) {
    if (!(f >= 0.0 && f <= fs / 2.0))
      throw std::invalid_argument("magnitude_response: frequency " + std::to_string(f) +
                                  " outside [0, fs/2]");
    out.push_back(20.0 * std::log10(std::abs(frequency_response(cascade, f, fs))));
  }
  return out;
}

BandpassDesign design_elliptic_bandpass(const BandpassSpec& spec) {
  BandpassDesign d;
  d.spec = spec;
  const int order = spec.order > 0
                        ? spec.order
                        : estimate_order(spec.rp_db, spec.rs_db, spec.pass, spec.stop, spec.fs);
  // Validates edge ordering even when the order is forced.
  equivalent_lowpass_stop_ratio(spec.pass, spec.stop, spec.fs);
  d.lowpass_spec = EllipticSpec{order, spec.rp_db, spec.rs_db, 1.0};
  d.lowpass = design_elliptic_lowpass(d.lowpass_spec);
  d.bandpass = lp_to_bp(d.lowpass, prewarp(spec.pass.lo_hz, spec.fs),
                        prewarp(spec.pass.hi_hz, spec.fs));
  d.bandpass.critical_hz = {spec.pass.lo_hz, spec.pass.hi_hz};
  d.cascade = bilinear(d.bandpass, spec.fs);
  if (!d.cascade.is_stable()) {
    std::ostringstream os;
    os << "bandpass design is unstable: order=" << order << " rp_db=" << spec.rp_db
       << " rs_db=" << spec.rs_db << " pass=[" << spec.pass.lo_hz << "," << spec.pass.hi_hz
       << "] stop=[" << spec.stop.lo_hz << "," << spec.stop.hi_hz << "] fs=" << spec.fs;
    throw DesignError(os.str());
  }
  return d;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_coefficients_csv(std::ostream& os, const BiquadCascade& cascade) {
  os << "section,b0,b1,b2,a1,a2\n";
  for (std::size_t i = 0; i < cascade.sections.size(); ++i) {
    const auto& s = cascade.sections[i];
    os << i << ',' << fmt_double(s.b0) << ',' << fmt_double(s.b1) << ',' << fmt_double(s.b2)
       << ',' << fmt_double(s.a1) << ',' << fmt_double(s.a2) << '\n';
  }
  os << "gain," << fmt_double(cascade.overall_gain) << ",,,,\n";
}

void write_response_csv(std::ostream& os, std::span<const double> freqs_hz,
                        std::span<const double> gains_db) {
  if (freqs_hz.size() != gains_db.size())
    throw std::invalid_argument("write_response_csv: length mismatch");
  os << "freq_hz,gain_db\n";
  char buf[96];
  for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", freqs_hz[i], gains_db[i]);
    os << buf;
  }
}

}  // namespace paprsim
