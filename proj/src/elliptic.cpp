#include "paprsim/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "paprsim/errors.hpp"

namespace paprsim {

namespace elliptic {

namespace {

constexpr double kLandenTol = 1e-14;
constexpr double kPi = std::numbers::pi;

double srem(double x, double y) { return x - y * std::round(x / y); }

}  // namespace

Modulus Modulus::from_k(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("elliptic modulus outside [0, 1]");
  return {k, std::sqrt((1.0 - k) * (1.0 + k))};
}

Modulus Modulus::from_complement(double kc) { return from_k(kc).complement(); }

std::vector<double> landen(const Modulus& m) {
  std::vector<double> v;
  double k = m.k, kc = m.kc;
  // The complement is carried along (k'_{n+1} = 2 sqrt(k'_n) / (1 + k'_n)) so
  // moduli within an ulp of 1 still descend.
  while (k > kLandenTol) {
    const double next = (k / (1.0 + kc)) * (k / (1.0 + kc));
    kc = 2.0 * std::sqrt(kc) / (1.0 + kc);
    k = next;
    v.push_back(k);
  }
  return v;
}

double complete_integral(const Modulus& m) {
  if (m.kc <= 0.0) throw std::invalid_argument("K(k) diverges at k = 1");
  double prod = kPi / 2.0;
  for (double v : landen(m)) prod *= 1.0 + v;
  return prod;
}

namespace {

cplx descend(cplx w, const std::vector<double>& v) {
  for (auto it = v.rbegin(); it != v.rend(); ++it) w = (1.0 + *it) * w / (1.0 + *it * w * w);
  return w;
}

}  // namespace

cplx cde(cplx u, const Modulus& m) { return descend(std::cos(u * kPi / 2.0), landen(m)); }

cplx sne(cplx u, const Modulus& m) { return descend(std::sin(u * kPi / 2.0), landen(m)); }

cplx acde(cplx w, const Modulus& m) {
  const auto v = landen(m);
  double prev = m.k;
  for (double vn : v) {
    w = w / (1.0 + std::sqrt(1.0 - w * w * prev * prev)) * 2.0 / (1.0 + vn);
    prev = vn;
  }
  cplx u = std::acos(w) * (2.0 / kPi);
  if (m.k > 0.0 && m.kc > 0.0) {
    const double ratio = complete_integral(m.complement()) / complete_integral(m);
    u = cplx{srem(u.real(), 4.0), srem(u.imag(), 2.0 * ratio)};
  }
  return u;
}

cplx asne(cplx w, const Modulus& m) { return 1.0 - acde(w, m); }

double degree_ratio(const Modulus& k, const Modulus& k1) {
  return complete_integral(k) * complete_integral(k1.complement()) /
         (complete_integral(k.complement()) * complete_integral(k1));
}

Modulus selectivity_modulus(int n, const Modulus& k1) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  // Through the nome: q = q1^(1/n), k = 4 sqrt(q) (sum q^(m(m+1)) / theta3(q))^2.
  // The product form rounds k' to 1 once k1 drops below ~1e-8.
  const double ratio = complete_integral(k1.complement()) / complete_integral(k1);
  const double q = std::exp(-kPi * ratio / n);
  double num = 0.0, den = 1.0;
  for (int m = 0; m < 1000; ++m) {
    const double a = std::pow(q, static_cast<double>(m) * (m + 1));
    const double b = m > 0 ? 2.0 * std::pow(q, static_cast<double>(m) * m) : 0.0;
    num += a;
    den += b;
    if (a < 1e-18 * num && b < 1e-18 * den) break;
  }
  const double r = num / den;
  return Modulus::from_k(std::min(1.0, 4.0 * std::sqrt(q) * r * r));
}

Modulus discrimination_modulus(int n, const Modulus& k) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  double k1 = std::pow(k.k, n);
  for (int i = 1; i <= n / 2; ++i) {
    const double ui = (2.0 * i - 1.0) / n;
    k1 *= std::pow(sne(ui, k).real(), 4);
  }
  return Modulus::from_k(k1);
}

}  // namespace elliptic

using elliptic::Modulus;

double elliptic_rational(int n, double xi, double x) {
  if (n < 1) throw std::invalid_argument("elliptic_rational: order must be >= 1");
  if (!(xi > 1.0)) throw std::invalid_argument("elliptic_rational: selectivity xi must be > 1");
  const Modulus k = Modulus::from_k(1.0 / xi);
  const Modulus k1 = elliptic::discrimination_modulus(n, k);
  const cplx u = elliptic::acde(x, k);
  return elliptic::cde(static_cast<double>(n) * u, k1).real();
}

void EllipticSpec::validate() const {
  if (order < 1) throw std::invalid_argument("elliptic order must be >= 1");
  if (!(rp_db > 0.0)) throw std::invalid_argument("passband ripple rp_db must be > 0");
  if (!(rs_db > rp_db))
    throw std::invalid_argument("stopband attenuation rs_db must exceed rp_db");
  if (!(w0 > 0.0)) throw std::invalid_argument("cutoff w0 must be > 0");
}

double EllipticSpec::ripple_factor() const { return std::sqrt(std::expm1(rp_db * std::log(10.0) / 10.0)); }

double EllipticSpec::stopband_factor() const { return std::sqrt(std::expm1(rs_db * std::log(10.0) / 10.0)); }

double EllipticSpec::selectivity() const {
  validate();
  const Modulus k1 = Modulus::from_k(ripple_factor() / stopband_factor());
  return 1.0 / elliptic::selectivity_modulus(order, k1).k;
}

double elliptic_gain(const EllipticSpec& spec, double w) {
  const double eps = spec.ripple_factor();
  const double r = elliptic_rational(spec.order, spec.selectivity(), w / spec.w0);
  return 1.0 / std::sqrt(1.0 + eps * eps * r * r);
}

cplx AnalogPrototype::response(cplx s) const {
  cplx h{gain, 0.0};
  for (const auto& z : zeros) h *= s - z;
  for (const auto& p : poles) h /= s - p;
  return h;
}

namespace {

[[noreturn]] void design_failure(const EllipticSpec& spec, const std::string& what) {
  std::ostringstream os;
  os << "elliptic design failed (" << what << ") for order=" << spec.order
     << " rp_db=" << spec.rp_db << " rs_db=" << spec.rs_db << " w0=" << spec.w0;
  throw DesignError(os.str());
}

}  // namespace

AnalogPrototype design_elliptic_lowpass(const EllipticSpec& spec) {
  spec.validate();
  const cplx j{0.0, 1.0};
  const int n = spec.order;
  const double eps = spec.ripple_factor();
  const Modulus k1 = Modulus::from_k(eps / spec.stopband_factor());
  const Modulus k = elliptic::selectivity_modulus(n, k1);
  if (!(k.k > 0.0 && k.k < 1.0)) design_failure(spec, "selectivity modulus k=" + std::to_string(k.k));

  // Imaginary shift of the pole locus: cd((u - j v0) K, k) places 1 + eps^2 R^2 = 0.
  const double v0 = (-j * elliptic::asne(j / eps, k1)).real() / n;
  if (!std::isfinite(v0) || !(v0 > 0.0)) design_failure(spec, "pole offset v0=" + std::to_string(v0));

  AnalogPrototype proto;
  proto.cutoff_rad = spec.w0;
  proto.critical_hz = {spec.w0 / (2.0 * std::numbers::pi)};
  for (int i = 1; i <= n / 2; ++i) {
    const double ui = (2.0 * i - 1.0) / n;
    const double zeta = elliptic::cde(ui, k).real();
    const cplx z = j / (k.k * zeta);
    const cplx p = j * elliptic::cde(cplx{ui, -v0}, k);
    proto.zeros.push_back(z);
    proto.zeros.push_back(std::conj(z));
    proto.poles.push_back(p);
    proto.poles.push_back(std::conj(p));
  }
  if (n % 2 == 1) proto.poles.emplace_back((j * elliptic::sne(cplx{0.0, v0}, k)).real(), 0.0);

  for (const auto& p : proto.poles)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || !(p.real() < 0.0))
      design_failure(spec, "pole not in left half plane");

  // Unit DC gain for odd order, 1/sqrt(1+eps^2) for even order.
  const double dc = (n % 2 == 1) ? 1.0 : 1.0 / std::sqrt(1.0 + eps * eps);
  cplx ratio{1.0, 0.0};
  for (const auto& p : proto.poles) ratio *= -p;
  for (const auto& z : proto.zeros) ratio /= -z;
  proto.gain = dc * ratio.real();

  for (auto& z : proto.zeros) z *= spec.w0;
  for (auto& p : proto.poles) p *= spec.w0;
  proto.gain *= std::pow(spec.w0, static_cast<double>(proto.poles.size()) -
                                      static_cast<double>(proto.zeros.size()));
  return proto;
}

AnalogPrototype lp_to_bp(const AnalogPrototype& proto, double f1_hz, double f2_hz) {
  if (!(f1_hz > 0.0) || !(f2_hz > f1_hz))
    throw std::invalid_argument("lp_to_bp: band edges must satisfy 0 < f1 < f2");
  if (proto.zeros.size() > proto.poles.size())
    throw std::invalid_argument("lp_to_bp: improper prototype (more zeros than poles)");
  const double w1 = 2.0 * std::numbers::pi * f1_hz;
  const double w2 = 2.0 * std::numbers::pi * f2_hz;
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;
  const double wc = proto.cutoff_rad;

  // Each prototype root r splits into the roots of s^2 - (r B / wc) s + W1 W2.
  auto split = [&](cplx r, std::vector<cplx>& out) {
    const cplx b = r * bw / wc;
    const cplx disc = std::sqrt(b * b - 4.0 * w0sq);
    out.push_back((b + disc) / 2.0);
    out.push_back((b - disc) / 2.0);
  };

  AnalogPrototype bp;
  for (const auto& z : proto.zeros) split(z, bp.zeros);
  for (const auto& p : proto.poles) split(p, bp.poles);
  const std::size_t excess = proto.poles.size() - proto.zeros.size();
  for (std::size_t i = 0; i < excess; ++i) bp.zeros.emplace_back(0.0, 0.0);
  bp.gain = proto.gain * std::pow(bw / wc, static_cast<double>(excess));
  bp.cutoff_rad = std::sqrt(w0sq);
  bp.critical_hz = {f1_hz, f2_hz};
  return bp;
}

double prewarp(double f_hz, double fs) {
  return fs / std::numbers::pi * std::tan(std::numbers::pi * f_hz / fs);
}

double equivalent_lowpass_stop_ratio(BandEdges pass, BandEdges stop, double fs) {
  if (!(fs > 0.0)) throw std::invalid_argument("sample rate must be > 0");
  if (!(stop.lo_hz > 0.0 && stop.lo_hz < pass.lo_hz && pass.lo_hz < pass.hi_hz &&
        pass.hi_hz < stop.hi_hz && stop.hi_hz < fs / 2.0))
    throw std::invalid_argument(
        "band edges must satisfy 0 < stop_lo < pass_lo < pass_hi < stop_hi < fs/2");
  const double p1 = prewarp(pass.lo_hz, fs);
  const double p2 = prewarp(pass.hi_hz, fs);
  const double s1 = prewarp(stop.lo_hz, fs);
  const double s2 = prewarp(stop.hi_hz, fs);
  const double c2 = p1 * p2;
  const double b = p2 - p1;
  const double r1 = std::abs(s1 * s1 - c2) / (b * s1);
  const double r2 = std::abs(s2 * s2 - c2) / (b * s2);
  return std::min(r1, r2);
}

int estimate_order(double rp_db, double rs_db, BandEdges pass, BandEdges stop, double fs) {
  if (!(rp_db > 0.0) || !(rs_db > rp_db))
    throw std::invalid_argument("estimate_order: need 0 < rp_db < rs_db");
  const double ratio = equivalent_lowpass_stop_ratio(pass, stop, fs);
  if (!(ratio > 1.0)) throw std::invalid_argument("estimate_order: zero transition width");
  const EllipticSpec probe{1, rp_db, rs_db, 1.0};
  const Modulus k = Modulus::from_k(1.0 / ratio);
  const Modulus k1 = Modulus::from_k(probe.ripple_factor() / probe.stopband_factor());
  const double n = elliptic::degree_ratio(k, k1);
  return std::max(1, static_cast<int>(std::ceil(n - 1e-9)));
}

}  // namespace paprsim
