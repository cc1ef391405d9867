#include "paprsim/clipper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paprsim {

ClipSpec clip_level(double cr, const ComplexSequence& reference) {
  if (!(cr > 0.0)) throw std::invalid_argument("clip_level: clipping ratio must be > 0");
  double acc = 0.0;
  for (const auto& s : reference.samples()) acc += std::norm(s);
  const double sigma = std::sqrt(acc / static_cast<double>(reference.size()));
  if (!(sigma > 0.0))
    throw std::invalid_argument("clip_level: reference signal is all zero");
  return {cr, sigma, cr * sigma};
}

ComplexSequence clip_baseband(const ComplexSequence& s, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("clip_baseband: level must be > 0");
  std::vector<cplx> out = s.samples();
  for (auto& v : out) {
    const double mag = std::abs(v);
    if (mag <= level) continue;
    cplx c = v * (level / mag);
    // Rounding can leave |c| one ulp above the level; shrink until it is not.
    while (std::abs(c) > level) c *= 1.0 - 0x1.0p-52;
    v = c;
  }
  return s.with_samples(std::move(out));
}

ComplexSequence clip_passband(const ComplexSequence& s, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("clip_passband: level must be > 0");
  if (!s.is_real())
    throw std::invalid_argument("clip_passband: input has non-zero imaginary parts");
  std::vector<cplx> out(s.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = cplx{std::clamp(s[i].real(), -level, level), 0.0};
  return s.with_samples(std::move(out));
}

}  // namespace paprsim
