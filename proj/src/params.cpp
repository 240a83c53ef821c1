#include "rig/params.hpp"

#include <cmath>

#include "rig/errors.hpp"

namespace rig {

ModelParams derived_params(std::uint32_t n, std::uint32_t m, double p) {
  if (n < 2) throw ParameterError("derived_params: n must be at least 2");
  if (m < 1) throw ParameterError("derived_params: m must be positive");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("derived_params: p must be in (0, 1)");

  ModelParams out;
  out.n = n;
  out.m = m;
  out.p = p;

  // (1-p)^(n-1) via exp((n-1) log1p(-p)) to dodge underflow at small p
  const double q_pow = std::exp(static_cast<double>(n - 1) * std::log1p(-p));
  out.d0 = m * p * (1.0 - q_pow);
  out.d1 = static_cast<double>(n) * m * p * p;

  const double mp2 = m * p * p;
  out.d_capped = mp2 > 1.0;
  out.d = out.d_capped ? static_cast<double>(n) : out.d1;

  out.np_regime = (n * p > 40.0) ? ModelParams::NpRegime::gt40 : ModelParams::NpRegime::le40;
  const double m_cut = std::pow(static_cast<double>(n), 1.0 - ModelParams::kEps);
  out.m_regime = (static_cast<double>(m) >= m_cut) ? ModelParams::MRegime::large
                                                   : ModelParams::MRegime::small;
  return out;
}

}  // namespace rig
