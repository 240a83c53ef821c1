#pragma once

#include <cstdint>

namespace rig {

// Derived model quantities.
//   d0 = mp(1 - (1-p)^(n-1))   expected count of edge-contributing features per vertex
//   d1 = nmp^2                 approximate expected degree
//   d                          search budget input: d1 while mp^2 <= 1, else n
struct ModelParams {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  double p = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double d = 0.0;
  bool d_capped = false;  // true when mp^2 > 1 (d set to n, budget forced to 2)

  enum class NpRegime { le40, gt40 };
  enum class MRegime { large, small };  // m >= n^(1-eps) vs below
  NpRegime np_regime = NpRegime::le40;
  MRegime m_regime = MRegime::large;

  static constexpr double kEps = 1.0 / 25.0;
};

// Requires n >= 2, m >= 1, p in (0, 1).
ModelParams derived_params(std::uint32_t n, std::uint32_t m, double p);

}  // namespace rig
