#pragma once

// Shared small newforms built from eta products for the unit tests.

#include <memory>

#include "modsign/qseries.hpp"

namespace fixtures {

inline const modsign::PowerSeries& delta_series() {
  static const auto s = modsign::eta_product_expand(modsign::EtaProductSpec::parse("1:24"), 20000);
  return s;
}

inline const modsign::PowerSeries& cm3_series() {
  static const auto s = modsign::eta_product_expand(modsign::EtaProductSpec::parse("4:6"), 20000);
  return s;
}

inline const modsign::PowerSeries& cm32_series() {
  static const auto s = modsign::eta_product_expand(modsign::EtaProductSpec::parse("4:2,8:2"), 20000);
  return s;
}

/// Delta, weight 12, level 1.
inline std::shared_ptr<const modsign::NewformData> delta() {
  static const auto f = std::make_shared<const modsign::NewformData>(
      modsign::series_to_newform(delta_series(), 12, 1, modsign::DirichletCharacter::trivial(1), "delta"));
  return f;
}

/// eta(4z)^6, weight 3, level 16, character (-4/.).
inline std::shared_ptr<const modsign::NewformData> cm3() {
  static const auto f = std::make_shared<const modsign::NewformData>(
      modsign::series_to_newform(cm3_series(), 3, 16, modsign::DirichletCharacter(16, {1, 0}), "eta(4z)^6"));
  return f;
}

/// eta(4z)^2 eta(8z)^2, weight 2, level 32, trivial character.
inline std::shared_ptr<const modsign::NewformData> cm32() {
  static const auto f = std::make_shared<const modsign::NewformData>(
      modsign::series_to_newform(cm32_series(), 2, 32, modsign::DirichletCharacter::trivial(1), "eta(4z)^2 eta(8z)^2"));
  return f;
}

}  // namespace fixtures
