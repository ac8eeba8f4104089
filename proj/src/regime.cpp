#include "homog/regime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "homog/error.hpp"

namespace homog {

std::string to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::SpatialSPDE: return "SpatialSPDE";
    case RegimeTag::Deterministic2b: return "Deterministic2b";
    case RegimeTag::DeterministicStrict: return "DeterministicStrict";
    case RegimeTag::TemporalSPDE: return "TemporalSPDE";
    case RegimeTag::OpenCase: return "OpenCase";
    case RegimeTag::Degenerate: return "Degenerate";
  }
  return "?";
}

ScalingRegime classify(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw std::invalid_argument("alpha and beta must be nonnegative");
  }
  constexpr double kTol = 1e-12;
  ScalingRegime r;
  r.alpha = alpha;
  r.beta = beta;
  r.gamma = std::max(alpha / 4.0 + beta / 2.0, alpha / 2.0);

  const bool alpha_zero = alpha <= kTol;
  const bool beta_zero = beta <= kTol;
  if (alpha_zero && beta_zero) {
    r.tag = RegimeTag::Degenerate;
  } else if (alpha_zero) {
    r.tag = RegimeTag::SpatialSPDE;
  } else if (beta_zero) {
    r.tag = RegimeTag::TemporalSPDE;
  } else if (std::abs(alpha - 2.0 * beta) <= kTol * std::max(1.0, alpha)) {
    r.tag = RegimeTag::Deterministic2b;
  } else if (2.0 * beta < alpha) {
    r.tag = RegimeTag::DeterministicStrict;
  } else {
    r.tag = RegimeTag::OpenCase;
  }
  return r;
}

void require_supported(const ScalingRegime& regime) {
  if (regime.supported()) return;
  std::ostringstream msg;
  msg << "alpha=" << regime.alpha << ", beta=" << regime.beta << " is " << to_string(regime.tag);
  if (regime.tag == RegimeTag::OpenCase) {
    msg << ": the regime 0 < alpha < 2*beta remains open, no limit theorem covers it";
  } else {
    msg << ": no oscillation, nothing to homogenize";
  }
  throw WrongRegime(msg.str());
}

}  // namespace homog
