#pragma once

#include <string>

namespace homog {

enum class RegimeTag {
  SpatialSPDE,          // alpha = 0 < beta
  Deterministic2b,      // alpha = 2 beta > 0
  DeterministicStrict,  // 0 < 2 beta < alpha
  TemporalSPDE,         // beta = 0 < alpha
  OpenCase,             // 0 < alpha < 2 beta, no limit theorem available
  Degenerate,           // alpha = beta = 0
};

std::string to_string(RegimeTag tag);

struct ScalingRegime {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  RegimeTag tag = RegimeTag::Degenerate;

  bool supported() const { return tag != RegimeTag::OpenCase && tag != RegimeTag::Degenerate; }
  bool deterministic_limit() const {
    return tag == RegimeTag::Deterministic2b || tag == RegimeTag::DeterministicStrict;
  }
};

/// gamma = max(alpha/4 + beta/2, alpha/2) and the case split on (alpha, beta).
ScalingRegime classify(double alpha, double beta);

/// Throws WrongRegime for OpenCase / Degenerate.
void require_supported(const ScalingRegime& regime);

}  // namespace homog
