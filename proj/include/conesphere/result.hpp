#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conesphere {

enum class CaseLabel {
  Disjoint,
  SphereInsideCone,
  OnAxisApexInside,
  OnAxisApexOutside,
  OffAxisApexInside,
  OffAxisTwoBranch,
  OffAxisOneBranch,
  HalfSpace,
  Stretched,
};

enum class Method { Auto, Closed, Elliptic, Quadrature, MonteCarlo };

std::string_view to_string(CaseLabel label);
std::string_view to_string(Method method);
std::optional<CaseLabel> parse_case_label(std::string_view text);
std::optional<Method> parse_method(std::string_view text);

struct Region {
  std::string name;
  double volume = 0.0;
};

struct VolumeResult {
  double volume = 0.0;
  CaseLabel label = CaseLabel::Disjoint;
  Method method = Method::Closed;  ///< backend that produced the value
  std::vector<Region> regions;     ///< additive parts; they sum to volume
  double error_estimate = 0.0;     ///< quadrature bound, MC sigma, or rounding bound
  bool fallback = false;           ///< analytic path was rerouted to quadrature
  bool accuracy_warning = false;   ///< requested tolerance was not reached
};

}  // namespace conesphere
