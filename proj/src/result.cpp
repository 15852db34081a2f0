#include "conesphere/result.hpp"

#include <array>
#include <utility>

namespace conesphere {

namespace {

constexpr std::array<std::pair<CaseLabel, std::string_view>, 9> kLabels{{
    {CaseLabel::Disjoint, "Disjoint"},
    {CaseLabel::SphereInsideCone, "SphereInsideCone"},
    {CaseLabel::OnAxisApexInside, "OnAxisApexInside"},
    {CaseLabel::OnAxisApexOutside, "OnAxisApexOutside"},
    {CaseLabel::OffAxisApexInside, "OffAxisApexInside"},
    {CaseLabel::OffAxisTwoBranch, "OffAxisTwoBranch"},
    {CaseLabel::OffAxisOneBranch, "OffAxisOneBranch"},
    {CaseLabel::HalfSpace, "HalfSpace"},
    {CaseLabel::Stretched, "Stretched"},
}};

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethods{{
    {Method::Auto, "auto"},
    {Method::Closed, "closed"},
    {Method::Elliptic, "elliptic"},
    {Method::Quadrature, "quadrature"},
    {Method::MonteCarlo, "montecarlo"},
}};

}  // namespace

std::string_view to_string(CaseLabel label) {
  for (const auto& [l, name] : kLabels)
    if (l == label) return name;
  return "?";
}

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethods)
    if (m == method) return name;
  return "?";
}

std::optional<CaseLabel> parse_case_label(std::string_view text) {
  for (const auto& [l, name] : kLabels)
    if (name == text) return l;
  return std::nullopt;
}

std::optional<Method> parse_method(std::string_view text) {
  for (const auto& [m, name] : kMethods)
    if (name == text) return m;
  return std::nullopt;
}

}  // namespace conesphere
