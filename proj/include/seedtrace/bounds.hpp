#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seedtrace {

/// Explicit confidence-set sizes from the analysis, for parameterizing
/// experiments.
enum class BoundName {
  kRootPsi,     // (2.5/eps) log(1/eps): psi root set for UA(n)
  kSkeleton,    // leaf set given the skeleton
  kCover,       // (2 k ell / eps) K*: depth-first expansion cap
  kLeafExist,   // k ell / (4 eps): upper end of the naked-leaf regime
  kHeartUpper,  // c (1/eps)^(2/k) log(1/eps), constant-free form
  kCenterStar,  // c (1/eps)^(1/k) log(1/eps), constant-free form
  kWholeUpper,  // c (k ell / eps) log(k ell / eps), constant-free form
};

BoundName parse_bound_name(std::string_view name);
std::string_view to_string(BoundName name);
std::vector<std::string_view> bound_names();

struct BoundParams {
  double eps = 0.0;
  std::size_t k = 0;
  std::size_t ell = 0;
  std::size_t k_star = 0;   // only for kCover
  double constant = 1.0;    // only for the constant-free forms
};

struct BoundResult {
  BoundName name = BoundName::kRootPsi;
  double value = 0.0;        // raw formula value
  std::uint64_t K = 0;       // ceiling (floor for kLeafExist)
  bool at_most = false;      // true when the bound reads K <= value
  bool constant_free = false;
  std::string formula;       // the formula instantiated with the parameters
};

/// Throws ParameterError naming each out-of-range parameter.
BoundResult compute_bound(BoundName name, const BoundParams& params);

}  // namespace seedtrace
