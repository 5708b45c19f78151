#include "seedtrace/bounds.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "seedtrace/errors.hpp"

namespace seedtrace {

namespace {

constexpr std::array<std::pair<BoundName, std::string_view>, 7> kNames{{
    {BoundName::kRootPsi, "root-psi"},
    {BoundName::kSkeleton, "skeleton"},
    {BoundName::kCover, "cover"},
    {BoundName::kLeafExist, "leaf-exist"},
    {BoundName::kHeartUpper, "heart-upper"},
    {BoundName::kCenterStar, "center-star"},
    {BoundName::kWholeUpper, "whole-upper"},
}};

// Absorbs rounding in formulas whose exact value is an integer.
constexpr double kSlack = 1e-9;

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
}
void require_k(std::size_t k) {
  if (k < 1) throw ParameterError("k must be at least 1");
}
void require_ell(std::size_t ell) {
  if (ell < 1) throw ParameterError("ell must be at least 1");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

BoundName parse_bound_name(std::string_view name) {
  for (const auto& [value, text] : kNames) {
    if (text == name) return value;
  }
  throw ParameterError("unknown bound '" + std::string(name) + "'");
}

std::string_view to_string(BoundName name) {
  for (const auto& [value, text] : kNames) {
    if (value == name) return text;
  }
  return "unknown";
}

std::vector<std::string_view> bound_names() {
  std::vector<std::string_view> out;
  for (const auto& entry : kNames) out.push_back(entry.second);
  return out;
}

BoundResult compute_bound(BoundName name, const BoundParams& p) {
  BoundResult r;
  r.name = name;
  const double eps = p.eps;
  const double k = static_cast<double>(p.k);
  const double ell = static_cast<double>(p.ell);
  switch (name) {
    case BoundName::kRootPsi:
      require_eps(eps);
      r.value = (2.5 / eps) * std::log(1.0 / eps);
      r.formula = "(2.5/" + fmt(eps) + ")*log(1/" + fmt(eps) + ")";
      break;
    case BoundName::kSkeleton: {
      require_eps(eps);
      require_k(p.k);
      require_ell(p.ell);
      if (p.ell >= p.k) throw ParameterError("ell must be smaller than k");
      const double inner = std::log(3.0 * (k - ell) / eps);
      r.value = ell + 2.0 * (k - ell) * std::log((3.0 * ell / eps) * inner) + (7.0 / 6.0) * inner;
      r.formula = fmt(ell) + " + 2*" + fmt(k - ell) + "*log((3*" + fmt(ell) + "/" + fmt(eps) +
                  ")*log(3*" + fmt(k - ell) + "/" + fmt(eps) + ")) + (7/6)*log(3*" +
                  fmt(k - ell) + "/" + fmt(eps) + ")";
      break;
    }
    case BoundName::kCover:
      require_eps(eps);
      require_k(p.k);
      require_ell(p.ell);
      if (p.k_star < 1) throw ParameterError("k_star must be at least 1");
      r.value = (2.0 * k * ell / eps) * static_cast<double>(p.k_star);
      r.formula = "(2*" + fmt(k) + "*" + fmt(ell) + "/" + fmt(eps) + ")*" + std::to_string(p.k_star);
      break;
    case BoundName::kLeafExist:
      require_eps(eps);
      require_k(p.k);
      require_ell(p.ell);
      r.value = k * ell / (4.0 * eps);
      r.at_most = true;
      r.formula = fmt(k) + "*" + fmt(ell) + "/(4*" + fmt(eps) + ")";
      break;
    case BoundName::kHeartUpper:
      require_eps(eps);
      require_k(p.k);
      r.value = p.constant * std::pow(1.0 / eps, 2.0 / k) * std::log(1.0 / eps);
      r.constant_free = true;
      r.formula = fmt(p.constant) + "*(1/" + fmt(eps) + ")^(2/" + fmt(k) + ")*log(1/" + fmt(eps) + ")";
      break;
    case BoundName::kCenterStar:
      require_eps(eps);
      require_k(p.k);
      r.value = p.constant * std::pow(1.0 / eps, 1.0 / k) * std::log(1.0 / eps);
      r.constant_free = true;
      r.formula = fmt(p.constant) + "*(1/" + fmt(eps) + ")^(1/" + fmt(k) + ")*log(1/" + fmt(eps) + ")";
      break;
    case BoundName::kWholeUpper:
      require_eps(eps);
      require_k(p.k);
      require_ell(p.ell);
      r.value = p.constant * (k * ell / eps) * std::log(k * ell / eps);
      r.constant_free = true;
      r.formula = fmt(p.constant) + "*(" + fmt(k) + "*" + fmt(ell) + "/" + fmt(eps) + ")*log(" +
                  fmt(k) + "*" + fmt(ell) + "/" + fmt(eps) + ")";
      break;
  }
  if (r.constant_free && !(p.constant > 0.0)) throw ParameterError("constant must be positive");
  const double rounded = r.at_most ? std::floor(r.value + kSlack) : std::ceil(r.value - kSlack);
  r.K = static_cast<std::uint64_t>(std::max(rounded, 0.0));
  return r;
}

}  // namespace seedtrace
