#include "l0lms/algorithms/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "l0lms/error.hpp"

namespace l0lms::algorithms {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::lms: return "lms";
    case Variant::l0lms: return "l0lms";
    case Variant::zalms: return "zalms";
    case Variant::rzalms: return "rzalms";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "lms") return Variant::lms;
  if (key == "l0lms") return Variant::l0lms;
  if (key == "zalms") return Variant::zalms;
  if (key == "rzalms") return Variant::rzalms;
  throw PreconditionError("unknown algorithm variant '" + std::string(name) + "'");
}

void AlgoParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
  };
  require(std::isfinite(mu) && mu > 0.0, "step size mu must be finite and > 0");
  switch (variant) {
    case Variant::lms: break;
    case Variant::l0lms:
      require(std::isfinite(kappa) && kappa >= 0.0, "kappa must be finite and >= 0");
      require(std::isfinite(alpha) && alpha > 0.0, "alpha must be finite and > 0");
      break;
    case Variant::zalms:
      require(std::isfinite(rho) && rho >= 0.0, "rho must be finite and >= 0");
      break;
    case Variant::rzalms:
      require(std::isfinite(rho) && rho >= 0.0, "rho must be finite and >= 0");
      require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be finite and > 0");
      break;
  }
}

double SparseSystem::energy() const noexcept {
  double e = 0.0;
  for (double c : coefficients) e += c * c;
  return e;
}

SparseSystem SparseSystem::from_coefficients(std::vector<double> s) {
  const auto q = static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](double c) { return c != 0.0; }));
  return {std::move(s), q};
}

}  // namespace l0lms::algorithms
