#include "hinrisk/stats.hpp"

#include <cmath>
#include <cstdio>

namespace hinrisk {

namespace {
constexpr double kPClamp = 1e-300;
}

double chi_square1_upper_tail(double w) {
  if (w <= 0.0) return 1.0;
  double p = std::erfc(std::sqrt(w / 2.0));
  return p < kPClamp ? kPClamp : p;
}

bool p_value_clamped(double w) {
  if (w <= 0.0) return false;
  return std::erfc(std::sqrt(w / 2.0)) < kPClamp;
}

std::string significance_stars(double p) {
  if (p < 0.001) return "****";
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::string format_p_value(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4e", p);
  return buf;
}

double sigmoid(double eta) {
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  double e = std::exp(eta);
  return e / (1.0 + e);
}

double softplus(double eta) {
  if (eta > 0.0) return eta + std::log1p(std::exp(-eta));
  return std::log1p(std::exp(eta));
}

}  // namespace hinrisk
