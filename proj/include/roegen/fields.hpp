#pragma once

/// \file
/// External econo-electromagnetic fields: the investment field e drives the
/// econo-polarization p, the growth field h drives the econo-magnetization m.
/// Response is linear, isotropic and memoryless.

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "roegen/errors.hpp"

namespace roegen {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

inline Vec3 scaled(const Vec3& x, double s) { return {s * x[0], s * x[1], s * x[2]}; }

struct FieldResponse {
  double chi_e = 1.0;  ///< polarization susceptibility
  double chi_m = 1.0;  ///< magnetization susceptibility

  void validate() const {
    if (!std::isfinite(chi_e) || chi_e < 0) throw ArgumentError("chi_e must be finite and >= 0");
    if (!std::isfinite(chi_m) || chi_m < 0) throw ArgumentError("chi_m must be finite and >= 0");
  }
};

struct FieldState {
  Vec3 e{};  ///< investment field
  Vec3 h{};  ///< growth field
  FieldResponse response;
};

inline Vec3 polarization(const FieldState& s) {
  s.response.validate();
  return scaled(s.e, s.response.chi_e);
}

inline Vec3 magnetization(const FieldState& s) {
  s.response.validate();
  return scaled(s.h, s.response.chi_m);
}

struct FieldSample {
  Vec3 e{};
  Vec3 h{};
};

struct FieldPath {
  std::vector<FieldSample> samples;
};

/// Field contribution to wealth, sum of e_mid . dp + h_mid . dm over the
/// path's segments.
inline double field_work(const FieldPath& path, double chi_e, double chi_m) {
  FieldResponse{chi_e, chi_m}.validate();
  const auto& s = path.samples;
  if (s.size() < 2) throw ArgumentError("field path needs at least 2 samples");
  double w = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      const double e_mid = 0.5 * (s[i - 1].e[k] + s[i].e[k]);
      const double h_mid = 0.5 * (s[i - 1].h[k] + s[i].h[k]);
      w += e_mid * chi_e * (s[i].e[k] - s[i - 1].e[k]);
      w += h_mid * chi_m * (s[i].h[k] - s[i - 1].h[k]);
    }
  }
  return w;
}

inline double field_work(const FieldPath& path, const FieldResponse& r) {
  return field_work(path, r.chi_e, r.chi_m);
}

/// Telescoped form of field_work for linear response:
/// (chi_e/2)(|e_end|^2 - |e_start|^2) + (chi_m/2)(|h_end|^2 - |h_start|^2).
inline double field_work_closed_form(const FieldPath& path, double chi_e, double chi_m) {
  const auto& s = path.samples;
  if (s.size() < 2) throw ArgumentError("field path needs at least 2 samples");
  const auto& a = s.front();
  const auto& z = s.back();
  return 0.5 * chi_e * (dot(z.e, z.e) - dot(a.e, a.e)) + 0.5 * chi_m * (dot(z.h, z.h) - dot(a.h, a.h));
}

}  // namespace roegen
