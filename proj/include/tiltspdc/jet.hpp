#pragma once

#include <cmath>

namespace tiltspdc {

// Value with first and second derivative with respect to one scalar variable.
// Used to differentiate k(omega) through the Sellmeier and index-ellipse chain.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
  static constexpr Jet constant(double x) { return {x, 0.0, 0.0}; }
};

constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Jet operator-(Jet a) { return {-a.v, -a.d1, -a.d2}; }
constexpr Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
constexpr Jet operator+(Jet a, double s) { return {a.v + s, a.d1, a.d2}; }
constexpr Jet operator+(double s, Jet a) { return a + s; }
constexpr Jet operator-(Jet a, double s) { return {a.v - s, a.d1, a.d2}; }
constexpr Jet operator-(double s, Jet a) { return {s - a.v, -a.d1, -a.d2}; }
constexpr Jet operator*(Jet a, double s) { return {a.v * s, a.d1 * s, a.d2 * s}; }
constexpr Jet operator*(double s, Jet a) { return a * s; }

constexpr Jet reciprocal(Jet a) {
  const double r = 1.0 / a.v;
  return {r, -a.d1 * r * r, (2.0 * a.d1 * a.d1 * r - a.d2) * r * r};
}
constexpr Jet operator/(Jet a, Jet b) { return a * reciprocal(b); }
constexpr Jet operator/(Jet a, double s) { return a * (1.0 / s); }
constexpr Jet operator/(double s, Jet a) { return s * reciprocal(a); }

inline Jet sqrt(Jet a) {
  const double s = std::sqrt(a.v);
  return {s, a.d1 / (2.0 * s), a.d2 / (2.0 * s) - a.d1 * a.d1 / (4.0 * s * s * s)};
}

}  // namespace tiltspdc
