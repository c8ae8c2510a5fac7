#pragma once

#include <wavebound/types.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace wavebound {

/// Image of the real axis under a fractional-linear map: either a circle or
/// a straight line (a circle through infinity).
template <typename T>
struct GeneralizedCircle {
  using Scalar = std::complex<T>;

  bool is_line = false;
  Scalar center{};     // circle only
  T radius = 0;        // circle only
  Scalar anchor{};     // line only: a point on the line
  Scalar direction{};  // line only: unit tangent

  /// Signed distance; positive outside the disk, or to the right of the line
  /// when walking along `direction`.
  T signed_distance(const Scalar& z) const {
    if (is_line) return -std::imag(std::conj(direction) * (z - anchor));
    return std::abs(z - center) - radius;
  }
};

/// t -> (a t + b) / (c t + d) restricted to a real parameter interval.
///
/// Coefficients are held as a 2x2 complex matrix [[a, b], [c, d]] so that
/// composition of maps is a matrix product. Each bound curve in this library
/// is built by composing affine maps and reciprocals in the parameter, which
/// keeps the representation exact.
template <typename T>
class MobiusArc {
 public:
  using Scalar = std::complex<T>;
  using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

  MobiusArc() : coeffs_(Matrix2::Identity()) {}
  explicit MobiusArc(const Matrix2& coeffs, T lo = 0, T hi = 1)
      : coeffs_(coeffs), lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw DomainError("MobiusArc: parameter interval must satisfy lo < hi");
    normalize();
  }
  MobiusArc(Scalar a, Scalar b, Scalar c, Scalar d, T lo = 0, T hi = 1)
      : MobiusArc((Matrix2() << a, b, c, d).finished(), lo, hi) {}

  Scalar a() const { return coeffs_(0, 0); }
  Scalar b() const { return coeffs_(0, 1); }
  Scalar c() const { return coeffs_(1, 0); }
  Scalar d() const { return coeffs_(1, 1); }
  const Matrix2& matrix() const { return coeffs_; }
  T param_lo() const { return lo_; }
  T param_hi() const { return hi_; }

  Scalar determinant() const { return a() * d() - b() * c(); }

  /// A constant map (zero determinant) collapses the arc to a point.
  bool degenerate() const {
    const T s = std::abs(a() * d()) + std::abs(b() * c());
    return std::abs(determinant()) <= T(1e-14) * s || s == T(0);
  }

  Scalar operator()(T t) const {
    const Scalar den = c() * t + d();
    if (den == Scalar(0)) throw PoleError("MobiusArc: evaluation at the pole");
    return (a() * t + b()) / den;
  }

  /// Real parameter at which the map sends the point to infinity, if any.
  /// Returns false when the pole is non-real or absent.
  bool real_pole(T& where) const {
    if (c() == Scalar(0)) return false;
    const Scalar pole = -d() / c();
    if (std::abs(pole.imag()) > T(1e-13) * (T(1) + std::abs(pole))) return false;
    where = pole.real();
    return true;
  }

  /// True when the pole is not on the closed parameter interval.
  bool finite_on_interval() const {
    T where;
    if (!real_pole(where)) return true;
    return where < lo_ || where > hi_;
  }

  /// Full circle (or line) containing the arc.
  GeneralizedCircle<T> circle() const {
    GeneralizedCircle<T> out;
    T where;
    if (c() == Scalar(0) || real_pole(where)) {
      // Image passes through infinity.
      out.is_line = true;
      const T t0 = finite_point();
      const T t1 = finite_point(t0);
      out.anchor = (*this)(t0);
      Scalar dir = (*this)(t1) - out.anchor;
      if (t1 < t0) dir = -dir;
      out.direction = dir / std::abs(dir);
      return out;
    }
    // The center is the image of the reflection of the pole across the real
    // axis, since symmetric points map to symmetric points.
    const Scalar pole = -d() / c();
    out.center = apply(std::conj(pole));
    out.radius = std::abs((*this)(lo_) - out.center);
    return out;
  }

  /// Outer map applied after this one.
  MobiusArc then(const Matrix2& outer) const { return MobiusArc(outer * coeffs_, lo_, hi_); }

  MobiusArc with_interval(T lo, T hi) const { return MobiusArc(coeffs_, lo, hi); }

  std::vector<Scalar> sample(int count) const {
    std::vector<Scalar> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
      const T t = count == 1 ? lo_ : lo_ + (hi_ - lo_) * T(k) / T(count - 1);
      out.push_back((*this)(t));
    }
    return out;
  }

  Scalar midpoint() const { return (*this)(T(0.5) * (lo_ + hi_)); }

 private:
  Scalar apply(const Scalar& z) const { return (a() * z + b()) / (c() * z + d()); }

  // A parameter value inside [lo, hi] (or near it) away from any real pole.
  T finite_point(T avoid = std::numeric_limits<T>::quiet_NaN()) const {
    const T candidates[] = {lo_, hi_, T(0.5) * (lo_ + hi_), lo_ + T(0.25) * (hi_ - lo_),
                            lo_ + T(0.75) * (hi_ - lo_)};
    for (T t : candidates) {
      if (t == avoid) continue;
      const Scalar den = c() * t + d();
      if (std::abs(den) > T(1e-12) * (std::abs(c()) + std::abs(d()))) return t;
    }
    throw PoleError("MobiusArc: no finite sample on the interval");
  }

  void normalize() {
    const T s = coeffs_.cwiseAbs().maxCoeff();
    if (s > T(0)) coeffs_ /= Scalar(s);
  }

  Matrix2 coeffs_;
  T lo_ = 0;
  T hi_ = 1;
};

using MobiusArcd = MobiusArc<Real>;

template <typename T>
typename MobiusArc<T>::Matrix2 mobius_affine(std::complex<T> slope, std::complex<T> offset) {
  typename MobiusArc<T>::Matrix2 m;
  m << slope, offset, std::complex<T>(0), std::complex<T>(1);
  return m;
}

template <typename T>
typename MobiusArc<T>::Matrix2 mobius_reciprocal() {
  typename MobiusArc<T>::Matrix2 m;
  m << std::complex<T>(0), std::complex<T>(1), std::complex<T>(1), std::complex<T>(0);
  return m;
}

/// (z1, z2; z3, z4) = ((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3)).
/// Real exactly when the four points are concyclic or collinear.
Complex cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4);

/// Circle through three points; a line when they are collinear.
GeneralizedCircle<Real> circle_through(Complex z1, Complex z2, Complex z3);

}  // namespace wavebound
