#pragma once

#include <wavebound/types.hpp>

#include <memory>

namespace wavebound {

/// Periodic n^d grid with FFTW-backed transforms. Points are stored with the
/// last axis fastest: index = (i0 * n + i1) * n + i2.
class FftGrid {
 public:
  FftGrid(int dim, int n);
  ~FftGrid();
  FftGrid(const FftGrid&) = delete;
  FftGrid& operator=(const FftGrid&) = delete;

  int dim() const { return dim_; }
  int n() const { return n_; }
  Eigen::Index size() const { return size_; }

  /// Signed integer frequency of FFT index m: m for m < n/2, else m - n.
  int frequency(int m) const { return m < n_ / 2 ? m : m - n_; }

  /// Unnormalized forward / inverse transforms, in place.
  void forward(Complex* data) const;
  void inverse(Complex* data) const;

  /// Gradient projection: each column of `field` is one Cartesian component.
  /// Applies k k^T / |k|^2 in Fourier space with the mean mode removed, so
  /// the result is the curl-free, zero-mean part of the field.
  void apply_gamma(MatrixXc& field) const;

 private:
  struct Plans;
  int dim_;
  int n_;
  Eigen::Index size_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace wavebound
