#include <wavebound/fft_grid.hpp>

#include <fftw3.h>

#include <mutex>

namespace wavebound {

namespace {
// The FFTW planner is not re-entrant; execution of existing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

FftGrid::FftGrid(int dim, int n) : dim_(dim), n_(n), plans_(std::make_unique<Plans>()) {
  if (dim != 2 && dim != 3) throw DomainError("grid dimension must be 2 or 3");
  if (n < 2 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of two");
  size_ = 1;
  for (int k = 0; k < dim; ++k) size_ *= n;
  int shape[3] = {n, n, n};
  VectorXc scratch(size_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft(dim, shape, buf, buf, FFTW_FORWARD, flags);
  plans_->inverse = fftw_plan_dft(dim, shape, buf, buf, FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->inverse) throw NumericalError("FFTW planning failed");
}

FftGrid::~FftGrid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->inverse) fftw_destroy_plan(plans_->inverse);
}

void FftGrid::forward(Complex* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_->forward, p, p);
}

void FftGrid::inverse(Complex* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plans_->inverse, p, p);
}

void FftGrid::apply_gamma(MatrixXc& field) const {
  if (field.rows() != size_ || field.cols() != dim_) throw DomainError("apply_gamma: field shape mismatch");
  for (int c = 0; c < dim_; ++c) forward(field.col(c).data());
  const Real scale = 1.0 / Real(size_);
  const Eigen::Index nn = n_;
  for (Eigen::Index idx = 0; idx < size_; ++idx) {
    Real k[3] = {0, 0, 0};
    Eigen::Index rest = idx;
    for (int a = dim_ - 1; a >= 0; --a) {
      k[a] = frequency(static_cast<int>(rest % nn));
      rest /= nn;
    }
    Real k2 = 0;
    for (int a = 0; a < dim_; ++a) k2 += k[a] * k[a];
    if (k2 == 0.0) {
      for (int c = 0; c < dim_; ++c) field(idx, c) = 0.0;
      continue;
    }
    Complex kv = 0;
    for (int c = 0; c < dim_; ++c) kv += k[c] * field(idx, c);
    kv *= scale / k2;
    for (int c = 0; c < dim_; ++c) field(idx, c) = k[c] * kv;
  }
  for (int c = 0; c < dim_; ++c) inverse(field.col(c).data());
}

}  // namespace wavebound
