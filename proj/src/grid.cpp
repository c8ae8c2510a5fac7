#include <wavebound/fft_grid.hpp>
#include <wavebound/gmres.hpp>
#include <wavebound/grid.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace wavebound {

namespace {

Eigen::Index power(int n, int d) {
  Eigen::Index s = 1;
  for (int k = 0; k < d; ++k) s *= n;
  return s;
}

template <typename Inside>
PixelInclusion rasterize(int dim, int n, Inside inside) {
  if (dim != 2 && dim != 3) throw DomainError("dimension must be 2 or 3");
  PixelInclusion out;
  out.dim = dim;
  out.n = n;
  out.mask.assign(power(n, dim), 0);
  const Real c = 0.5 * n;
  for (Eigen::Index idx = 0; idx < out.points(); ++idx) {
    Real x[3] = {0, 0, 0};
    Eigen::Index rest = idx;
    for (int a = dim - 1; a >= 0; --a) {
      x[a] = Real(rest % n) + 0.5 - c;
      rest /= n;
    }
    out.mask[idx] = inside(x) ? 1 : 0;
  }
  out.validate();
  return out;
}

Real unit_ball_volume(int dim) { return dim == 2 ? kPi : 4.0 * kPi / 3.0; }

}  // namespace

Eigen::Index PixelInclusion::count() const {
  return std::count_if(mask.begin(), mask.end(), [](std::uint8_t v) { return v != 0; });
}

void PixelInclusion::validate() const {
  if (dim != 2 && dim != 3) throw DomainError("inclusion dimension must be 2 or 3");
  if (n < 2 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of two");
  if (points() != power(n, dim)) throw DomainError("mask size does not match n^d");
  if (!(cell_length > 0.0)) throw DomainError("cell length must be positive");
  if (count() == 0) throw DomainError("inclusion mask is empty");
  const int guard = n / 4;
  for (Eigen::Index idx = 0; idx < points(); ++idx) {
    if (!mask[idx]) continue;
    Eigen::Index rest = idx;
    for (int a = 0; a < dim; ++a) {
      const int i = static_cast<int>(rest % n);
      rest /= n;
      if (i < guard || i > n - 1 - guard)
        throw DomainError("inclusion comes closer than n/4 pixels to the cell boundary");
    }
  }
}

PixelInclusion square_inclusion(int dim, int n, Real fill) {
  if (!(fill > 0.0 && fill < 1.0)) throw DomainError("fill fraction must lie in (0, 1)");
  const int side = static_cast<int>(std::lround(n * std::pow(fill, 1.0 / dim)));
  if (side < 1) throw DomainError("square side rounds to zero pixels");
  const Real half = 0.5 * side;
  // With an even n an even side is centred exactly; odd sides sit half a
  // pixel off centre.
  const Real shift = (side % 2 == 0) ? 0.0 : 0.5;
  return rasterize(dim, n, [&](const Real* x) {
    for (int a = 0; a < dim; ++a)
      if (!(x[a] - shift >= -half && x[a] - shift < half)) return false;
    return true;
  });
}

PixelInclusion disk_inclusion(int dim, int n, Real fill) {
  if (!(fill > 0.0 && fill < 1.0)) throw DomainError("fill fraction must lie in (0, 1)");
  const Real radius = n * std::pow(fill / unit_ball_volume(dim), 1.0 / dim);
  return disk_inclusion_radius(dim, n, radius);
}

PixelInclusion disk_inclusion_radius(int dim, int n, Real r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  return rasterize(dim, n, [&](const Real* x) {
    Real s = 0;
    for (int a = 0; a < dim; ++a) s += x[a] * x[a];
    return s <= r * r;
  });
}

PixelInclusion ellipse_inclusion(int n, const VectorXr& axes) {
  const int dim = static_cast<int>(axes.size());
  if ((axes.array() <= 0.0).any()) throw DomainError("semi-axes must be positive");
  return rasterize(dim, n, [&](const Real* x) {
    Real s = 0;
    for (int a = 0; a < dim; ++a) s += (x[a] / axes(a)) * (x[a] / axes(a));
    return s <= 1.0;
  });
}

PixelInclusion load_pbm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open mask file: " + path);
  std::string magic;
  in >> magic;
  auto next_int = [&]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::getline(in, tok);
        continue;
      }
      return std::stoi(tok);
    }
    throw DomainError("truncated PBM header");
  };
  const int w = next_int(), h = next_int();
  if (w != h) throw DomainError("PBM mask must be square");
  PixelInclusion out;
  out.dim = 2;
  out.n = w;
  out.mask.assign(static_cast<std::size_t>(w) * h, 0);
  if (magic == "P1") {
    for (std::size_t k = 0; k < out.mask.size(); ++k) {
      char ch;
      do {
        if (!in.get(ch)) throw DomainError("truncated PBM data");
      } while (ch != '0' && ch != '1');
      out.mask[k] = ch == '1';
    }
  } else if (magic == "P4") {
    in.get();  // single whitespace after the header
    const int row_bytes = (w + 7) / 8;
    std::vector<char> row(row_bytes);
    for (int i = 0; i < h; ++i) {
      if (!in.read(row.data(), row_bytes)) throw DomainError("truncated PBM data");
      for (int j = 0; j < w; ++j) out.mask[i * w + j] = (static_cast<unsigned char>(row[j / 8]) >> (7 - j % 8)) & 1;
    }
  } else {
    throw DomainError("unsupported mask format (expected P1 or P4 PBM)");
  }
  out.validate();
  return out;
}

PixelInclusion load_raw(const std::string& path, int dim, int n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open mask file: " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  PixelInclusion out;
  out.dim = dim;
  out.n = n;
  if (static_cast<Eigen::Index>(bytes.size()) != power(n, dim)) throw DomainError("raw mask size does not match n^d");
  out.mask.resize(bytes.size());
  std::transform(bytes.begin(), bytes.end(), out.mask.begin(), [](char b) { return b != 0 ? 1 : 0; });
  out.validate();
  return out;
}

DipoleSolution solve_dipole(const PixelInclusion& inclusion, Complex eps1, const VectorXr& direction,
                            const GridSolveOptions& options) {
  inclusion.validate();
  const int d = inclusion.dim;
  if (direction.size() != d) throw DomainError("applied direction has the wrong dimension");
  if (!std::isfinite(eps1.real()) || !std::isfinite(eps1.imag())) throw DomainError("eps1 must be finite");

  std::vector<Eigen::Index> sites;
  for (Eigen::Index idx = 0; idx < inclusion.points(); ++idx)
    if (inclusion.mask[idx]) sites.push_back(idx);
  const Eigen::Index m = static_cast<Eigen::Index>(sites.size());

  DipoleSolution out;
  const Complex contrast = eps1 - 1.0;
  if (contrast == Complex(0.0)) {
    out.column = VectorXc::Zero(d);
    out.field = VectorXc::Zero(d * m);
    for (int c = 0; c < d; ++c) out.field.segment(c * m, m).setConstant(direction(c));
    return out;
  }

  // Lippmann-Schwinger with reference medium 1: e + Gamma((eps - 1) e) = E0.
  // The polarization vanishes off the inclusion, so the unknown is e restricted
  // to the inclusion pixels.
  FftGrid grid(d, inclusion.n);
  MatrixXc work(grid.size(), d);
  auto apply = [&](const VectorXc& e) {
    work.setZero();
    for (int c = 0; c < d; ++c)
      for (Eigen::Index s = 0; s < m; ++s) work(sites[s], c) = contrast * e(c * m + s);
    grid.apply_gamma(work);
    VectorXc y = e;
    for (int c = 0; c < d; ++c)
      for (Eigen::Index s = 0; s < m; ++s) y(c * m + s) += work(sites[s], c);
    return y;
  };
  VectorXc rhs(d * m);
  for (int c = 0; c < d; ++c) rhs.segment(c * m, m).setConstant(direction(c));
  VectorXc e = rhs;
  const GmresResult res = gmres(apply, rhs, e, options.tol, options.restart, options.max_iter);
  if (!res.converged)
    throw ConvergenceError("solve_dipole: GMRES did not reach the requested residual", res.history,
                           "periodic cell problem");
  out.column.resize(d);
  for (int c = 0; c < d; ++c) out.column(c) = contrast * e.segment(c * m, m).mean();
  out.field = std::move(e);
  out.residual = res.residual;
  out.iterations = res.iterations;
  out.history = res.history;
  return out;
}

PolarizabilityEstimate polarizability_tensor(const PixelInclusion& inclusion, Complex eps1,
                                             const GridSolveOptions& options) {
  const int d = inclusion.dim;
  PolarizabilityEstimate out;
  out.alpha_over_volume.resize(d, d);
  for (int c = 0; c < d; ++c) {
    const DipoleSolution sol = solve_dipole(inclusion, eps1, VectorXr::Unit(d, c), options);
    out.alpha_over_volume.col(c) = sol.column;
    out.residual = std::max(out.residual, sol.residual);
  }
  out.fill_fractions = {inclusion.fill_fraction()};
  return out;
}

PolarizabilityEstimate extrapolate_dilute(const std::vector<PolarizabilityEstimate>& estimates) {
  if (estimates.size() < 2) throw DomainError("extrapolate_dilute: need at least two fill fractions");
  std::vector<Real> fills;
  for (const auto& e : estimates) {
    if (e.fill_fractions.size() != 1) throw DomainError("extrapolate_dilute: inputs must be raw estimates");
    fills.push_back(e.fill_fractions.front());
  }
  for (std::size_t k = 1; k < fills.size(); ++k)
    if (!(fills[k] * 2.0 <= fills[k - 1] * (1.0 + 1e-12)))
      throw DomainError("extrapolate_dilute: fill fractions must decrease by at least a factor 2");
  const auto& a1 = estimates[estimates.size() - 2];
  const auto& a2 = estimates.back();
  const Real p1 = fills[fills.size() - 2], p2 = fills.back();
  PolarizabilityEstimate out;
  out.alpha_over_volume =
      a2.alpha_over_volume - (p2 / (p1 - p2)) * (a1.alpha_over_volume - a2.alpha_over_volume);
  out.residual = std::max(a1.residual, a2.residual);
  out.fill_fractions = fills;
  out.extrapolation_increment = (out.alpha_over_volume - a2.alpha_over_volume).norm();
  return out;
}

}  // namespace wavebound
