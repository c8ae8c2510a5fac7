// wavebound command-line front end. Every subcommand takes its parameters from
// a JSON config (--config) and/or a few shorthand flags; results are CSV/JSON.
#include <CLI11.hpp>
#include <json.hpp>

#include <wavebound/acceptance.hpp>
#include <wavebound/backscatter.hpp>
#include <wavebound/bounds.hpp>
#include <wavebound/grid.hpp>
#include <wavebound/mie.hpp>
#include <wavebound/parallel.hpp>
#include <wavebound/shapes.hpp>
#include <wavebound/y_problem.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

using nlohmann::json;
using namespace wavebound;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------- formatting

// Shortest representation that round-trips.
std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string cplx(Complex z) { return num(z.real()) + "," + num(z.imag()); }

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

std::string matrix_csv(const MatrixXc& m) {
  std::string out = "i,j,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out += std::to_string(i) + "," + std::to_string(j) + "," + cplx(m(i, j)) + "\n";
  return out;
}

// ---------------------------------------------------------------- parameters

// Command parameters with strict key checking: every key must be declared.
class Params {
 public:
  Params(json obj, const char* where) : obj_(std::move(obj)), where_(where) {
    if (!obj_.is_object()) throw DomainError(std::string(where) + ": parameters must be a JSON object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& item : obj_.items())
      if (!ok.count(item.key())) throw DomainError(where_ + ": unknown key '" + item.key() + "'");
  }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& raw(const char* key) const {
    if (!has(key)) throw DomainError(where_ + ": missing required key '" + key + "'");
    return obj_.at(key);
  }

  template <class T>
  T get(const char* key) const {
    try {
      return raw(key).get<T>();
    } catch (const json::exception&) {
      throw DomainError(where_ + ": key '" + key + "' has the wrong type");
    }
  }
  template <class T>
  T get(const char* key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  Complex complex(const char* key) const { return to_complex(raw(key), key); }
  Complex complex(const char* key, Complex fallback) const { return has(key) ? complex(key) : fallback; }

  std::vector<Real> reals(const char* key) const {
    const json& v = raw(key);
    if (v.is_number()) return {v.get<Real>()};
    return get<std::vector<Real>>(key);
  }

  Params sub(const char* key) const { return Params(raw(key), (where_ + "." + key).c_str()); }

  Complex to_complex(const json& v, const std::string& key) const {
    if (v.is_number()) return Complex(v.get<Real>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return Complex(v[0].get<Real>(), v[1].get<Real>());
    throw DomainError(where_ + ": key '" + key + "' must be a number or [re, im]");
  }

  MatrixXc matrix(const char* key) const {
    const json& rows = raw(key);
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
      throw DomainError(where_ + ": key '" + key + "' must be a non-empty array of rows");
    MatrixXc m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != rows[0].size())
        throw DomainError(where_ + ": ragged matrix '" + key + "'");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = to_complex(rows[i][j], key);
    }
    return m;
  }

 private:
  json obj_;
  std::string where_;
};

// ---------------------------------------------------------------- outputs

struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  std::string stdout_text;
  int exit_code = 0;

  void add(const std::string& name, const std::string& content) { files.emplace_back(name, content); }
};

// Each file is written to a temporary sibling and renamed into place.
void write_artifacts(const Artifacts& a, const std::string& out_dir) {
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  for (const auto& [name, content] : a.files) {
    const fs::path target = fs::path(out_dir) / name;
    const fs::path tmp = fs::path(out_dir) / ("." + name + ".tmp." + std::to_string(::getpid()));
    {
      std::ofstream out(tmp, std::ios::binary);
      out << content;
      if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
  }
}

// ---------------------------------------------------------------- shared builders

LossConvention loss_of(const Params& p) { return LossConvention{p.get<bool>("enforce_loss", true)}; }

AcousticMedia media_of(const Params& p) {
  const Params m = p.sub("media");
  m.allow({"rho0", "kappa0", "rho1", "kappa1", "omega"});
  AcousticMedia out;
  out.rho0 = m.get<Real>("rho0", 1.0);
  out.kappa0 = m.get<Real>("kappa0", 1.0);
  out.rho1 = m.complex("rho1", 1.0);
  out.kappa1 = m.complex("kappa1", 1.0);
  out.omega = m.get<Real>("omega", 1.0);
  return out;
}

PlaneWave wave_of(const Params& p) {
  PlaneWave w;
  w.amplitude = p.complex("amplitude", 1.0);
  if (p.has("direction")) {
    const auto d = p.get<std::vector<Real>>("direction");
    if (d.size() != 3) throw DomainError("direction must have three components");
    w.direction = Vector3r(d[0], d[1], d[2]);
  }
  return w;
}

// Radii from "radius" or "k0a" (scalar or list).
std::vector<Real> radii_of(const Params& p, const AcousticMedia& m) {
  if (p.has("radius") == p.has("k0a")) throw DomainError("give exactly one of 'radius' and 'k0a'");
  if (p.has("radius")) return p.reals("radius");
  std::vector<Real> r;
  m.validate(LossConvention{false});
  for (Real x : p.reals("k0a")) r.push_back(x / m.k0());
  return r;
}

PixelInclusion inclusion_from(const Params& p, std::size_t index, std::size_t* count) {
  const std::string shape = p.get<std::string>("shape");
  const int dim = p.get<int>("dim", 2);
  const int n = p.get<int>("n", 512);
  if (shape == "disk" || shape == "square") {
    const auto fills = p.reals("fill_fractions");
    *count = fills.size();
    return shape == "disk" ? disk_inclusion(dim, n, fills.at(index)) : square_inclusion(dim, n, fills.at(index));
  }
  if (shape == "ellipse") {
    const auto list = p.get<std::vector<std::vector<Real>>>("semi_axes");
    *count = list.size();
    const auto& ax = list.at(index);
    return ellipse_inclusion(n, Eigen::Map<const VectorXr>(ax.data(), static_cast<Eigen::Index>(ax.size())));
  }
  if (shape == "pbm" || shape == "raw") {
    const auto paths = p.get<std::vector<std::string>>("paths");
    *count = paths.size();
    return shape == "pbm" ? load_pbm(paths.at(index)) : load_raw(paths.at(index), dim, n);
  }
  throw DomainError("inclusion.shape must be disk, square, ellipse, pbm or raw");
}

std::vector<PixelInclusion> inclusions_of(const Params& p) {
  p.allow({"shape", "dim", "n", "fill_fractions", "semi_axes", "paths"});
  std::size_t count = 0;
  std::vector<PixelInclusion> out{inclusion_from(p, 0, &count)};
  for (std::size_t i = 1; i < count; ++i) out.push_back(inclusion_from(p, i, &count));
  return out;
}

std::string arcs_csv(const std::vector<MobiusArcd>& arcs, int samples) {
  std::string out = "param,re,im,curve_id\n";
  for (std::size_t c = 0; c < arcs.size(); ++c) {
    const auto& arc = arcs[c];
    for (int k = 0; k < samples; ++k) {
      const Real t = arc.param_lo() + (arc.param_hi() - arc.param_lo()) * Real(k) / Real(samples - 1);
      out += num(t) + "," + cplx(arc(t)) + "," + std::to_string(c) + "\n";
    }
  }
  return out;
}

json region_json(const BoundRegion& r) {
  json j;
  j["degenerate"] = r.degenerate();
  if (r.degenerate()) j["segment"] = {cjson(r.segment->first), cjson(r.segment->second)};
  else j["interior_witness"] = cjson(r.interior_witness);
  j["arcs"] = r.boundary.size();
  return j;
}

// ---------------------------------------------------------------- commands

Artifacts cmd_hs_interval(const Params& p) {
  p.allow({"chi1", "dim"});
  const auto [lo, hi] = hs_interval(Contrast(p.complex("chi1"), p.get<int>("dim", 3)));
  Artifacts a;
  a.add("hs_interval.csv", "lower,upper\n" + num(lo) + "," + num(hi) + "\n");
  a.stdout_text = num(lo) + "," + num(hi) + "\n";
  return a;
}

Artifacts cmd_bounds_region(const Params& p) {
  p.allow({"chi1", "dim", "kind", "samples", "enforce_loss", "volume_fraction", "point"});
  const Complex chi1 = p.complex("chi1");
  const int dim = p.get<int>("dim", 3);
  const int samples = p.get<int>("samples", 201);
  if (samples < 2) throw DomainError("samples must be at least 2");
  BoundRegion region;
  json summary;
  if (p.has("volume_fraction")) {
    // Effective permittivity of a composite with unit-permittivity host.
    const CompositeBounds cb = bm_composite_region(chi1 + 1.0, p.get<Real>("volume_fraction"), dim);
    const std::string kind = p.get<std::string>("kind", "bergman_milton");
    if (kind == "milton" && !cb.milton) throw DomainError("milton bounds require dim = 2");
    region = kind == "milton" ? *cb.milton : cb.bergman_milton;
    summary["quantity"] = "effective permittivity";
  } else {
    const std::string kind = p.get<std::string>("kind", "bergman_milton");
    if (kind != "bergman_milton" && kind != "milton") throw DomainError("kind must be bergman_milton or milton");
    region = polarizability_region(Contrast(chi1, dim), kind == "milton" ? RegionKind::milton : RegionKind::bergman_milton,
                                   loss_of(p));
    summary["quantity"] = "Tr(alpha)/(d|Omega|)";
  }
  summary["region"] = region_json(region);
  if (p.has("point")) {
    const Complex z = p.complex("point");
    summary["point"] = cjson(z);
    summary["contains"] = region_contains(region, z);
    summary["margin"] = region_margin(region, z);
  }
  Artifacts a;
  a.add("region_arcs.csv", arcs_csv(region.boundary, samples));
  a.add("region.json", summary.dump(2) + "\n");
  a.stdout_text = summary.dump(2) + "\n";
  return a;
}

Artifacts cmd_milton2d(const Params& p) {
  p.allow({"chi1", "samples", "enforce_loss"});
  const Contrast c(p.complex("chi1"), 2);
  const auto [m1, m2] = milton2d_curves(c);
  const int samples = p.get<int>("samples", 201);
  if (samples < 2) throw DomainError("samples must be at least 2");
  json summary;
  summary["curve_endpoints"] = {{cjson(m1(m1.param_lo())), cjson(m1(m1.param_hi()))},
                                {cjson(m2(m2.param_lo())), cjson(m2(m2.param_hi()))}};
  summary["region"] = region_json(polarizability_region(c, RegionKind::milton, loss_of(p)));
  Artifacts a;
  a.add("milton_arcs.csv", arcs_csv({m1, m2}, samples));
  a.add("milton.json", summary.dump(2) + "\n");
  a.stdout_text = summary.dump(2) + "\n";
  return a;
}

Artifacts cmd_shape_alpha(const Params& p) {
  p.allow({"chi1", "shape"});
  const Params s = p.sub("shape");
  s.allow({"kind", "dim", "depolarization_factors", "core_fraction"});
  InclusionShape shape;
  const std::string kind = s.get<std::string>("kind");
  if (kind == "sphere_or_disk") shape.kind = ShapeKind::sphere_or_disk;
  else if (kind == "ellipse_or_ellipsoid") shape.kind = ShapeKind::ellipse_or_ellipsoid;
  else if (kind == "coated_sphere_or_shell") shape.kind = ShapeKind::coated_sphere_or_shell;
  else throw DomainError("shape.kind must be sphere_or_disk, ellipse_or_ellipsoid or coated_sphere_or_shell");
  shape.dim = s.get<int>("dim", 3);
  if (s.has("depolarization_factors")) {
    const auto f = s.get<std::vector<Real>>("depolarization_factors");
    shape.depolarization_factors = Eigen::Map<const VectorXr>(f.data(), static_cast<Eigen::Index>(f.size()));
  }
  shape.core_fraction = s.get<Real>("core_fraction", 0.0);
  const Complex chi1 = p.complex("chi1");
  const Complex alpha = shape_polarizability(shape, chi1);
  json summary;
  summary["alpha_trace_over_d_volume"] = cjson(alpha);
  if (chi1.imag() != 0.0 || chi1.real() != 0.0) {
    const BoundRegion lens = polarizability_region(Contrast(chi1, shape.dim), RegionKind::bergman_milton,
                                                   LossConvention{false});
    summary["bergman_milton_margin"] = region_margin(lens, alpha);
  }
  Artifacts a;
  a.add("alpha.csv", "re,im\n" + cplx(alpha) + "\n");
  a.add("alpha.json", summary.dump(2) + "\n");
  a.stdout_text = "re,im\n" + cplx(alpha) + "\n";
  return a;
}

Artifacts cmd_grid_alpha(const Params& p) {
  p.allow({"eps1", "inclusion", "tol", "max_iter", "restart", "extrapolate"});
  const Complex eps1 = p.complex("eps1");
  GridSolveOptions opt;
  opt.tol = p.get<Real>("tol", opt.tol);
  opt.max_iter = p.get<int>("max_iter", opt.max_iter);
  opt.restart = p.get<int>("restart", opt.restart);
  const auto shapes = inclusions_of(p.sub("inclusion"));
  std::vector<PolarizabilityEstimate> est;
  for (const auto& s : shapes) est.push_back(polarizability_tensor(s, eps1, opt));
  const bool extrapolate = p.get<bool>("extrapolate", shapes.size() >= 2);
  const PolarizabilityEstimate result = extrapolate ? extrapolate_dilute(est) : est.front();

  json summary;
  summary["trace_average"] = cjson(result.trace_average());
  summary["residual"] = result.residual;
  summary["extrapolated"] = extrapolate;
  summary["extrapolation_increment"] = result.extrapolation_increment;
  json per = json::array();
  for (const auto& e : est)
    per.push_back({{"fill_fraction", e.fill_fractions.front()}, {"trace_average", cjson(e.trace_average())},
                   {"residual", e.residual}});
  summary["estimates"] = per;
  const int dim = shapes.front().dim;
  if (eps1 != Complex(1.0)) {
    const Contrast c(eps1 - 1.0, dim);
    summary["bergman_milton_margin"] =
        region_margin(polarizability_region(c, RegionKind::bergman_milton, LossConvention{false}), result.trace_average());
    if (dim == 2)
      summary["milton_margin"] =
          region_margin(polarizability_region(c, RegionKind::milton, LossConvention{false}), result.trace_average());
  }
  Artifacts a;
  a.add("alpha_tensor.csv", matrix_csv(result.alpha_over_volume));
  a.add("grid_alpha.json", summary.dump(2) + "\n");
  a.stdout_text = summary.dump(2) + "\n";
  return a;
}

Artifacts cmd_y_solve(const Params& p) {
  p.allow({"instance", "dielectric_cell", "e1", "eps1", "eps0"});
  if (p.has("instance") == p.has("dielectric_cell")) throw DomainError("give exactly one of 'instance' and 'dielectric_cell'");
  std::optional<YProblemInstance> inst;
  if (p.has("instance")) {
    const Params i = p.sub("instance");
    i.allow({"basis_E", "basis_V", "L"});
    inst.emplace(i.matrix("basis_E"), i.matrix("basis_V"), i.matrix("L"));
  } else {
    const Params d = p.sub("dielectric_cell");
    d.allow({"inclusion", "eps1"});
    const auto shapes = inclusions_of(d.sub("inclusion"));
    inst.emplace(dielectric_cell_instance(shapes.front(), d.complex("eps1")));
  }
  const MatrixXc y = extract_y_star(*inst);
  json summary;
  summary["dimension"] = y.rows();
  if (p.has("e1")) {
    const json& e = p.raw("e1");
    if (!e.is_array() || static_cast<Eigen::Index>(e.size()) != y.rows())
      throw DomainError("e1 must list one coordinate per column of basis_V");
    VectorXc e1(y.rows());
    for (Eigen::Index k = 0; k < y.rows(); ++k) e1(k) = p.to_complex(e[k], "e1");
    summary["power_identity_residual"] = power_identity_residual(*inst, e1);
    summary["power"] = cjson(e1.dot(y * e1));
  }
  Artifacts a;
  a.add("y_star.csv", matrix_csv(y));
  if (p.has("eps1")) {
    const MatrixXc alpha = discrete_polarizability(y, p.complex("eps1"), p.complex("eps0", 1.0));
    a.add("alpha_tensor.csv", matrix_csv(alpha));
    summary["alpha_trace_average"] = cjson(alpha.trace() / Real(alpha.rows()));
  }
  a.add("y_solve.json", summary.dump(2) + "\n");
  a.stdout_text = matrix_csv(y);
  return a;
}

Artifacts cmd_network_y(const Params& p) {
  p.allow({"network"});
  const NetworkSpec spec = network_from_json(p.raw("network").dump());
  const YProblemInstance inst = network_to_instance(spec);
  const MatrixXc y = extract_y_star(inst);
  Artifacts a;
  a.add("y_star.csv", matrix_csv(y));
  a.stdout_text = matrix_csv(y);
  return a;
}

Artifacts cmd_mie_solve(const Params& p) {
  p.allow({"media", "radius", "k0a", "amplitude", "direction", "l_max", "enforce_loss", "angles_deg", "dimensional"});
  const AcousticMedia m = media_of(p);
  const auto radii = radii_of(p, m);
  if (radii.size() != 1) throw DomainError("mie-solve takes a single radius");
  const auto sol = solve_sphere(m, wave_of(p), radii[0], loss_of(p), p.get<int>("l_max", 0));
  std::string coeffs = "l,A_re,A_im,B_re,B_im\n";
  for (int l = 0; l <= sol.l_max; ++l)
    coeffs += std::to_string(l) + "," + cplx(sol.A(l)) + "," + cplx(sol.B(l)) + "\n";
  Artifacts a;
  a.add("coefficients.csv", coeffs);
  if (p.has("angles_deg")) {
    // Nondimensional far field 4 pi P_inf / (|p| k0^2 |Omega|) unless raw output is requested.
    const bool raw = p.get<bool>("dimensional", false);
    const Real volume = 4.0 * kPi * std::pow(sol.radius, 3) / 3.0;
    const Real norm = raw ? 1.0 : 4.0 * kPi / (std::abs(sol.wave.amplitude) * sol.k0 * sol.k0 * volume);
    // Angles are measured from the incident direction in a plane containing it.
    const Vector3r d = sol.wave.direction;
    Vector3r perp = d.unitOrthogonal();
    std::string ff = "theta_deg,re,im\n";
    for (Real deg : p.reals("angles_deg")) {
      const Real t = deg * kPi / 180.0;
      const Complex v = sol.wave.amplitude == Complex(0.0) ? Complex(0.0) : far_field(sol, std::cos(t) * d + std::sin(t) * perp);
      ff += num(deg) + "," + cplx(norm * v) + "\n";
    }
    a.add("far_field.csv", ff);
  }
  a.stdout_text = coeffs;
  return a;
}

Artifacts cmd_optical_check(const Params& p) {
  p.allow({"media", "radius", "k0a", "amplitude", "direction", "enforce_loss", "tolerance"});
  const AcousticMedia m = media_of(p);
  const Real tol = p.get<Real>("tolerance", 1e-6);
  std::string csv = "k0a,w_budget,w_forward,w_volume,residual\n";
  Real worst = 0;
  for (Real r : radii_of(p, m)) {
    const auto c = optical_theorem_residual(solve_sphere(m, wave_of(p), r, loss_of(p)));
    csv += num(m.k0() * r) + "," + num(c.w_budget) + "," + num(c.w_forward) + "," + num(c.w_volume) + "," +
           num(c.residual) + "\n";
    worst = std::max(worst, c.residual);
  }
  Artifacts a;
  a.add("optical_check.csv", csv);
  a.stdout_text = csv;
  if (!(worst < tol)) {
    a.stdout_text += "optical theorem residual " + num(worst) + " exceeds tolerance " + num(tol) + "\n";
    a.exit_code = 3;
  }
  return a;
}

Artifacts cmd_backscatter_bound(const Params& p) {
  p.allow({"media", "radius", "k0a", "amplitude", "direction", "enforce_loss", "dimensional", "two_omega_t0"});
  const AcousticMedia m = media_of(p);
  const bool raw = p.get<bool>("dimensional", false);
  std::string csv = std::string("k0a,z_re,z_im,abs_z,rhs,margin") + (raw ? ",P_re,P_im" : "") +
                    (p.has("two_omega_t0") ? ",lhs_t0,rhs_t0" : "") + "\n";
  bool violated = false;
  for (Real r : radii_of(p, m)) {
    const auto sol = solve_sphere(m, wave_of(p), r, loss_of(p));
    const auto b = backscatter_bound(sol);
    csv += num(b.k0 * b.radius) + "," + cplx(b.amplitude) + "," + num(b.lhs) + "," + num(b.rhs_86) + "," + num(b.margin);
    if (raw) csv += "," + cplx(far_field(sol, -sol.wave.direction));
    if (p.has("two_omega_t0")) {
      const Real t = p.get<Real>("two_omega_t0");
      csv += "," + num(b.lhs_85(t)) + "," + num(b.rhs_85(t));
      violated = violated || b.lhs_85(t) > b.rhs_85(t) + 1e-12;
    }
    csv += "\n";
    violated = violated || !(b.margin >= 0.0);
  }
  Artifacts a;
  a.add("backscatter.csv", csv);
  a.stdout_text = csv;
  if (violated) {
    a.stdout_text += "backscatter bound violated (backscattering amplitude bound)\n";
    a.exit_code = 3;
  }
  return a;
}

Artifacts cmd_wrap_region(const Params& p) {
  p.allow({"media", "radius", "k0a", "amplitude", "direction", "enforce_loss", "n_angles"});
  const AcousticMedia m = media_of(p);
  const auto radii = radii_of(p, m);
  if (radii.size() != 1) throw DomainError("wrap-region takes a single radius");
  const WrapRegion w = wrap_around_region(solve_sphere(m, wave_of(p), radii[0], loss_of(p)), p.get<int>("n_angles", 16));
  std::string verts = "re,im\n";
  for (const Complex& v : w.vertices) verts += cplx(v) + "\n";
  std::string planes = "theta,offset\n";
  for (std::size_t j = 0; j < w.angles.size(); ++j) planes += num(w.angles[j]) + "," + num(w.offsets[j]) + "\n";
  json summary{{"value", cjson(w.value)}, {"margin", w.margin}, {"bounded", w.bounded},
               {"strictly_interior", w.margin > 0.0}};
  Artifacts a;
  a.add("wrap_vertices.csv", verts);
  a.add("wrap_halfplanes.csv", planes);
  a.add("wrap_region.json", summary.dump(2) + "\n");
  a.stdout_text = summary.dump(2) + "\n";
  if (!(w.margin > 0.0)) a.exit_code = 3;
  return a;
}

Artifacts cmd_verify_all(const Params& p, std::uint64_t seed, int threads) {
  p.allow({"grid_n", "criteria"});
  AcceptanceOptions opt;
  opt.seed = seed;
  opt.threads = threads;
  opt.grid_n = p.get<int>("grid_n", 512);
  std::vector<int> ids;
  if (p.has("criteria")) ids = p.get<std::vector<int>>("criteria");
  else
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  Artifacts a;
  json report = json::array();
  std::string csv = "id,name,passed\n";
  bool all = true;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, opt);
    all = all && r.passed;
    char line[512];
    std::snprintf(line, sizeof line, "[%s] %2d  %s  (%.2fs)  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds, r.detail.c_str());
    std::fputs(line, stdout);
    std::fflush(stdout);
    report.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                      {"seconds", r.seconds}, {"time_limit", r.time_limit}});
    csv += std::to_string(r.id) + ",\"" + r.name + "\"," + (r.passed ? "true" : "false") + "\n";
  }
  a.add("acceptance_report.json", report.dump(2) + "\n");
  a.add("acceptance_report.csv", csv);
  a.exit_code = all ? 0 : 3;
  return a;
}

// ---------------------------------------------------------------- config

struct RunConfig {
  json params = json::object();
  std::string output_path;
  std::optional<std::uint64_t> seed;
};

RunConfig load_config(const std::string& path, const std::string& command) {
  RunConfig rc;
  if (path.empty()) return rc;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& item : doc.items()) {
    const std::string& k = item.key();
    if (k == "command") {
      if (!item.value().is_string() || item.value().get<std::string>() != command)
        throw DomainError("config 'command' does not match the subcommand '" + command + "'");
    } else if (k == "params") {
      rc.params = item.value();
    } else if (k == "output_path") {
      if (!item.value().is_string()) throw DomainError("output_path must be a string");
      rc.output_path = item.value().get<std::string>();
    } else if (k == "seed") {
      if (!item.value().is_number_unsigned()) throw DomainError("seed must be a non-negative integer");
      rc.seed = item.value().get<std::uint64_t>();
    } else {
      throw DomainError("config: unknown key '" + k + "'");
    }
  }
  return rc;
}

// "1" -> 1, "1,0.5" -> [1, 0.5]
json parse_complex_flag(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return std::stod(s);
    return json::array({std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))});
  } catch (const std::exception&) {
    throw DomainError("cannot parse complex value '" + s + "' (expected re or re,im)");
  }
}

struct Command {
  const char* name;
  const char* help;
};

const Command kCommands[] = {
    {"bounds-region", "Bergman-Milton lens (or Milton region in 2-D) bounding Tr(alpha)/(d|Omega|) for a "
                      "contrast; with volume_fraction, the finite-volume-fraction bounds on the effective "
                      "permittivity. Writes the bounding arcs (param,re,im,curve_id)."},
    {"hs-interval", "Hashin-Shtrikman interval for Tr(alpha)/(d|Omega|) at real contrast chi1."},
    {"milton2d", "The two 2-D Milton curves (images of the HS-type interval under the rotation map) and the "
                 "restricted region they cut from the lens."},
    {"shape-alpha", "Closed-form polarizability of a ball, ellipsoid or coated ball (Clausius-Mossotti and "
                    "depolarization-factor formulas), with its margin inside the lens."},
    {"grid-alpha", "Periodic-cell FFT solve of the quasistatic cell problem (Lippmann-Schwinger with the "
                   "periodic Green's operator), extrapolated to the dilute limit."},
    {"y-solve", "Abstract Y-problem: Y* from subspaces E, V and operator L, the power identity "
                "<e1, Y* e1> = <e2, L e2>, and the polarizability relation alpha = (eps1-eps0)(I-(Y*+eps1)^-1 (eps1-eps0))."},
    {"network-y", "Y* (driving-point admittance) of an impedance network via the Y-problem with Kirchhoff "
                  "subspaces."},
    {"mie-solve", "Partial-wave solution for a penetrable fluid sphere: coefficients A_l, B_l and the "
                  "nondimensional far field."},
    {"optical-check", "Optical theorem: extinguished power from the power budget, the forward amplitude and "
                      "the interior volume integral."},
    {"backscatter-bound", "Shape-independent bound on the backscattering amplitude from the density and "
                          "modulus loss terms, plus the time-shifted form."},
    {"wrap-region", "Intersection of half-planes, one per time shift, that must contain the backscattering "
                    "amplitude."},
    {"verify-all", "Run the full acceptance suite and emit a pass/fail report."},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavebound: bounds on polarizabilities and scattering amplitudes of passive inclusions"};
  app.require_subcommand(1);
  std::string config, out_dir, chi1, eps1;
  std::optional<std::uint64_t> seed;
  int threads = 0, dim = 0;
  app.add_option("--config", config, "JSON config: {\"command\", \"params\", \"output_path\", \"seed\"}");
  app.add_option("--out", out_dir, "Directory for output artifacts (files are written only when set)");
  app.add_option("--seed", seed, "Seed for randomized sweeps");
  app.add_option("--threads", threads, "Worker threads (default: WAVEBOUND_THREADS, then all cores)");
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : kCommands) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    s->fallthrough();
    subs[c.name] = s;
  }
  for (const char* name : {"hs-interval", "bounds-region", "milton2d", "shape-alpha"}) {
    subs[name]->add_option("--chi1", chi1, "Contrast chi1 = eps1 - 1 as re or re,im");
  }
  for (const char* name : {"hs-interval", "bounds-region"}) subs[name]->add_option("--dim", dim, "Dimension (2 or 3)");
  subs["grid-alpha"]->add_option("--eps1", eps1, "Inclusion permittivity as re or re,im");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (const auto& [name, s] : subs)
    if (s->parsed()) command = name;

  try {
    RunConfig rc = load_config(config, command);
    if (!chi1.empty()) rc.params["chi1"] = parse_complex_flag(chi1);
    if (!eps1.empty()) rc.params["eps1"] = parse_complex_flag(eps1);
    if (dim != 0) rc.params["dim"] = dim;
    if (!out_dir.empty()) rc.output_path = out_dir;
    const std::uint64_t run_seed = seed ? *seed : rc.seed.value_or(20240611);
    const int run_threads = resolve_threads(threads);
    const Params p(rc.params, command.c_str());

    Artifacts a;
    if (command == "hs-interval") a = cmd_hs_interval(p);
    else if (command == "bounds-region") a = cmd_bounds_region(p);
    else if (command == "milton2d") a = cmd_milton2d(p);
    else if (command == "shape-alpha") a = cmd_shape_alpha(p);
    else if (command == "grid-alpha") a = cmd_grid_alpha(p);
    else if (command == "y-solve") a = cmd_y_solve(p);
    else if (command == "network-y") a = cmd_network_y(p);
    else if (command == "mie-solve") a = cmd_mie_solve(p);
    else if (command == "optical-check") a = cmd_optical_check(p);
    else if (command == "backscatter-bound") a = cmd_backscatter_bound(p);
    else if (command == "wrap-region") a = cmd_wrap_region(p);
    else if (command == "verify-all") a = cmd_verify_all(p, run_seed, run_threads);

    write_artifacts(a, rc.output_path);
    std::cout << a.stdout_text;
    return a.exit_code;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what();
    if (!e.identity().empty()) std::cerr << " [identity: " << e.identity() << "]";
    std::cerr << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
