#include "spdc/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "spdc/error.hpp"
#include "spdc/kernels.hpp"
#include "spdc/units.hpp"

namespace spdc {

using units::nm_from_omega;
using units::um_from_omega;

double sigma_from_fwhm(double lambda_p_nm, double fwhm_nm) {
  if (!(fwhm_nm > 0.0) || !std::isfinite(fwhm_nm)) {
    throw std::invalid_argument(fmt::format("pump FWHM must be positive, got {} nm", fwhm_nm));
  }
  if (!(lambda_p_nm > 0.0)) throw std::invalid_argument("pump wavelength must be positive");
  const double lp = units::nm_to_um(lambda_p_nm);
  const double d_omega_fwhm = units::kTwoPi * units::kSpeedOfLightUm * units::nm_to_um(fwhm_nm) / (lp * lp);
  return d_omega_fwhm / std::sqrt(2.0 * std::numbers::ln2);
}

double PumpSpec::omega_p() const { return units::omega_from_nm(lambda_p_nm); }
double PumpSpec::sigma_p() const { return sigma_from_fwhm(lambda_p_nm, fwhm_nm); }

void PumpSpec::validate() const {
  if (!(lambda_p_nm > 0.0)) throw std::invalid_argument("pump wavelength must be positive");
  if (!(fwhm_nm > 0.0)) throw std::invalid_argument(fmt::format("pump FWHM must be positive, got {} nm", fwhm_nm));
  if (fwhm_nm > 0.1 * lambda_p_nm) {
    throw std::invalid_argument("pump FWHM must be small compared with the pump wavelength");
  }
}

double pump_envelope(double omega_s, double omega_i, const PumpSpec& pump) {
  const double x = (omega_s + omega_i - pump.omega_p()) / pump.sigma_p();
  return std::exp(-x * x);
}

void CrystalGeometry::validate() const {
  if (!(length_mm > 0.0)) throw std::invalid_argument(fmt::format("crystal length must be positive, got {} mm", length_mm));
  if (!(poling_period_um > 0.0)) throw std::invalid_argument("poling period must be positive");
}

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double half_length_um(const CrystalGeometry& g) { return 0.5 * g.length_mm * 1e3; }

}  // namespace

double pm_amplitude(const Medium& medium, double omega_s, double omega_i, const CrystalGeometry& geometry,
                    const TypeIIAssignment& a) {
  const double dk = phase_mismatch_um(medium, a, um_from_omega(omega_s + omega_i), um_from_omega(omega_s),
                                      um_from_omega(omega_i), geometry.poling_period_um, geometry.temperature_c);
  return sinc(dk * half_length_um(geometry));
}

// --- grids -------------------------------------------------------------------

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return v;
}

double spacing(const std::vector<double>& axis) {
  return (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.size() < SpectralGrid::kMinPoints) {
    throw std::invalid_argument(
        fmt::format("{} axis has {} points; at least {} are required", name, axis.size(), SpectralGrid::kMinPoints));
  }
  for (std::size_t k = 1; k < axis.size(); ++k) {
    if (!(axis[k] > axis[k - 1])) throw std::invalid_argument(fmt::format("{} axis is not strictly increasing", name));
  }
  if (!(axis.front() > 0.0)) throw std::invalid_argument(fmt::format("{} axis has non-positive frequencies", name));
  const double h = spacing(axis);
  for (std::size_t k = 1; k < axis.size(); ++k) {
    if (std::abs((axis[k] - axis[k - 1]) - h) > 1e-6 * h) {
      throw std::invalid_argument(fmt::format("{} axis is not uniformly spaced", name));
    }
  }
}

}  // namespace

SpectralGrid SpectralGrid::square(double center, double half_span, std::size_t n) {
  if (n < kMinPoints) throw std::invalid_argument(fmt::format("grid needs at least {} points, got {}", kMinPoints, n));
  if (!(half_span > 0.0) || !(half_span < center)) {
    throw std::invalid_argument("grid half span must be positive and smaller than the center frequency");
  }
  SpectralGrid g;
  g.omega_s = linspace(center - half_span, center + half_span, n);
  g.omega_i = g.omega_s;
  return g;
}

SpectralGrid SpectralGrid::uniform(double s_lo, double s_hi, std::size_t n_s, double i_lo, double i_hi,
                                   std::size_t n_i) {
  SpectralGrid g;
  g.omega_s = linspace(s_lo, s_hi, n_s);
  g.omega_i = linspace(i_lo, i_hi, n_i);
  g.validate();
  return g;
}

double SpectralGrid::d_omega_s() const { return spacing(omega_s); }
double SpectralGrid::d_omega_i() const { return spacing(omega_i); }

void SpectralGrid::validate() const {
  check_axis(omega_s, "signal");
  check_axis(omega_i, "idler");
}

// --- JSA -----------------------------------------------------------------------

double JointSpectralAmplitude::norm_squared() const {
  return values.cwiseAbs2().sum() * grid.d_omega_s() * grid.d_omega_i();
}

std::pair<double, double> JointSpectralAmplitude::peak_nm() const {
  Eigen::Index j = 0;
  Eigen::Index k = 0;
  values.cwiseAbs2().maxCoeff(&j, &k);
  return {nm_from_omega(grid.omega_s[j]), nm_from_omega(grid.omega_i[k])};
}

double JointSpectralAmplitude::boundary_ratio() const {
  const Eigen::MatrixXd a = values.cwiseAbs();
  const double peak = a.maxCoeff();
  if (!(peak > 0.0)) return 0.0;
  const Eigen::Index r = a.rows() - 1;
  const Eigen::Index c = a.cols() - 1;
  const double edge = std::max({a.row(0).maxCoeff(), a.row(r).maxCoeff(), a.col(0).maxCoeff(), a.col(c).maxCoeff()});
  return edge / peak;
}

namespace {

JointSpectralAmplitude fill_jsa(const Medium& medium, const CrystalGeometry& geometry, const PumpSpec& pump,
                                const SpectralGrid& grid, Execution exec, const TypeIIAssignment& a) {
  geometry.validate();
  pump.validate();
  grid.validate();

  const auto& ms = medium[a.signal];
  const auto& mi = medium[a.idler];
  const auto& mp = medium[a.pump];
  const double t = geometry.temperature_c;
  const double half_l = half_length_um(geometry);
  const double grating = units::kTwoPi / geometry.poling_period_um;
  const double omega_p = pump.omega_p();
  const double sigma_p = pump.sigma_p();

  // Signal and idler wave numbers depend on one axis each.
  std::vector<double> ks(grid.n_s());
  std::vector<double> ki(grid.n_i());
  for (std::size_t j = 0; j < ks.size(); ++j) ks[j] = wave_number(ms, um_from_omega(grid.omega_s[j]), t);
  for (std::size_t k = 0; k < ki.size(); ++k) ki[k] = wave_number(mi, um_from_omega(grid.omega_i[k]), t);
  // Touch both ends of the pump range up front so domain errors surface
  // outside the parallel region.
  wave_number(mp, um_from_omega(grid.omega_s.front() + grid.omega_i.front()), t);
  wave_number(mp, um_from_omega(grid.omega_s.back() + grid.omega_i.back()), t);

  JointSpectralAmplitude jsa;
  jsa.grid = grid;
  jsa.meta = {medium.crystal(), medium.tag(), a, geometry, pump};
  jsa.values.resize(static_cast<Eigen::Index>(grid.n_s()), static_cast<Eigen::Index>(grid.n_i()));
  kernels::fill(
      jsa.values,
      [&](Eigen::Index j, Eigen::Index k) {
        const double ws = grid.omega_s[j];
        const double wi = grid.omega_i[k];
        const double x = (ws + wi - omega_p) / sigma_p;
        const double kp = wave_number(mp, um_from_omega(ws + wi), t);
        const double dk = kp - ks[j] - ki[k] + grating;
        return std::complex<double>(std::exp(-x * x) * sinc(dk * half_l), 0.0);
      },
      exec);

  const double norm2 = jsa.norm_squared();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw GridError("joint spectral amplitude vanishes on the grid; widen or recenter it");
  }
  jsa.values /= std::sqrt(norm2);
  jsa.normalized = true;
  return jsa;
}

std::string grid_description(const SpectralGrid& g) {
  return fmt::format("signal {:.3f}-{:.3f} nm, idler {:.3f}-{:.3f} nm, {}x{}", nm_from_omega(g.omega_s.back()),
                     nm_from_omega(g.omega_s.front()), nm_from_omega(g.omega_i.back()),
                     nm_from_omega(g.omega_i.front()), g.n_s(), g.n_i());
}

}  // namespace

JointSpectralAmplitude compute_jsa(const Medium& medium, const CrystalGeometry& geometry, const PumpSpec& pump,
                                   const SpectralGrid& grid, Execution exec, const TypeIIAssignment& a) {
  auto jsa = fill_jsa(medium, geometry, pump, grid, exec, a);
  const double ratio = jsa.boundary_ratio();
  if (ratio > 0.01) {
    throw GridError(fmt::format("grid too small: boundary |f| is {:.3g} of the peak ({}); use a larger span",
                                ratio, grid_description(grid)));
  }
  return jsa;
}

JointSpectralAmplitude compute_jsa_auto(const Medium& medium, const CrystalGeometry& geometry, const PumpSpec& pump,
                                        const AutoGridOptions& options, Execution exec, const TypeIIAssignment& a) {
  pump.validate();
  const double center = 0.5 * pump.omega_p();
  double half = options.start_sigmas * pump.sigma_p();
  double last_ratio = 1.0;
  for (int attempt = 0; attempt <= options.max_doublings && half < center; ++attempt, half *= 2.0) {
    const auto grid = SpectralGrid::square(center, half, options.points);
    JointSpectralAmplitude jsa;
    try {
      jsa = fill_jsa(medium, geometry, pump, grid, exec, a);
    } catch (const DomainError& e) {
      throw GridError(fmt::format("no window below {:.3g} boundary ratio fits the model ranges (last ratio "
                                  "{:.3g}): {}",
                                  options.boundary_ratio, last_ratio, e.what()));
    }
    last_ratio = jsa.boundary_ratio();
    if (last_ratio < options.boundary_ratio) return jsa;
  }
  throw GridError(fmt::format("grid span search gave up after {} doublings; boundary ratio {:.3g}",
                              options.max_doublings, last_ratio));
}

// --- purity ----------------------------------------------------------------------

double matrix_purity(const Eigen::MatrixXcd& values) {
  if (values.size() == 0) throw std::invalid_argument("purity of an empty matrix");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(values);
  const Eigen::VectorXd s2 = svd.singularValues().cwiseAbs2();
  const double total = s2.sum();
  if (!(total > 0.0)) throw std::invalid_argument("purity of a zero matrix");
  return s2.squaredNorm() / (total * total);
}

double schmidt_purity(const JointSpectralAmplitude& jsa) {
  if (!jsa.normalized || std::abs(jsa.norm_squared() - 1.0) > 1e-9) {
    throw std::invalid_argument("schmidt_purity needs a normalized joint spectral amplitude");
  }
  return matrix_purity(jsa.values);
}

DegenerateDesign gvm1_design(const Medium& medium, double temp_c, const TypeIIAssignment& a) {
  DegenerateDesign d;
  d.temperature_c = temp_c;
  d.lambda_deg_nm = gvm1_wavelength(medium, temp_c, std::nullopt, a).lambda_nm;
  d.lambda_p_nm = 0.5 * d.lambda_deg_nm;
  d.poling_period_um = degenerate_poling_period(medium, d.lambda_deg_nm, temp_c, a);
  return d;
}

PurityOptimum optimize_pump_bandwidth(const Medium& medium, const DegenerateDesign& design, double length_mm,
                                      const PurityOptions& options, const TypeIIAssignment& a) {
  if (!(options.fwhm_lo_nm > 0.0) || !(options.fwhm_hi_nm > options.fwhm_lo_nm)) {
    throw std::invalid_argument("pump bandwidth bracket must satisfy 0 < lo < hi");
  }
  const CrystalGeometry geometry{length_mm, design.poling_period_um, design.temperature_c};
  PurityOptimum best;
  const auto purity_at = [&](double log_fwhm) {
    const PumpSpec pump{design.lambda_p_nm, std::exp(log_fwhm)};
    const double p = schmidt_purity(compute_jsa_auto(medium, geometry, pump, options.grid, Execution::Parallel, a));
    ++best.evaluations;
    if (p > best.purity) best = {pump.fwhm_nm, p, best.evaluations};
    return p;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log(options.fwhm_lo_nm);
  double hi = std::log(options.fwhm_hi_nm);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = purity_at(x1);
  double f2 = purity_at(x2);
  while (hi - lo > options.log_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = purity_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = purity_at(x1);
    }
  }
  return best;
}

// --- export --------------------------------------------------------------------

std::string jsa_to_csv(const JointSpectralAmplitude& jsa) {
  const auto& m = jsa.meta;
  const auto& g = jsa.grid;
  std::string out;
  out += fmt::format("# crystal: {}\n", to_string(m.crystal));
  out += fmt::format("# source: {}\n", m.source_tag);
  out += fmt::format("# temperature_c: {:.3f}\n", m.geometry.temperature_c);
  out += fmt::format("# poling_period_um: {:.6f}\n", m.geometry.poling_period_um);
  out += fmt::format("# length_mm: {:.6f}\n", m.geometry.length_mm);
  out += fmt::format("# lambda_p_nm: {:.6f}\n", m.pump.lambda_p_nm);
  out += fmt::format("# fwhm_nm: {:.6f}\n", m.pump.fwhm_nm);
  out += fmt::format("# rows: signal, {} points, {:.6f} to {:.6f} nm (increasing frequency)\n", g.n_s(),
                     nm_from_omega(g.omega_s.front()), nm_from_omega(g.omega_s.back()));
  out += fmt::format("# columns: idler, {} points, {:.6f} to {:.6f} nm (increasing frequency)\n", g.n_i(),
                     nm_from_omega(g.omega_i.front()), nm_from_omega(g.omega_i.back()));
  out += "# values: |f|^2 in s^2, normalized so the sum times d_omega_s d_omega_i is 1\n";
  for (Eigen::Index j = 0; j < jsa.values.rows(); ++j) {
    for (Eigen::Index k = 0; k < jsa.values.cols(); ++k) {
      if (k) out += ',';
      out += fmt::format("{:.9e}", std::norm(jsa.values(j, k)));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json jsa_metadata(const JointSpectralAmplitude& jsa) {
  const auto& m = jsa.meta;
  return {
      {"crystal", std::string(to_string(m.crystal))},
      {"source", m.source_tag},
      {"assignment",
       {{"pump", std::string(to_string(m.assignment.pump))},
        {"signal", std::string(to_string(m.assignment.signal))},
        {"idler", std::string(to_string(m.assignment.idler))}}},
      {"temperature_c", m.geometry.temperature_c},
      {"poling_period_um", m.geometry.poling_period_um},
      {"length_mm", m.geometry.length_mm},
      {"lambda_p_nm", m.pump.lambda_p_nm},
      {"fwhm_nm", m.pump.fwhm_nm},
      {"sigma_p_rad_per_s", m.pump.sigma_p()},
      {"normalized", jsa.normalized},
      {"omega_s_rad_per_s", jsa.grid.omega_s},
      {"omega_i_rad_per_s", jsa.grid.omega_i},
  };
}

SpectralGrid grid_from_metadata(const nlohmann::json& meta) {
  try {
    SpectralGrid g;
    g.omega_s = meta.at("omega_s_rad_per_s").get<std::vector<double>>();
    g.omega_i = meta.at("omega_i_rad_per_s").get<std::vector<double>>();
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("JSA metadata: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(fmt::format("JSA metadata: {}", e.what()));
  }
}

}  // namespace spdc
