#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "spdc/dispersion.hpp"
#include "spdc/execution.hpp"
#include "spdc/matching.hpp"

namespace spdc {

/// Intensity FWHM in nm to the Gaussian amplitude width sigma_p (rad/s) of
/// alpha = exp(-(detuning / sigma_p)^2).
double sigma_from_fwhm(double lambda_p_nm, double fwhm_nm);

struct PumpSpec {
  double lambda_p_nm = 0.0;  // central wavelength
  double fwhm_nm = 0.0;      // intensity full width at half maximum

  double omega_p() const;
  double sigma_p() const;
  void validate() const;
};

/// exp(-((omega_s + omega_i - omega_p) / sigma_p)^2).
double pump_envelope(double omega_s, double omega_i, const PumpSpec& pump);

struct CrystalGeometry {
  double length_mm = 0.0;
  double poling_period_um = 0.0;
  double temperature_c = 20.0;

  void validate() const;
};

/// sinc(Delta k L / 2) with the pump wave number taken at omega_s + omega_i.
double pm_amplitude(const Medium& medium, double omega_s, double omega_i, const CrystalGeometry& geometry,
                    const TypeIIAssignment& assignment = {});

/// Uniform angular-frequency axes (rad/s), rows = signal, columns = idler.
struct SpectralGrid {
  std::vector<double> omega_s;
  std::vector<double> omega_i;

  static constexpr std::size_t kMinPoints = 16;

  /// n points on [center - half_span, center + half_span] for both photons.
  static SpectralGrid square(double center, double half_span, std::size_t n);
  static SpectralGrid uniform(double s_lo, double s_hi, std::size_t n_s, double i_lo, double i_hi, std::size_t n_i);

  std::size_t n_s() const { return omega_s.size(); }
  std::size_t n_i() const { return omega_i.size(); }
  double d_omega_s() const;
  double d_omega_i() const;
  /// Identical signal and idler axes, as the exchange f(w_i, w_s) requires.
  bool is_symmetric() const { return omega_s == omega_i; }
  void validate() const;
};

struct JsaMetadata {
  Crystal crystal = Crystal::KTP;
  std::string source_tag;
  TypeIIAssignment assignment;
  CrystalGeometry geometry;
  PumpSpec pump;
};

struct JointSpectralAmplitude {
  SpectralGrid grid;
  Eigen::MatrixXcd values;  // n_s x n_i
  bool normalized = false;
  JsaMetadata meta;

  /// sum |f|^2 d_omega_s d_omega_i.
  double norm_squared() const;
  /// (signal nm, idler nm) of the largest |f|.
  std::pair<double, double> peak_nm() const;
  /// max |f| on the outer rows/columns relative to max |f|.
  double boundary_ratio() const;
};

/// Pointwise product on the grid, L2-normalized. Throws DomainError when
/// the grid leaves a model's wavelength range and GridError when the
/// boundary holds more than 1% of the peak amplitude.
JointSpectralAmplitude compute_jsa(const Medium& medium, const CrystalGeometry& geometry, const PumpSpec& pump,
                                   const SpectralGrid& grid, Execution exec = Execution::Parallel,
                                   const TypeIIAssignment& assignment = {});

struct AutoGridOptions {
  std::size_t points = 512;
  double start_sigmas = 4.0;   // initial half span in units of sigma_p
  double boundary_ratio = 0.01;
  int max_doublings = 12;
};

/// Smallest window around degeneracy (omega_p / 2), doubled from
/// start_sigmas * sigma_p, whose boundary amplitude is below the ratio.
JointSpectralAmplitude compute_jsa_auto(const Medium& medium, const CrystalGeometry& geometry, const PumpSpec& pump,
                                        const AutoGridOptions& options = {}, Execution exec = Execution::Parallel,
                                        const TypeIIAssignment& assignment = {});

/// sum s^4 / (sum s^2)^2 over the singular values of the value matrix.
double matrix_purity(const Eigen::MatrixXcd& values);
/// Purity of the heralded photon. Requires a normalized JSA.
double schmidt_purity(const JointSpectralAmplitude& jsa);

/// Degenerate design at a temperature: pump at half the GVM1 wavelength and
/// the grating that phase matches it.
struct DegenerateDesign {
  double lambda_deg_nm = 0.0;
  double lambda_p_nm = 0.0;
  double poling_period_um = 0.0;
  double temperature_c = 20.0;
};
DegenerateDesign gvm1_design(const Medium& medium, double temp_c, const TypeIIAssignment& assignment = {});

struct PurityOptimum {
  double fwhm_nm = 0.0;
  double purity = 0.0;
  int evaluations = 0;
};

struct PurityOptions {
  double fwhm_lo_nm = 0.05;
  double fwhm_hi_nm = 5.0;
  double log_tol = 1e-3;  // bracket width in ln(fwhm)
  AutoGridOptions grid;
};

/// Golden-section search over ln(fwhm) for the pump bandwidth that
/// maximizes purity at a fixed design and crystal length.
PurityOptimum optimize_pump_bandwidth(const Medium& medium, const DegenerateDesign& design, double length_mm,
                                      const PurityOptions& options = {}, const TypeIIAssignment& assignment = {});

/// `#` header block then the n_s x n_i matrix of |f|^2.
std::string jsa_to_csv(const JointSpectralAmplitude& jsa);
/// Metadata sidecar. Axes are stored as exact doubles and round-trip.
nlohmann::json jsa_metadata(const JointSpectralAmplitude& jsa);
SpectralGrid grid_from_metadata(const nlohmann::json& meta);

}  // namespace spdc
