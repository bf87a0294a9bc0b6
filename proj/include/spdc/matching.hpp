#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/execution.hpp"

namespace spdc {

/// Polarisation of each field for collinear propagation along x. The default
/// is the type-II configuration used throughout: pump and signal on y,
/// idler on z.
struct TypeIIAssignment {
  Axis pump = Axis::y;
  Axis signal = Axis::y;
  Axis idler = Axis::z;

  TypeIIAssignment swapped() const { return {pump, idler, signal}; }
  bool operator==(const TypeIIAssignment&) const = default;
};

enum class Photon { Signal, Idler };

enum class GvmCondition { GVM1, GVM2_signal, GVM2_idler };

std::string_view to_string(GvmCondition c);

struct GvmResult {
  double lambda_nm = 0.0;  // degenerate signal/idler wavelength
  double residual = 0.0;   // in units of 1/c
  GvmCondition condition = GvmCondition::GVM1;
};

/// Bracket-scan window for the GVM solvers.
struct SolverWindow {
  double lo_nm = 1000.0;
  double hi_nm = 2300.0;
  double step_nm = 0.5;
  double tol_nm = 1e-4;

  static SolverWindow defaults(GvmCondition c);
};

// Residuals in units of 1/c, evaluated at the degenerate wavelength.
double gvm1_residual(const Medium& medium, double lambda_nm, double temp_c,
                     const TypeIIAssignment& assignment = {});
double gvm2_residual(const Medium& medium, double lambda_nm, double temp_c, Photon matched,
                     const TypeIIAssignment& assignment = {});

GvmResult gvm1_wavelength(const Medium& medium, double temp_c,
                          std::optional<SolverWindow> window = std::nullopt,
                          const TypeIIAssignment& assignment = {});
GvmResult gvm2_wavelength(const Medium& medium, double temp_c, Photon matched = Photon::Signal,
                          std::optional<SolverWindow> window = std::nullopt,
                          const TypeIIAssignment& assignment = {});
/// Signal minus idler inverse group velocity. Diagnostic only: it has no
/// zero for type-II in these crystals.
double gvm3_residual(const Medium& medium, double lambda_nm, double temp_c,
                     const TypeIIAssignment& assignment = {});

struct PhaseMatchSpec {
  Crystal crystal = Crystal::KTP;
  TypeIIAssignment assignment;
  double lambda_p_nm = 0.0;
  double poling_period_um = 0.0;  // first-order QPM grating period
  double temperature_c = 20.0;
};

/// Delta k = k_p - k_s - k_i + 2 pi / Lambda in rad/um, all wavelengths in um.
double phase_mismatch_um(const Medium& medium, const TypeIIAssignment& assignment, double lambda_p_um,
                         double lambda_s_um, double lambda_i_um, double poling_period_um, double temp_c);
/// Delta k with the pump fixed by the spec.
double phase_mismatch(const Medium& medium, const PhaseMatchSpec& spec, double lambda_s_nm, double lambda_i_nm);

/// Grating period that phase matches the degenerate process at lambda_deg:
/// Lambda = 2 pi / (k_s + k_i - k_p). Throws SolverError if that is not positive.
double degenerate_poling_period(const Medium& medium, double lambda_deg_nm, double temp_c,
                                const TypeIIAssignment& assignment = {});

struct PhaseMatchedPair {
  double signal_nm = 0.0;  // photon polarised along assignment.signal
  double idler_nm = 0.0;
  double residual = 0.0;   // Delta k in rad/um
  bool degenerate = false;
};

struct PairSearch {
  double half_window_nm = 300.0;  // around 2 lambda_p
  double step_nm = 0.5;
  double snap_nm = 0.05;          // |lambda_s - lambda_i| below this is reported as degenerate
};

PhaseMatchedPair phase_matched_pair(const Medium& medium, const PhaseMatchSpec& spec, const PairSearch& search = {});

enum class ScanCondition { GVM1, GVM2_signal, GVM2_idler, PhaseMatch };

std::string_view to_string(ScanCondition c);

struct ScanRow {
  double temperature_c = 0.0;
  std::vector<double> values_nm;

  bool operator==(const ScanRow&) const = default;
};

struct ScanTable {
  Crystal crystal = Crystal::KTP;
  std::string source_tag;
  ScanCondition condition = ScanCondition::GVM1;
  std::vector<std::string> columns;  // value columns, without temperature
  std::vector<ScanRow> rows;
  // Held fixed for phase-matching scans.
  std::optional<double> pump_nm;
  std::optional<double> poling_period_um;
  std::optional<double> reference_temp_c;

  /// `temperature_c,<col>...` with 3 decimals for C and 4 for nm.
  std::string to_csv() const;
};

struct ScanOptions {
  double reference_temp_c = 20.0;  // degeneracy used to fix lambda_p and Lambda
  TypeIIAssignment assignment;
};

/// One converged row per temperature on an evenly spaced grid. Rows are
/// independent; the parallel path returns bit-identical tables.
ScanTable scan_over_temperature(const Medium& medium, ScanCondition condition, double temp_lo_c,
                                double temp_hi_c, int steps, Execution exec = Execution::Parallel,
                                const ScanOptions& options = {});

}  // namespace spdc
