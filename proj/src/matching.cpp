#include "spdc/matching.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include <fmt/format.h>

#include "spdc/error.hpp"
#include "spdc/roots.hpp"
#include "spdc/units.hpp"

namespace spdc {

using units::nm_to_um;
using units::um_to_nm;

std::string_view to_string(GvmCondition c) {
  switch (c) {
    case GvmCondition::GVM1: return "gvm1";
    case GvmCondition::GVM2_signal: return "gvm2-signal";
    case GvmCondition::GVM2_idler: return "gvm2-idler";
  }
  return "?";
}

std::string_view to_string(ScanCondition c) {
  switch (c) {
    case ScanCondition::GVM1: return "gvm1";
    case ScanCondition::GVM2_signal: return "gvm2-signal";
    case ScanCondition::GVM2_idler: return "gvm2-idler";
    case ScanCondition::PhaseMatch: return "phase-match";
  }
  return "?";
}

SolverWindow SolverWindow::defaults(GvmCondition c) {
  if (c == GvmCondition::GVM1) return {1000.0, 2300.0, 0.5, 1e-4};
  return {900.0, 1800.0, 0.5, 1e-4};
}

// --- group-velocity matching -----------------------------------------------

double gvm1_residual(const Medium& medium, double lambda_nm, double temp_c, const TypeIIAssignment& a) {
  const double l = nm_to_um(lambda_nm);
  return 2.0 * inverse_group_velocity(medium[a.pump], 0.5 * l, temp_c) -
         inverse_group_velocity(medium[a.signal], l, temp_c) -
         inverse_group_velocity(medium[a.idler], l, temp_c);
}

double gvm2_residual(const Medium& medium, double lambda_nm, double temp_c, Photon matched,
                     const TypeIIAssignment& a) {
  const double l = nm_to_um(lambda_nm);
  const Axis axis = matched == Photon::Signal ? a.signal : a.idler;
  return inverse_group_velocity(medium[a.pump], 0.5 * l, temp_c) -
         inverse_group_velocity(medium[axis], l, temp_c);
}

double gvm3_residual(const Medium& medium, double lambda_nm, double temp_c, const TypeIIAssignment& a) {
  const double l = nm_to_um(lambda_nm);
  return inverse_group_velocity(medium[a.signal], l, temp_c) - inverse_group_velocity(medium[a.idler], l, temp_c);
}

namespace {

template <class F>
GvmResult solve_gvm(F&& residual, const SolverWindow& w, GvmCondition condition, const Medium& medium,
                    double temp_c) {
  if (!(w.hi_nm > w.lo_nm) || !(w.step_nm > 0.0) || !(w.tol_nm > 0.0)) {
    throw std::invalid_argument("solver window must have lo < hi and positive step and tolerance");
  }
  const std::string what = fmt::format("{} {} at {:.3f} C", to_string(medium.crystal()), to_string(condition), temp_c);
  const double lambda = roots::unique_root(residual, w.lo_nm, w.hi_nm, w.step_nm, w.tol_nm, what);
  return {lambda, residual(lambda), condition};
}

}  // namespace

GvmResult gvm1_wavelength(const Medium& medium, double temp_c, std::optional<SolverWindow> window,
                          const TypeIIAssignment& a) {
  const auto w = window.value_or(SolverWindow::defaults(GvmCondition::GVM1));
  return solve_gvm([&](double l) { return gvm1_residual(medium, l, temp_c, a); }, w, GvmCondition::GVM1, medium,
                   temp_c);
}

GvmResult gvm2_wavelength(const Medium& medium, double temp_c, Photon matched, std::optional<SolverWindow> window,
                          const TypeIIAssignment& a) {
  const auto condition = matched == Photon::Signal ? GvmCondition::GVM2_signal : GvmCondition::GVM2_idler;
  const auto w = window.value_or(SolverWindow::defaults(condition));
  return solve_gvm([&](double l) { return gvm2_residual(medium, l, temp_c, matched, a); }, w, condition, medium,
                   temp_c);
}

// --- quasi-phase matching --------------------------------------------------

double phase_mismatch_um(const Medium& medium, const TypeIIAssignment& a, double lambda_p_um, double lambda_s_um,
                         double lambda_i_um, double poling_period_um, double temp_c) {
  if (!(poling_period_um > 0.0) || !std::isfinite(poling_period_um)) {
    throw std::invalid_argument(
        fmt::format("poling period must be finite and positive, got {} um", poling_period_um));
  }
  return wave_number(medium[a.pump], lambda_p_um, temp_c) - wave_number(medium[a.signal], lambda_s_um, temp_c) -
         wave_number(medium[a.idler], lambda_i_um, temp_c) + units::kTwoPi / poling_period_um;
}

double phase_mismatch(const Medium& medium, const PhaseMatchSpec& spec, double lambda_s_nm, double lambda_i_nm) {
  return phase_mismatch_um(medium, spec.assignment, nm_to_um(spec.lambda_p_nm), nm_to_um(lambda_s_nm),
                           nm_to_um(lambda_i_nm), spec.poling_period_um, spec.temperature_c);
}

double degenerate_poling_period(const Medium& medium, double lambda_deg_nm, double temp_c,
                                const TypeIIAssignment& a) {
  const double l = nm_to_um(lambda_deg_nm);
  const double mismatch = wave_number(medium[a.signal], l, temp_c) + wave_number(medium[a.idler], l, temp_c) -
                          wave_number(medium[a.pump], 0.5 * l, temp_c);
  if (!(mismatch > 0.0)) {
    throw SolverError(fmt::format("{} at {:.4f} nm: k_s + k_i - k_p = {:.6g} rad/um is not positive; no "
                                  "first-order grating phase matches this process",
                                  to_string(medium.crystal()), lambda_deg_nm, mismatch));
  }
  return units::kTwoPi / mismatch;
}

PhaseMatchedPair phase_matched_pair(const Medium& medium, const PhaseMatchSpec& spec, const PairSearch& search) {
  if (spec.crystal != medium.crystal()) {
    throw std::invalid_argument("phase-match spec and medium refer to different crystals");
  }
  if (!(spec.lambda_p_nm > 0.0)) throw std::invalid_argument("pump wavelength must be positive");
  const auto& a = spec.assignment;
  const double lp = nm_to_um(spec.lambda_p_nm);
  const double inv_p = 1.0 / lp;
  const double deg = 2.0 * lp;
  const auto idler_of = [inv_p](double ls) { return 1.0 / (inv_p - 1.0 / ls); };

  // Signal window: around degeneracy, clipped so both photons stay in range.
  const auto& ms = medium[a.signal];
  const auto& mi = medium[a.idler];
  const double half = nm_to_um(search.half_window_nm);
  double lo = std::max(deg - half, ms.lambda_um.lo);
  double hi = std::min(deg + half, ms.lambda_um.hi);
  lo = std::max(lo, 1.0 / (inv_p - 1.0 / mi.lambda_um.hi));
  if (inv_p - 1.0 / mi.lambda_um.lo > 0.0) hi = std::min(hi, 1.0 / (inv_p - 1.0 / mi.lambda_um.lo));
  if (!(hi > lo)) {
    throw DomainError(fmt::format("no signal/idler pair for pump {:.4f} nm lies inside the model ranges",
                                  spec.lambda_p_nm));
  }

  const auto dk = [&](double ls) {
    return phase_mismatch_um(medium, a, lp, ls, idler_of(ls), spec.poling_period_um, spec.temperature_c);
  };
  const double step = nm_to_um(search.step_nm);
  const auto brackets = roots::scan_brackets(dk, lo, hi, step);
  if (brackets.empty()) {
    double best = std::abs(dk(lo));
    const auto n = static_cast<long>(std::ceil((hi - lo) / step));
    for (long k = 0; k <= n; ++k) best = std::min(best, std::abs(dk(std::min(hi, lo + k * step))));
    throw SolverError(fmt::format("{} at {:.3f} C: no phase-matched pair in [{:.4f}, {:.4f}] nm; minimal "
                                  "|Delta k| = {:.6g} rad/um",
                                  to_string(medium.crystal()), spec.temperature_c, um_to_nm(lo), um_to_nm(hi), best));
  }
  if (brackets.size() > 1) {
    throw SolverError(fmt::format("{} at {:.3f} C: {} phase-matched signal wavelengths bracketed: {}",
                                  to_string(medium.crystal()), spec.temperature_c, brackets.size(),
                                  roots::describe(brackets, 1e3)));
  }
  const double ls = roots::bisect(dk, brackets.front(), 0.0);
  const double li = idler_of(ls);

  PhaseMatchedPair out;
  if (std::abs(um_to_nm(ls - li)) < search.snap_nm) {
    out.signal_nm = out.idler_nm = um_to_nm(deg);
    out.degenerate = true;
    out.residual = dk(deg);
  } else {
    out.signal_nm = um_to_nm(ls);
    out.idler_nm = um_to_nm(li);
    out.residual = dk(ls);
  }
  return out;
}

// --- temperature scans -------------------------------------------------------

std::string ScanTable::to_csv() const {
  std::string out = "temperature_c";
  for (const auto& c : columns) out += "," + c;
  out += "\n";
  for (const auto& row : rows) {
    out += fmt::format("{:.3f}", row.temperature_c);
    for (double v : row.values_nm) out += fmt::format(",{:.4f}", v);
    out += "\n";
  }
  return out;
}

ScanTable scan_over_temperature(const Medium& medium, ScanCondition condition, double temp_lo_c, double temp_hi_c,
                                int steps, Execution exec, const ScanOptions& options) {
  if (steps < 2) throw std::invalid_argument(fmt::format("a temperature scan needs at least 2 steps, got {}", steps));
  if (!(temp_hi_c > temp_lo_c)) throw std::invalid_argument("temperature scan requires T_lo < T_hi");

  ScanTable table;
  table.crystal = medium.crystal();
  table.source_tag = medium.tag();
  table.condition = condition;
  const auto& a = options.assignment;

  PhaseMatchSpec pm;
  switch (condition) {
    case ScanCondition::GVM1: table.columns = {"lambda_gvm1_nm"}; break;
    case ScanCondition::GVM2_signal: table.columns = {"lambda_gvm2_signal_nm"}; break;
    case ScanCondition::GVM2_idler: table.columns = {"lambda_gvm2_idler_nm"}; break;
    case ScanCondition::PhaseMatch: {
      table.columns = {"lambda_signal_nm", "lambda_idler_nm"};
      const double ref = options.reference_temp_c;
      const double deg = gvm1_wavelength(medium, ref, std::nullopt, a).lambda_nm;
      pm = {medium.crystal(), a, 0.5 * deg, degenerate_poling_period(medium, deg, ref, a), ref};
      table.pump_nm = pm.lambda_p_nm;
      table.poling_period_um = pm.poling_period_um;
      table.reference_temp_c = ref;
      break;
    }
  }

  const auto solve_row = [&](int k) {
    const double t = k == steps - 1 ? temp_hi_c : temp_lo_c + (temp_hi_c - temp_lo_c) * k / (steps - 1);
    ScanRow row{t, {}};
    switch (condition) {
      case ScanCondition::GVM1: row.values_nm = {gvm1_wavelength(medium, t, std::nullopt, a).lambda_nm}; break;
      case ScanCondition::GVM2_signal:
        row.values_nm = {gvm2_wavelength(medium, t, Photon::Signal, std::nullopt, a).lambda_nm};
        break;
      case ScanCondition::GVM2_idler:
        row.values_nm = {gvm2_wavelength(medium, t, Photon::Idler, std::nullopt, a).lambda_nm};
        break;
      case ScanCondition::PhaseMatch: {
        auto spec = pm;
        spec.temperature_c = t;
        const auto pair = phase_matched_pair(medium, spec);
        row.values_nm = {pair.signal_nm, pair.idler_nm};
        break;
      }
    }
    return row;
  };

  table.rows.resize(static_cast<std::size_t>(steps));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(steps));
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < steps; ++k) {
      try {
        table.rows[k] = solve_row(k);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  } else {
    for (int k = 0; k < steps; ++k) {
      try {
        table.rows[k] = solve_row(k);
      } catch (...) {
        failures[k] = std::current_exception();
        break;
      }
    }
  }
  for (int k = 0; k < steps; ++k) {
    if (failures[k]) {
      const double t = temp_lo_c + (temp_hi_c - temp_lo_c) * k / (steps - 1);
      rethrow_with_context(failures[k], fmt::format("scan aborted at {:.3f} C: ", t));
    }
  }
  return table;
}

}  // namespace spdc
