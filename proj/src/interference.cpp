#include "spdc/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "spdc/error.hpp"
#include "spdc/kernels.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

void require_exchangeable(const JointSpectralAmplitude& jsa) {
  if (!jsa.grid.is_symmetric()) {
    throw GridError("HOM interference needs identical signal and idler axes (square symmetric grid)");
  }
  if (!jsa.normalized) throw std::invalid_argument("HOM interference needs a normalized JSA");
}

// Clamp only rounding excursions; anything larger is a real defect.
double to_probability(double p) {
  if (p < 0.0 && p > -1e-9) return 0.0;
  if (p > 1.0 && p < 1.0 + 1e-9) return 1.0;
  return p;
}

}  // namespace

double hom_probability(const JointSpectralAmplitude& jsa, double tau_s) {
  require_exchangeable(jsa);
  const double dw = jsa.grid.d_omega_s();
  const auto c = kernels::hom_series(jsa.values, dw, {tau_s}, Execution::Serial);
  return to_probability(0.5 - 0.5 * c[0].real() * dw * dw);
}

double visibility(const std::vector<double>& p) {
  if (p.empty()) throw std::invalid_argument("visibility of an empty trace");
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  const double sum = *hi + *lo;
  return sum > 0.0 ? (*hi - *lo) / sum : 0.0;
}

double baseline(const std::vector<double>& p) {
  if (p.empty()) throw std::invalid_argument("baseline of an empty trace");
  const std::size_t edge = std::max<std::size_t>(1, p.size() / 20);
  double sum = 0.0;
  for (std::size_t k = 0; k < edge; ++k) sum += p[k] + p[p.size() - 1 - k];
  return sum / static_cast<double>(2 * edge);
}

int count_dips(const std::vector<double>& p, double base, double epsilon) {
  int dips = 0;
  std::size_t k = 1;
  while (k + 1 < p.size()) {
    if (p[k] < p[k - 1]) {
      // Walk across a possible plateau.
      std::size_t end = k;
      while (end + 1 < p.size() && p[end + 1] == p[k]) ++end;
      if (end + 1 < p.size() && p[end + 1] > p[k] && p[k] < base - epsilon) ++dips;
      k = end + 1;
    } else {
      ++k;
    }
  }
  return dips;
}

HomTrace hom_trace(const JointSpectralAmplitude& jsa, const HomOptions& options) {
  require_exchangeable(jsa);
  if (options.steps < 64 || options.steps % 2 == 0) {
    throw std::invalid_argument(fmt::format("HOM trace needs an odd number of steps >= 64, got {}", options.steps));
  }
  const double tau_max = options.tau_max_s > 0.0 ? options.tau_max_s : 20.0 / jsa.meta.pump.sigma_p();
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw std::invalid_argument("HOM delay window must be positive");

  const double dw = jsa.grid.d_omega_s();
  // The discrete sum repeats with period 2 pi / dw in tau.
  if (units::kTwoPi / dw <= 2.0 * tau_max) {
    throw GridError(fmt::format("delay window +/-{:.1f} fs exceeds half the grid alias period {:.1f} fs; use "
                                "more grid points or a shorter window",
                                units::s_to_fs(tau_max), units::s_to_fs(units::kPi / dw)));
  }

  HomTrace trace;
  const int half = options.steps / 2;
  trace.tau_s.resize(static_cast<std::size_t>(options.steps));
  for (int k = 0; k < options.steps; ++k) trace.tau_s[k] = tau_max * static_cast<double>(k - half) / half;

  const auto c = options.exec == Execution::Serial ? kernels::hom_series_direct(jsa.values, dw, trace.tau_s)
                                                  : kernels::hom_series(jsa.values, dw, trace.tau_s, options.exec);
  trace.p.resize(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) trace.p[k] = to_probability(0.5 - 0.5 * c[k].real() * dw * dw);

  trace.baseline = baseline(trace.p);
  trace.visibility = visibility(trace.p);
  trace.dip_count = count_dips(trace.p, trace.baseline, options.dip_epsilon);
  return trace;
}

std::string hom_to_csv(const HomTrace& trace, const JointSpectralAmplitude& jsa) {
  const auto& m = jsa.meta;
  std::string out;
  out += fmt::format("# crystal: {}\n", to_string(m.crystal));
  out += fmt::format("# source: {}\n", m.source_tag);
  out += fmt::format("# temperature_c: {:.3f}\n", m.geometry.temperature_c);
  out += fmt::format("# poling_period_um: {:.6f}\n", m.geometry.poling_period_um);
  out += fmt::format("# length_mm: {:.6f}\n", m.geometry.length_mm);
  out += fmt::format("# lambda_p_nm: {:.6f}\n", m.pump.lambda_p_nm);
  out += fmt::format("# fwhm_nm: {:.6f}\n", m.pump.fwhm_nm);
  out += fmt::format("# grid: {}x{}, {:.6f} to {:.6f} nm\n", jsa.grid.n_s(), jsa.grid.n_i(),
                     units::nm_from_omega(jsa.grid.omega_s.back()), units::nm_from_omega(jsa.grid.omega_s.front()));
  out += fmt::format("# visibility: {:.6f}\n", trace.visibility);
  out += fmt::format("# dip_count: {}\n", trace.dip_count);
  out += fmt::format("# baseline: {:.9f}\n", trace.baseline);
  out += "tau_fs,p\n";
  for (std::size_t k = 0; k < trace.p.size(); ++k) {
    out += fmt::format("{:.3f},{:.9f}\n", units::s_to_fs(trace.tau_s[k]), trace.p[k]);
  }
  return out;
}

}  // namespace spdc
