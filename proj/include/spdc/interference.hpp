#pragma once

#include <string>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/execution.hpp"

namespace spdc {

struct HomTrace {
  std::vector<double> tau_s;  // strictly increasing, symmetric about 0
  std::vector<double> p;
  double visibility = 0.0;
  int dip_count = 0;
  double baseline = 0.0;
};

/// Two-fold coincidence probability behind a balanced beamsplitter,
///   p = 1/2 - 1/2 Re sum f(w_s,w_i) f*(w_i,w_s) exp(-i(w_s - w_i) tau) dw^2.
/// The JSA must be normalized on a symmetric grid.
double hom_probability(const JointSpectralAmplitude& jsa, double tau_s);

struct HomOptions {
  double tau_max_s = 0.0;  // 0 selects 20 / sigma_p
  int steps = 513;         // odd, >= 64
  double dip_epsilon = 0.01;
  Execution exec = Execution::Parallel;
};

/// Serial execution uses the direct double sum; parallel uses the
/// diagonal-grouped series.
HomTrace hom_trace(const JointSpectralAmplitude& jsa, const HomOptions& options = {});

/// (P_max - P_min) / (P_max + P_min) over the samples.
double visibility(const std::vector<double>& p);
/// Mean of p over the outer 10% of the window (5% on each side).
double baseline(const std::vector<double>& p);
/// Interior local minima deeper than baseline - epsilon. A flat bottom
/// counts once.
int count_dips(const std::vector<double>& p, double baseline, double epsilon = 0.01);

/// `#` metadata block, then `tau_fs,p`.
std::string hom_to_csv(const HomTrace& trace, const JointSpectralAmplitude& jsa);

}  // namespace spdc
