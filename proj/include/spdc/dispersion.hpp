#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spdc {

enum class Crystal { KTP, RTP, KTA, RTA, CTA };
enum class Axis { x, y, z };

inline constexpr std::array<Crystal, 5> kAllCrystals = {Crystal::KTP, Crystal::RTP, Crystal::KTA,
                                                        Crystal::RTA, Crystal::CTA};

std::string_view to_string(Crystal crystal);
std::string_view to_string(Axis axis);
/// Chemical formula, e.g. "KTiOPO4".
std::string_view composition(Crystal crystal);
/// Accepts "KTP" or the periodically-poled spelling "PPKTP" (case-sensitive).
/// Throws ParseError naming the valid set.
Crystal parse_crystal(std::string_view name);
Axis parse_axis(std::string_view name);

enum class SellmeierFormId {
  Pole,   // n^2 = A + B/(l^2 - C) + D/(l^2 - E) - F l^2
  Ratio,  // n^2 = A + B/(1 - C/l^2) + D/(1 - E/l^2) - F l^2
};

/// Closed-form n^2(lambda), lambda in um. Coefficients are [A, B, C, D, E, F].
struct SellmeierForm {
  SellmeierFormId form = SellmeierFormId::Pole;
  std::array<double, 6> coeffs{};

  double n_squared(double lambda_um) const;
  double dn_squared_dlambda(double lambda_um) const;
  /// Pole locations (in um^2) of the enabled terms.
  std::vector<double> poles_um2() const;
};

/// Delta n(lambda, T) = n1(lambda)(T - t0) + n2(lambda)(T - t0)^2 with
/// n_m(lambda) = sum_j a_j / lambda^j.
struct ThermoOpticModel {
  double t0_c = 25.0;
  std::array<double, 4> order1{};
  std::array<double, 4> order2{};

  double delta_n(double lambda_um, double temp_c) const;
  double d_delta_n_dlambda(double lambda_um, double temp_c) const;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

struct DispersionModel {
  Crystal crystal = Crystal::KTP;
  Axis axis = Axis::y;
  SellmeierForm sellmeier;
  ThermoOpticModel thermo;
  Range lambda_um;
  Range temp_c;
  std::string source;
  bool is_default = false;

  /// Source grouping key: the `source` text before the first ':'.
  std::string tag() const;
};

double refractive_index(const DispersionModel& model, double lambda_um, double temp_c);
/// Analytic d n / d lambda in 1/um.
double dn_dlambda(const DispersionModel& model, double lambda_um, double temp_c);
/// n - lambda dn/dlambda; the group velocity is c divided by this.
double inverse_group_velocity(const DispersionModel& model, double lambda_um, double temp_c);
/// k = 2 pi n / lambda in rad/um.
double wave_number(const DispersionModel& model, double lambda_um, double temp_c);

/// All axis models of one crystal drawn from one source grouping.
class Medium {
 public:
  Medium(Crystal crystal, std::string tag, std::vector<DispersionModel> models);

  Crystal crystal() const { return crystal_; }
  const std::string& tag() const { return tag_; }
  bool has(Axis axis) const;
  const DispersionModel& operator[](Axis axis) const;
  std::span<const DispersionModel> models() const { return models_; }

 private:
  Crystal crystal_;
  std::string tag_;
  std::vector<DispersionModel> models_;
};

class CoefficientDatabase {
 public:
  CoefficientDatabase() = default;
  /// Validates every invariant; throws ParseError.
  static CoefficientDatabase from_models(std::vector<DispersionModel> models);

  std::span<const DispersionModel> models() const { return models_; }
  bool empty() const { return models_.empty(); }
  std::size_t size() const { return models_.size(); }

  const DispersionModel& model(Crystal crystal, Axis axis,
                               std::optional<std::string_view> tag = std::nullopt) const;
  /// Tags available for a crystal, default tag first.
  std::vector<std::string> tags(Crystal crystal) const;
  std::string default_tag(Crystal crystal) const;
  /// Resolves the default grouping when tag is empty.
  Medium medium(Crystal crystal, std::optional<std::string_view> tag = std::nullopt) const;

 private:
  std::vector<DispersionModel> models_;
};

/// Parses the JSON coefficient file. `origin` names the input in messages.
CoefficientDatabase parse_database(std::string_view text, std::string_view origin = "<memory>");
CoefficientDatabase load_database(const std::filesystem::path& path);
std::string serialize_database(const CoefficientDatabase& db);

}  // namespace spdc
