#include "spdc/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

constexpr std::array<std::string_view, 5> kCrystalNames = {"KTP", "RTP", "KTA", "RTA", "CTA"};
constexpr std::array<std::string_view, 5> kCompositions = {"KTiOPO4", "RbTiOPO4", "KTiOAsO4",
                                                           "RbTiOAsO4", "CsTiOAsO4"};

// Laurent polynomial sum_j a_j / l^j and its derivative.
double laurent(const std::array<double, 4>& a, double l) {
  const double inv = 1.0 / l;
  return a[0] + inv * (a[1] + inv * (a[2] + inv * a[3]));
}

double laurent_derivative(const std::array<double, 4>& a, double l) {
  const double inv = 1.0 / l;
  const double inv2 = inv * inv;
  return -inv2 * (a[1] + inv * (2.0 * a[2] + inv * 3.0 * a[3]));
}

void check_domain(const DispersionModel& m, double lambda_um, double temp_c) {
  if (!m.lambda_um.contains(lambda_um)) {
    throw DomainError(fmt::format("{} {}-axis [{}]: wavelength {:.6f} um outside validity range [{}, {}] um",
                                  to_string(m.crystal), to_string(m.axis), m.tag(), lambda_um,
                                  m.lambda_um.lo, m.lambda_um.hi));
  }
  if (!m.temp_c.contains(temp_c)) {
    throw DomainError(fmt::format("{} {}-axis [{}]: temperature {:.3f} C outside validity range [{}, {}] C",
                                  to_string(m.crystal), to_string(m.axis), m.tag(), temp_c,
                                  m.temp_c.lo, m.temp_c.hi));
  }
}

}  // namespace

std::string_view to_string(Crystal crystal) { return kCrystalNames[static_cast<std::size_t>(crystal)]; }

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

std::string_view composition(Crystal crystal) { return kCompositions[static_cast<std::size_t>(crystal)]; }

Crystal parse_crystal(std::string_view name) {
  std::string_view bare = name;
  if (bare.size() == 5 && bare.substr(0, 2) == "PP") bare.remove_prefix(2);
  for (std::size_t i = 0; i < kCrystalNames.size(); ++i) {
    if (bare == kCrystalNames[i]) return static_cast<Crystal>(i);
  }
  throw ParseError(fmt::format("unknown crystal '{}'; valid: KTP, RTP, KTA, RTA, CTA", name));
}

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw ParseError(fmt::format("unknown axis '{}'; valid: x, y, z", name));
}

// --- SellmeierForm -----------------------------------------------------------

double SellmeierForm::n_squared(double l) const {
  const auto& [a, b, c, d, e, f] = coeffs;
  const double l2 = l * l;
  if (form == SellmeierFormId::Pole) {
    double v = a - f * l2;
    if (b != 0.0) v += b / (l2 - c);
    if (d != 0.0) v += d / (l2 - e);
    return v;
  }
  double v = a - f * l2;
  if (b != 0.0) v += b / (1.0 - c / l2);
  if (d != 0.0) v += d / (1.0 - e / l2);
  return v;
}

double SellmeierForm::dn_squared_dlambda(double l) const {
  const auto& [a, b, c, d, e, f] = coeffs;
  (void)a;
  const double l2 = l * l;
  double v = -2.0 * f * l;
  if (form == SellmeierFormId::Pole) {
    if (b != 0.0) v -= 2.0 * l * b / ((l2 - c) * (l2 - c));
    if (d != 0.0) v -= 2.0 * l * d / ((l2 - e) * (l2 - e));
    return v;
  }
  const double l3 = l2 * l;
  if (b != 0.0) {
    const double u = 1.0 - c / l2;
    v -= 2.0 * b * c / (l3 * u * u);
  }
  if (d != 0.0) {
    const double u = 1.0 - e / l2;
    v -= 2.0 * d * e / (l3 * u * u);
  }
  return v;
}

std::vector<double> SellmeierForm::poles_um2() const {
  std::vector<double> out;
  if (coeffs[1] != 0.0) out.push_back(coeffs[2]);
  if (coeffs[3] != 0.0) out.push_back(coeffs[4]);
  return out;
}

// --- ThermoOpticModel ------------------------------------------------------

double ThermoOpticModel::delta_n(double l, double temp_c) const {
  const double dt = temp_c - t0_c;
  return laurent(order1, l) * dt + laurent(order2, l) * dt * dt;
}

double ThermoOpticModel::d_delta_n_dlambda(double l, double temp_c) const {
  const double dt = temp_c - t0_c;
  return laurent_derivative(order1, l) * dt + laurent_derivative(order2, l) * dt * dt;
}

std::string DispersionModel::tag() const {
  const auto colon = source.find(':');
  return colon == std::string::npos ? source : source.substr(0, colon);
}

// --- evaluation ------------------------------------------------------------

double refractive_index(const DispersionModel& m, double lambda_um, double temp_c) {
  check_domain(m, lambda_um, temp_c);
  return std::sqrt(m.sellmeier.n_squared(lambda_um)) + m.thermo.delta_n(lambda_um, temp_c);
}

double dn_dlambda(const DispersionModel& m, double lambda_um, double temp_c) {
  check_domain(m, lambda_um, temp_c);
  const double n0 = std::sqrt(m.sellmeier.n_squared(lambda_um));
  return m.sellmeier.dn_squared_dlambda(lambda_um) / (2.0 * n0) +
         m.thermo.d_delta_n_dlambda(lambda_um, temp_c);
}

double inverse_group_velocity(const DispersionModel& m, double lambda_um, double temp_c) {
  return refractive_index(m, lambda_um, temp_c) - lambda_um * dn_dlambda(m, lambda_um, temp_c);
}

double wave_number(const DispersionModel& m, double lambda_um, double temp_c) {
  return units::kTwoPi * refractive_index(m, lambda_um, temp_c) / lambda_um;
}

// --- Medium ----------------------------------------------------------------

Medium::Medium(Crystal crystal, std::string tag, std::vector<DispersionModel> models)
    : crystal_(crystal), tag_(std::move(tag)), models_(std::move(models)) {}

bool Medium::has(Axis axis) const {
  return std::any_of(models_.begin(), models_.end(), [&](const auto& m) { return m.axis == axis; });
}

const DispersionModel& Medium::operator[](Axis axis) const {
  for (const auto& m : models_) {
    if (m.axis == axis) return m;
  }
  throw DomainError(fmt::format("{} [{}] has no {}-axis model", to_string(crystal_), tag_, to_string(axis)));
}

// --- CoefficientDatabase -----------------------------------------------------

CoefficientDatabase CoefficientDatabase::from_models(std::vector<DispersionModel> models) {
  if (models.empty()) throw ParseError("empty database: no dispersion models");
  std::set<std::tuple<Crystal, Axis, std::string>> keys;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    const std::string where = fmt::format("models[{}] ({} {}-axis, '{}')", i, to_string(m.crystal),
                                          to_string(m.axis), m.tag());
    if (!(m.lambda_um.lo > 0.0 && m.lambda_um.hi > m.lambda_um.lo)) {
      throw ParseError(where + ": lambda_range_um must be positive and non-empty");
    }
    if (!(m.temp_c.hi > m.temp_c.lo)) throw ParseError(where + ": temp_range_c must be non-empty");
    const double lo2 = m.lambda_um.lo * m.lambda_um.lo;
    const double hi2 = m.lambda_um.hi * m.lambda_um.hi;
    for (double pole : m.sellmeier.poles_um2()) {
      if (pole >= lo2 && pole <= hi2) {
        throw ParseError(fmt::format("{}: pole at {} um^2 lies inside the validity range [{}, {}] um^2",
                                     where, pole, lo2, hi2));
      }
    }
    constexpr int kSamples = 257;
    for (int s = 0; s < kSamples; ++s) {
      const double l = m.lambda_um.lo + (m.lambda_um.hi - m.lambda_um.lo) * s / (kSamples - 1);
      if (!(m.sellmeier.n_squared(l) > 1.0)) {
        throw ParseError(fmt::format("{}: n^2 <= 1 at {} um", where, l));
      }
    }
    if (!keys.emplace(m.crystal, m.axis, m.tag()).second) {
      throw ParseError(where + ": duplicate (crystal, axis, source) key");
    }
  }

  for (Crystal c : kAllCrystals) {
    std::optional<std::string> default_tag;
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      const auto n = std::count_if(models.begin(), models.end(), [&](const auto& m) {
        return m.crystal == c && m.axis == a && m.is_default;
      });
      if (n > 1) {
        throw ParseError(fmt::format("more than one default model for ({}, {})", to_string(c), to_string(a)));
      }
    }
    for (Axis a : {Axis::y, Axis::z}) {
      auto it = std::find_if(models.begin(), models.end(), [&](const auto& m) {
        return m.crystal == c && m.axis == a && m.is_default;
      });
      if (it == models.end()) {
        throw ParseError(fmt::format("incomplete database: missing default model for ({}, {})",
                                     to_string(c), to_string(a)));
      }
      if (default_tag && *default_tag != it->tag()) {
        throw ParseError(fmt::format("default models for {} mix source tags '{}' and '{}'", to_string(c),
                                     *default_tag, it->tag()));
      }
      default_tag = it->tag();
    }
  }

  CoefficientDatabase db;
  db.models_ = std::move(models);
  return db;
}

const DispersionModel& CoefficientDatabase::model(Crystal crystal, Axis axis,
                                                  std::optional<std::string_view> tag) const {
  for (const auto& m : models_) {
    if (m.crystal != crystal || m.axis != axis) continue;
    if (tag ? m.tag() == *tag : m.is_default) return m;
  }
  throw DomainError(fmt::format("no {}-axis model for {} with source '{}'", to_string(axis),
                                to_string(crystal), tag ? std::string(*tag) : std::string("<default>")));
}

std::string CoefficientDatabase::default_tag(Crystal crystal) const {
  return model(crystal, Axis::y).tag();
}

std::vector<std::string> CoefficientDatabase::tags(Crystal crystal) const {
  std::vector<std::string> out;
  if (empty()) return out;
  out.push_back(default_tag(crystal));
  for (const auto& m : models_) {
    if (m.crystal != crystal) continue;
    if (std::find(out.begin(), out.end(), m.tag()) == out.end()) out.push_back(m.tag());
  }
  return out;
}

Medium CoefficientDatabase::medium(Crystal crystal, std::optional<std::string_view> tag) const {
  const std::string resolved = tag && !tag->empty() ? std::string(*tag) : default_tag(crystal);
  std::vector<DispersionModel> picked;
  for (const auto& m : models_) {
    if (m.crystal == crystal && m.tag() == resolved) picked.push_back(m);
  }
  if (picked.empty()) {
    std::string known;
    for (const auto& t : tags(crystal)) known += (known.empty() ? "" : ", ") + t;
    throw std::invalid_argument(
        fmt::format("unknown source '{}' for {}; available: {}", resolved, to_string(crystal), known));
  }
  std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) { return a.axis < b.axis; });
  Medium out(crystal, resolved, std::move(picked));
  if (!out.has(Axis::y) || !out.has(Axis::z)) {
    throw DomainError(fmt::format("source '{}' for {} lacks the y and z models a type-II process needs",
                                  resolved, to_string(crystal)));
  }
  return out;
}

// --- JSON --------------------------------------------------------------------

namespace {

using nlohmann::json;

template <std::size_t N>
std::array<double, N> read_array(const json& j, std::string_view key, const std::string& where) {
  const json& v = j.at(std::string(key));
  if (!v.is_array() || v.size() != N) {
    throw ParseError(fmt::format("{}.{}: expected an array of {} numbers", where, key, N));
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number()) throw ParseError(fmt::format("{}.{}[{}]: not a number", where, key, i));
    out[i] = v[i].get<double>();
  }
  return out;
}

DispersionModel read_model(const json& j, const std::string& where) {
  static const std::set<std::string> kKeys = {"crystal",       "axis",          "form",
                                              "coeffs",        "t0_celsius",    "thermo_order1",
                                              "thermo_order2", "lambda_range_um", "temp_range_c",
                                              "source",        "default"};
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.contains(key)) throw ParseError(fmt::format("{}: unknown key '{}'", where, key));
  }
  for (const auto& key : kKeys) {
    if (!j.contains(key)) throw ParseError(fmt::format("{}: missing key '{}'", where, key));
  }

  DispersionModel m;
  try {
    m.crystal = parse_crystal(j.at("crystal").get<std::string>());
    m.axis = parse_axis(j.at("axis").get<std::string>());
    const auto form = j.at("form").get<std::string>();
    if (form == "pole") {
      m.sellmeier.form = SellmeierFormId::Pole;
    } else if (form == "ratio") {
      m.sellmeier.form = SellmeierFormId::Ratio;
    } else {
      throw ParseError(fmt::format("form '{}' is not one of pole, ratio", form));
    }
    m.sellmeier.coeffs = read_array<6>(j, "coeffs", where);
    m.thermo.t0_c = j.at("t0_celsius").get<double>();
    m.thermo.order1 = read_array<4>(j, "thermo_order1", where);
    m.thermo.order2 = read_array<4>(j, "thermo_order2", where);
    const auto lr = read_array<2>(j, "lambda_range_um", where);
    const auto tr = read_array<2>(j, "temp_range_c", where);
    m.lambda_um = {lr[0], lr[1]};
    m.temp_c = {tr[0], tr[1]};
    m.source = j.at("source").get<std::string>();
    m.is_default = j.at("default").get<bool>();
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    if (msg.starts_with(where)) throw;
    throw ParseError(where + ": " + msg);
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
  return m;
}

json write_model(const DispersionModel& m) {
  return json{{"crystal", std::string(to_string(m.crystal))},
              {"axis", std::string(to_string(m.axis))},
              {"form", m.sellmeier.form == SellmeierFormId::Pole ? "pole" : "ratio"},
              {"coeffs", m.sellmeier.coeffs},
              {"t0_celsius", m.thermo.t0_c},
              {"thermo_order1", m.thermo.order1},
              {"thermo_order2", m.thermo.order2},
              {"lambda_range_um", std::array{m.lambda_um.lo, m.lambda_um.hi}},
              {"temp_range_c", std::array{m.temp_c.lo, m.temp_c.hi}},
              {"source", m.source},
              {"default", m.is_default}};
}

}  // namespace

CoefficientDatabase parse_database(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", origin, e.what()));
  }
  if (!doc.is_object()) throw ParseError(fmt::format("{}: top level must be an object", origin));
  for (const auto& [key, _] : doc.items()) {
    if (key != "schema_version" && key != "models") {
      throw ParseError(fmt::format("{}: unknown top-level key '{}'", origin, key));
    }
  }
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != 1) {
    throw ParseError(fmt::format("{}: schema_version must be the integer 1", origin));
  }
  if (!doc.contains("models") || !doc["models"].is_array()) {
    throw ParseError(fmt::format("{}: 'models' must be an array", origin));
  }
  std::vector<DispersionModel> models;
  const auto& arr = doc["models"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    models.push_back(read_model(arr[i], fmt::format("{}: models[{}]", origin, i)));
  }
  try {
    return CoefficientDatabase::from_models(std::move(models));
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", origin, e.what()));
  }
}

CoefficientDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open coefficient database '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_database(buf.str(), path.string());
}

std::string serialize_database(const CoefficientDatabase& db) {
  json models = json::array();
  for (const auto& m : db.models()) models.push_back(write_model(m));
  return json{{"schema_version", 1}, {"models", models}}.dump(2) + "\n";
}

}  // namespace spdc
