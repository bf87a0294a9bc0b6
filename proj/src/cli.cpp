#include "spdc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spdc/biphoton.hpp"
#include "spdc/error.hpp"
#include "spdc/interference.hpp"
#include "spdc/manifest.hpp"
#include "spdc/matching.hpp"
#include "spdc/reference.hpp"
#include "spdc/units.hpp"

#ifndef SPDC_DEFAULT_DB
#define SPDC_DEFAULT_DB "data/crystals.json"
#endif
#ifndef SPDC_VERSION
#define SPDC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace spdc::cli {

std::string_view version() { return SPDC_VERSION; }

namespace {

// Thrown for bad user input discovered after CLI11 parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TempRange {
  double lo = 20.0;
  double hi = 120.0;
  int steps = 101;
};

TempRange parse_temp_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw UsageError(fmt::format("--t expects lo:hi:steps in degC, got '{}'", text));
  }
  TempRange r;
  try {
    std::size_t used = 0;
    r.lo = std::stod(text.substr(0, a), &used);
    if (used != a) throw std::invalid_argument("");
    const auto mid = text.substr(a + 1, b - a - 1);
    r.hi = std::stod(mid, &used);
    if (used != mid.size()) throw std::invalid_argument("");
    const auto tail = text.substr(b + 1);
    r.steps = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw UsageError(fmt::format("--t expects lo:hi:steps in degC, got '{}'", text));
  }
  if (r.steps < 2) throw UsageError(fmt::format("--t needs at least 2 steps, got {}", r.steps));
  if (!(r.hi > r.lo)) throw UsageError("--t needs lo < hi");
  return r;
}

Crystal crystal_arg(const std::string& name) {
  try {
    return parse_crystal(name);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

struct Common {
  std::string db;
  std::string out;
  std::string source;
  bool gnuplot = false;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

fs::path resolve_db_path(const Common& c) {
  if (!c.db.empty()) return c.db;
  if (const char* env = std::getenv("SPDC_DB"); env && *env) return env;
  return SPDC_DEFAULT_DB;
}

struct LoadedDb {
  fs::path path;
  std::string crc;
  CoefficientDatabase db;
};

LoadedDb open_db(const Common& c) {
  LoadedDb l;
  l.path = resolve_db_path(c);
  l.db = load_database(l.path);
  l.crc = file_crc32(l.path);
  return l;
}

Medium medium_for(const LoadedDb& l, Crystal crystal, const std::string& source) {
  if (source.empty()) return l.db.medium(crystal);
  const auto tags = l.db.tags(crystal);
  if (std::find(tags.begin(), tags.end(), source) == tags.end()) {
    std::string list;
    for (const auto& t : tags) list += (list.empty() ? "" : ", ") + t;
    throw UsageError(fmt::format("no source '{}' for {}; available: {}", source, to_string(crystal), list));
  }
  return l.db.medium(crystal, source);
}

fs::path stem_of(const fs::path& out) {
  auto s = out;
  s.replace_extension();
  return s;
}

fs::path with_suffix(const fs::path& out, std::string_view suffix) {
  auto s = stem_of(out);
  s += suffix;
  return s;
}

void finish(Context& ctx, const LoadedDb& l, std::string_view command, json params, std::vector<fs::path> outputs,
            const fs::path& main_out) {
  RunManifest m;
  m.tool_version = std::string(version());
  m.command = std::string(command);
  m.database_path = fs::absolute(l.path).lexically_normal().string();
  m.database_crc32 = l.crc;
  params["argv"] = ctx.argv;
  m.parameters = std::move(params);
  for (const auto& o : outputs) m.outputs.push_back(o.string());
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  const auto path = with_suffix(main_out, ".manifest.json");
  write_text(path, m.to_json().dump(2) + "\n");
  ctx.out << "wrote";
  for (const auto& o : outputs) ctx.out << ' ' << o.string();
  ctx.out << ' ' << path.string() << '\n';
}

std::string scan_gnuplot(const fs::path& csv, const ScanTable& t) {
  std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
  s += "set xlabel 'temperature (C)'\nset ylabel 'wavelength (nm)'\n";
  s += fmt::format("set title '{} {}'\n", to_string(t.crystal), to_string(t.condition));
  s += "plot ";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    s += fmt::format("{}'{}' using 1:{} with lines", c ? ", " : "", csv.filename().string(), c + 2);
  }
  return s + "\n";
}

ScanCondition parse_condition(const std::string& name) {
  if (name == "gvm1") return ScanCondition::GVM1;
  if (name == "gvm2" || name == "gvm2-idler") return ScanCondition::GVM2_idler;
  if (name == "gvm2-signal") return ScanCondition::GVM2_signal;
  throw UsageError(fmt::format("unknown condition '{}'; expected gvm1, gvm2, gvm2-idler or gvm2-signal", name));
}

json scan_params(const ScanTable& t, const TempRange& r) {
  json p = {{"crystal", std::string(to_string(t.crystal))},
            {"source", t.source_tag},
            {"condition", std::string(to_string(t.condition))},
            {"t_lo_c", r.lo},
            {"t_hi_c", r.hi},
            {"steps", r.steps}};
  if (t.pump_nm) p["lambda_p_nm"] = *t.pump_nm;
  if (t.poling_period_um) p["poling_period_um"] = *t.poling_period_um;
  if (t.reference_temp_c) p["reference_temp_c"] = *t.reference_temp_c;
  return p;
}

void write_scan(Context& ctx, const LoadedDb& l, std::string_view command, const Common& c, const ScanTable& t,
                const TempRange& r, const fs::path& out) {
  std::vector<fs::path> outputs{out};
  write_text(out, t.to_csv());
  if (c.gnuplot) {
    const auto gp = with_suffix(out, ".gp");
    write_text(gp, scan_gnuplot(out, t));
    outputs.push_back(gp);
  }
  finish(ctx, l, command, scan_params(t, r), outputs, out);
}

// --- gvm / pm-scan -------------------------------------------------------------

int cmd_gvm(Context& ctx, const Common& c, const std::string& crystal_name, const std::string& condition_name,
            const std::string& t_text) {
  const Crystal crystal = crystal_arg(crystal_name);
  const ScanCondition condition = parse_condition(condition_name);
  const auto r = parse_temp_range(t_text);
  const auto l = open_db(c);
  const auto medium = medium_for(l, crystal, c.source);
  const auto t = scan_over_temperature(medium, condition, r.lo, r.hi, r.steps);
  const fs::path out = c.out.empty() ? fmt::format("gvm_{}_{}.csv", to_string(crystal), to_string(condition)) : c.out;
  const double first = t.rows.front().values_nm[0];
  const double last = t.rows.back().values_nm[0];
  ctx.out << fmt::format("{} {} [{}]: lambda({:.3f} C) = {:.4f} nm, lambda({:.3f} C) = {:.4f} nm, "
                         "delta = lambda1 - lambda2 = {:.4f} nm\n",
                         to_string(crystal), to_string(condition), t.source_tag, r.lo, first, r.hi, last, first - last);
  write_scan(ctx, l, "gvm", c, t, r, out);
  return kOk;
}

int cmd_pm_scan(Context& ctx, const Common& c, const std::string& crystal_name, const std::string& t_text,
                double reference_c) {
  const Crystal crystal = crystal_arg(crystal_name);
  const auto r = parse_temp_range(t_text);
  const auto l = open_db(c);
  const auto medium = medium_for(l, crystal, c.source);
  const auto t = scan_over_temperature(medium, ScanCondition::PhaseMatch, r.lo, r.hi, r.steps, Execution::Parallel,
                                       {reference_c, {}});
  const fs::path out = c.out.empty() ? fmt::format("pm_{}.csv", to_string(crystal)) : c.out;
  const auto& a = t.rows.front().values_nm;
  const auto& b = t.rows.back().values_nm;
  ctx.out << fmt::format("{} phase matching [{}]: lambda_p = {:.4f} nm, Lambda = {:.4f} um (fixed at {:.3f} C)\n",
                         to_string(crystal), t.source_tag, *t.pump_nm, *t.poling_period_um, reference_c);
  ctx.out << fmt::format("  signal {:.4f} -> {:.4f} nm (delta {:.4f}), idler {:.4f} -> {:.4f} nm (delta {:.4f})\n",
                         a[0], b[0], a[0] - b[0], a[1], b[1], a[1] - b[1]);
  write_scan(ctx, l, "pm-scan", c, t, r, out);
  return kOk;
}

// --- jsa / hom -------------------------------------------------------------------

struct JsaArgs {
  std::string crystal;
  double temp_c = 20.0;
  double design_temp_c = 20.0;
  double length_mm = 30.0;
  double fwhm_nm = 0.87;
  int grid = 512;
  std::optional<double> lambda_p_nm;
  std::optional<double> poling_um;
};

struct JsaRun {
  LoadedDb db;
  JointSpectralAmplitude jsa;
  json params;
};

JsaRun build_jsa(const Common& c, const JsaArgs& a) {
  const Crystal crystal = crystal_arg(a.crystal);
  if (a.grid < static_cast<int>(SpectralGrid::kMinPoints)) {
    throw UsageError(fmt::format("--grid must be at least {}, got {}", SpectralGrid::kMinPoints, a.grid));
  }
  if (!(a.length_mm > 0.0)) throw UsageError("--length-mm must be positive");
  if (!(a.fwhm_nm > 0.0)) throw UsageError("--fwhm-nm must be positive");
  JsaRun run;
  run.db = open_db(c);
  const auto medium = medium_for(run.db, crystal, c.source);
  DegenerateDesign design;
  if (!a.lambda_p_nm || !a.poling_um) design = gvm1_design(medium, a.design_temp_c);
  const double lambda_p = a.lambda_p_nm.value_or(design.lambda_p_nm);
  const double period = a.poling_um.value_or(design.poling_period_um);
  const CrystalGeometry geometry{a.length_mm, period, a.temp_c};
  const PumpSpec pump{lambda_p, a.fwhm_nm};
  AutoGridOptions grid;
  grid.points = static_cast<std::size_t>(a.grid);
  run.jsa = compute_jsa_auto(medium, geometry, pump, grid);
  run.params = {{"crystal", std::string(to_string(crystal))},
                {"source", medium.tag()},
                {"temperature_c", a.temp_c},
                {"design_temperature_c", a.design_temp_c},
                {"length_mm", a.length_mm},
                {"fwhm_nm", a.fwhm_nm},
                {"lambda_p_nm", lambda_p},
                {"poling_period_um", period},
                {"grid", a.grid},
                {"grid_span_nm",
                 {units::nm_from_omega(run.jsa.grid.omega_s.back()), units::nm_from_omega(run.jsa.grid.omega_s.front())}}};
  return run;
}

int cmd_jsa(Context& ctx, const Common& c, const JsaArgs& a) {
  auto run = build_jsa(c, a);
  const auto& jsa = run.jsa;
  const double purity = schmidt_purity(jsa);
  const auto [ps, pi] = jsa.peak_nm();
  const fs::path out = c.out.empty() ? fmt::format("jsa_{}_{:.3f}C.csv", a.crystal, a.temp_c) : c.out;
  ctx.out << fmt::format("{} JSA at {:.3f} C: purity {:.6f}, peak signal {:.4f} nm, idler {:.4f} nm\n",
                         to_string(jsa.meta.crystal), a.temp_c, purity, ps, pi);
  std::vector<fs::path> outputs{out};
  write_text(out, jsa_to_csv(jsa));
  const auto sidecar = with_suffix(out, ".meta.json");
  auto meta = jsa_metadata(jsa);
  meta["purity"] = purity;
  write_text(sidecar, meta.dump(2) + "\n");
  outputs.push_back(sidecar);
  if (c.gnuplot) {
    const auto gp = with_suffix(out, ".gp");
    write_text(gp, fmt::format("set datafile separator ','\nset xlabel 'idler index'\nset ylabel 'signal index'\n"
                               "set view map\nplot '{}' matrix with image\n",
                               out.filename().string()));
    outputs.push_back(gp);
  }
  run.params["purity"] = purity;
  finish(ctx, run.db, "jsa", run.params, outputs, out);
  return kOk;
}

int cmd_hom(Context& ctx, const Common& c, const JsaArgs& a, std::optional<double> tau_max_fs, int steps) {
  if (tau_max_fs && !(*tau_max_fs > 0.0)) {
    throw UsageError(fmt::format("--tau-max-fs must be positive, got {}", *tau_max_fs));
  }
  if (steps < 64 || steps % 2 == 0) throw UsageError("--steps must be odd and at least 64");
  auto run = build_jsa(c, a);
  HomOptions opt;
  // Default window: 20 / sigma_p.
  opt.tau_max_s = tau_max_fs ? units::fs_to_s(*tau_max_fs) : 20.0 / run.jsa.meta.pump.sigma_p();
  opt.steps = steps;
  const auto trace = hom_trace(run.jsa, opt);
  const fs::path out = c.out.empty() ? fmt::format("hom_{}_{:.3f}C.csv", a.crystal, a.temp_c) : c.out;
  ctx.out << fmt::format("{} HOM at {:.3f} C: visibility {:.4f}, dips {}, baseline {:.6f}\n",
                         to_string(run.jsa.meta.crystal), a.temp_c, trace.visibility, trace.dip_count, trace.baseline);
  std::vector<fs::path> outputs{out};
  write_text(out, hom_to_csv(trace, run.jsa));
  if (c.gnuplot) {
    const auto gp = with_suffix(out, ".gp");
    write_text(gp, fmt::format("set datafile separator ','\nset datafile commentschars '#'\nset xlabel 'delay (fs)'\n"
                               "set ylabel 'coincidence probability'\nplot '{}' using 1:2 skip 1 with lines "
                               "notitle\n",
                               out.filename().string()));
    outputs.push_back(gp);
  }
  run.params["tau_max_fs"] = units::s_to_fs(opt.tau_max_s);
  run.params["steps"] = steps;
  run.params["visibility"] = trace.visibility;
  run.params["dip_count"] = trace.dip_count;
  finish(ctx, run.db, "hom", run.params, outputs, out);
  return kOk;
}

// --- table1 ---------------------------------------------------------------------

int cmd_table1(Context& ctx, const Common& c) {
  const auto l = open_db(c);
  std::string csv = "crystal,source,quantity,value_nm,reference_nm,tolerance_nm,pass\n";
  int failures = 0;
  int passed = 0;
  json params = {{"source", c.source}};
  for (const auto& row : reference::kTable) {
    const auto tags = l.db.tags(row.crystal);
    const bool has = !c.source.empty() && std::find(tags.begin(), tags.end(), c.source) != tags.end();
    const auto medium = has ? l.db.medium(row.crystal, c.source) : l.db.medium(row.crystal);
    const double lo = reference::kLowTempC;
    const double hi = reference::kHighTempC;
    struct Cell {
      const char* name;
      double ref;
      double tol;
      std::function<double()> eval;
    };
    const std::vector<Cell> cells = {
        {"gvm1_nm", row.gvm1_nm, reference::kWavelengthTolNm,
         [&] { return gvm1_wavelength(medium, lo).lambda_nm; }},
        {"gvm1_shift_nm", row.gvm1_shift_nm, reference::kShiftTolNm,
         [&] { return gvm1_wavelength(medium, lo).lambda_nm - gvm1_wavelength(medium, hi).lambda_nm; }},
        {"gvm2_nm", row.gvm2_nm, reference::kWavelengthTolNm,
         [&] { return gvm2_wavelength(medium, lo, Photon::Idler).lambda_nm; }},
        {"gvm2_shift_nm", row.gvm2_shift_nm, reference::kShiftTolNm,
         [&] {
           return gvm2_wavelength(medium, lo, Photon::Idler).lambda_nm -
                  gvm2_wavelength(medium, hi, Photon::Idler).lambda_nm;
         }},
        {"pm_shift_nm", row.pm_shift_nm, reference::kPmShiftTolNm,
         [&] {
           const auto t = scan_over_temperature(medium, ScanCondition::PhaseMatch, lo, hi, 2);
           return t.rows.front().values_nm[0] - t.rows.back().values_nm[0];
         }},
    };
    for (const auto& cell : cells) {
      try {
        const double v = cell.eval();
        const bool ok = std::abs(v - cell.ref) <= cell.tol;
        passed += ok;
        csv += fmt::format("{},{},{},{:.4f},{:.1f},{:.1f},{}\n", to_string(row.crystal), medium.tag(), cell.name, v,
                           cell.ref, cell.tol, ok ? "yes" : "no");
      } catch (const Error& e) {
        ++failures;
        ctx.err << fmt::format("{} {}: {}\n", to_string(row.crystal), cell.name, e.what());
        csv += fmt::format("{},{},{},,{:.1f},{:.1f},failed\n", to_string(row.crystal), medium.tag(), cell.name,
                           cell.ref, cell.tol);
      }
    }
  }
  const fs::path out = c.out.empty() ? fs::path("table1.csv") : fs::path(c.out);
  ctx.out << csv;
  ctx.out << fmt::format("{} of 25 cells within tolerance", passed);
  if (failures) ctx.out << fmt::format(", {} failed to compute", failures);
  ctx.out << '\n';
  write_text(out, csv);
  params["cells_within_tolerance"] = passed;
  params["cells_failed"] = failures;
  finish(ctx, l, "table1", params, {out}, out);
  return failures ? kComputationFailure : kOk;
}

// --- db-validate ------------------------------------------------------------------

int cmd_db_validate(Context& ctx, const Common& c) {
  const auto l = open_db(c);
  ctx.out << fmt::format("{}: {} models, crc32 {}\n", l.path.string(), l.db.size(), l.crc);
  for (Crystal crystal : kAllCrystals) {
    const auto tags = l.db.tags(crystal);
    ctx.out << fmt::format("{} ({})\n", to_string(crystal), composition(crystal));
    for (const auto& tag : tags) {
      const auto m = l.db.medium(crystal, tag);
      std::string axes;
      for (const auto& model : m.models()) axes += std::string(to_string(model.axis));
      const auto& y = m[Axis::y];
      ctx.out << fmt::format("  {}{}: axes {}, {:.3f}-{:.3f} um, {:.0f}-{:.0f} C\n", tag,
                             tag == tags.front() ? " (default)" : "", axes, y.lambda_um.lo, y.lambda_um.hi,
                             y.temp_c.lo, y.temp_c.hi);
    }
  }
  ctx.out << "database valid\n";
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool with_out = true) {
  sub->add_option("--db", c.db, "coefficient database (JSON); falls back to $SPDC_DB, then the bundled file");
  if (with_out) {
    sub->add_option("--out", c.out, "output CSV path; a .manifest.json is written next to it");
    sub->add_flag("--gnuplot", c.gnuplot, "also write a gnuplot script (.gp) next to the output");
  }
  sub->add_option("--source", c.source, "coefficient source tag (see db-validate); default per crystal");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type-II SPDC in KTP-isomorph crystals: group-velocity matching, quasi-phase matching, joint "
               "spectra and HOM interference. Wavelengths in nm, temperatures in degC, lengths in mm, delays in "
               "fs."};
  app.name("spdc");
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Common common;
  std::string crystal;
  std::string condition = "gvm1";
  std::string t_range = "20:120:101";
  double reference_c = 20.0;
  JsaArgs jsa_args;
  double lambda_p = 0.0;
  double poling = 0.0;
  double tau_max_fs = 0.0;
  int steps = 513;

  auto* gvm = app.add_subcommand("gvm", "scan a group-velocity-matched wavelength (nm) over temperature (degC)");
  gvm->add_option("--crystal", crystal, "KTP, RTP, KTA, RTA or CTA")->required();
  gvm->add_option("--condition", condition, "gvm1, gvm2 (= gvm2-idler), gvm2-idler or gvm2-signal")
      ->capture_default_str();
  gvm->add_option("--t", t_range, "temperature scan lo:hi:steps in degC")->capture_default_str();
  add_common(gvm, common);

  auto* pm = app.add_subcommand("pm-scan",
                                "scan phase-matched signal/idler wavelengths (nm) over temperature (degC) with pump "
                                "wavelength and poling period fixed at the reference degeneracy");
  pm->add_option("--crystal", crystal, "KTP, RTP, KTA, RTA or CTA")->required();
  pm->add_option("--t", t_range, "temperature scan lo:hi:steps in degC")->capture_default_str();
  pm->add_option("--reference-t", reference_c, "temperature (degC) fixing pump wavelength and poling period")
      ->capture_default_str();
  add_common(pm, common);

  const auto add_jsa_options = [&](CLI::App* sub) {
    sub->add_option("--crystal", jsa_args.crystal, "KTP, RTP, KTA, RTA or CTA")->required();
    sub->add_option("--t", jsa_args.temp_c, "crystal temperature in degC")->capture_default_str();
    sub->add_option("--design-t", jsa_args.design_temp_c,
                    "temperature (degC) whose GVM1 degeneracy fixes pump wavelength and poling period")
        ->capture_default_str();
    sub->add_option("--length-mm", jsa_args.length_mm, "crystal length in mm")->capture_default_str();
    sub->add_option("--fwhm-nm", jsa_args.fwhm_nm, "pump intensity FWHM in nm")->capture_default_str();
    sub->add_option("--grid", jsa_args.grid, "grid points per axis (>= 16)")->capture_default_str();
    sub->add_option("--lambda-p-nm", lambda_p, "override the pump wavelength (nm)");
    sub->add_option("--poling-um", poling, "override the poling period (um)");
    add_common(sub, common);
  };
  auto* jsa = app.add_subcommand("jsa", "joint spectral intensity |f|^2 on an auto-sized grid, with purity");
  add_jsa_options(jsa);
  auto* hom = app.add_subcommand("hom", "Hong-Ou-Mandel coincidence probability versus delay (fs)");
  add_jsa_options(hom);
  hom->add_option("--tau-max-fs", tau_max_fs, "half width of the delay window in fs (default 20/sigma_p)");
  hom->add_option("--steps", steps, "number of delay samples, odd")->capture_default_str();

  auto* table1 = app.add_subcommand("table1", "GVM wavelengths (nm) and 20-120 degC shifts for all five crystals "
                                              "against the reference table");
  add_common(table1, common);
  auto* dbv = app.add_subcommand("db-validate", "load the coefficient database and list its sources");
  add_common(dbv, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Context ctx{out, err, std::vector<std::string>(argv, argv + argc)};
  try {
    if (*gvm) return cmd_gvm(ctx, common, crystal, condition, t_range);
    if (*pm) return cmd_pm_scan(ctx, common, crystal, t_range, reference_c);
    if (*jsa || *hom) {
      const auto* sub = *jsa ? jsa : hom;
      if (sub->count("--lambda-p-nm")) jsa_args.lambda_p_nm = lambda_p;
      if (sub->count("--poling-um")) jsa_args.poling_um = poling;
    }
    if (*jsa) return cmd_jsa(ctx, common, jsa_args);
    if (*hom) {
      std::optional<double> tau;
      if (hom->count("--tau-max-fs")) tau = tau_max_fs;
      return cmd_hom(ctx, common, jsa_args, tau, steps);
    }
    if (*table1) return cmd_table1(ctx, common);
    if (*dbv) return cmd_db_validate(ctx, common);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GridError& e) {
    err << "grid error: " << e.what() << '\n';
    return kGridOrDomainFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kGridOrDomainFailure;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kComputationFailure;
  } catch (const ParseError& e) {
    err << "database error: " << e.what() << '\n';
    return kComputationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationFailure;
  }
  return kUsage;
}

}  // namespace spdc::cli
