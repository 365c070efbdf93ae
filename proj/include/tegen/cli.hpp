#pragma once

// Command implementations behind the `tegen` executable. Each command turns
// a StudyConfig into one or more named tables (or report text) and writes
// them to a stream or to `<out_dir>/<name>.csv`.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tegen/config.hpp"
#include "tegen/csv.hpp"
#include "tegen/electro.hpp"
#include "tegen/error.hpp"
#include "tegen/explore.hpp"
#include "tegen/layout.hpp"
#include "tegen/materials.hpp"
#include "tegen/reference.hpp"
#include "tegen/units.hpp"

namespace tegen::cli {

enum class Command { layout, resistance, simulate, calibrate, sweep, optimize, report };

inline constexpr std::string_view kCommandNames[] = {"layout", "resistance", "simulate", "calibrate",
                                                     "sweep",  "optimize",   "report"};

inline std::optional<Command> parse_command(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kCommandNames); ++i) {
    if (kCommandNames[i] == s) return static_cast<Command>(i);
  }
  return std::nullopt;
}

enum class Format { csv, table };

struct RunOptions {
  std::optional<DeltaSSource> delta_s;
  std::optional<Objective> objective;
  Format format = Format::csv;
  std::optional<std::filesystem::path> out_dir;
  unsigned threads = 1;
};

struct NamedTable {
  std::string name;
  csv::Table table;
};

namespace detail {

using csv::format_number;

inline std::string um(double cm) { return format_number(cm / units::micrometer); }

inline DeltaSSource delta_s_for(const DeviceConfig& d, const RunOptions& opts) { return opts.delta_s.value_or(d.delta_s); }

inline long junctions_for(const DeviceConfig& d) {
  const auto counts = compute_layout(d.geometry);
  return d.junction_pairs.value_or(counts.junction_pairs);
}

inline DeviceModel model_for(const DeviceConfig& d, const MaterialSet& mats, AnnealState state, double ds) {
  const long n = junctions_for(d);
  return {d.geometry, {2 * n, n}, resistivity(mats.bismuth, state), resistivity(mats.antimony, state), std::nullopt, ds};
}

inline std::vector<std::string> point_header() {
  return {"line_width_um", "spacing_um",  "total_lines_count", "junction_pairs_count", "delta_t_kelvin",
          "r_g_ohms",      "v_s_volts",   "p_cc_watts",        "p_u_watts",            "delta_s_source",
          "delta_s_volts_per_kelvin", "below_min_junctions_flag", "above_max_r_g_flag"};
}

inline std::vector<std::string> point_row(const DesignPoint& p, DeltaSSource src, double ds) {
  return {um(p.geometry.line_width),
          um(p.geometry.spacing),
          format_number(p.layout.total_lines),
          format_number(p.layout.junction_pairs),
          format_number(p.point.delta_t),
          format_number(p.point.r_g),
          format_number(p.point.v_s),
          format_number(p.point.p_cc),
          format_number(p.point.p_u),
          std::string(to_string(src)),
          format_number(ds),
          p.flags.below_min_junctions ? "true" : "false",
          p.flags.above_max_r_g ? "true" : "false"};
}

inline const SweepSpec& require_sweep(const StudyConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("config has no [sweep] section");
  return *cfg.sweep;
}

inline SweepSpec effective_sweep(const StudyConfig& cfg, const RunOptions& opts) {
  SweepSpec s = require_sweep(cfg);
  if (opts.delta_s) s.delta_s_source = *opts.delta_s;
  s.materials = cfg.materials;
  return s;
}

}  // namespace detail

inline csv::Table layout_table(const StudyConfig& cfg) {
  using namespace detail;
  csv::Table t({"device", "chip_width_cm", "line_width_um", "spacing_um", "line_length_cm", "film_thickness_um",
                "total_lines_count", "junction_pairs_count", "override_junction_pairs_count", "line_cross_section_cm2"});
  for (const auto& d : cfg.devices) {
    const auto counts = compute_layout(d.geometry);
    t.add_row({d.name, format_number(d.geometry.chip_width), um(d.geometry.line_width), um(d.geometry.spacing),
               format_number(d.geometry.line_length), um(d.geometry.film_thickness), format_number(counts.total_lines),
               format_number(counts.junction_pairs), d.junction_pairs ? format_number(*d.junction_pairs) : "",
               format_number(line_cross_section(d.geometry))});
  }
  return t;
}

/// Global resistance of every device under each tabulated anneal state, with
/// the published comparison columns for reference devices.
inline csv::Table resistance_table(const StudyConfig& cfg) {
  using namespace detail;
  std::vector<std::string> header = {"device", "junction_pairs_count"};
  for (auto s : kAllAnnealStates) header.push_back("r_g_" + std::string(to_string(s)) + "_ohms");
  for (const char* h : {"r_g_measured_ohms", "published_r_g_bulk_ohms", "published_r_g_laser_ohms",
                        "bulk_relative_error_fraction", "laser_relative_error_fraction"}) {
    header.emplace_back(h);
  }
  csv::Table t(std::move(header));
  for (const auto& d : cfg.devices) {
    std::vector<std::string> row = {d.name, format_number(junctions_for(d))};
    std::optional<double> bulk, laser;
    for (auto s : kAllAnnealStates) {
      if (!cfg.materials.bismuth.find(s) || !cfg.materials.antimony.find(s)) {
        row.emplace_back();
        continue;
      }
      const double r = global_resistance(model_for(d, cfg.materials, s, 1.0));
      if (s == AnnealState::bulk_reference) bulk = r;
      if (s == AnnealState::laser_annealed) laser = r;
      row.push_back(format_number(r));
    }
    row.push_back(d.measured_r_g ? format_number(*d.measured_r_g) : "");
    const auto* ref = d.reference ? reference::find(*d.reference) : nullptr;
    if (ref) {
      const double pb = ref->r_g_theo_kohm * units::kilo_ohm;
      const double pl = ref->r_g_cal_kohm * units::kilo_ohm;
      row.push_back(format_number(pb));
      row.push_back(format_number(pl));
      row.push_back(bulk ? format_number(make_residual("", pb, *bulk).relative_error) : "");
      row.push_back(laser ? format_number(make_residual("", pl, *laser).relative_error) : "");
    }
    t.add_row(std::move(row));
  }
  return t;
}

/// V_s / P_u against dT for each device; devices with a measured resistance
/// get a second series evaluated at that resistance.
inline csv::Table simulate_table(const StudyConfig& cfg, const RunOptions& opts) {
  using namespace detail;
  csv::Table t({"device", "r_g_source", "delta_s_source", "delta_s_volts_per_kelvin", "junction_pairs_count",
                "delta_t_kelvin", "r_g_ohms", "v_s_volts", "p_cc_watts", "p_u_watts"});
  const auto& sim = cfg.simulate;
  for (const auto& d : cfg.devices) {
    const auto src = delta_s_for(d, opts);
    const double ds = resolve_delta_seebeck(src, cfg.materials);
    const auto model = model_for(d, cfg.materials, d.state, ds);
    auto emit = [&](std::string_view r_src, const std::vector<OperatingPoint>& curve) {
      for (const auto& p : curve) {
        t.add_row({d.name, std::string(r_src), std::string(to_string(src)), format_number(ds),
                   format_number(model.layout.junction_pairs), format_number(p.delta_t), format_number(p.r_g),
                   format_number(p.v_s), format_number(p.p_cc), format_number(p.p_u)});
      }
    };
    emit("model_" + std::string(to_string(d.state)), power_curve(model, sim.delta_t_min, sim.delta_t_max, sim.steps));
    if (d.measured_r_g) {
      emit("measured", power_curve(model.layout.junction_pairs, ds, *d.measured_r_g, sim.delta_t_min,
                                   sim.delta_t_max, sim.steps));
    }
  }
  return t;
}

inline std::vector<NamedTable> calibrate_tables(const StudyConfig& cfg) {
  using namespace detail;
  std::vector<NamedTable> out;
  const auto& c = cfg.calibrate;

  const DeviceConfig* fit_dev = c.thickness_device ? cfg.find_device(*c.thickness_device) : nullptr;
  if (fit_dev) {
    auto reference_r_g = [&](const DeviceConfig& d) -> std::optional<double> {
      const auto* ref = d.reference ? reference::find(*d.reference) : nullptr;
      if (!ref) return std::nullopt;
      if (c.thickness_state == AnnealState::bulk_reference) return ref->r_g_theo_kohm * units::kilo_ohm;
      if (c.thickness_state == AnnealState::laser_annealed) return ref->r_g_cal_kohm * units::kilo_ohm;
      return std::nullopt;
    };
    const auto measured = c.thickness_r_g ? c.thickness_r_g : reference_r_g(*fit_dev);
    if (!measured) {
      throw ConfigError("[calibrate] needs thickness_r_g_<unit>: no published resistance for device '" + fit_dev->name +
                        "' in state " + std::string(to_string(c.thickness_state)));
    }
    const double rb = resistivity(cfg.materials.bismuth, c.thickness_state);
    const double rs = resistivity(cfg.materials.antimony, c.thickness_state);
    std::vector<ResistanceTarget> check;
    for (const auto& d : cfg.devices) {
      auto r = &d == fit_dev ? measured : reference_r_g(d);
      if (!r) continue;
      const long n = junctions_for(d);
      check.push_back({d.name, d.geometry, {2 * n, n}, rb, rs, *r});
    }
    const long n = junctions_for(*fit_dev);
    const auto result = calibrate_thickness(*measured, fit_dev->geometry, {2 * n, n}, rb, rs, check);
    csv::Table t({"fit_device", "anneal_state", "film_thickness_um", "device", "measured_r_g_ohms", "modeled_r_g_ohms",
                  "relative_error_fraction"});
    for (const auto& r : result.residuals) {
      t.add_row({fit_dev->name, std::string(to_string(c.thickness_state)), um(result.value), r.device_id,
                 format_number(r.measured), format_number(r.modeled), format_number(r.relative_error)});
    }
    out.push_back({"calibrate_thickness", std::move(t)});
  }

  if (c.voltage) {
    const DeviceConfig& d = c.voltage_device ? *cfg.find_device(*c.voltage_device) : cfg.devices.front();
    const long n = junctions_for(d);
    const auto result = calibrate_delta_seebeck(*c.voltage, n, c.voltage_delta_t);
    csv::Table t({"device", "junction_pairs_count", "delta_t_kelvin", "delta_s_volts_per_kelvin",
                  "bulk_delta_s_volts_per_kelvin", "measured_v_s_volts", "modeled_v_s_volts", "relative_error_fraction"});
    for (const auto& r : result.residuals) {
      t.add_row({d.name, format_number(n), format_number(c.voltage_delta_t), format_number(result.value),
                 format_number(cfg.materials.bulk_delta_seebeck()), format_number(r.measured), format_number(r.modeled),
                 format_number(r.relative_error)});
    }
    out.push_back({"calibrate_delta_s", std::move(t)});
  }
  if (out.empty()) throw ConfigError("[calibrate] names neither thickness_device nor voltage_<unit>");
  return out;
}

inline std::vector<NamedTable> sweep_tables(const StudyConfig& cfg, const RunOptions& opts, SweepStatus* status = nullptr) {
  using namespace detail;
  const auto spec = effective_sweep(cfg, opts);
  const double ds = resolve_delta_seebeck(spec.delta_s_source, spec.materials);
  const auto result = sweep(spec, opts.threads);
  csv::Table points(point_header());
  for (const auto& p : result.points) points.add_row(point_row(p, spec.delta_s_source, ds));
  csv::Table skipped({"line_width_um", "spacing_um", "reason"});
  for (const auto& s : result.skipped) skipped.add_row({um(s.line_width), um(s.spacing), s.reason});
  if (status) *status = result.status;
  return {{"sweep", std::move(points)}, {"sweep_skipped", std::move(skipped)}};
}

inline std::vector<NamedTable> optimize_tables(const StudyConfig& cfg, const RunOptions& opts) {
  using namespace detail;
  const auto spec = effective_sweep(cfg, opts);
  const double ds = resolve_delta_seebeck(spec.delta_s_source, spec.materials);
  const Objective objective = opts.objective.value_or(cfg.objective);
  const auto result = sweep(spec, opts.threads);
  const auto best = best_admissible(result.points, objective);

  auto header = point_header();
  header.insert(header.begin(), "objective");
  csv::Table opt(header);
  auto row = point_row(best, spec.delta_s_source, ds);
  row.insert(row.begin(), std::string(to_string(objective)));
  opt.add_row(std::move(row));

  csv::Table front(point_header());
  for (const auto& p : pareto_front(result.points)) front.add_row(point_row(p, spec.delta_s_source, ds));
  return {{"optimize", std::move(opt)}, {"pareto", std::move(front)}};
}

/// Full plain-text study report. The discrepancy ledger is included whenever
/// a device refers to a published reference chip.
inline std::string report_text(const StudyConfig& cfg, const RunOptions& opts) {
  using namespace detail;
  std::ostringstream out;
  out << "Thermoelectric micro-generator study report\n"
      << "===========================================\n\n";

  out << "Materials\n---------\n";
  csv::Table mats({"material", "seebeck_volts_per_kelvin", "melt_limit_celsius", "rho_as_deposited_ohm_cm",
                   "rho_furnace_annealed_ohm_cm", "rho_laser_annealed_ohm_cm", "rho_bulk_reference_ohm_cm"});
  for (const Material* m : {&cfg.materials.bismuth, &cfg.materials.antimony}) {
    std::vector<std::string> row = {m->name(), format_number(m->seebeck()), format_number(m->melt_limit_celsius())};
    for (auto s : kAllAnnealStates) row.push_back(m->find(s) ? format_number(*m->find(s)) : "");
    mats.add_row(std::move(row));
  }
  mats.write_text(out);

  out << "\nLayout\n------\n";
  layout_table(cfg).write_text(out);
  out << "\nGlobal resistance\n-----------------\n";
  resistance_table(cfg).write_text(out);

  bool calibrated = cfg.calibrate.thickness_device || cfg.calibrate.voltage;
  if (calibrated) {
    out << "\nCalibration\n-----------\n";
    for (const auto& t : calibrate_tables(cfg)) {
      out << t.name << ":\n";
      t.table.write_text(out);
    }
  }

  out << "\nOperating points at " << format_number(cfg.simulate.delta_t_max) << " K\n"
      << "----------------------------\n";
  csv::Table ops({"device", "r_g_source", "delta_s_source", "v_s_volts", "r_g_ohms", "p_u_watts"});
  for (const auto& d : cfg.devices) {
    const auto src = delta_s_for(d, opts);
    const double ds = resolve_delta_seebeck(src, cfg.materials);
    const auto model = model_for(d, cfg.materials, d.state, ds);
    const auto p = operating_point(model, cfg.simulate.delta_t_max);
    ops.add_row({d.name, "model_" + std::string(to_string(d.state)), std::string(to_string(src)), format_number(p.v_s),
                 format_number(p.r_g), format_number(p.p_u)});
    if (d.measured_r_g) {
      const auto pm = operating_point(model.layout.junction_pairs, ds, *d.measured_r_g, cfg.simulate.delta_t_max);
      ops.add_row({d.name, "measured", std::string(to_string(src)), format_number(pm.v_s), format_number(pm.r_g),
                   format_number(pm.p_u)});
    }
  }
  ops.write_text(out);

  if (cfg.sweep) {
    out << "\nDesign search\n-------------\n";
    for (auto o : {Objective::max_v_s, Objective::max_p_u}) {
      RunOptions o_opts = opts;
      o_opts.objective = o;
      try {
        const auto tables = optimize_tables(cfg, o_opts);
        out << to_string(o) << ":\n";
        tables.front().table.write_text(out);
      } catch (const NoSolutionError& e) {
        out << to_string(o) << ": no solution (" << e.what() << ")\n";
      }
    }
  }

  bool has_reference = false;
  for (const auto& d : cfg.devices) has_reference = has_reference || d.reference.has_value();
  if (has_reference) {
    out << "\nDiscrepancy ledger (model vs published values)\n"
        << "----------------------------------------------\n";
    csv::Table ledger({"id", "quantity", "unit", "published", "modeled", "relative_gap_fraction", "note"});
    for (const auto& e : reference::discrepancy_ledger(cfg.materials)) {
      ledger.add_row({e.id, e.quantity, e.unit, format_number(e.published), format_number(e.modeled),
                      format_number(e.relative_gap), e.note});
    }
    ledger.write_text(out);
    out << "\nNot reproducible:\n";
    for (const auto& s : reference::unreproducible_values()) out << "  - " << s << '\n';
  }
  return out.str();
}

namespace detail {

inline void emit(const std::vector<NamedTable>& tables, const RunOptions& opts, std::ostream& out) {
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    for (const auto& t : tables) {
      const auto path = *opts.out_dir / (t.name + (opts.format == Format::csv ? ".csv" : ".txt"));
      std::ofstream f(path, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + path.string() + "'");
      opts.format == Format::csv ? t.table.write_csv(f) : t.table.write_text(f);
    }
    return;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables.size() > 1) out << (i ? "\n" : "") << "# " << tables[i].name << '\n';
    opts.format == Format::csv ? tables[i].table.write_csv(out) : tables[i].table.write_text(out);
  }
}

}  // namespace detail

/// Runs one command; returns the process exit code (0 or an ErrorCategory).
inline int run(Command command, const StudyConfig& cfg, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    switch (command) {
      case Command::layout: detail::emit({{"layout", layout_table(cfg)}}, opts, out); break;
      case Command::resistance: detail::emit({{"resistance", resistance_table(cfg)}}, opts, out); break;
      case Command::simulate: detail::emit({{"simulate", simulate_table(cfg, opts)}}, opts, out); break;
      case Command::calibrate: detail::emit(calibrate_tables(cfg), opts, out); break;
      case Command::sweep: {
        SweepStatus status = SweepStatus::ok;
        detail::emit(sweep_tables(cfg, opts, &status), opts, out);
        if (status == SweepStatus::empty) {
          err << "sweep: no feasible geometry in the grid\n";
          return static_cast<int>(ErrorCategory::geometry);
        }
        break;
      }
      case Command::optimize: detail::emit(optimize_tables(cfg, opts), opts, out); break;
      case Command::report: {
        const auto text = report_text(cfg, opts);
        if (opts.out_dir) {
          std::filesystem::create_directories(*opts.out_dir);
          std::ofstream f(*opts.out_dir / "report.txt", std::ios::binary);
          if (!f) throw ConfigError("cannot write report.txt");
          f << text;
        } else {
          out << text;
        }
        break;
      }
    }
  } catch (const Error& e) {
    err << kCommandNames[static_cast<int>(command)] << ": " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::filesystem::filesystem_error& e) {
    err << kCommandNames[static_cast<int>(command)] << ": " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::config);
  }
  return 0;
}

}  // namespace tegen::cli
