#include "tableturn/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tableturn/format.hpp"
#include "tableturn/solver.hpp"
#include "tableturn/svg.hpp"

namespace tableturn {

namespace {

namespace fs = std::filesystem;

std::string prepare_output_dir(const OutputConfig& output,
                               const std::string& out_override) {
  const std::string dir = resolve_output_dir(output, out_override);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir +
                             "': " + ec.message());
  }
  return dir;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

bool wants_format(const OutputConfig& output, const std::string& format) {
  for (const auto& f : output.formats) {
    if (f == format) return true;
  }
  return false;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

std::string resolve_output_dir(const OutputConfig& output,
                               const std::string& out_override) {
  if (!out_override.empty()) return out_override;
  if (!output.directory.empty()) return output.directory;
  if (const char* env = std::getenv("TABLETURN_OUT"); env && *env) return env;
  return ".";
}

int run_validate(const ExperimentConfig& config, std::ostream& log) {
  const TableGeometry geom = build_geometry(config.geometry);
  const ValidationReport report = validate_assumptions(geom);
  log << to_text(report);
  return report.all_ok() ? kExitOk : kExitAssumption;
}

int run_sweep(const ExperimentConfig& config, const CommandOptions& options,
              std::ostream& log) {
  const TableGeometry geom = build_geometry(config.geometry);
  const auto terrain = build_terrain(config.terrain);
  const TouchModel model = options.model.value_or(TouchModel::rigid);

  const SweepTable table = sweep(geom, *terrain, config.solver.n, model);

  const std::string dir = prepare_output_dir(config.output, options.out_override);
  const std::string csv_path = join_path(dir, "sweep.csv");
  write_file(csv_path, sweep_csv(table));
  log << "wrote " << csv_path << " (" << table.rows.size() << " rows, "
      << to_string(model) << " model)\n";

  if (wants_format(config.output, "svg")) {
    std::vector<Curve> curves(3);
    curves[0].label = "h_ac";
    curves[0].color = "#1f77b4";
    curves[1].label = "h_bd";
    curves[1].color = "#d62728";
    curves[2].label = "h_delta";
    curves[2].color = "#2ca02c";
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      for (auto& curve : curves) curve.xs.push_back(table.thetas[k]);
      curves[0].ys.push_back(table.rows[k].h_ac);
      curves[1].ys.push_back(table.rows[k].h_bd);
      curves[2].ys.push_back(table.rows[k].h_delta);
    }
    const std::string svg_path = join_path(dir, "sweep.svg");
    write_curves_svg(svg_path, curves);
    log << "wrote " << svg_path << '\n';
  }
  return kExitOk;
}

int run_solve(const ExperimentConfig& config, const CommandOptions& options,
              std::ostream& log) {
  const TableGeometry geom = build_geometry(config.geometry);
  const auto terrain = build_terrain(config.terrain);
  const TouchModel model = options.model.value_or(TouchModel::rigid);

  const StabilizationResult result = find_stabilizing_angles(
      geom, *terrain, config.solver.n, config.solver.tol, model);

  const std::string dir = prepare_output_dir(config.output, options.out_override);
  const std::string txt_path = join_path(dir, "solve.txt");
  write_file(txt_path, to_text(result));
  const std::string roots_path = join_path(dir, "roots.csv");
  write_file(roots_path, roots_csv(result));

  log << to_text(result);
  log << "wrote " << txt_path << " and " << roots_path << '\n';
  return result.verdict == Verdict::none_found ? kExitNoAngle : kExitOk;
}

int run_ergodic(const ExperimentConfig& config, const CommandOptions& options,
                std::ostream& log) {
  const TableGeometry geom = build_geometry(config.geometry);
  const auto terrain = build_terrain(config.terrain);
  const TouchModel model = options.model.value_or(TouchModel::abstract);

  HeightProfile profile(geom, *terrain);
  CircleFunction f;
  if (model == TouchModel::abstract) {
    f = [&profile](double theta) { return h_delta_abstract(profile, theta); };
  } else {
    const TableGeometry* g = &geom;
    const Terrain* t = terrain.get();
    f = [g, t](double theta) { return equal_hover_rigid(*g, *t, theta).h_delta; };
  }

  const SamplingScheme scheme = resolve_theta0(config.solver.theta0);

  std::vector<std::size_t> n_list;
  for (std::size_t m = 100; m < config.solver.ergodic_n; m *= 10) {
    n_list.push_back(m);
  }
  n_list.push_back(config.solver.ergodic_n);

  const AverageReport report = convergence_report(f, scheme, n_list);

  const std::string dir = prepare_output_dir(config.output, options.out_override);
  const std::string csv_path = join_path(dir, "ergodic.csv");
  write_file(csv_path, average_report_csv(report));
  const std::string txt_path = join_path(dir, "ergodic.txt");
  write_file(txt_path, average_report_text(report));

  if (std::holds_alternative<FiniteOrbit>(scheme)) {
    log << "finite-orbit mode: the rotation is rational, so the limit is the "
           "exact orbit average, not the circle average\n";
  }
  log << average_report_text(report);
  log << "wrote " << csv_path << " and " << txt_path << '\n';
  return kExitOk;
}

int run_batch(const ExperimentConfig& config, std::size_t n_seeds,
              const CommandOptions& options, std::ostream& log) {
  if (config.terrain.kind != TerrainKind::random) {
    throw ConfigError(
        "batch needs [terrain] kind = random; seeds 1..n replace the "
        "configured seed");
  }
  if (n_seeds < 1) throw ConfigError("batch needs at least one seed");

  const TableGeometry geom = build_geometry(config.geometry);
  const TouchModel model = options.model.value_or(TouchModel::rigid);

  std::ostringstream csv;
  csv << "seed,verdict,n_roots,epsilon_floor,lipschitz_bound\n";

  std::size_t successes = 0;
  const auto batch_start = std::chrono::steady_clock::now();
  for (std::size_t seed = 1; seed <= n_seeds; ++seed) {
    const auto seed_start = std::chrono::steady_clock::now();
    const auto terrain = random_terrain(seed, config.terrain.n_bumps,
                                        config.terrain.max_amplitude,
                                        config.terrain.min_width,
                                        config.terrain.extent);
    const StabilizationResult result = find_stabilizing_angles(
        geom, *terrain, config.solver.n, config.solver.tol, model);
    const auto seed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - seed_start)
                             .count();

    if (result.verdict != Verdict::none_found) ++successes;
    csv << seed << ',' << to_string(result.verdict) << ','
        << result.angles.size() << ',' << fmt_g17(result.epsilon_floor) << ','
        << fmt_g17(result.lipschitz_bound) << '\n';
    log << "seed " << seed << ": " << to_string(result.verdict) << ", "
        << result.angles.size() << " roots, " << fmt_g(seed_ms) << " ms\n";
  }
  const auto total_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - batch_start)
                            .count();

  const std::string dir = prepare_output_dir(config.output, options.out_override);
  const std::string csv_path = join_path(dir, "batch.csv");
  write_file(csv_path, csv.str());

  log << "success rate: " << successes << '/' << n_seeds << " ("
      << fmt_g(100.0 * static_cast<double>(successes) /
               static_cast<double>(n_seeds))
      << "%), total " << fmt_g(total_ms) << " ms\n";
  log << "wrote " << csv_path << '\n';
  return successes == n_seeds ? kExitOk : kExitNoAngle;
}

}  // namespace tableturn
