// tegen: design-space tool for planar Bi/Sb thin-film thermoelectric generators.
//
//   tegen <command> [config] [--materials FILE] [--out DIR] [--delta-s bulk|calibrated]
//                            [--format csv|table] [--objective max_p_u|max_v_s] [--threads N]
//
// `config` defaults to the built-in `paper_devices` study.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tegen/cli.hpp"
#include "tegen/config.hpp"

int main(int argc, char** argv) {
  using namespace tegen;

  CLI::App app{"Thermoelectric micro-generator design-space tool"};
  std::string command;
  std::string config_path = "paper_devices";
  std::string materials_path;
  std::string out_dir;
  std::string delta_s;
  std::string format = "csv";
  std::string objective;
  unsigned threads = 1;

  std::vector<std::string> commands(std::begin(cli::kCommandNames), std::end(cli::kCommandNames));
  app.add_option("command", command, "layout | resistance | simulate | calibrate | sweep | optimize | report")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("config", config_path, "study config file, or 'paper_devices' for the built-in study");
  app.add_option("--materials", materials_path, "materials override file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "write outputs into this directory instead of stdout");
  app.add_option("--delta-s", delta_s, "Seebeck difference source for every device")
      ->check(CLI::IsMember({"bulk", "calibrated"}));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "table"}));
  app.add_option("--objective", objective, "optimization objective")->check(CLI::IsMember({"max_p_u", "max_v_s"}));
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCategory::config);
  }

  StudyConfig cfg;
  try {
    cfg = config_path == "paper_devices" ? paper_devices_config() : parse_config_file(config_path);
    if (!materials_path.empty()) cfg.materials = load_materials(materials_path);
  } catch (const Error& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return e.exit_code();
  }

  cli::RunOptions opts;
  if (!delta_s.empty()) opts.delta_s = parse_delta_s_source(delta_s);
  if (!objective.empty()) opts.objective = parse_objective(objective);
  opts.format = format == "table" ? cli::Format::table : cli::Format::csv;
  if (!out_dir.empty()) opts.out_dir = out_dir;
  opts.threads = threads;

  return cli::run(*cli::parse_command(command), cfg, opts, std::cout, std::cerr);
}
