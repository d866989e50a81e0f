#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <typeinfo>

#include <CLI11.hpp>

#include "dxsim/engine/baseline.hpp"
#include "dxsim/engine/engine.hpp"
#include "dxsim/engine/stats.hpp"
#include "dxsim/frontend/config_file.hpp"
#include "dxsim/frontend/dsl.hpp"
#include "dxsim/frontend/sweep.hpp"
#include "dxsim/isa/validate.hpp"
#include "dxsim/memory_image.hpp"
#include "dxsim/oracle/compare.hpp"
#include "dxsim/oracle/oracle.hpp"
#include "dxsim/workloads/programs.hpp"

namespace fs = std::filesystem;
using namespace dxsim;

namespace {

constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

SimConfig resolve_config(const std::string& path, bool strict) {
  SimConfig cfg = path.empty() ? SimConfig{} : frontend::load_config(path, strict);
  frontend::apply_env_overrides(cfg);
  cfg.validate();
  return cfg;
}

struct LoadedProgram {
  isa::Program program;
  MemoryImage image;
};

LoadedProgram load_program(const fs::path& path, const std::string& image_path) {
  LoadedProgram lp;
  lp.program = frontend::parse_or_throw(frontend::read_text(path), path.string());
  lp.image = image_path.empty() ? MemoryImage::from_program(lp.program, path.parent_path())
                                : MemoryImage::load(image_path);
  return lp;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

struct RunArgs {
  std::string program;
  std::string config;
  std::string out;
  std::string trace;
  std::string dump_tiles;
  std::string image;
  std::string image_out;
  std::string baseline;
};

int cmd_run(const RunArgs& a) {
  const SimConfig cfg = resolve_config(a.config, true);
  LoadedProgram lp = load_program(a.program, a.image);
  const auto diags = isa::validate_program(lp.program, {cfg.maa.tiles, cfg.maa.registers});
  if (!diags.empty()) {
    std::string msg = a.program + ": program is not valid";
    for (const auto& d : diags) msg += "\n  step " + std::to_string(d.step) + ": " + d.message;
    throw ConfigError(msg);
  }

  std::optional<JsonlTraceWriter> trace;
  if (!a.trace.empty()) trace.emplace(a.trace);

  engine::RunResult r = engine::run(lp.program, std::move(lp.image), cfg, trace ? &*trace : nullptr);
  r.stats.run = fs::path(a.program).stem().string();

  std::string csv = engine::csv_header() + "\n" + engine::csv_row(r.stats) + "\n";
  if (!a.baseline.empty()) {
    const auto accesses = engine::load_baseline_trace(a.baseline);
    engine::StatReport b = engine::baseline_run(accesses, cfg);
    b.run = r.stats.run;
    csv += engine::csv_row(b) + "\n";
  }
  write_text(a.out, csv);

  if (!a.dump_tiles.empty()) r.tiles.dump(a.dump_tiles);
  if (!a.image_out.empty()) r.memory.save(a.image_out);
  return 0;
}

int cmd_gen(const std::string& kind_name, const std::string& spec_path, const std::string& out_dir,
            const std::string& config) {
  const auto kind = workloads::parse_kind(kind_name);
  if (!kind) throw ConfigError("unknown workload kind '" + kind_name + "'");
  const SimConfig cfg = resolve_config(config, false);
  workloads::WorkloadSpec spec =
      spec_path.empty() ? workloads::WorkloadSpec{} : frontend::load_workload_spec(spec_path);
  if (std::getenv("DX_SIM_SEED")) spec.pattern.seed = cfg.seed;

  const workloads::Workload wl = workloads::gen_program(*kind, spec, cfg);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::string stem(workloads::name(*kind));
  write_text((dir / (stem + ".dx")).string(), frontend::print(wl.program));
  for (const auto& init : wl.program.inits) {
    if (init.kind != isa::ArrayInit::Kind::File) continue;
    MemoryImage one;
    one.add(wl.image.at(init.array));
    one.save(dir / init.path);
  }
  engine::save_baseline_trace(dir / (stem + ".baseline"), wl.baseline);
  std::cout << "wrote " << (dir / (stem + ".dx")).string() << "\n";
  return 0;
}

std::string error_kind(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& x) {
    return typeid(x).name();
  }
}

std::string error_message(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& x) {
    return x.what();
  }
}

int cmd_verify(const std::string& program, const std::string& config) {
  const SimConfig cfg = resolve_config(config, false);
  const LoadedProgram lp = load_program(program, {});

  std::optional<oracle::OracleResult> expected;
  std::optional<engine::RunResult> timed;
  std::exception_ptr oracle_error, timing_error;
  try {
    expected = oracle::oracle_run(lp.program, lp.image, cfg.maa);
  } catch (const Error&) {
    oracle_error = std::current_exception();
  }
  try {
    timed = engine::run(lp.program, lp.image, cfg);
  } catch (const Error&) {
    timing_error = std::current_exception();
  }

  if (oracle_error || timing_error) {
    if (oracle_error && timing_error && error_kind(oracle_error) == error_kind(timing_error)) {
      std::cout << program << ": both models raise: " << error_message(timing_error) << "\n";
      return 0;
    }
    std::cerr << program << ": MISMATCH\n";
    std::cerr << "  oracle: " << (oracle_error ? error_message(oracle_error) : "completed") << "\n";
    std::cerr << "  timing: " << (timing_error ? error_message(timing_error) : "completed") << "\n";
    return kExitMismatch;
  }

  const auto diffs = oracle::differences(*expected, timed->memory, timed->tiles, timed->registers);
  if (!diffs.empty()) {
    std::cerr << program << ": MISMATCH\n";
    for (const auto& d : diffs) std::cerr << "  " << d << "\n";
    return kExitMismatch;
  }
  std::cout << program << ": OK (" << timed->stats.cycles << " cycles)\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, unsigned jobs, const std::string& out,
              const std::string& config) {
  const SimConfig cfg = resolve_config(config, false);
  frontend::SweepSpec spec = frontend::load_sweep_spec(spec_path);
  if (std::getenv("DX_SIM_SEED")) spec.workload.pattern.seed = cfg.seed;
  write_text(out, frontend::sweep_csv(frontend::run_sweep(spec, cfg, jobs)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dxsim: indirect-access accelerator and DDR4 memory simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "simulate a .dx program and write a stats CSV");
  run->add_option("program", run_args.program, "program file")->required()->check(CLI::ExistingFile);
  run->add_option("--config", run_args.config, "configuration file (every key required)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", run_args.out, "CSV output path, '-' for stdout")->required();
  run->add_option("--trace", run_args.trace, "JSON-lines event trace");
  run->add_option("--dump-tiles", run_args.dump_tiles, "binary scratchpad dump after the run");
  run->add_option("--image", run_args.image, "initial memory image instead of the program inits")
      ->check(CLI::ExistingFile);
  run->add_option("--image-out", run_args.image_out, "final memory image");
  run->add_option("--baseline", run_args.baseline, "also replay this access list on the baseline")
      ->check(CLI::ExistingFile);

  std::string gen_kind, gen_spec, gen_dir, gen_config;
  auto* gen = app.add_subcommand("gen", "generate a workload program, its images and baseline trace");
  gen->add_option("kind", gen_kind, "gather_spd | gather_full | scatter | rmw | csr")->required();
  gen->add_option("--spec", gen_spec, "workload spec file")->check(CLI::ExistingFile);
  gen->add_option("--out-dir", gen_dir, "output directory")->required();
  gen->add_option("--config", gen_config, "configuration file (partial allowed)")
      ->check(CLI::ExistingFile);

  std::string verify_prog, verify_config;
  auto* verify = app.add_subcommand("verify", "run the oracle and the timing model and compare");
  verify->add_option("program", verify_prog, "program file")->required()->check(CLI::ExistingFile);
  verify->add_option("--config", verify_config, "configuration file (partial allowed)")
      ->check(CLI::ExistingFile);

  std::string sweep_spec, sweep_out = "-", sweep_config;
  unsigned sweep_jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "run the access-ordering grid on both models");
  sweep->add_option("--spec", sweep_spec, "sweep spec file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--jobs", sweep_jobs, "concurrent simulations")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "CSV output path, '-' for stdout");
  sweep->add_option("--config", sweep_config, "configuration file (partial allowed)")
      ->check(CLI::ExistingFile);

  std::string show_config;
  auto* config = app.add_subcommand("config", "print the effective configuration (defaults if none)");
  config->add_option("--config", show_config, "configuration file (partial allowed)")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_args);
    if (*gen) return cmd_gen(gen_kind, gen_spec, gen_dir, gen_config);
    if (*verify) return cmd_verify(verify_prog, verify_config);
    if (*sweep) return cmd_sweep(sweep_spec, sweep_jobs, sweep_out, sweep_config);
    if (*config) {
      std::cout << resolve_config(show_config, false).to_text();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "dxsim: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
