// Command-line experiment runner.
//
//   lacuna <command> --config <file.json> [--out <file.csv>] [--seed N]
//          [--allow-hypothesis-violation] [--random-poly count,spec,seed]
//   lacuna --dump-phi <file.csv>
//
// Exit status: 0 success, 2 schema/usage error, 3 hypothesis violation,
// 4 numerical fault, 1 anything else. Errors are reported on stderr as a
// one-line JSON record.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "lacuna/io.hpp"
#include "lacuna/run.hpp"

namespace {

int fail(int code, const std::string& kind, const std::string& command, const std::string& message) {
  std::cerr << lacuna::run::error_record(kind, command, message) << '\n';
  return code;
}

bool write_to(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lacuna;
  CLI::App app{"Experiments on lacunary spectra, band functions and concentration constants"};
  app.require_subcommand(0, 1);

  std::string dump_phi;
  app.add_option("--dump-phi", dump_phi, "Write the bump phi and its transform on a grid to this CSV file");

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> random_poly;
  bool allow_violation = false;
  for (const auto& name : run::commands()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_path, "Output CSV (stdout when omitted)");
    sub->add_option("--seed", seed, "Master seed, overrides the config");
    sub->add_flag("--allow-hypothesis-violation", allow_violation, "Flag hypothesis violations and continue");
    if (name == "lemma1")
      sub->add_option("--random-poly", random_poly, "count,spectrum-spec,seed of random polynomials");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(run::schema_error, "usage", "", e.what());
  }

  if (!dump_phi.empty()) {
    std::ostringstream ss;
    run::dump_phi(ss);
    if (!write_to(dump_phi, ss.str())) return fail(run::internal_error, "io", "dump-phi", "cannot write " + dump_phi);
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    if (!dump_phi.empty()) return run::ok;
    return fail(run::schema_error, "usage", "", "no command given; see --help");
  }
  const std::string command = chosen.front()->get_name();

  try {
    const auto config = io::parse_json_text(io::read_file(config_path), config_path);
    run::Options opt;
    opt.seed = seed;
    opt.allow_hypothesis_violation = allow_violation;
    opt.random_poly = random_poly;
    const auto result = run::run(command, config, opt);
    std::ostringstream ss;
    run::write_csv(ss, result);
    if (!write_to(out_path, ss.str())) return fail(run::internal_error, "io", command, "cannot write " + out_path);
    for (const auto& w : result.warnings) std::cerr << run::error_record("hypothesis-violation-allowed", command, w) << '\n';
    if (result.fault) return fail(run::numerical_error, "numerical-fault", command, *result.fault);
    return run::ok;
  } catch (const io::SchemaError& e) {
    return fail(run::schema_error, "schema", command, e.what());
  } catch (const run::HypothesisViolation& e) {
    return fail(run::hypothesis_error, "hypothesis-violation", command, e.what());
  } catch (const run::NumericalFault& e) {
    return fail(run::numerical_error, "numerical-fault", command, e.what());
  } catch (const std::exception& e) {
    return fail(run::internal_error, "internal", command, e.what());
  }
}
