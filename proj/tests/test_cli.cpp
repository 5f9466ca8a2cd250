#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lacuna/io.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
};

/// Per-process scratch directory, removed at exit.
struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("lacuna-cli-test-" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch() {
  static const Scratch s;
  return s.dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

/// Runs the CLI with `args`, capturing stdout and stderr.
Outcome cli(const std::string& args) {
  const auto out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = std::string("'") + LACUNA_CLI_PATH + "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(out);
  o.err = slurp(err);
  return o;
}

std::string config(const std::string& name) { return std::string("'") + LACUNA_CONFIG_DIR + "/" + name + "'"; }

}  // namespace

TEST_CASE("density example through the CLI", "[cli]") {
  const auto cfg = write_config("density.json", R"({"sets": ["holes:0.1,1"], "a": 1})");
  const auto o = cli("density --config '" + cfg.string() + "'");
  REQUIRE(o.code == 0);
  CHECK(o.err.empty());
  CHECK_THAT(o.out, StartsWith("# lacuna density\n"));
  CHECK_THAT(o.out, ContainsSubstring("set_id,measure,functional,parameter,value\n"));
  CHECK_THAT(o.out, ContainsSubstring("holes:0.1,1\",0.90000000000000002,relative_density,1,0.90000000000000002\n"));
}

TEST_CASE("header carries the hash of the embedded config", "[cli]") {
  const auto o = cli("lacunarity --config " + config("lacunarity.json") + " --seed 5");
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string line, hash, conf;
  while (std::getline(lines, line)) {
    if (line.rfind("# config_hash: fnv1a64:", 0) == 0) hash = line.substr(23);
    if (line.rfind("# config: ", 0) == 0) conf = line.substr(10);
  }
  REQUIRE_FALSE(conf.empty());
  CHECK(hash == lacuna::io::fnv1a64(conf));
  CHECK(lacuna::io::json::parse(conf).at("seed") == 5);
  CHECK_THAT(o.out, ContainsSubstring("# seed: 5\n"));
}

TEST_CASE("--out writes the same bytes as stdout", "[cli]") {
  const auto file = scratch() / "sharp.csv";
  const auto a = cli("sharp-constant --config " + config("sharp-constant.json") + " --out '" + file.string() + "'");
  const auto b = cli("sharp-constant --config " + config("sharp-constant.json"));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out.empty());
  CHECK(slurp(file) == b.out);
  CHECK_THAT(b.out, ContainsSubstring(",0.18169011381620"));
}

TEST_CASE("unknown fields are rejected with a schema error", "[cli]") {
  const auto cfg = write_config("bad.json", R"({"sets": ["holes:0.1,1"], "a": 1, "colour": "red"})");
  const auto o = cli("density --config '" + cfg.string() + "'");
  CHECK(o.code == 2);
  CHECK(o.out.empty());
  const auto rec = lacuna::io::json::parse(o.err);
  CHECK(rec.at("error") == "schema");
  CHECK(rec.at("command") == "density");
  CHECK_THAT(rec.at("message").get<std::string>(), ContainsSubstring("colour"));
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(cli("").code == 2);
  CHECK(cli("density").code == 2);
  CHECK(cli("frobnicate --config x.json").code == 2);
  const auto missing = cli("density --config /nonexistent/config.json");
  CHECK(missing.code == 2);
  CHECK(lacuna::io::json::parse(missing.err).at("error") == "schema");
  const auto malformed = write_config("malformed.json", "{\"sets\": [");
  CHECK(cli("density --config '" + malformed.string() + "'").code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("hypothesis violations exit 3 unless allowed", "[cli]") {
  const auto cfg = write_config("wide.json", R"({"band": {"b": 4, "K": 8, "centres": [0], "profile": "smooth"},
      "set": {"periodic": true, "intervals": [[0, 0.5]]}, "Q": 4})");
  const auto strict = cli("theorem2 --config '" + cfg.string() + "'");
  CHECK(strict.code == 3);
  CHECK(strict.out.empty());
  CHECK(lacuna::io::json::parse(strict.err).at("error") == "hypothesis-violation");

  const auto lenient = cli("theorem2 --config '" + cfg.string() + "' --allow-hypothesis-violation");
  CHECK(lenient.code == 0);
  CHECK_THAT(lenient.out, ContainsSubstring("# hypothesis_violation: "));
  CHECK(lacuna::io::json::parse(lenient.err).at("error") == "hypothesis-violation-allowed");
}

TEST_CASE("lemma1 random polynomials from the flag", "[cli]") {
  const auto cfg = write_config("lemma1.json", "{}");
  const auto o = cli("lemma1 --config '" + cfg.string() + "' --random-poly 50,sidon:2-16,2024");
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("index,", 0) == 0) continue;
    ++rows;
    CHECK_THAT(line, ContainsSubstring(",1,"));
    CHECK(line.substr(line.size() - 5) == ",true");
  }
  CHECK(rows == 50);
  CHECK(cli("lemma1 --config '" + cfg.string() + "'").code == 2);
}

TEST_CASE("phi dump", "[cli]") {
  const auto file = scratch() / "phi.csv";
  REQUIRE(cli("--dump-phi '" + file.string() + "'").code == 0);
  const auto text = slurp(file);
  CHECK_THAT(text, StartsWith("x,phi,phi_check\n-20,0,"));
  const auto at_zero = text.find("\n0,1,");
  REQUIRE(at_zero != std::string::npos);
  CHECK(std::abs(std::stod(text.substr(at_zero + 5)) - 0.75) < 1e-12);
}
