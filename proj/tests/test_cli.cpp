#include <doctest.h>

#include <filesystem>
#include <string>

#include "support.hpp"

using testsupport::make_temp_dir;
using testsupport::run_command;
using testsupport::slurp;
using testsupport::write_text;

namespace {

const std::string kBinary = CYCLES_BIN;

std::filesystem::path write_config(const std::filesystem::path& dir,
                                   const std::string& name, const std::string& body) {
  const auto path = dir / name;
  write_text(path, body);
  return path;
}

}  // namespace

TEST_CASE("list prints a stable catalog of ten scenarios") {
  const auto first = run_command(kBinary + " list");
  REQUIRE(first.exit_code == 0);
  for (const char* name : {"spectrum", "boost", "redshift", "gauge_phase",
                           "bohr_sommerfeld", "cyclic_kernel", "dirac_check", "flux_check",
                           "kk_tower", "freezeout"}) {
    CHECK(first.output.find(std::string("scenario ") + name) != std::string::npos);
  }
  const auto second = run_command(kBinary + " list");
  CHECK(first.output == second.output);
}

TEST_CASE("run executes a scenario and reports PASS") {
  const auto dir = make_temp_dir("cli_run");
  const auto config = write_config(dir, "config.json",
                                   R"({"scenario": "spectrum",
                                       "parameters": {"m": 1.0, "n_max": 3},
                                       "output": ")" + (dir / "out").string() + R"("})");
  const auto result = run_command(kBinary + " run " + config.string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("result: PASS") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "out" / "spectrum.csv"));
}

TEST_CASE("reruns produce byte-identical CSV outputs") {
  const auto dir = make_temp_dir("cli_determinism");
  for (const char* tag : {"a", "b"}) {
    const auto config = write_config(dir, std::string("config_") + tag + ".json",
                                     R"({"scenario": "boost",
                                         "parameters": {"count": 400},
                                         "seed": 7,
                                         "output": ")" + (dir / tag).string() + R"("})");
    REQUIRE(run_command(kBinary + " run " + config.string()).exit_code == 0);
  }
  CHECK(slurp(dir / "a" / "boost_sweep.csv") == slurp(dir / "b" / "boost_sweep.csv"));
}

TEST_CASE("missing required keys exit with the validation code") {
  const auto dir = make_temp_dir("cli_missing");
  const auto config = write_config(dir, "config.json",
                                   R"({"scenario": "spectrum", "parameters": {}})");
  const auto result = run_command(kBinary + " run " + config.string());
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("error: validation: missing key: m") != std::string::npos);
}

TEST_CASE("malformed JSON exits with the validation code") {
  const auto dir = make_temp_dir("cli_badjson");
  const auto config = write_config(dir, "config.json", "{not json");
  const auto result = run_command(kBinary + " run " + config.string());
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("error: validation:") != std::string::npos);
}

TEST_CASE("missing files exit with the io code") {
  const auto missing = run_command(kBinary + " run /nonexistent/config.json");
  CHECK(missing.exit_code == 4);
  CHECK(missing.output.find("error: io:") != std::string::npos);

  const auto dir = make_temp_dir("cli_missing_loop");
  const auto config = write_config(
      dir, "config.json",
      R"({"scenario": "dirac_check",
          "parameters": {"loop_csv": "/nonexistent/loop.csv"},
          "output": ")" + (dir / "out").string() + R"("})");
  const auto result = run_command(kBinary + " run " + config.string());
  CHECK(result.exit_code == 4);
}

TEST_CASE("insufficient truncation exits with the numerical code") {
  const auto dir = make_temp_dir("cli_truncation");
  const auto config = write_config(dir, "config.json",
                                   R"({"scenario": "cyclic_kernel",
                                       "parameters": {"w_max": 1},
                                       "output": ")" + (dir / "out").string() + R"("})");
  const auto result = run_command(kBinary + " run " + config.string());
  CHECK(result.exit_code == 3);
  CHECK(result.output.find("error: numerical:") != std::string::npos);
}

TEST_CASE("the environment variable overrides the output directory") {
  const auto dir = make_temp_dir("cli_env");
  const auto config = write_config(dir, "config.json",
                                   R"({"scenario": "kk_tower",
                                       "output": ")" + (dir / "ignored").string() + R"("})");
  const auto result = run_command("CYCLES_OUTPUT_DIR=" + (dir / "redirected").string() +
                                  " " + kBinary + " run " + config.string());
  CHECK(result.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "redirected" / "tower.csv"));
  CHECK(!std::filesystem::exists(dir / "ignored"));
}
