#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const fs::path& dir) {
  const std::string cmd = "cd '" + dir.string() + "' && '" NLPOL_BINARY "' " + args + " >out.txt 2>err.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nlpol_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("exit codes") {
  TempDir d;
  CHECK(run("preset list", d.path) == 0);
  CHECK(run("--help", d.path) == 0);
  CHECK(run("--no-such-flag", d.path) == 2);
  CHECK(run("--preset nope spectrum", d.path) == 2);
  CHECK(run("--preset roton --set run.bogus=1 spectrum", d.path) == 2);
  CHECK(run("--config /nonexistent.yaml spectrum", d.path) == 4);
  CHECK(run("--preset roton --out /proc/forbidden spectrum --k-count 3", d.path) == 4);
  CHECK(run("--preset antiroton --set run.feature=growth-peak budget", d.path) == 3);
}

TEST_CASE("spectrum output and manifest") {
  TempDir d;
  REQUIRE(run("--preset roton spectrum --k-count 11", d.path) == 0);
  CHECK(first_line(d.path / "spectrum.csv").rfind("k [1/m],omega0 [1/s],omega_re [1/s]", 0) == 0);
  std::ifstream csv(d.path / "spectrum.csv");
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 12);
  std::ifstream m(d.path / "spectrum.csv.manifest.json");
  REQUIRE(m);
  const auto j = nlohmann::json::parse(m);
  CHECK(j["command"] == "spectrum");
  CHECK(j["preset"] == "roton");
  CHECK(j.contains("resolved_config"));
}

TEST_CASE("budget and preset show") {
  TempDir d;
  REQUIRE(run("--preset roton budget --rescue density:0.1", d.path) == 0);
  std::ifstream b(d.path / "budget.json");
  const auto j = nlohmann::json::parse(b);
  CHECK(j["rescues"].size() == 1);
  std::ifstream out(d.path / "out.txt");
  std::stringstream text;
  text << out.rdbuf();
  CHECK(text.str().find("R_fs") != std::string::npos);
  CHECK(run("preset show instability", d.path) == 0);
  CHECK(first_line(d.path / "out.txt").size() > 0);
}
