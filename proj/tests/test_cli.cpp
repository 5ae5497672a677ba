#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hotk/hot1.hpp"
#include "hotk/tensor.hpp"

#ifndef HOTK_BIN
#error "HOTK_BIN must point at the command line binary"
#endif

namespace {

namespace fs = std::filesystem;

int run_cmd(const std::string& args) {
  const std::string cmd = std::string(HOTK_BIN) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "hotk_cli_work";
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Blanks the elapsed_ms column; wall-clock time is the one legitimately
// nondeterministic field of a trace.
std::string mask_elapsed(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  while (fields.size() < 7) fields.emplace_back();
  fields[5].clear();
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cmd("2>/dev/null") == 1);
  CHECK(run_cmd("frobnicate 2>/dev/null") == 1);
  CHECK(run_cmd("solve --no-such-flag 2>/dev/null") == 1);
}

TEST_CASE("shrinkage round trip through tensor files") {
  const fs::path dir = work_dir();
  const fs::path in = dir / "z.hot1";
  const fs::path out = dir / "z_shrunk.hot1";
  hotk::write_hot1(in, hotk::DenseTensor::from_real({2, 1}, {1.2, -0.3}));
  CHECK(run_cmd("prox --in " + in.string() + " --out " + out.string() +
                " --p 1 --lambda 0.5 2>/dev/null") == 0);
  hotk::DenseTensor back = hotk::read_hot1(out);
  REQUIRE(back.dims() == hotk::Dims{2, 1});
  CHECK(back.rdata()[0] == 1.2 - 0.5);
  CHECK(back.rdata()[1] == 0.0);
}

TEST_CASE("solve trace is reproducible for a fixed seed") {
  const fs::path dir = work_dir();
  const fs::path prob = dir / "prob";
  fs::remove_all(prob);
  CHECK(run_cmd("synth --out " + prob.string() +
                " --kind sparse --a-dims 6x5x3x2 --x-dims 5x4x3x2 --density 0.8 --seed 3"
                " --transform dft 2>/dev/null") == 0);
  const std::string solve_flags =
      " --p 2 --lambda 1e-3 --t 1 --blocks 3 --selection random --accelerated"
      " --max-iters 120 --tol 1e-12 --seed 9 --trace ";
  const fs::path t1 = dir / "t1.csv";
  const fs::path t2 = dir / "t2.csv";
  CHECK(run_cmd("solve --problem " + prob.string() + solve_flags + t1.string() +
                " 2>/dev/null") == 0);
  CHECK(run_cmd("solve --problem " + prob.string() + solve_flags + t2.string() +
                " 2>/dev/null") == 0);
  const std::vector<std::string> a = read_lines(t1);
  const std::vector<std::string> b = read_lines(t2);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() > 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(mask_elapsed(a[i]) == mask_elapsed(b[i]));
  }
}

TEST_CASE("format errors exit 1 and numerical failures exit 2") {
  const fs::path dir = work_dir();
  const fs::path bad = dir / "bad.hot1";
  {
    std::ofstream out(bad, std::ios::binary);
    out << "XXXX not a tensor";
  }
  CHECK(run_cmd("prox --in " + bad.string() + " --out " + (dir / "o.hot1").string() +
                " 2>/dev/null") == 1);

  const fs::path prob = dir / "prob_diverge";
  fs::remove_all(prob);
  CHECK(run_cmd("synth --out " + prob.string() +
                " --kind sparse --a-dims 6x5x3 --x-dims 5x4x3 --seed 1 --transform dft"
                " 2>/dev/null") == 0);
  CHECK(run_cmd("solve --problem " + prob.string() +
                " --t 1e12 --max-iters 200 2>/dev/null") == 2);
}

TEST_CASE("quick property suite passes from the binary") {
  CHECK(run_cmd("verify --quick --seed 1 >/dev/null 2>/dev/null") == 0);
}
