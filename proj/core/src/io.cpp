#include "hotk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hotk/errors.hpp"
#include "hotk/hot1.hpp"

namespace hotk {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dims_string(const Dims& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot open for writing: " + path.string());
  }
  return out;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
  std::ofstream out = open_out(path);
  out << "iter,re,rel_change,objective,bregman,elapsed_ms,block\n";
  for (const TraceRow& row : trace) {
    out << row.iter << ',';
    if (row.re) out << fmt_double(*row.re);
    out << ',';
    if (row.rel_change) out << fmt_double(*row.rel_change);
    out << ',';
    out << fmt_double(row.objective) << ',';
    if (row.bregman) out << fmt_double(*row.bregman);
    out << ',';
    out << fmt_double(row.elapsed_ms) << ',';
    if (row.block) out << *row.block;
    out << '\n';
  }
  if (!out) {
    throw FormatError("write failed: " + path.string());
  }
}

void write_manifest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : entries) {
    out << key << '=' << value << '\n';
  }
  if (!out) {
    throw FormatError("write failed: " + path.string());
  }
}

std::map<std::string, std::string> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open manifest: " + path.string());
  }
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw FormatError("malformed manifest line " + std::to_string(lineno) + " in " +
                        path.string());
    }
    entries[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return entries;
}

void save_problem(const std::filesystem::path& dir, const RecoveryProblem& problem,
                  std::map<std::string, std::string> extra) {
  std::filesystem::create_directories(dir);
  std::map<std::string, std::string> manifest;
  manifest["transform"] = problem.transform.selector();
  manifest["mode"] = problem.mode == Regularizer::Nuclear ? "lowrank" : "sparse";
  manifest["a_dims"] = dims_string(problem.a.dims());
  manifest["b_dims"] = dims_string(problem.b.dims());
  if (problem.ground_truth) {
    manifest["x_dims"] = dims_string(problem.ground_truth->dims());
  }
  for (auto& [key, value] : extra) {
    manifest[key] = std::move(value);
  }
  if (manifest["transform"] == "custom") {
    throw ValueError(
        "save_problem: a custom transform needs an explicit custom:<dir> selector in extra");
  }
  write_hot1(dir / "A.hot1", problem.a);
  write_hot1(dir / "B.hot1", problem.b);
  if (problem.ground_truth) {
    write_hot1(dir / "X.hot1", *problem.ground_truth);
  }
  write_manifest(dir / "manifest.txt", manifest);
}

RecoveryProblem load_problem(const std::filesystem::path& dir) {
  const std::map<std::string, std::string> manifest = read_manifest(dir / "manifest.txt");
  const auto transform_it = manifest.find("transform");
  if (transform_it == manifest.end()) {
    throw FormatError("manifest is missing the transform entry: " + dir.string());
  }
  const auto mode_it = manifest.find("mode");
  if (mode_it == manifest.end()) {
    throw FormatError("manifest is missing the mode entry: " + dir.string());
  }
  RecoveryProblem problem;
  if (mode_it->second == "sparse") {
    problem.mode = Regularizer::Elementwise;
  } else if (mode_it->second == "lowrank") {
    problem.mode = Regularizer::Nuclear;
  } else {
    throw FormatError("unknown mode '" + mode_it->second + "' in " + dir.string());
  }
  problem.a = read_hot1(dir / "A.hot1");
  problem.b = read_hot1(dir / "B.hot1");
  problem.transform = parse_transform(transform_it->second, higher_mode_dims(problem.a));
  if (std::filesystem::exists(dir / "X.hot1")) {
    problem.ground_truth = read_hot1(dir / "X.hot1");
  }
  return problem;
}

}  // namespace hotk
