#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hotk/solver.hpp"

namespace hotk {

// Writes trace rows as CSV with the header
// iter,re,rel_change,objective,bregman,elapsed_ms,block.
// Doubles are printed with 17 significant digits so the round trip through
// text is exact; unset optional fields print as empty cells.
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

// Flat key=value text file, one entry per line, keys sorted on write.
void write_manifest(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries);
std::map<std::string, std::string> read_manifest(const std::filesystem::path& path);

// Problem directory layout: A.hot1, B.hot1, optional X.hot1 (ground truth),
// and manifest.txt carrying at least transform=<selector> and
// mode={sparse|lowrank}.  extra entries are merged into the manifest and win
// over the generated ones; transforms whose selector cannot be rebuilt from a
// string must be supplied through extra["transform"].
void save_problem(const std::filesystem::path& dir, const RecoveryProblem& problem,
                  std::map<std::string, std::string> extra = {});
RecoveryProblem load_problem(const std::filesystem::path& dir);

}  // namespace hotk
