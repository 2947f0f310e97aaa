#pragma once

#include <string>

#include "wpevo/harness/experiments.hpp"
#include "wpevo/harness/run.hpp"

// Persistence of run artifacts. CSV numbers use shortest round-trip
// formatting so outputs are byte-identical across identical runs.

namespace wpevo::io {

/// Creates the directory (and parents); throws ConfigError when it cannot.
void ensure_directory(const std::string& dir);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

std::string stats_csv(const RunResult& result);
std::string retention_csv(const RunResult& result);
std::string sweep_csv(const SweepResult& result);
std::string sweep_summary_csv(const SweepResult& result);
std::string comparison_csv(const ComparisonResult& result);
std::string runs_csv(const ComparisonResult& result);
std::string summary_json(const ComparisonResult& result);

/// Full RunResult (minus the final population) as JSON; inverse of run_from_json.
std::string run_to_json(const RunResult& result);
RunResult run_from_json(const std::string& text);

/// stats.csv, retention.csv, best.genome, result.json and config.cfg under dir.
void write_run(const RunResult& result, const RunConfig& config, const std::string& dir);

}  // namespace wpevo::io
