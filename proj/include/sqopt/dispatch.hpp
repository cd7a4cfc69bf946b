#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sqo {

/// Exit codes shared by the CLI and the C API.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFJ = 1;              // certify: FJ only; corpus: some case failed
inline constexpr int kNotCertifiable = 2;  // certify; penalize: NonStationaryEvidence
inline constexpr int kPrecondition = 3;
inline constexpr int kConfig = 64;
inline constexpr int kCompute = 70;
}  // namespace exit_code

struct RunOptions {
  std::string case_id;            // corpus: run one case
  std::optional<double> tol;      // overrides the command's tolerance
  std::optional<std::uint64_t> seed;
  bool plot = false;              // also render an SVG when the command has a picture
};

struct RunResult {
  int exit_code = 0;
  std::string report;   // JSON text
  std::string svg;      // empty unless requested and available
  std::string summary;  // one line for humans
};

const std::vector<std::string>& commands();

/// Parses `config_text` (INI) for `command`, runs it and serialises the
/// report. Never throws; errors become exit codes and an "error" report.
RunResult run_command(const std::string& command, const std::string& config_text, const RunOptions& opt = {});

}  // namespace sqo
