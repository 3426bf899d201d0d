#ifndef BOXNC_DISPATCH_HPP
#define BOXNC_DISPATCH_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace boxnc {

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> trials;
  std::optional<int> resolution;
};

// Commands: divdiff, certify, interpolate, regularize, order, box-order,
// hh, jensen, rasa, synth, extract-measure, decompose, strong.
// The report always echoes the effective seed/tolerance/trials/resolution.
// Returns 0 (computed, verdict positive or no verdict), 1 (verdict negative),
// or 2 (input/domain error; only from the text wrapper, run_command throws).
int run_command(const std::string& command, const nlohmann::json& input,
                const RunOptions& options, nlohmann::json& report);

// Text-level wrapper: parses input_text as JSON, catches every library error,
// and always produces a report (an error report on exit code 2). The returned
// report text is newline-terminated.
int run_command_text(const std::string& command, const std::string& input_text,
                     const RunOptions& options, std::string& report_text);

}  // namespace boxnc

#endif
