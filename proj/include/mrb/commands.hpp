#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mrb/amiv.hpp"
#include "mrb/ingest.hpp"
#include "mrb/report.hpp"

namespace mrb {

// Reports for each command. Inputs are file paths; `oracle` adds brute-force cross-checks.
Report run_intersect(const std::string& input, const IntersectMicroOptions& opt, bool oracle);
Report run_binary_iv(const std::string& input, bool oracle);
Report run_amiv(const std::string& input, const AMIVMicroOptions& opt, CutoffMode mode, bool oracle);
Report run_lattice(const std::string& family_path, bool oracle);
Report run_artstein(const std::string& scenario_path, std::optional<std::uint64_t> seed, bool oracle);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace mrb
