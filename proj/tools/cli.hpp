#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vtrm::cli {

/// Runs one `vtrm` invocation. `args` excludes the program name, e.g.
/// {"mine", "--qg", "qg.mat", "--gg", "gg.mat"}. Outputs named `-` go to
/// `out`. Errors are reported on `err` as a single line
/// `error: <code>: <message>` with a non-zero return value.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

/// Ordered stages, each a full argument list for run_subcommand. Stages
/// communicate only through files.
struct PipelineSpec {
  std::vector<std::vector<std::string>> stages;
};

/// Runs stages in order and stops at the first non-zero status, which is
/// returned.
int run_pipeline(const PipelineSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace vtrm::cli
