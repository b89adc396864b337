#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ilsvm::cli {

enum class Subcommand { tune, grid, eval };
enum class Format { libsvm, csv };

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericError = 3 };

struct CliArgs {
    Subcommand subcommand = Subcommand::tune;
    std::string data_path;
    Format format = Format::libsvm;
    std::optional<std::string> label_column;
    int k = 5;
    int max_iterations = 20;
    /// nullopt = unlimited (`--patience 0`).
    std::optional<int> patience = 5;
    std::uint64_t seed = 42;
    bool scale = false;
    std::optional<double> c_value;
    std::optional<double> gamma_value;
    std::optional<std::string> out_path;
    /// nullopt = available parallelism.
    std::optional<unsigned> threads;
};

/// Usage problem; `exit_code` is 0 for an explicit --help.
class UsageError : public std::runtime_error {
  public:
    UsageError(const std::string& message, int exit_code = kUsage)
        : std::runtime_error(message), exit_code(exit_code) {}
    int exit_code;
};

const char* to_string(Subcommand s);
const char* to_string(Format f);

/// `argv` excludes the program name. Throws UsageError.
CliArgs parse_args(const std::vector<std::string>& argv);

/// Runs the subcommand. The report goes to `out` (or to --out), progress to
/// `err`. Returns the process exit code.
int run(const CliArgs& args, std::ostream& out, std::ostream& err);

/// parse_args + run with the process streams.
int main(int argc, char** argv);

}  // namespace ilsvm::cli
