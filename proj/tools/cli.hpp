#ifndef MINCORR_TOOLS_CLI_HPP
#define MINCORR_TOOLS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mincorr/corr_matrix.hpp"
#include "mincorr/marginal.hpp"

namespace mincorr::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kFeasibilityStop = 3,
  kNumericalFailure = 4,
};

/// Invalid configuration; `diagnostics` lists every problem found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

enum class CorrShape { pair, equicorrelated, matrix };

struct RunConfig {
  Marginal marginal = Marginal::uniform01();
  nlohmann::json marginal_spec;
  CorrShape shape = CorrShape::pair;
  double rho = 0.0;          // pair and equicorrelated
  std::size_t dim = 2;
  std::optional<CorrMatrix> matrix;
  std::size_t n = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::string format = "csv";

  /// Normalized JSON form; parse_config(to_json().dump()) yields the same run.
  nlohmann::json to_json() const;
};

/// Builds a Marginal from {"family": ..., params}; appends a diagnostic for
/// every problem and returns nullopt if there was any.
std::optional<Marginal> parse_marginal(const nlohmann::json& spec,
                                       std::vector<std::string>& diagnostics);

/// Throws ConfigError.
RunConfig parse_config(std::string_view text);

int run_bounds(const nlohmann::json& marginal_spec, std::ostream& out, std::ostream& err);
int run_sample(const RunConfig& cfg, const std::optional<std::string>& out_path,
               unsigned threads, std::ostream& log);
int run_validate(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::size_t draws, unsigned threads, std::ostream& out);

/// Full command-line entry point; returns the process exit status.
int main_entry(int argc, char** argv);

}  // namespace mincorr::cli

#endif  // MINCORR_TOOLS_CLI_HPP
