#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rgamss::cli {

enum class Subcommand { Sample, Validate, Bench, Curves };
enum class Scale { Log, Natural };
enum class Format { Csv, Obj };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kIo = 1;
inline constexpr int kInvalidArgs = 2;
inline constexpr int kValidationFailed = 3;
}  // namespace exit_code

struct RunConfig {
  Subcommand subcommand = Subcommand::Sample;
  std::vector<double> alpha;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Scale scale = Scale::Log;
  Format format = Format::Csv;
  std::optional<std::string> out;  // standard output when empty
  double t_min = -5.0, t_max = 5.0, t_step = 0.5;
  std::optional<double> z_min, z_max;
  std::size_t z_points = 400;
};

// Each command writes its result to cfg.out (or `out`) and diagnostics to `err`,
// returning one of the exit codes above.
int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_curves(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rgamss::cli
