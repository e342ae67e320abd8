#ifndef MOMSTAB_CLI_COMMANDS_HPP
#define MOMSTAB_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace momstab::cli {

// Exit codes shared by all commands, stable for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitOverflow = 4;
inline constexpr int kExitSolverFailure = 5;

// start:stop:count triple; count points, endpoints included.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> points() const;
  static GridSpec parse(const std::string& text);
  bool operator==(const GridSpec&) const = default;
};

void to_json(nlohmann::json& j, const GridSpec& g);
void from_json(const nlohmann::json& j, GridSpec& g);

struct MomentsOptions {
  std::string spec_path;
  int degree = 2;
  std::uint64_t cap = 20000;
  std::string out_dir = ".";
};

struct SimulateOptions {
  std::string spec_path;
  std::vector<double> initial_state;  // empty selects the all-ones vector
  double dt = 1e-3;
  double horizon = 5.0;
  std::int64_t paths = 10000;
  std::uint64_t seed = 12345;
  std::vector<int> degrees = {2};
  double window = 0.5;
  int samples = 512;
  std::string out_dir = ".";
};

struct DispersionOptions {
  double m = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double sigma2 = 0.0;
  std::optional<GridSpec> k_grid;       // grid mode sets k1 = k2 = k
  std::optional<GridSpec> sigma2_grid;
  std::string out_dir = ".";
};

struct WhiteNoiseOptions {
  double m = 1.0;
  double k = 1.0;
  double sigma2 = 1.0;
  std::optional<GridSpec> k_grid;
  std::optional<GridSpec> sigma2_grid;
  std::string out_dir = ".";
};

struct BoundstateOptions {
  std::string kind = "gaussian";  // gaussian | exponential | rectangular
  double amplitude = 1.0;
  double width = 1.0;
  double m = 1.0;
  double half_width = 0.0;  // 0 selects 10 * width
  int points = 4096;
  GridSpec lambda_grid{0.2, 3.0, 50};
  std::string out_dir = ".";
};

struct ThresholdOptions {
  std::string kind = "gaussian";
  double amplitude = 1.0;
  double width = 1.0;
  double m = 1.0;
  GridSpec k_grid{0.25, 2.0, 4};
  double half_width = 0.0;
  int points = 2048;
  std::string out_dir = ".";
};

struct AppendixOptions {
  double eps1 = 1.0;
  double eps2 = 2.0;
  double sigma2 = 0.0;
  std::optional<GridSpec> eps1_grid;
  std::optional<GridSpec> eps2_grid;
  std::optional<GridSpec> sigma2_grid;
  std::string out_dir = ".";
};

void to_json(nlohmann::json& j, const MomentsOptions& o);
void from_json(const nlohmann::json& j, MomentsOptions& o);
void to_json(nlohmann::json& j, const SimulateOptions& o);
void from_json(const nlohmann::json& j, SimulateOptions& o);
void to_json(nlohmann::json& j, const DispersionOptions& o);
void from_json(const nlohmann::json& j, DispersionOptions& o);
void to_json(nlohmann::json& j, const WhiteNoiseOptions& o);
void from_json(const nlohmann::json& j, WhiteNoiseOptions& o);
void to_json(nlohmann::json& j, const BoundstateOptions& o);
void from_json(const nlohmann::json& j, BoundstateOptions& o);
void to_json(nlohmann::json& j, const ThresholdOptions& o);
void from_json(const nlohmann::json& j, ThresholdOptions& o);
void to_json(nlohmann::json& j, const AppendixOptions& o);
void from_json(const nlohmann::json& j, AppendixOptions& o);

// Each command writes its output files plus one manifest.json into out_dir
// and returns an exit code. Log lines go to `out`.
int run_moments(const MomentsOptions& opts, std::ostream& out);
int run_simulate(const SimulateOptions& opts, std::ostream& out);
int run_dispersion(const DispersionOptions& opts, std::ostream& out);
int run_whitenoise(const WhiteNoiseOptions& opts, std::ostream& out);
int run_boundstate(const BoundstateOptions& opts, std::ostream& out);
int run_threshold(const ThresholdOptions& opts, std::ostream& out);
int run_appendix(const AppendixOptions& opts, std::ostream& out);

// Re-executes a recorded run; out_dir_override, when non-empty, redirects the
// outputs (the manifest's own out_dir is used otherwise).
int run_from_manifest(const std::string& manifest_path,
                      const std::string& out_dir_override, std::ostream& out);

// "name=a:b:n" assignments from --grid flags.
std::optional<GridSpec> grid_for(const std::vector<std::string>& assignments,
                                 const std::string& name);

}  // namespace momstab::cli

#endif
