#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eigenwise/montecarlo.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

inline constexpr const char* library_version = "0.1.0";

// Full run description: the experiment settings plus the harness-level knobs
// (seed, thread count, output directory, smoothing multiplier).
struct RunConfig {
  ExperimentConfig exp;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 keeps the ambient OpenMP setting
  std::string out_dir = ".";
  double tau = 1.0;
};

// Flat "key = value" text; '#' starts a comment, blank lines are skipped.
// The experiment key (or experiment_override, when nonempty) selects the
// per-experiment defaults, then the remaining keys overwrite single fields.
// Unknown keys and out-of-range values raise ConfigError naming the key and
// its line number.  An empty file yields the defaults.
RunConfig parse_config(const std::string& text, const std::string& experiment_override = "");

// The resolved key/value view of a config, used for the manifest echo.
std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& rc);

// Shortest-faithful decimal rendering capped at 17 significant digits:
// '.' separator regardless of locale, bit-exact on re-read.
std::string format_double(double v);

// Matrix text format: first line "n", then n rows of n space-separated
// entries, '\n' line endings.  The reader rejects malformed shapes and
// asymmetry beyond 1e-12 (FormatError); file-level failures raise IoError
// naming the path.
std::string write_matrix_text(const SymmetricMatrix& A);
SymmetricMatrix read_matrix_text(const std::string& text);
void write_matrix_file(const std::string& path, const SymmetricMatrix& A);
SymmetricMatrix read_matrix_file(const std::string& path);

// Rectangular variant for the denoiser: first line "p1 p2", then p1 rows of
// p2 entries.  No symmetry constraint.
std::string write_rect_text(const RectMatrix& X);
RectMatrix read_rect_text(const std::string& text);
RectMatrix read_rect_file(const std::string& path);

// CSV with one header line; numeric cells rendered by format_double (NaN
// prints "nan").  Every row must match the header width.
std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Plain whole-file helpers; IoError with the path on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Everything a finished run reports besides the data files.  Seeds render as
// strings so 64-bit values survive JSON consumers; wall times are the only
// fields allowed to differ between identical runs.
struct RunManifest {
  std::string experiment;
  std::string version = library_version;
  std::uint64_t base_seed = 0;
  int threads = 0;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::pair<std::string, std::uint64_t>> derived_seeds;
  long mc_requested = 0;
  long mc_dropped = 0;
  long boot_requested = 0;
  long boot_dropped = 0;
  std::vector<std::pair<std::string, double>> wall_seconds;

  std::string to_json() const;
};

}  // namespace eigenwise
