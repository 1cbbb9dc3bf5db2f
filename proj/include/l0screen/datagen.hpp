#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "l0screen/instance.hpp"

namespace l0screen {

/// Generator recorded in meta.json: std::mt19937_64 (fully specified by the
/// C++ standard) feeding Box-Muller normals, uniforms built from the top 53
/// bits of each draw.
inline constexpr const char* kGeneratorName = "mt19937_64/box-muller";

struct SyntheticSpec {
  int n = 0;
  int m = 0;
  int k_true = 1;
  double rho = 0.0;
  double snr = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticInstance {
  Instance instance;
  Support true_support;
  Vector beta;
};

/// Rows of A follow an AR(1) recursion (covariance rho^|i-j|), beta has
/// k_true unit entries at indices floor(j n / k_true), and y = A beta + e with
/// noise variance set from the sample variance of A beta divided by snr.
SyntheticInstance generate(const SyntheticSpec& spec);

/// n / (m k max_i ||a_i||^2) over rows a_i.
double gamma_zero(const Instance& inst, int k);

/// Comma-separated, no header, one row per line.
Instance load_csv(const std::filesystem::path& path_a,
                  const std::filesystem::path& path_y);
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// A.csv, y.csv and meta.json under `dir` (created if missing).
void write_synthetic(const std::filesystem::path& dir, const SyntheticSpec& spec,
                     const SyntheticInstance& data);
void write_instance(const std::filesystem::path& dir, const Instance& inst);

}  // namespace l0screen
