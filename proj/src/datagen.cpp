#include "l0screen/datagen.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace l0screen {

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t blank_at = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty()) {
      if (blank_at == 0) blank_at = lineno;
      continue;
    }
    if (blank_at != 0) throw ParseError(path.string(), blank_at, "blank line");
    std::vector<double> row;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = body.find(',', pos);
      const std::string_view cell =
          trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
      double v = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size() ||
          !std::isfinite(v))
        throw ParseError(path.string(), lineno,
                         "non-numeric cell '" + std::string(cell) + "'");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(path.string(), lineno,
                       "expected " + std::to_string(rows.front().size()) +
                           " columns, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string(), 1, "no data");
  return rows;
}

void append_number(std::string& out, double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n < 1 || m < 1) throw InvalidInput("n and m must be positive");
  if (k_true < 1 || k_true > n)
    throw InvalidInput("k_true must lie in [1, n]");
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidInput("rho must lie in [0, 1)");
  if (!(snr > 0.0) || !std::isfinite(snr)) throw InvalidInput("snr must be positive");
}

SyntheticInstance generate(const SyntheticSpec& spec) {
  spec.validate();
  NormalStream normal(spec.seed);
  const double innov = std::sqrt(1.0 - spec.rho * spec.rho);
  Matrix a(spec.m, spec.n);
  for (int i = 0; i < spec.m; ++i) {
    a(i, 0) = normal();
    for (int j = 1; j < spec.n; ++j) a(i, j) = spec.rho * a(i, j - 1) + innov * normal();
  }

  Vector beta = Vector::Zero(spec.n);
  Support support;
  for (int j = 0; j < spec.k_true; ++j) {
    const auto idx = static_cast<int>(static_cast<std::int64_t>(j) * spec.n / spec.k_true);
    support.push_back(idx);
    beta[idx] = 1.0;
  }

  const Vector signal = a * beta;
  double var = 0.0;
  if (spec.m > 1) {
    const double mean = signal.mean();
    var = (signal.array() - mean).square().sum() / (spec.m - 1);
  }
  const double sigma = std::sqrt(var / spec.snr);
  Vector y(spec.m);
  for (int i = 0; i < spec.m; ++i) y[i] = signal[i] + sigma * normal();

  return SyntheticInstance{Instance(std::move(a), std::move(y)), std::move(support),
                           std::move(beta)};
}

double gamma_zero(const Instance& inst, int k) {
  if (k < 1) throw InvalidInput("k must be positive");
  const double max_row = inst.a().rowwise().squaredNorm().maxCoeff();
  if (max_row == 0.0) throw InvalidInput("gamma_zero undefined for a zero matrix");
  return static_cast<double>(inst.cols()) /
         (static_cast<double>(inst.rows()) * k * max_row);
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path);
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Instance load_csv(const std::filesystem::path& path_a,
                  const std::filesystem::path& path_y) {
  Matrix a = read_matrix_csv(path_a);
  const Matrix ym = read_matrix_csv(path_y);
  if (ym.cols() != 1)
    throw ParseError(path_y.string(), 1, "response must have a single column");
  if (ym.rows() != a.rows())
    throw ParseError(path_y.string(), static_cast<std::size_t>(std::min(ym.rows(), a.rows()) + 1),
                     "response has " + std::to_string(ym.rows()) + " rows, matrix has " +
                         std::to_string(a.rows()));
  return Instance(std::move(a), ym.col(0));
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::string text;
  text.reserve(static_cast<std::size_t>(m.size()) * 24);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) text.push_back(',');
      append_number(text, m(i, j));
    }
    text.push_back('\n');
  }
  write_text(path, text);
}

void write_instance(const std::filesystem::path& dir, const Instance& inst) {
  std::filesystem::create_directories(dir);
  write_matrix_csv(dir / "A.csv", inst.a());
  write_matrix_csv(dir / "y.csv", inst.y());
}

void write_synthetic(const std::filesystem::path& dir, const SyntheticSpec& spec,
                     const SyntheticInstance& data) {
  write_instance(dir, data.instance);
  nlohmann::ordered_json meta;
  meta["n"] = spec.n;
  meta["m"] = spec.m;
  meta["k_true"] = spec.k_true;
  meta["rho"] = spec.rho;
  meta["snr"] = spec.snr;
  meta["seed"] = spec.seed;
  meta["generator_name"] = kGeneratorName;
  meta["true_support"] = data.true_support;
  write_text(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace l0screen
