#pragma once

// Random generators and small oracles shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "besov/decision.hpp"
#include "besov/exponent.hpp"
#include "besov/spectral.hpp"

namespace besov::testing {

using Rng = std::mt19937_64;

inline Rational rat(long num, long den = 1) { return Rational(num) / Rational(den); }
inline ExtReal ext(long num, long den = 1) { return ExtReal(rat(num, den)); }
inline ExtReal inf() { return ExtReal::infinity(); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
  return xs[d(rng)];
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline InputMatrix matrix_of(std::size_t dim, const std::vector<std::string>& entries) {
  std::vector<QuadSurd> xs;
  for (const auto& e : entries) xs.push_back(parse_scalar(e));
  return InputMatrix(dim, std::move(xs));
}

inline InputMatrix example_a() { return matrix_of(2, {"sqrt(2)", "0", "0", "sqrt(2)"}); }
inline InputMatrix example_b() { return matrix_of(2, {"sqrt(2)", "1", "0", "sqrt(2)"}); }

/// Exponent grid used throughout: finite rationals on both sides of 1 and 2, plus infinity.
inline std::vector<ExtReal> exponent_grid() {
  return {ext(1, 2), ext(1), ext(3, 2), ext(2), ext(3), ext(4), inf()};
}

/// Integer matrix with determinant 1 and small entries; its inverse is integral too.
inline Eigen::MatrixXd random_unimodular(Rng& rng, int d) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
  if (d < 2) return s;
  const int steps = uniform_int(rng, 1, d + 1);
  for (int k = 0; k < steps; ++k) {
    const int i = uniform_int(rng, 0, d - 1);
    int j = uniform_int(rng, 0, d - 2);
    if (j >= i) ++j;
    const double c = uniform_int(rng, 0, 1) == 0 ? -1.0 : 1.0;
    s.row(i) += c * s.row(j);
  }
  return s;
}

struct BlockSpec {
  double a = 2.0;      // real eigenvalue, or real part of a rotation block
  double b = 0.0;      // imaginary part; nonzero means a 2x2 rotation-scaling block
  int size = 1;        // Jordan block size for real eigenvalues
};

inline Eigen::MatrixXd assemble(const std::vector<BlockSpec>& blocks) {
  int d = 0;
  for (const auto& b : blocks) d += b.b != 0.0 ? 2 : b.size;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  int at = 0;
  for (const auto& b : blocks) {
    if (b.b != 0.0) {
      j(at, at) = b.a;
      j(at, at + 1) = -b.b;
      j(at + 1, at) = b.b;
      j(at + 1, at + 1) = b.a;
      at += 2;
      continue;
    }
    for (int k = 0; k < b.size; ++k) {
      j(at + k, at + k) = b.a;
      if (k + 1 < b.size) j(at + k, at + k + 1) = 1.0;
    }
    at += b.size;
  }
  return j;
}

/// Random block structure of total dimension d with dyadic entries, all moduli > 1.
/// Repeated eigenvalues and Jordan blocks show up often on purpose.
inline std::vector<BlockSpec> random_blocks(Rng& rng, int d) {
  static const std::vector<double> reals = {1.25, 1.5, 2.0, 2.5, 3.0, -1.5, -2.0};
  static const std::vector<std::pair<double, double>> rotations = {{1.0, 1.0}, {1.5, 0.5}, {0.5, 1.5}, {2.0, 1.0},
                                                                   {1.0, 2.0}, {1.5, 1.5}};
  std::vector<BlockSpec> out;
  int left = d;
  double last = pick(rng, reals);
  while (left > 0) {
    const int kind = uniform_int(rng, 0, 5);
    if (kind == 0 && left >= 2) {
      auto [a, b] = pick(rng, rotations);
      out.push_back({a, b, 1});
      left -= 2;
      continue;
    }
    const double v = kind <= 2 ? last : pick(rng, reals);
    const int size = uniform_int(rng, 0, 2) == 0 ? uniform_int(rng, 1, left) : 1;
    out.push_back({v, 0.0, size});
    last = v;
    left -= size;
  }
  return out;
}

inline InputMatrix random_expansive(Rng& rng, int d) {
  const Eigen::MatrixXd j = assemble(random_blocks(rng, d));
  const Eigen::MatrixXd s = random_unimodular(rng, d);
  const Eigen::MatrixXd s_inv = s.inverse().array().round().matrix();
  return InputMatrix(Eigen::MatrixXd(s * j * s_inv));
}

/// Dense Gaussian matrix rescaled so that its smallest eigenvalue modulus lies in [1.05, 2.05).
inline InputMatrix random_dense_expansive(Rng& rng, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = normal(rng);
    }
    const Eigen::VectorXcd ev = m.eigenvalues();
    const double smallest = ev.cwiseAbs().minCoeff();
    if (smallest < 1e-3) continue;
    const double target = 1.05 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return InputMatrix(Eigen::MatrixXd(m * (target / smallest)));
  }
}

/// Either structured (Jordan blocks under integer similarity) or dense, with equal odds.
inline InputMatrix random_any_expansive(Rng& rng, int d) {
  return uniform_int(rng, 0, 1) == 0 ? random_expansive(rng, d) : random_dense_expansive(rng, d);
}

/// Expansive Jordan normal form (real eigenvalues) whose top eigenvalue is semisimple.
inline Eigen::MatrixXd random_and_jordan(Rng& rng, int d) {
  static const std::vector<double> tops = {2.0, 2.5, 3.0, 3.5, 4.0};
  const double top = pick(rng, tops);
  std::vector<BlockSpec> blocks;
  const int top_count = uniform_int(rng, 1, d);
  for (int k = 0; k < top_count; ++k) blocks.push_back({top, 0.0, 1});
  int left = d - top_count;
  while (left > 0) {
    const double lo = 1.05;
    const double hi = 0.6 * top;
    const double v = lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const int size = uniform_int(rng, 1, left);
    blocks.push_back({v, 0.0, size});
    left -= size;
  }
  return assemble(blocks);
}

/// Expansive Jordan normal form whose top eigenvalue carries a Jordan block of size >= 2.
inline Eigen::MatrixXd random_non_and_jordan(Rng& rng, int d) {
  static const std::vector<double> tops = {1.5, 2.0, 2.5, 3.0, 4.0};
  const double top = pick(rng, tops);
  const int top_size = uniform_int(rng, 2, d);
  std::vector<BlockSpec> blocks{{top, 0.0, top_size}};
  int left = d - top_size;
  while (left > 0) {
    const double v = 1.05 + (top - 1.05) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const int size = uniform_int(rng, 1, left);
    blocks.push_back({v, 0.0, size});
    left -= size;
  }
  return assemble(blocks);
}

/// p, q, r from the exponent grid, alpha placed around the n* = 0 line, n in 0..5.
inline EmbeddingParams random_params(Rng& rng) {
  static const std::vector<Rational> deltas = {rat(-1), rat(-1, 2), rat(-1, 3), rat(0), rat(0), rat(1, 4),
                                               rat(1, 2), rat(1),   rat(3, 2),  rat(2), rat(5, 2)};
  const auto grid = exponent_grid();
  EmbeddingParams params;
  params.p = pick(rng, grid);
  params.q = pick(rng, grid);
  params.r = pick(rng, grid);
  params.alpha = QuadSurd(params.p.reciprocal() - params.q.reciprocal() + pick(rng, deltas));
  params.n = static_cast<unsigned>(uniform_int(rng, 0, 5));
  return params;
}

/// Largest singular value of a 2x2 matrix from its Frobenius norm and determinant.
inline double spectral_norm_2x2(double a, double b, double c, double d) {
  const double f = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  return std::sqrt((f + std::sqrt(std::max(0.0, f * f - 4.0 * det * det))) / 2.0);
}

/// ||[[x, y], [0, z]]^j|| by the closed form for powers of triangular 2x2 matrices.
inline double triangular_power_norm(double x, double y, double z, long j) {
  const double xj = std::pow(x, static_cast<double>(j));
  const double zj = std::pow(z, static_cast<double>(j));
  const double off = x == z ? y * static_cast<double>(j) * std::pow(x, static_cast<double>(j - 1))
                            : y * (xj - zj) / (x - z);
  return spectral_norm_2x2(xj, off, 0.0, zj);
}

}  // namespace besov::testing
