#pragma once

// Spectral structure of expansive matrices: eigenvalue clusters by modulus,
// multiplicities and Jordan block sizes from rank chains, spectral norms of
// integer powers, and the determinant-2 normal form.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "besov/error.hpp"
#include "besov/exponent.hpp"

namespace besov {

/// Real square matrix with the exact value of every entry alongside its
/// floating-point image.
class InputMatrix {
public:
  /// Row-major exact entries; throws InvalidArgument on a size mismatch.
  InputMatrix(std::size_t dim, std::vector<QuadSurd> entries);
  /// Entries taken exactly from the doubles' binary expansions.
  explicit InputMatrix(const Eigen::MatrixXd& values);

  std::size_t dim() const { return dim_; }
  const Eigen::MatrixXd& values() const { return values_; }
  const QuadSurd& exact(std::size_t row, std::size_t col) const { return exact_[row * dim_ + col]; }

  bool is_upper_triangular() const;
  bool is_lower_triangular() const;

private:
  std::size_t dim_;
  std::vector<QuadSurd> exact_;
  Eigen::MatrixXd values_;
};

struct SpectralOptions {
  double cluster_tol = 1e-8;        // relative modulus tolerance
  double ambiguity_floor = 1e-12;   // merges wider than this raise ClusterAmbiguity
  double defect_window = 1e-3;      // candidate radius for perturbed Jordan blocks
};

/// One distinct eigenvalue. A complex conjugate pair is listed once with
/// conjugate_pair set; the counts then refer to each member of the pair.
struct EigenValueEntry {
  std::complex<double> value;
  bool conjugate_pair = false;
  unsigned algebraic = 1;
  unsigned geometric = 1;
  unsigned max_block = 1;
};

struct EigenCluster {
  double modulus = 0.0;
  std::vector<EigenValueEntry> representatives;
  unsigned algebraic_multiplicity = 0;
  unsigned geometric_multiplicity = 0;
  unsigned max_jordan_block = 1;
};

/// Exact modulus as a product of prime powers with rational exponents.
using PrimeExponents = std::map<std::uint64_t, Rational>;

struct AnalyzedMatrix {
  InputMatrix matrix;
  std::vector<EigenCluster> clusters;  // modulus descending
  double det_abs = 0.0;
  double log_det_abs = 0.0;
  double lambda_max = 0.0;
  bool is_expansive = false;
  bool is_and = false;
  std::vector<Warning> warnings;
  /// ln|det A| / ln(cluster modulus), per cluster, when provably rational.
  std::vector<std::optional<Rational>> exact_log_ratio;

  const EigenCluster& top() const { return clusters.front(); }
  const EigenCluster& bottom() const { return clusters.back(); }
  bool has_warning(WarningKind kind) const;
};

AnalyzedMatrix spectral_analyze(const InputMatrix& m, const SpectralOptions& opts = {});

/// d - rank(A - lambda I) with singular values below tol * scale treated as zero.
unsigned geometric_multiplicity(const Eigen::MatrixXd& m, std::complex<double> lambda,
                                double tol = 1e-8);

/// Smallest k with rank((A - lambda I)^k) == rank((A - lambda I)^(k+1)).
unsigned max_jordan_block_size(const Eigen::MatrixXd& m, std::complex<double> lambda,
                               double tol = 1e-8);

struct PowerNormOptions {
  double condition_cap = 1e12;
};

/// ln ||A^j|| for the spectral norm; negative j goes through an LU solve.
double log_matrix_power_norm(const Eigen::MatrixXd& m, long j, const PowerNormOptions& opts = {});

/// ||A^j||; throws Overflow when the value is not representable.
double matrix_power_norm(const Eigen::MatrixXd& m, long j, const PowerNormOptions& opts = {});

/// Steps through ln ||A^j||, j = 0, 1, 2, ... (or 0, -1, -2, ... when
/// inverse is set) with one renormalized product per step.
class PowerNormWalker {
public:
  PowerNormWalker(const Eigen::MatrixXd& m, bool inverse, const PowerNormOptions& opts = {});

  long exponent() const { return step_; }
  double log_norm() const { return log_norm_; }
  void advance();

private:
  Eigen::MatrixXd base_;
  Eigen::MatrixXd current_;
  double log_scale_ = 0.0;
  double log_norm_ = 0.0;
  long step_ = 0;
  int direction_ = 1;
};

struct NormalFormEntry {
  double original_modulus = 0.0;
  double eigenvalue = 0.0;  // original_modulus ^ scaling_exponent
  unsigned algebraic = 0;
  unsigned geometric = 0;
  unsigned max_block = 1;
};

/// Spectral description of the determinant-2 representative.
struct NormalForm {
  double scaling_exponent = 1.0;
  std::vector<NormalFormEntry> eigenvalues;  // descending
  double det_check = 0.0;
  bool is_and = false;
};

/// Throws NotExpansive unless a.is_expansive.
NormalForm expansive_normal_form(const AnalyzedMatrix& a);

/// ln|det A| / ln lambda_max; exactly 1 for d = 1.
double isotropy_degree(const AnalyzedMatrix& a);
double isotropy_degree(const NormalForm& nf);

/// The isotropy degree as an exact rational when the eigenvalue moduli allow it.
std::optional<Rational> exact_isotropy_degree(const AnalyzedMatrix& a);

/// Whether merging eigenvalues of equal modulus into one normal-form class
/// could change the AND status (top cluster mixes distinct eigenvalues and
/// at least one of them is defective).
bool normal_form_merge_affects_and(const AnalyzedMatrix& a);

}  // namespace besov
