#include "besov/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace besov {

using Complex = std::complex<double>;

namespace {

double largest_singular_value(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

unsigned count_below(const Eigen::VectorXd& sv, double threshold) {
  return static_cast<unsigned>((sv.array() <= threshold).count());
}

/// Nullities of (A - mu I)^k for k = 1..kmax. Singular values of the k-th
/// power below min(tol * s^k, (gap / 4)^{k * outside}) count as zero, s bounding
/// ||A - mu I||, gap the distance from mu to the other `outside` eigenvalues.
std::vector<unsigned> nullity_chain(const Eigen::MatrixXd& a, Complex mu, unsigned kmax, double tol,
                                    double gap, unsigned outside) {
  const auto d = a.rows();
  const double s = std::max(1.0, largest_singular_value(a) + std::abs(mu));
  Eigen::MatrixXcd shifted = a.cast<Complex>();
  shifted.diagonal().array() -= mu;
  Eigen::MatrixXcd power = shifted;
  std::vector<unsigned> chain;
  chain.reserve(kmax);
  double scale = s;
  const double cap_step = std::pow(gap / 4.0, static_cast<double>(std::max(outside, 1U)));
  double cap = cap_step;
  for (unsigned k = 1; k <= kmax; ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(power);
    chain.push_back(count_below(svd.singularValues(), std::min(tol * scale, cap)));
    if (k < kmax) {
      power = power * shifted;
      scale *= s;
      cap *= cap_step;
    }
  }
  (void)d;
  return chain;
}

struct Group {
  std::vector<std::size_t> members;
  Complex center;
  unsigned geometric = 1;
  unsigned max_block = 1;
  double spread = 0.0;
};

Complex mean_of(const std::vector<Complex>& ev, const std::vector<std::size_t>& idx) {
  Complex sum = 0.0;
  for (auto i : idx) sum += ev[i];
  return sum / static_cast<double>(idx.size());
}

/// A candidate set of computed eigenvalues is accepted as one eigenvalue of
/// algebraic multiplicity m when the nullity chain at its centroid looks like
/// a Jordan structure: n_1 >= 1, n_m = m, increments non-increasing.
bool verify_group(const Eigen::MatrixXd& a, const std::vector<Complex>& ev, Group& g, double tol) {
  const auto m = static_cast<unsigned>(g.members.size());
  g.center = mean_of(ev, g.members);
  g.spread = 0.0;
  for (auto i : g.members) g.spread = std::max(g.spread, std::abs(ev[i] - g.center));
  if (m == 1) {
    g.geometric = 1;
    g.max_block = 1;
    return true;
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (std::find(g.members.begin(), g.members.end(), i) == g.members.end()) {
      gap = std::min(gap, std::abs(ev[i] - g.center));
    }
  }
  auto chain = nullity_chain(a, g.center, m, tol, gap, static_cast<unsigned>(ev.size()) - m);
  if (chain.front() == 0 || chain.back() != m) return false;
  unsigned prev_increment = chain.front();
  for (std::size_t k = 1; k < chain.size(); ++k) {
    if (chain[k] < chain[k - 1]) return false;
    unsigned inc = chain[k] - chain[k - 1];
    if (inc > prev_increment) return false;
    prev_increment = inc;
  }
  g.geometric = chain.front();
  g.max_block = m;
  for (unsigned k = 1; k <= m; ++k) {
    if (chain[k - 1] == m) {
      g.max_block = k;
      break;
    }
  }
  return true;
}

/// Single-linkage components of idx under relative distance radius.
std::vector<std::vector<std::size_t>> link(const std::vector<Complex>& ev,
                                           const std::vector<std::size_t>& idx, double radius) {
  std::vector<std::size_t> parent(idx.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const Complex a = ev[idx[i]];
      const Complex b = ev[idx[j]];
      if (std::abs(a - b) <= radius * std::max(std::abs(a), std::abs(b))) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(idx.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto r = find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(idx[i]);
  }
  return out;
}

void build_groups(const Eigen::MatrixXd& a, const std::vector<Complex>& ev,
                  const std::vector<std::size_t>& idx, double radius, const SpectralOptions& opts,
                  std::vector<Group>& out) {
  for (auto& comp : link(ev, idx, radius)) {
    Group g;
    g.members = comp;
    if (verify_group(a, ev, g, opts.cluster_tol)) {
      out.push_back(std::move(g));
      continue;
    }
    const double next = radius / 10.0;
    if (next < opts.cluster_tol * 1e-4) {
      for (auto i : comp) {
        Group single;
        single.members = {i};
        verify_group(a, ev, single, opts.cluster_tol);
        out.push_back(std::move(single));
      }
    } else {
      build_groups(a, ev, comp, next, opts, out);
    }
  }
}

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
  return os.str();
}

// --- exact moduli ----------------------------------------------------------

constexpr std::uint64_t kFactorLimit = 1000000000000ULL;

bool factor_into(BigInt n, const Rational& weight, PrimeExponents& out) {
  if (n <= 0) return false;
  if (n > BigInt(kFactorLimit)) return false;
  auto v = n.convert_to<std::uint64_t>();
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    while (v % p == 0) {
      out[p] += weight;
      v /= p;
    }
  }
  if (v > 1) out[v] += weight;
  return true;
}

std::optional<PrimeExponents> prime_exponents(const QuadSurd& x) {
  if (!x.is_pure() || x.is_zero()) return std::nullopt;
  PrimeExponents out;
  Rational q = x.is_rational() ? x.rational_part() : x.surd_coeff();
  if (q < 0) q = -q;
  if (!factor_into(boost::multiprecision::numerator(q), Rational(1), out)) return std::nullopt;
  if (!factor_into(boost::multiprecision::denominator(q), Rational(-1), out)) return std::nullopt;
  if (!x.is_rational() && !factor_into(BigInt(x.radicand()), Rational(1, 2), out)) {
    return std::nullopt;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// num / den when the prime-exponent vectors are proportional.
std::optional<Rational> log_ratio(const PrimeExponents& num, const PrimeExponents& den) {
  if (den.empty()) return std::nullopt;
  const auto& [p0, e0] = *den.begin();
  auto it = num.find(p0);
  Rational factor = it == num.end() ? Rational(0) : Rational(it->second / e0);
  for (const auto& [p, e] : den) {
    auto jt = num.find(p);
    Rational lhs = jt == num.end() ? Rational(0) : jt->second;
    if (lhs != factor * e) return std::nullopt;
  }
  for (const auto& [p, e] : num) {
    if (!den.contains(p)) return std::nullopt;
  }
  return factor;
}

/// Exact prime vectors of each cluster modulus, available when the matrix is
/// triangular with pure surd diagonal entries consistent with the clusters.
std::optional<std::vector<PrimeExponents>> exact_cluster_moduli(const InputMatrix& m,
                                                                const std::vector<EigenCluster>& clusters,
                                                                double tol) {
  if (!m.is_upper_triangular() && !m.is_lower_triangular()) return std::nullopt;
  std::vector<std::optional<PrimeExponents>> per_cluster(clusters.size());
  std::vector<unsigned> counts(clusters.size(), 0);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const QuadSurd& diag = m.exact(i, i);
    auto vec = prime_exponents(diag);
    if (!vec) return std::nullopt;
    const double mod = std::abs(diag.to_double());
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      double dist = std::abs(clusters[c].modulus - mod);
      if (dist < best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    if (best_dist > 10 * tol * mod) return std::nullopt;
    if (per_cluster[best] && *per_cluster[best] != *vec) return std::nullopt;
    per_cluster[best] = std::move(vec);
    ++counts[best];
  }
  std::vector<PrimeExponents> out;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!per_cluster[c] || counts[c] != clusters[c].algebraic_multiplicity) return std::nullopt;
    out.push_back(std::move(*per_cluster[c]));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

InputMatrix::InputMatrix(std::size_t dim, std::vector<QuadSurd> entries)
    : dim_(dim), exact_(std::move(entries)), values_(dim, dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  if (exact_.size() != dim * dim) {
    throw Error(ErrorCode::InvalidArgument, "matrix needs " + std::to_string(dim * dim) +
                                                " entries, got " + std::to_string(exact_.size()));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      double v = exact_[i * dim + j].to_double();
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
      values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
}

InputMatrix::InputMatrix(const Eigen::MatrixXd& values) : dim_(0), values_(values) {
  if (values.rows() != values.cols() || values.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix must be square and non-empty");
  }
  dim_ = static_cast<std::size_t>(values.rows());
  exact_.reserve(dim_ * dim_);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      exact_.emplace_back(rational_from_double(values(i, j)));
    }
  }
}

bool InputMatrix::is_upper_triangular() const {
  for (std::size_t i = 1; i < dim_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!exact(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool InputMatrix::is_lower_triangular() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (!exact(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool AnalyzedMatrix::has_warning(WarningKind kind) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [kind](const Warning& w) { return w.kind == kind; });
}

AnalyzedMatrix spectral_analyze(const InputMatrix& m, const SpectralOptions& opts) {
  const Eigen::MatrixXd& a = m.values();
  const auto d = static_cast<std::size_t>(a.rows());

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= std::numeric_limits<double>::epsilon() * static_cast<double>(d) * sv(0)) {
    throw Error(ErrorCode::SingularMatrix, "matrix is singular (determinant is zero)");
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, "eigenvalue iteration did not converge");
  }
  std::vector<Complex> ev(d);
  for (std::size_t i = 0; i < d; ++i) ev[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));

  AnalyzedMatrix out{m, {}, 0.0, 0.0, 0.0, false, false, {}, {}};

  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Group> groups;
  build_groups(a, ev, all, opts.defect_window, opts, groups);

  for (auto& g : groups) {
    const double mod = std::abs(g.center);
    if (g.members.size() > 1 && g.geometric == g.members.size() &&
        g.spread > opts.ambiguity_floor * mod) {
      out.warnings.push_back({WarningKind::ClusterAmbiguity,
                              "merged " + std::to_string(g.members.size()) +
                                  " eigenvalues near " + describe(g.center) +
                                  " at relative spread " + std::to_string(g.spread / mod)});
    }
    if (std::abs(g.center.imag()) <= 1e-14 * mod) g.center.imag(0.0);
  }

  // Cluster distinct eigenvalues by modulus, descending, single linkage.
  std::sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) {
    double mx = std::abs(x.center);
    double my = std::abs(y.center);
    if (mx != my) return mx > my;
    return x.center.imag() > y.center.imag();
  });
  std::vector<std::vector<const Group*>> by_modulus;
  for (const auto& g : groups) {
    const double mod = std::abs(g.center);
    if (!by_modulus.empty()) {
      const double prev = std::abs(by_modulus.back().back()->center);
      const double gap = prev - mod;
      if (gap <= opts.cluster_tol * prev) {
        if (gap > opts.ambiguity_floor * prev) {
          out.warnings.push_back({WarningKind::ClusterAmbiguity,
                                  "moduli " + describe(prev) + " and " + describe(mod) +
                                      " merged at relative distance " + std::to_string(gap / prev)});
        }
        by_modulus.back().push_back(&g);
        continue;
      }
    }
    by_modulus.push_back({&g});
  }

  for (const auto& members : by_modulus) {
    EigenCluster c;
    double log_sum = 0.0;
    for (const Group* g : members) {
      const auto alg = static_cast<unsigned>(g->members.size());
      c.algebraic_multiplicity += alg;
      c.geometric_multiplicity += g->geometric;
      c.max_jordan_block = std::max(c.max_jordan_block, g->max_block);
      for (auto i : g->members) log_sum += std::log(std::abs(ev[i]));
      if (g->center.imag() < 0.0) continue;
      EigenValueEntry e;
      e.value = g->center;
      e.conjugate_pair = g->center.imag() > 0.0;
      e.algebraic = alg;
      e.geometric = g->geometric;
      e.max_block = g->max_block;
      c.representatives.push_back(e);
    }
    c.modulus = std::exp(log_sum / c.algebraic_multiplicity);
    out.clusters.push_back(std::move(c));
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  out.log_det_abs = lu.matrixLU().diagonal().array().abs().log().sum();
  out.det_abs = std::exp(out.log_det_abs);
  out.lambda_max = out.clusters.front().modulus;
  out.is_expansive = std::all_of(out.clusters.begin(), out.clusters.end(), [&](const EigenCluster& c) {
    return c.modulus - 1.0 > opts.cluster_tol * c.modulus;
  });
  out.is_and = out.top().algebraic_multiplicity == out.top().geometric_multiplicity;

  out.exact_log_ratio.assign(out.clusters.size(), std::nullopt);
  if (out.clusters.size() == 1) {
    out.exact_log_ratio[0] = Rational(static_cast<long long>(d));
  } else if (auto exact = exact_cluster_moduli(m, out.clusters, opts.cluster_tol)) {
    PrimeExponents det;
    for (std::size_t c = 0; c < exact->size(); ++c) {
      for (const auto& [p, e] : (*exact)[c]) det[p] += e * out.clusters[c].algebraic_multiplicity;
    }
    std::erase_if(det, [](const auto& kv) { return kv.second == 0; });
    for (std::size_t c = 0; c < exact->size(); ++c) {
      out.exact_log_ratio[c] = log_ratio(det, (*exact)[c]);
    }
  }
  return out;
}

namespace {

struct Gap {
  double distance = std::numeric_limits<double>::infinity();
  unsigned outside = 0;
};

/// Distance from lambda to the eigenvalues of m outside its defect window.
Gap spectral_gap(const Eigen::MatrixXd& m, Complex lambda) {
  const double window = SpectralOptions{}.defect_window * std::max(1.0, std::abs(lambda));
  Gap g;
  const Eigen::VectorXcd ev = m.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double dist = std::abs(ev(i) - lambda);
    if (dist <= window) continue;
    g.distance = std::min(g.distance, dist);
    ++g.outside;
  }
  return g;
}

}  // namespace

unsigned geometric_multiplicity(const Eigen::MatrixXd& m, Complex lambda, double tol) {
  const Gap gap = spectral_gap(m, lambda);
  auto chain = nullity_chain(m, lambda, 1, tol, gap.distance, gap.outside);
  if (chain.front() == 0) {
    throw Error(ErrorCode::NotAnEigenvalue, describe(lambda) + " is not an eigenvalue");
  }
  return chain.front();
}

unsigned max_jordan_block_size(const Eigen::MatrixXd& m, Complex lambda, double tol) {
  const auto d = static_cast<unsigned>(m.rows());
  const Gap gap = spectral_gap(m, lambda);
  auto chain = nullity_chain(m, lambda, d + 1, tol, gap.distance, gap.outside);
  if (chain.front() == 0) {
    throw Error(ErrorCode::NotAnEigenvalue, describe(lambda) + " is not an eigenvalue");
  }
  for (unsigned k = 1; k <= d; ++k) {
    if (chain[k] == chain[k - 1]) return k;
  }
  return d;
}

// --- powers ----------------------------------------------------------------

namespace {

void renormalize(Eigen::MatrixXd& m, double& log_scale) {
  const double s = m.cwiseAbs().maxCoeff();
  if (s > 0.0) {
    m /= s;
    log_scale += std::log(s);
  }
}

Eigen::MatrixXd power_base(const Eigen::MatrixXd& m, bool inverse, const PowerNormOptions& opts) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
  if (!inverse) return m;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  const double cond = sv(0) / smin;
  if (cond > opts.condition_cap) {
    throw Error(ErrorCode::IllConditioned,
                "condition estimate " + std::to_string(cond) + " exceeds cap for negative powers");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  return lu.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
}

}  // namespace

double log_matrix_power_norm(const Eigen::MatrixXd& m, long j, const PowerNormOptions& opts) {
  if (j == 0) return 0.0;
  Eigen::MatrixXd base = power_base(m, j < 0, opts);
  double log_base = 0.0;
  renormalize(base, log_base);

  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  double log_result = 0.0;
  unsigned long e = j < 0 ? static_cast<unsigned long>(-j) : static_cast<unsigned long>(j);
  while (e != 0) {
    if (e & 1UL) {
      result = result * base;
      log_result += log_base;
      renormalize(result, log_result);
    }
    e >>= 1;
    if (e != 0) {
      base = base * base;
      log_base *= 2.0;
      renormalize(base, log_base);
    }
  }
  return log_result + std::log(largest_singular_value(result));
}

double matrix_power_norm(const Eigen::MatrixXd& m, long j, const PowerNormOptions& opts) {
  const double l = log_matrix_power_norm(m, j, opts);
  if (l > std::log(std::numeric_limits<double>::max())) {
    throw Error(ErrorCode::Overflow, "||A^" + std::to_string(j) + "|| exceeds the double range");
  }
  return std::exp(l);
}

PowerNormWalker::PowerNormWalker(const Eigen::MatrixXd& m, bool inverse, const PowerNormOptions& opts)
    : base_(power_base(m, inverse, opts)),
      current_(Eigen::MatrixXd::Identity(m.rows(), m.cols())),
      direction_(inverse ? -1 : 1) {}

void PowerNormWalker::advance() {
  current_ = base_ * current_;
  renormalize(current_, log_scale_);
  log_norm_ = log_scale_ + std::log(largest_singular_value(current_));
  step_ += direction_;
}

// --- normal form -----------------------------------------------------------

NormalForm expansive_normal_form(const AnalyzedMatrix& a) {
  if (!a.is_expansive) throw Error(ErrorCode::NotExpansive, "matrix is not expansive");
  NormalForm nf;
  nf.scaling_exponent = std::log(2.0) / a.log_det_abs;
  nf.det_check = 1.0;
  for (const auto& c : a.clusters) {
    NormalFormEntry e;
    e.original_modulus = c.modulus;
    e.eigenvalue = std::exp(nf.scaling_exponent * std::log(c.modulus));
    e.algebraic = c.algebraic_multiplicity;
    e.geometric = c.geometric_multiplicity;
    e.max_block = c.max_jordan_block;
    nf.det_check *= std::pow(e.eigenvalue, static_cast<double>(e.algebraic));
    nf.eigenvalues.push_back(e);
  }
  nf.is_and = nf.eigenvalues.front().algebraic == nf.eigenvalues.front().geometric;
  return nf;
}

double isotropy_degree(const AnalyzedMatrix& a) {
  if (a.matrix.dim() == 1) return 1.0;
  if (auto exact = exact_isotropy_degree(a)) return exact->convert_to<double>();
  return a.log_det_abs / std::log(a.lambda_max);
}

double isotropy_degree(const NormalForm& nf) {
  double log_det = 0.0;
  for (const auto& e : nf.eigenvalues) log_det += e.algebraic * std::log(e.eigenvalue);
  if (nf.eigenvalues.size() == 1) return static_cast<double>(nf.eigenvalues.front().algebraic);
  return log_det / std::log(nf.eigenvalues.front().eigenvalue);
}

std::optional<Rational> exact_isotropy_degree(const AnalyzedMatrix& a) {
  if (a.exact_log_ratio.empty()) return std::nullopt;
  return a.exact_log_ratio.front();
}

bool normal_form_merge_affects_and(const AnalyzedMatrix& a) {
  const auto& top = a.top();
  std::size_t distinct = 0;
  bool defective = false;
  for (const auto& r : top.representatives) {
    distinct += r.conjugate_pair ? 2 : 1;
    defective = defective || r.geometric < r.algebraic;
  }
  return distinct > 1 && defective;
}

}  // namespace besov
