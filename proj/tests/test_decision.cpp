#include "doctest.h"

#include "support.hpp"

using namespace besov;
using namespace besov::testing;

namespace {

EmbeddingParams example_params(unsigned n, const ExtReal& r, const Rational& alpha = rat(5, 3)) {
  EmbeddingParams params;
  params.p = ext(2);
  params.q = ext(3);
  params.r = r;
  params.alpha = QuadSurd(alpha);
  params.n = n;
  return params;
}

bool any_violated_necessary(const Verdict& v) {
  for (const auto& c : v.trace) {
    if (c.role == CheckRole::Necessary && c.status == CheckStatus::Violated) return true;
  }
  return false;
}

bool boundary_flagged(const Verdict& v) { return v.has_warning(WarningKind::Boundary); }

}  // namespace

TEST_CASE("example table, inhomogeneous closed form") {
  const auto a = spectral_analyze(example_a());
  const auto b = spectral_analyze(example_b());
  for (unsigned n : {0U, 1U, 2U}) {
    for (const auto& r : {ext(1, 2), ext(1), ext(2), ext(10)}) {
      CHECK(decide_inhomogeneous(a, example_params(n, r)).outcome == Outcome::Embeds);
      CHECK(decide_inhomogeneous(b, example_params(n, r)).outcome == Outcome::Embeds);
    }
  }
  for (unsigned n : {4U, 5U}) {
    for (const auto& r : {ext(1, 2), ext(1), ext(2), ext(10)}) {
      CHECK(decide_inhomogeneous(a, example_params(n, r)).outcome == Outcome::DoesNotEmbed);
      CHECK(decide_inhomogeneous(b, example_params(n, r)).outcome == Outcome::DoesNotEmbed);
    }
  }
  CHECK(decide_inhomogeneous(a, example_params(3, ext(1))).outcome == Outcome::Embeds);
  CHECK(decide_inhomogeneous(b, example_params(3, ext(1))).outcome == Outcome::DoesNotEmbed);
  CHECK(decide_inhomogeneous(a, example_params(3, ext(2))).outcome == Outcome::Undecided);
  CHECK(decide_inhomogeneous(b, example_params(3, ext(2))).outcome == Outcome::DoesNotEmbed);
  CHECK(decide_inhomogeneous(a, example_params(0, ext(2), rat(1, 6))).outcome == Outcome::Undecided);
  CHECK(decide_inhomogeneous(b, example_params(0, ext(2), rat(1, 6))).outcome == Outcome::Undecided);
}

TEST_CASE("example table, derived values and trace") {
  const auto a = spectral_analyze(example_a());
  const auto v = decide_inhomogeneous(a, example_params(3, ext(2)));
  CHECK(v.derived.n_star == QuadSurd(rat(3, 2)));
  CHECK(v.derived.q_nabla == ext(3, 2));
  CHECK(v.derived.iso_degree == 2.0);
  REQUIRE(v.derived.threshold_exact.has_value());
  CHECK(*v.derived.threshold_exact == QuadSurd(3));
  CHECK(v.warnings.empty());
  CHECK_FALSE(any_violated_necessary(v));
  for (const auto& c : v.trace) CHECK_FALSE(c.clause_ref.empty());

  const auto b = spectral_analyze(example_b());
  const auto w = decide_inhomogeneous(b, example_params(3, ext(2)));
  bool c4 = false;
  for (const auto& c : w.trace) {
    if (c.clause_ref == "inhomogeneous.necessary.c.iv") c4 = c.status == CheckStatus::Violated;
  }
  CHECK(c4);
}

TEST_CASE("sharpness region examples") {
  const auto a = spectral_analyze(example_a());
  const auto b = spectral_analyze(example_b());
  CHECK_FALSE(sharpness_region(a, example_params(3, ext(2)), Variant::Inhomogeneous));
  CHECK(sharpness_region(b, example_params(3, ext(2)), Variant::Inhomogeneous));
  auto q2 = example_params(3, ext(2));
  q2.q = ext(2);
  CHECK(sharpness_region(a, q2, Variant::Inhomogeneous));
  CHECK(sharpness_region(a, q2, Variant::Homogeneous));
  q2.q = inf();
  CHECK(sharpness_region(a, q2, Variant::Homogeneous));
  CHECK_FALSE(sharpness_region(a, example_params(3, ext(2)), Variant::Homogeneous));
}

TEST_CASE("homogeneous table") {
  const auto a = spectral_analyze(example_a());
  EmbeddingParams params;
  params.p = ext(2);
  params.q = ext(2);
  params.r = ext(2);
  params.alpha = QuadSurd(0);
  params.n = 0;
  CHECK(decide_homogeneous(a, params).outcome == Outcome::Embeds);
  params.r = ext(3);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::DoesNotEmbed);
  params.n = 1;
  params.r = ext(1);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::DoesNotEmbed);
  // q = 3, p = 2, n = n* = 0: r <= 3/2 embeds, 3/2 < r <= 3 is open, r > 3 fails.
  params.n = 0;
  params.q = ext(3);
  params.alpha = QuadSurd(rat(1, 6));
  params.r = ext(3, 2);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::Embeds);
  params.r = ext(2);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::Undecided);
  params.r = ext(4);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::DoesNotEmbed);
  // q = inf needs r <= 1.
  params.q = inf();
  params.alpha = QuadSurd(rat(1, 2));
  params.r = ext(1);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::Embeds);
  params.r = ext(3, 2);
  CHECK(decide_homogeneous(a, params).outcome == Outcome::DoesNotEmbed);
  try {
    decide_homogeneous(spectral_analyze(matrix_of(1, {"1/2"})), params);
    FAIL("expected NotExpansive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotExpansive);
  }
}

TEST_CASE("negative n* never embeds") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    auto params = random_params(rng);
    params.alpha = QuadSurd(params.p.reciprocal() - params.q.reciprocal() - rat(1, 5));
    CHECK(decide_inhomogeneous(a, params).outcome == Outcome::DoesNotEmbed);
    CHECK(decide_homogeneous(a, params).outcome == Outcome::DoesNotEmbed);
  }
}

TEST_CASE("verdicts agree with their traces") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    const auto params = random_params(rng);
    for (Variant variant : {Variant::Homogeneous, Variant::Inhomogeneous}) {
      for (const auto& v : {decide_closed_form(a, params, variant), decide_via_summability(a, params, variant)}) {
        for (const auto& c : v.trace) CHECK_FALSE(c.clause_ref.empty());
        if (v.outcome == Outcome::DoesNotEmbed) CHECK(any_violated_necessary(v));
        if (v.outcome != Outcome::DoesNotEmbed) CHECK_FALSE(any_violated_necessary(v));
        if (v.outcome == Outcome::Embeds) {
          bool sufficient_hit = false;
          for (const auto& c : v.trace) {
            if (c.role == CheckRole::Sufficient && c.status == CheckStatus::Satisfied) sufficient_hit = true;
          }
          CHECK(sufficient_hit);
        }
      }
    }
  }
}

TEST_CASE("never-undecided regions") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    const auto params = random_params(rng);
    if (decide_homogeneous(a, params).outcome == Outcome::Undecided) {
      CHECK(params.q > ext(2));
      CHECK_FALSE(params.q.is_infinite());
    }
    if (decide_inhomogeneous(a, params).outcome == Outcome::Undecided) {
      CHECK_FALSE(sharpness_region(a, params, Variant::Inhomogeneous));
    }
  }
}

TEST_CASE("homogeneous verdicts ignore the matrix") {
  Rng rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const auto a = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    const auto b = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    const auto params = random_params(rng);
    const auto va = decide_homogeneous(a, params);
    const auto vb = decide_homogeneous(b, params);
    CHECK(va.outcome == vb.outcome);
    REQUIRE(va.trace.size() == vb.trace.size());
    for (std::size_t k = 0; k < va.trace.size(); ++k) {
      CHECK(va.trace[k].status == vb.trace[k].status);
      CHECK(va.trace[k].detail == vb.trace[k].detail);
    }
  }
}

TEST_CASE("closed form and summability never contradict") {
  Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    const auto params = random_params(rng);
    for (Variant variant : {Variant::Homogeneous, Variant::Inhomogeneous}) {
      const Outcome x = decide_closed_form(a, params, variant).outcome;
      const Outcome y = decide_via_summability(a, params, variant).outcome;
      CAPTURE(trial);
      CHECK_FALSE((x == Outcome::Embeds && y == Outcome::DoesNotEmbed));
      CHECK_FALSE((x == Outcome::DoesNotEmbed && y == Outcome::Embeds));
    }
  }
}

TEST_CASE("monotonicity in n and alpha") {
  Rng rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    const auto a = spectral_analyze(random_expansive(rng, uniform_int(rng, 2, 4)));
    auto params = random_params(rng);
    const auto base = decide_inhomogeneous(a, params);
    if (base.outcome == Outcome::Embeds && params.n >= 1) {
      auto lower = params;
      lower.n -= 1;
      CHECK(decide_inhomogeneous(a, lower).outcome == Outcome::Embeds);
    }
    if (base.outcome == Outcome::DoesNotEmbed) {
      auto higher = params;
      higher.n += 1;
      CHECK(decide_inhomogeneous(a, higher).outcome == Outcome::DoesNotEmbed);
    }
    if (base.outcome == Outcome::Embeds) {
      for (const auto& step : {rat(1, 7), rat(1, 2), rat(3)}) {
        auto more = params;
        more.alpha = params.alpha + QuadSurd(step);
        const auto v = decide_inhomogeneous(a, more);
        if (!boundary_flagged(v)) CHECK(v.outcome == Outcome::Embeds);
      }
    }
  }
}

TEST_CASE("inhomogeneous verdicts survive integer similarity") {
  Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = uniform_int(rng, 2, 4);
    const Eigen::MatrixXd j = assemble(random_blocks(rng, d));
    const Eigen::MatrixXd s = random_unimodular(rng, d);
    const Eigen::MatrixXd s_inv = s.inverse().array().round().matrix();
    const auto x = spectral_analyze(InputMatrix(j));
    const auto y = spectral_analyze(InputMatrix(Eigen::MatrixXd(s * j * s_inv)));
    if (x.has_warning(WarningKind::ClusterAmbiguity) || y.has_warning(WarningKind::ClusterAmbiguity)) continue;
    const auto params = random_params(rng);
    const auto vx = decide_inhomogeneous(x, params);
    const auto vy = decide_inhomogeneous(y, params);
    if (boundary_flagged(vx) || boundary_flagged(vy)) continue;
    CAPTURE(trial);
    CHECK(vx.outcome == vy.outcome);
  }
}

TEST_CASE("irrational threshold near an integer is flagged") {
  // diag(2, 3): T = (ln 6 / ln 3) * n*; choose n* so that T sits within 1e-12 of 2.
  const auto a = spectral_analyze(InputMatrix(Eigen::Vector2d(2.0, 3.0).asDiagonal().toDenseMatrix()));
  const double iso = isotropy_degree(a);
  EmbeddingParams params;
  params.p = ext(2);
  params.q = ext(2);
  params.r = ext(1);
  params.n = 2;
  params.alpha = QuadSurd(rational_from_double(2.0 / iso));
  const auto v = decide_inhomogeneous(a, params);
  CHECK(v.has_warning(WarningKind::Boundary));
  CHECK(v.outcome != Outcome::Embeds);
}
