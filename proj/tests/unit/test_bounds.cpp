#include <doctest.h>

#include <random>

#include "shabound/bounds.hpp"

using namespace shabound;

namespace {

FieldInvariants field(std::int64_t d, std::int64_t cp = 0) { return {d, cp, true, true}; }

}  // namespace

TEST_CASE("dim K(S,p)") {
  CHECK(dim_ksp(field(4), 0) == 2);
  CHECK(dim_ksp(field(4), 3) == 5);
  CHECK_THROWS_AS(dim_ksp(FieldInvariants{1, 0, false, true}, 0), HypothesisViolated);
  CHECK_THROWS_AS(dim_ksp(FieldInvariants{4, 0, true, false}, 0), HypothesisViolated);
  CHECK_THROWS_AS(dim_ksp(FieldInvariants{3, 0, true, true}, 0), ValidationError);
}

TEST_CASE("Selmer interval") {
  CHECK(selmer_interval(field(4), 5, 1, 0) == std::pair<std::int64_t, std::int64_t>{2, 11});
  CHECK(selmer_interval(field(4), 0, 0, 0) == std::pair<std::int64_t, std::int64_t>{-2, 6});
  CHECK(selmer_interval(field(4), 3, 0, 3) == std::pair<std::int64_t, std::int64_t>{1, 6});
}

TEST_CASE("rank upper bound") {
  CHECK(rank_upper(field(4), 0, 0, 0, 0) == 11);
  CHECK(rank_upper(field(4), 10, 10, 10, 10) == 11);
  // equal s and m contributions cancel
  CHECK(rank_upper(field(4), 1, 1, 1, 1) == 11);
  CHECK(rank_upper(field(4), 1, 1, 0, 0) == 13);
}

TEST_CASE("Cassels interval") {
  CHECK(cassels_interval(field(4), 0, 0, 5) == std::pair<std::int64_t, std::int64_t>{-4, 14});
  CHECK(cassels_interval(field(4), 3, 0, 3) == std::pair<std::int64_t, std::int64_t>{-9, 9});
}

TEST_CASE("sum lower bound and Sha from the sum") {
  CHECK(sum_lower(field(4), 20, 1) == 6);
  CHECK(sum_lower(field(4), 1, 20) == 6);
  CHECK(sum_lower(field(4), 0, 0) == -13);
  CHECK(sha_from_sum(11, 0) == 5);
  CHECK(sha_from_sum(1, 0) == 0);
  CHECK(sha_from_sum(12, 1) == 5);
  CHECK(sha_from_sum(0, 3) == 0);
  CHECK_THROWS_AS(sha_from_sum(-1, 0), ValidationError);
}

TEST_CASE("Sha lower bound from the matrix ranks") {
  auto a = sha_lower_matrix(field(4), 0, 2, 40, 0);
  CHECK(a.raw == 7);  // -min(0, 2) - 12 - 1 + 20
  CHECK(a.clamped == 7);
  auto b = sha_lower_matrix(field(4), 0, 0, 0, 0);
  CHECK(b.raw == -13);
  CHECK(b.clamped == 0);
  auto c = sha_lower_matrix(field(4), 0, 0, 27, 0);
  CHECK(c.raw == Rat(1, 2));
  CHECK(c.clamped == 1);
}

TEST_CASE("construction budget") {
  auto b = theorem_budget(5, 1, 3, 1);
  CHECK(b.m_threshold == 100);
  CHECK(b.d_max == 8);
  CHECK(b.s2_max == 24);
  CHECK(b.sha_guarantee == 1);
  CHECK_THROWS_AS(theorem_budget(5, 0, 3, 1), ValidationError);
  CHECK_THROWS_AS(theorem_budget(3, 1, 3, 1), ValidationError);
  CHECK_THROWS_AS(theorem_budget(6, 1, 3, 1), ValidationError);
  for (std::int64_t k = 1; k < 10; ++k) CHECK(theorem_budget(7, k, 2, 3).sha_guarantee - k == 0);

  // The guarantee comes from the matrix bound at the extreme field.
  auto s = sha_lower_matrix(field(b.d_max), b.s2_max, b.s2_max, b.m_threshold, 0);
  CHECK(s.raw >= 1);
}

TEST_CASE("degree budget") {
  auto d = degree_budget(5);
  CHECK(d.deg_h_bound == 125);
  CHECK(d.g_bound == 1000);
  for (std::int64_t p : {5, 7, 11, 13}) {
    auto x = degree_budget(p);
    CHECK(x.g_bound == 2 * (p - 1) * x.deg_h_bound);
    CHECK(x.g_bound < Int(2 * p * p * p * p));
  }
}

TEST_CASE("advisory report over Q flags the hypotheses") {
  BoundInputs in{0, 1, 0, 0, 0, 0, 0};
  auto r = advisory_report(FieldInvariants::rationals(), in);
  CHECK_FALSE(r.hypothesis_ok);
  CHECK(r.reasons.size() == 2);
  CHECK(r.selmer_lower == Rat(-3, 2));
  CHECK(r.selmer_upper == Rat(3, 2));
}

TEST_CASE("advisory report equals the strict formulas when hypotheses hold") {
  std::mt19937 rng(41);
  for (int i = 0; i < 2000; ++i) {
    const auto f = field(2 * (1 + rng() % 5), rng() % 3);
    BoundInputs in{static_cast<std::int64_t>(rng() % 20), static_cast<std::int64_t>(rng() % 20),
                   static_cast<std::int64_t>(rng() % 20), static_cast<std::int64_t>(rng() % 20),
                   static_cast<std::int64_t>(rng() % 60), static_cast<std::int64_t>(rng() % 60),
                   static_cast<std::int64_t>(rng() % 20)};
    auto r = advisory_report(f, in);
    CHECK(r.hypothesis_ok);
    auto [lo, hi] = selmer_interval(f, in.s1, in.s2, in.m);
    CHECK(r.selmer_lower == lo);
    CHECK(r.selmer_upper == hi);
    CHECK(r.rank_upper == rank_upper(f, in.s1, in.s2, in.m, in.m_hat));
    auto [clo, chi] = cassels_interval(f, in.s1, in.s2, in.dim_phi);
    CHECK(r.cassels_interval.first == clo);
    CHECK(r.cassels_interval.second == chi);
    CHECK(r.sum_lower == sum_lower(f, in.s1, in.s2));
    auto s = sha_lower_matrix(f, in.s1, in.s2, in.m_psi, in.m_psi_hat);
    CHECK(r.sha_lower_raw == s.raw);
    CHECK(r.sha_lower == s.clamped);
  }
}

TEST_CASE("grid properties") {
  std::mt19937_64 rng(43);
  std::size_t violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::int64_t d = 2 * static_cast<std::int64_t>(1 + rng() % 50);
    const auto f = field(d, static_cast<std::int64_t>(rng() % 10));
    const std::int64_t s1 = rng() % 200, s2 = rng() % 200;
    const std::int64_t m = rng() % (s2 + 2 * d + 1);
    auto [lo, hi] = selmer_interval(f, s1, s2, m);
    if (lo > hi) ++violations;
    auto [clo, chi] = cassels_interval(f, s1, s2, rng() % 300);
    if (chi - clo != 2 * (2 * d + 1)) ++violations;
    const std::int64_t sum = rng() % 500, r = rng() % 100;
    if (sha_from_sum(sum + 1, r) < sha_from_sum(sum, r)) ++violations;
    if (r > 0 && sha_from_sum(sum, r - 1) < sha_from_sum(sum, r)) ++violations;
  }
  CHECK(violations == 0);
}
