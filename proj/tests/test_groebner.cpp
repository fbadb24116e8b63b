#include <burch/groebner.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace burch;

namespace {

RingPtr ring3() { return make_ring(32003, {"x", "y", "z"}); }

Polynomial P(const RingPtr& R, const char* s) { return parse_polynomial(R, s); }

// dim I_d from the span of all monomial multiples of the generators
std::size_t dense_ideal_dim(const RingPtr& R, const std::vector<Polynomial>& gens, int d) {
  auto mons = monomials_of_degree(R->nvars(), d);
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : gens) {
    int gap = d - g.degree();
    if (gap < 0) continue;
    for (const auto& u : monomials_of_degree(R->nvars(), gap)) {
      std::vector<std::uint64_t> row(mons.size(), 0);
      Polynomial gu = g.times_monomial(u);
      for (const auto& t : gu.terms())
        for (std::size_t k = 0; k < mons.size(); ++k)
          if (mons[k] == t.mono) row[k] = t.coef;
      rows.push_back(row);
    }
  }
  return oracle::rank_mod(rows, R->field.p);
}

std::size_t standard_count(const GroebnerBasis& G, int d) {
  std::size_t n = 0;
  for (const auto& m : monomials_of_degree(G.ring()->nvars(), d))
    if (!G.lead_divides(m)) ++n;
  return n;
}

std::vector<Polynomial> random_binomials(std::mt19937_64& rng, const RingPtr& R, int k) {
  std::uniform_int_distribution<int> deg(1, 3), var(0, R->nvars() - 1), coef(1, 50);
  std::vector<Polynomial> out;
  for (int i = 0; i < k; ++i) {
    int d = deg(rng);
    std::vector<int> a(3, 0), b(3, 0);
    for (int j = 0; j < d; ++j) {
      ++a[static_cast<std::size_t>(var(rng))];
      ++b[static_cast<std::size_t>(var(rng))];
    }
    out.push_back(Polynomial::monomial(R, Monomial::from_exponents(a)) -
                  Polynomial::monomial(R, Monomial::from_exponents(b), static_cast<Coef>(coef(rng))));
  }
  return out;
}

}  // namespace

TEST(Buchberger, HilbertFunctionMatchesDenseSpan) {
  auto R = ring3();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto gens = random_binomials(rng, R, 3);
    auto G = buchberger(R, gens);
    for (int d = 0; d <= 6; ++d) {
      std::size_t total = monomials_of_degree(3, d).size();
      EXPECT_EQ(standard_count(G, d), total - dense_ideal_dim(R, gens, d)) << "trial " << trial << " degree " << d;
    }
  }
}

TEST(Buchberger, ReducedAndMonic) {
  auto R = ring3();
  auto G = buchberger(R, {P(R, "x^2 - y*z"), P(R, "x*y - z^2"), P(R, "y^3 + x*z^2")});
  for (const auto& g : G.generators()) {
    EXPECT_EQ(g.lead_coef(), 1u);
    for (const auto& h : G.generators()) {
      if (&g == &h) continue;
      for (const auto& t : h.terms()) EXPECT_FALSE(g.lead_monomial().divides(t.mono)) << to_string(g) << " | " << to_string(h);
    }
  }
}

TEST(Buchberger, MembershipAndNormalForm) {
  auto R = ring3();
  auto G = buchberger(R, {P(R, "x*y"), P(R, "y^2 - z^2")});
  EXPECT_TRUE(G.contains(P(R, "x*y*z + x*y^2 - x*z^2")));
  EXPECT_FALSE(G.contains(P(R, "x^2")));
  EXPECT_EQ(normal_form(P(R, "y^2"), G), P(R, "z^2"));
}

TEST(Buchberger, UnitAndZero) {
  auto R = ring3();
  EXPECT_TRUE(buchberger(R, {P(R, "x"), Polynomial::constant(R, 3)}).is_unit());
  EXPECT_TRUE(buchberger(R, {}).is_zero());
  EXPECT_THROW(buchberger(R, {P(R, "x + y^2")}), Error);
}

TEST(Syzygies, KoszulRelations) {
  auto R = ring3();
  auto row = GradedMatrix::row(R, {P(R, "x"), P(R, "y"), P(R, "z")});
  auto K = syzygies(row);
  EXPECT_EQ(K.cols(), 3);
  EXPECT_TRUE(multiply(row, K).is_zero());
  for (int c = 0; c < K.cols(); ++c) EXPECT_EQ(K.source().twists[static_cast<std::size_t>(c)], 2);
}

TEST(Syzygies, ModuloIdealKillsProductAndIsComplete) {
  auto R = ring3();
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto Iref = oracle::random_ideal(rng, 3, 3, 4);
    auto Nref = oracle::random_ideal(rng, 3, 2, 3);
    Ideal I = oracle::to_ideal(R, Iref);
    if (I.is_unit()) continue;
    std::vector<Polynomial> gens;
    Ideal N = oracle::to_ideal(R, Nref);
    for (const auto& g : N.gens())
      if (!I.contains(g)) gens.push_back(g);
    if (gens.empty()) continue;
    auto A = GradedMatrix::row(R, gens);
    auto K = syzygies_mod(I.gb(), A);
    auto AK = multiply(A, K);
    ++checked;
    for (int c = 0; c < AK.cols(); ++c) EXPECT_TRUE(I.contains(AK.at(0, c))) << "trial " << trial;
    for (int d = 0; d <= 6; ++d) {
      auto block = oracle::graded_block(A, Iref, d);
      std::size_t kernel = oracle::source_dim(A, Iref, d) - oracle::rank_mod(block, R->field.p);
      // image of K in degree d, as vectors in F_source
      auto kb = oracle::graded_block(K, Iref, d);
      EXPECT_EQ(oracle::rank_mod(kb, R->field.p), kernel) << "trial " << trial << " degree " << d;
    }
  }
  EXPECT_GT(checked, 10);
}
