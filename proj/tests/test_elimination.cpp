#include <gtest/gtest.h>

#include <random>

#include "sfkit/elimination.hpp"
#include "test_support.hpp"

using namespace sfkit;
using sfkit::testing::random_poly;
using sfkit::testing::random_rational;

namespace {

MPoly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

// Textbook multivariate division, leading terms only, written without the
// library's reducer.
MPoly naive_remainder(MPoly p, const std::vector<MPoly>& divisors) {
  const RingPtr& ring = p.ring();
  MPoly r(ring);
  while (!p.is_zero()) {
    auto lt = p.leading_term();
    bool divided = false;
    for (const auto& g : divisors) {
      const auto& lg = g.leading_monomial();
      bool ok = true;
      for (std::size_t i = 0; i < lg.size(); ++i) ok = ok && lg[i] <= lt.exp[i];
      if (!ok) continue;
      Exponents q(lg.size());
      for (std::size_t i = 0; i < lg.size(); ++i) q[i] = lt.exp[i] - lg[i];
      p = p - MPoly::monomial(ring, q, lt.coeff / g.leading_coeff()) * g;
      divided = true;
      break;
    }
    if (!divided) {
      MPoly m = MPoly::monomial(ring, lt.exp, lt.coeff);
      r = r + m;
      p = p - m;
    }
  }
  return r;
}

MPoly naive_spoly(const MPoly& f, const MPoly& g) {
  const auto& a = f.leading_monomial();
  const auto& b = g.leading_monomial();
  Exponents ua(a.size()), ub(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto l = std::max(a[i], b[i]);
    ua[i] = l - a[i];
    ub[i] = l - b[i];
  }
  return MPoly::monomial(f.ring(), ua, 1 / f.leading_coeff()) * f - MPoly::monomial(g.ring(), ub, 1 / g.leading_coeff()) * g;
}

void expect_groebner(const std::vector<MPoly>& gens, const std::vector<MPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      EXPECT_TRUE(naive_remainder(naive_spoly(basis[i], basis[j]), basis).is_zero())
          << basis[i] << " / " << basis[j];
  for (const auto& g : gens) EXPECT_TRUE(naive_remainder(g.in_ring(basis.front().ring()), basis).is_zero()) << g;
}

// Rank of the coefficient matrix of linear forms (constant column included).
int linear_rank(const std::vector<MPoly>& forms, std::size_t n) {
  std::vector<std::vector<Rational>> m;
  for (const auto& f : forms) {
    std::vector<Rational> row(n + 1);
    for (const auto& t : f.terms()) {
      std::size_t k = n;
      for (std::size_t i = 0; i < n; ++i)
        if (t.exp[i]) k = i;
      row[k] = t.coeff;
    }
    m.push_back(row);
  }
  int rank = 0;
  for (std::size_t c = 0; c <= n && rank < static_cast<int>(m.size()); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k <= n; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(Groebner, Examples) {
  auto r = make_ring({"x", "y"});
  Ideal inconsistent(r, {P("x*y - 1", r), P("x", r)});
  auto b = groebner(inconsistent, MonomialOrder::grevlex());
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], MPoly::constant(b[0].ring(), 1));

  auto b2 = groebner(Ideal(r, {P("y - x^2", r)}), MonomialOrder::lex());
  ASSERT_EQ(b2.size(), 1u);
  EXPECT_EQ(b2[0], P("x^2 - y", b2[0].ring()));

  auto g = make_ring({"x1", "x2", "y1", "y2"});
  Ideal graph(g, {P("y1 - x1", g), P("y2 - x1*x2", g)});
  auto eb = groebner(graph, MonomialOrder::block(1));
  bool found = false;
  for (const auto& p : eb) found = found || p == P("y1*x2 - y2", p.ring()) || p == P("y2 - y1*x2", p.ring());
  EXPECT_TRUE(found);
  expect_groebner(graph.generators(), graph.basis(MonomialOrder::block(1)));
}

TEST(Groebner, ZeroIdealHasEmptyBasis) {
  auto r = make_ring({"x"});
  EXPECT_TRUE(groebner(Ideal::zero(r), MonomialOrder::grevlex()).empty());
  EXPECT_TRUE(Ideal::zero(r).is_zero());
}

TEST(Groebner, CyclicThree) {
  auto r = make_ring({"a", "b", "c"});
  Ideal I(r, {P("a + b + c", r), P("a*b + b*c + c*a", r), P("a*b*c - 1", r)});
  for (auto o : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
    const auto& b = I.basis(o);
    expect_groebner(I.generators(), b);
  }
  auto lexb = groebner(I, MonomialOrder::lex());
  EXPECT_EQ(lexb.front(), P("c^3 - 1", lexb.front().ring()));
}

TEST(Groebner, IdempotentAndCriterionOnRandomIdeals) {
  std::mt19937_64 rng(11);
  auto r = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<MPoly> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_poly(rng, r, 3, 2));
    for (auto o : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(1)}) {
      Ideal I(r, gens);
      auto b = groebner(I, o);
      if (I.is_zero()) {
        EXPECT_TRUE(b.empty());
        continue;
      }
      expect_groebner(I.generators(), I.basis(o));
      auto again = groebner(Ideal(r, b), o);
      EXPECT_EQ(again, b) << "trial " << trial;
      for (const auto& p : b) EXPECT_EQ(p, p.canonical());
    }
  }
}

TEST(Groebner, DimensionOfLinearIdealsMatchesRank) {
  std::mt19937_64 rng(5);
  auto r = make_ring({"a", "b", "c", "d"});
  std::uniform_int_distribution<int> count(1, 4), coin(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<MPoly> forms;
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
      MPoly f(r);
      for (std::size_t v = 0; v < 4; ++v)
        if (coin(rng)) f = f + MPoly::variable(r, v) * random_rational(rng);
      forms.push_back(f);
    }
    int rank = linear_rank(forms, 4);
    std::vector<MPoly> homog;
    for (const auto& f : forms) homog.push_back(f);
    int expected = 4 - rank;
    if (rank == 0) expected = 4;
    EXPECT_EQ(dimension(Ideal(r, homog)), expected) << "trial " << trial;
    // Adding an inconsistent constant row makes the unit ideal.
    auto with_one = homog;
    with_one.push_back(MPoly::constant(r, 1));
    EXPECT_EQ(dimension(Ideal(r, with_one)), -1);
  }
}

TEST(Eliminate, Examples) {
  auto r = make_ring({"x", "y"});
  EXPECT_TRUE(eliminate(Ideal(r, {P("y - x^2", r)}), {"y"}).is_zero());

  auto g = make_ring({"x1", "x2", "y1", "y2"});
  EXPECT_TRUE(eliminate(Ideal(g, {P("y1 - x1", g), P("y2 - x1*x2", g)}), {"y1", "y2"}).is_zero());

  auto h = make_ring({"x1", "x2", "x3", "y1", "y2"});
  EXPECT_TRUE(eliminate(Ideal(h, {P("x1*x2 - 1", h), P("y1 - x2", h), P("y2 - x3", h)}), {"y1", "y2"}).is_zero());

  // Twisted cubic: the image of t -> (t, t^2, t^3) is cut by three quadrics.
  auto c = make_ring({"t", "a", "b", "e"});
  auto im = eliminate(Ideal(c, {P("a - t", c), P("b - t^2", c), P("e - t^3", c)}), {"a", "b", "e"});
  EXPECT_EQ(dimension(im), 1);
  auto ir = im.ring();
  EXPECT_TRUE(contains(im, P("b - a^2", ir)));
  EXPECT_TRUE(contains(im, P("e - a*b", ir)));
  EXPECT_FALSE(contains(im, P("e - a^2", ir)));
}

TEST(Eliminate, GeneratorsLieInOriginalIdeal) {
  std::mt19937_64 rng(23);
  auto r = make_ring({"x", "y", "u", "v"});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<MPoly> gens{P("u", r) - random_poly(rng, r, 2, 1), P("v", r) - random_poly(rng, r, 3, 2)};
    gens.push_back(random_poly(rng, r, 2, 1));
    Ideal I(r, gens);
    auto E = eliminate(I, {"u", "v"});
    for (const auto& e : E.generators()) {
      EXPECT_FALSE(e.in_ring(r).involves(0));
      EXPECT_TRUE(normal_form(e.in_ring(r), I).is_zero()) << e;
    }
  }
}

TEST(NormalForm, Examples) {
  auto r = make_ring({"x", "y"});
  Ideal I(r, {P("x*y - 1", r), P("x", r)});
  EXPECT_TRUE(normal_form(P("x*y - 1", r), I).is_zero());
  EXPECT_TRUE(normal_form(MPoly::constant(r, 1), I).is_zero());

  auto g = make_ring({"x1", "x2", "y1", "y2"});
  Ideal graph(g, {P("y1 - x1", g), P("y2 - x1*x2", g)});
  EXPECT_TRUE(normal_form(P("y2 - y1*x2", g), graph).is_zero());
  EXPECT_FALSE(normal_form(P("y2 - x2", g), graph).is_zero());
}

TEST(VanishesOn, Examples) {
  auto r = make_ring({"y1", "y2"});
  Ideal sq(r, {P("y1^2", r)});
  EXPECT_TRUE(vanishes_on(P("y1", r), sq));
  EXPECT_FALSE(vanishes_on(P("y1 - 1", r), sq));
  Ideal cube(r, {P("(y1 - y2^2)^3", r)});
  EXPECT_TRUE(vanishes_on(P("y1 - y2^2", r), cube));
  EXPECT_TRUE(vanishes_on(squarefree(cube.generators()[0]), cube));
  EXPECT_FALSE(vanishes_on(P("y1", r), cube));
}

TEST(VanishesOn, FreshVariableAvoidsClash) {
  auto r = make_ring({"z", "z0"});
  Ideal I(r, {P("z^2", r)});
  EXPECT_TRUE(vanishes_on(P("z", r), I));
  EXPECT_FALSE(vanishes_on(P("z0", r), I));
}

TEST(VanishesOn, ImpliedByMembership) {
  std::mt19937_64 rng(31);
  auto r = make_ring({"x", "y", "w"});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<MPoly> gens{random_poly(rng, r, 3, 2), random_poly(rng, r, 3, 2)};
    Ideal I(r, gens);
    MPoly member = random_poly(rng, r, 2, 1) * gens[0] + random_poly(rng, r, 2, 1) * gens[1];
    ASSERT_TRUE(normal_form(member, I).is_zero());
    EXPECT_TRUE(vanishes_on(member, I));
    MPoly p = random_poly(rng, r, 3, 2);
    if (normal_form(p, I).is_zero()) EXPECT_TRUE(vanishes_on(p, I));
    // p^2 in I implies p vanishes on V(I).
    Ideal J(r, {p * p});
    if (!p.is_zero()) EXPECT_TRUE(vanishes_on(p, J));
  }
}

TEST(Dimension, Examples) {
  auto r = make_ring({"y1", "y2"});
  EXPECT_EQ(dimension(Ideal(r, {P("y1", r)})), 1);
  EXPECT_EQ(dimension(Ideal::unit(r)), -1);
  EXPECT_EQ(dimension(Ideal(r, {P("y1 - y2^2", r)})), 1);
  EXPECT_EQ(dimension(Ideal::zero(r)), 2);
  EXPECT_EQ(dimension(Ideal(r, {P("y1", r), P("y2 - 3", r)})), 0);
}

TEST(Ideal, CacheSharedAcrossCopies) {
  auto r = make_ring({"x", "y"});
  Ideal I(r, {P("x^2 - y", r), P("x*y - 1", r)});
  const auto& b1 = I.basis(MonomialOrder::lex());
  Ideal copy = I;
  const auto& b2 = copy.basis(MonomialOrder::lex());
  EXPECT_EQ(&b1, &b2);
  // Other orders added later do not invalidate the first reference.
  copy.basis(MonomialOrder::grevlex());
  copy.basis(MonomialOrder::block(1));
  EXPECT_EQ(b1, groebner_basis({P("x^2 - y", r).in_ring(with_order(r, MonomialOrder::lex())),
                                 P("x*y - 1", r).in_ring(with_order(r, MonomialOrder::lex()))}));
}
