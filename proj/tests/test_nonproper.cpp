#include <gtest/gtest.h>

#include "sfkit/nonproper.hpp"

using namespace sfkit;

namespace {

PolyMap make_map(std::vector<std::string> vars, std::vector<std::string> f, std::vector<std::string> eqs = {},
                 FieldMode mode = FieldMode::complex) {
  auto r = make_ring(vars);
  std::vector<MPoly> dom, comps;
  for (const auto& e : eqs) dom.push_back(parse_poly(e, r));
  for (const auto& c : f) comps.push_back(parse_poly(c, r));
  return PolyMap(Ideal(r, dom), comps, mode);
}

std::vector<std::string> component_strings(const SfResult& sf) {
  std::vector<std::string> out;
  for (const auto& c : sf.components) {
    std::string s;
    for (const auto& g : c.basis()) s += (s.empty() ? "" : ", ") + g.to_string();
    out.push_back(s);
  }
  return out;
}

bool same_zero_sets(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.generators())
    if (!vanishes_on(g.in_ring(b.ring()), b)) return false;
  for (const auto& g : b.generators())
    if (!vanishes_on(g.in_ring(a.ring()), a)) return false;
  return true;
}

std::vector<Rational> pt(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(GraphIdeal, Examples) {
  auto f = make_map({"x1", "x2"}, {"x1", "x1*x2"});
  auto g = graph_ideal(f);
  auto r = g.ring();
  ASSERT_EQ(g.generators().size(), 2u);
  EXPECT_EQ(g.generators()[0], parse_poly("x1 - y1", r));
  EXPECT_EQ(g.generators()[1], parse_poly("x1*x2 - y2", r));

  auto cusp = make_map({"x", "y"}, {"x + (x*y)^2", "x*y"});
  auto gc = graph_ideal(cusp);
  EXPECT_EQ(gc.generators()[0], parse_poly("x + x^2*y^2 - y1", gc.ring()));

  auto hyp = make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"});
  auto gh = graph_ideal(hyp);
  ASSERT_EQ(gh.generators().size(), 3u);
  EXPECT_EQ(gh.generators()[0], parse_poly("x1*x2 - 1", gh.ring()));
}

TEST(GraphIdeal, ImageNamesAvoidSourceVariables) {
  auto f = make_map({"y1", "y2"}, {"y1", "y1*y2"});
  EXPECT_NE(f.image_names[0], "y1");
  auto sf = sf_compute(f);
  ASSERT_EQ(sf.components.size(), 1u);
}

TEST(ImageClosure, DominantExamples) {
  EXPECT_TRUE(image_closure(make_map({"x1", "x2"}, {"x1", "x1*x2"})).is_zero());
  EXPECT_TRUE(image_closure(make_map({"x", "y"}, {"x + (x*y)^2", "x*y"})).is_zero());
  EXPECT_TRUE(image_closure(make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"})).is_zero());
  auto conic = image_closure(make_map({"t"}, {"t", "t^2"}));
  ASSERT_FALSE(conic.is_zero());
  EXPECT_EQ(dimension(conic), 1);
}

TEST(GenericFiniteness, Examples) {
  EXPECT_TRUE(is_generically_finite(make_map({"x1", "x2"}, {"x1", "x1*x2"})));
  EXPECT_FALSE(is_generically_finite(make_map({"x1", "x2"}, {"x1"})));
  EXPECT_TRUE(is_generically_finite(make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"})));
  EXPECT_FALSE(is_generically_finite(make_map({"x1", "x2"}, {"x1 + x2", "(x1 + x2)^2"})));
}

TEST(CoordinateMinPoly, Examples) {
  auto f = make_map({"x1", "x2"}, {"x1", "x1*x2"});
  auto phi = coordinate_min_poly(f, 1);
  EXPECT_EQ(phi, parse_poly("y1*x2 - y2", phi.ring()));

  auto cusp = make_map({"x", "y"}, {"x + (x*y)^2", "x*y"});
  auto px = coordinate_min_poly(cusp, 0);
  EXPECT_EQ(px, parse_poly("x - y1 + y2^2", px.ring()));
  auto py = coordinate_min_poly(cusp, 1);
  EXPECT_EQ(py, parse_poly("(y1 - y2^2)*y - y2", py.ring()));

  EXPECT_THROW(coordinate_min_poly(make_map({"x1", "x2"}, {"x1"}), 1), PreconditionError);
}

TEST(Sf, GoldenMaps) {
  auto two = sf_compute(make_map({"x1", "x2"}, {"x1", "x1*x2"}));
  EXPECT_EQ(component_strings(two), std::vector<std::string>{"y1"});
  EXPECT_TRUE(two.dominant);
  EXPECT_TRUE(two.hypersurface_check);

  auto three = sf_compute(make_map({"x1", "x2", "x3"}, {"x1", "x1*x2", "x1*x3"}));
  EXPECT_EQ(component_strings(three), std::vector<std::string>{"y1"});

  auto cusp2 = sf_compute(make_map({"x", "y"}, {"x + (x*y)^2", "x*y"}));
  EXPECT_EQ(component_strings(cusp2), std::vector<std::string>{"y1 - y2^2"});
  auto cusp3 = sf_compute(make_map({"x", "y"}, {"x + (x*y)^3", "x*y"}));
  EXPECT_EQ(component_strings(cusp3), std::vector<std::string>{"y1 - y2^3"});

  auto hyp = sf_compute(make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"}));
  EXPECT_EQ(component_strings(hyp), std::vector<std::string>{"y1"});
}

TEST(Sf, ProperMapsHaveEmptySet) {
  for (auto f : {make_map({"x", "y"}, {"x", "y"}), make_map({"x", "y"}, {"x + y", "x - y"}),
                 make_map({"x", "y"}, {"x^3 + x", "y"}), make_map({"x", "y"}, {"x^2", "y^2"}),
                 make_map({"x", "y"}, {"x + y^2", "y"})}) {
    auto sf = sf_compute(f);
    EXPECT_TRUE(sf.empty()) << component_strings(sf).front();
    EXPECT_TRUE(is_proper_at(f, sf, pt({3, -2})));
  }
}

TEST(Sf, HypersurfaceProperty) {
  for (auto f : {make_map({"x1", "x2"}, {"x1", "x1*x2"}), make_map({"x", "y"}, {"x + (x*y)^2", "x*y"}),
                 make_map({"x1", "x2", "x3"}, {"x1", "x1*x2", "x1*x3"}), make_map({"x", "y"}, {"x*y", "x*y^2 + x"}),
                 make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"})}) {
    auto sf = sf_compute(f);
    ASSERT_FALSE(sf.empty());
    EXPECT_TRUE(sf.hypersurface_check);
    for (const auto& c : sf.components) {
      EXPECT_EQ(c.basis().size(), 1u);
      EXPECT_EQ(dimension(c), static_cast<int>(f.target_dim()) - 1);
    }
  }
}

TEST(Sf, ResultantPathAgrees) {
  for (auto f : {make_map({"x1", "x2"}, {"x1", "x1*x2"}), make_map({"x", "y"}, {"x + (x*y)^2", "x*y"}),
                 make_map({"x", "y"}, {"x + (x*y)^3", "x*y"}), make_map({"x1", "x2", "x3"}, {"x1", "x1*x2", "x1*x3"}),
                 make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"}), make_map({"x", "y"}, {"x", "y"}),
                 make_map({"x", "y"}, {"x^2", "y^2"}), make_map({"x", "y"}, {"x*y", "x*y^2 + x"})}) {
    auto a = sf_compute(f);
    auto b = sf_compute_resultant(f);
    ASSERT_EQ(a.components.size(), b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      bool matched = false;
      for (const auto& c : b.components) matched = matched || same_zero_sets(a.components[i], c);
      EXPECT_TRUE(matched);
    }
  }
}

TEST(Sf, RealModeFlagsSuperset) {
  auto sf = sf_compute(make_map({"x1", "x2"}, {"x1", "x1*x2"}, {}, FieldMode::real));
  EXPECT_TRUE(sf.complex_superset);
  EXPECT_EQ(component_strings(sf), std::vector<std::string>{"y1"});
}

TEST(Sf, GenericallyInfiniteRejected) {
  EXPECT_THROW(sf_compute(make_map({"x1", "x2"}, {"x1"})), PreconditionError);
}

TEST(ProperAt, Examples) {
  auto f = make_map({"x1", "x2"}, {"x1", "x1*x2"});
  EXPECT_TRUE(is_proper_at(f, pt({1, 0})));
  EXPECT_FALSE(is_proper_at(f, pt({0, 0})));
  EXPECT_FALSE(is_proper_at(f, pt({0, 5})));
  auto id = make_map({"x", "y"}, {"x", "y"});
  EXPECT_TRUE(is_proper_at(id, pt({0, 0})));
  EXPECT_TRUE(is_proper_at(id, pt({7, -1})));
  // Off the image closure.
  auto conic = make_map({"t"}, {"t", "t^2"});
  EXPECT_FALSE(is_proper_at(conic, pt({1, 2})));
  EXPECT_TRUE(is_proper_at(conic, pt({2, 4})));
  EXPECT_THROW(is_proper_at(f, pt({1})), std::invalid_argument);
}

// Numeric oracle: along x1 -> 0 with x1*x2 fixed the fiber point escapes to
// infinity while the image converges to a point of the computed S_f.
TEST(ProperAt, EscapingSequenceLandsOnSf) {
  auto f = make_map({"x", "y"}, {"x + (x*y)^2", "x*y"});
  auto sf = sf_compute(f);
  const auto& g = sf.components[0].generators()[0];
  for (long c : {-2L, 1L, 3L}) {
    // x = 1/k, y = c*k: image (1/k + c^2, c) -> (c^2, c).
    std::vector<Rational> limit{Rational(c * c), Rational(c)};
    EXPECT_EQ(g.evaluate(limit), 0);
    EXPECT_FALSE(is_proper_at(f, sf, limit));
  }
}

TEST(DegreeBounds, Examples) {
  auto f = make_map({"x1", "x2"}, {"x1", "x1*x2"});
  EXPECT_EQ(theorem_bound(f, BoundMode::cn), 1u);
  EXPECT_EQ(theorem_bound(f, BoundMode::cn1), 1u);
  EXPECT_EQ(theorem_bound(f, BoundMode::wn), 1u);
  auto cusp3 = make_map({"x", "y"}, {"x + (x*y)^3", "x*y"});
  EXPECT_EQ(theorem_bound(cusp3, BoundMode::wn), 3u);
  EXPECT_EQ(theorem_bound(cusp3, BoundMode::cn), 5u);
  auto quartic = make_map({"x", "y"}, {"x^4", "y"});
  EXPECT_EQ(theorem_bound(quartic, BoundMode::multc1, 2), 16u);
  EXPECT_EQ(theorem_bound(quartic, BoundMode::multc, 2), 8u);
  EXPECT_THROW(theorem_bound(quartic, BoundMode::multc), PreconditionError);
  auto hyp = make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"});
  EXPECT_THROW(theorem_bound(hyp, BoundMode::cn), PreconditionError);
  EXPECT_EQ(theorem_bound(hyp, BoundMode::multc, 1), 1u);
  EXPECT_EQ(parse_bound_mode("multc1"), BoundMode::multc1);
  EXPECT_THROW(parse_bound_mode("nope"), std::invalid_argument);
}
