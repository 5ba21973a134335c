#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/groebner.hpp"
#include "fdslab/parse.hpp"
#include "fdslab/poly.hpp"

using namespace fdslab;
using groebner::IdealOfPoints;
using groebner::PointSet;
using poly::Monomial;
using poly::OrderKind;
using poly::Polynomial;
using poly::TermOrder;

namespace {

PointSet points_of(const ff::FieldSpec& k, unsigned n,
                   std::vector<std::vector<uint8_t>> pts) {
  return PointSet::make(k, n, std::move(pts));
}

std::vector<std::vector<uint8_t>> random_distinct_points(
    const ff::FieldSpec& k, unsigned n, size_t count, std::mt19937& rng) {
  std::set<std::vector<uint8_t>> seen;
  while (seen.size() < count) {
    std::vector<uint8_t> p(n);
    for (auto& v : p) v = static_cast<uint8_t>(rng() % k.q());
    seen.insert(std::move(p));
  }
  return {seen.begin(), seen.end()};
}

Polynomial random_poly(const ff::FieldSpec& k, unsigned n,
                       std::mt19937& rng) {
  Polynomial p = Polynomial::zero(k, n);
  unsigned terms = 1 + rng() % 4;
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    m.e.resize(n);
    for (auto& e : m.e) e = static_cast<uint8_t>(rng() % k.q());
    p = p + Polynomial::term(k, n, m, static_cast<uint8_t>(rng() % k.q()));
  }
  return p;
}

}  // namespace

TEST_SUITE("groebner") {

TEST_CASE("maximal ideal of the origin") {
  const auto& k = ff::FieldSpec::get(2);
  auto ideal = groebner::ideal_of_points(points_of(k, 2, {{0, 0}}),
                                         TermOrder::make(OrderKind::lex));
  REQUIRE(ideal.standard_monomials.size() == 1);
  CHECK(ideal.standard_monomials[0].is_one());
  REQUIRE(ideal.basis.size() == 2);
  std::set<std::string> names;
  for (const auto& g : ideal.basis) names.insert(g.str());
  CHECK(names == std::set<std::string>{"x1", "x2"});
}

TEST_CASE("the full grid leaves no equations") {
  // Every reduced polynomial that vanishes on all of k^n is zero, so the
  // vanishing ideal has an empty reduced basis and all q^n reduced
  // monomials are standard.
  for (unsigned q : {2u, 3u}) {
    const auto& k = ff::FieldSpec::get(q);
    for (unsigned n = 1; n <= 2; ++n) {
      std::vector<std::vector<uint8_t>> pts;
      std::vector<uint8_t> cur(n, 0);
      for (;;) {
        pts.push_back(cur);
        unsigned i = 0;
        while (i < n && ++cur[i] == q) cur[i++] = 0;
        if (i == n) break;
      }
      for (auto kind :
           {OrderKind::lex, OrderKind::deglex, OrderKind::degrevlex}) {
        auto ideal = groebner::ideal_of_points(points_of(k, n, pts),
                                               TermOrder::make(kind));
        CHECK(ideal.basis.empty());
        CHECK(ideal.standard_monomials.size() == pts.size());
      }
    }
  }
}

TEST_CASE("five states of the F_3 example trajectory") {
  const auto& k = ff::FieldSpec::get(3);
  // (0,1) -> (1,0) -> (1,1) -> (0,0) plus (2,1) feeding the same component.
  auto ideal = groebner::ideal_of_points(
      points_of(k, 2, {{0, 1}, {1, 0}, {1, 1}, {0, 0}, {2, 1}}),
      TermOrder::make(OrderKind::degrevlex));
  CHECK(ideal.standard_monomials.size() == 5);
}

TEST_CASE("interpolation basics") {
  const auto& k2 = ff::FieldSpec::get(2);
  auto one_pt = groebner::ideal_of_points(points_of(k2, 1, {{0}}),
                                          TermOrder::make(OrderKind::lex));
  auto c1 = groebner::interpolate(one_pt, {1});
  CHECK(c1 == Polynomial::constant(k2, 1, 1));

  auto two_pt = groebner::ideal_of_points(points_of(k2, 1, {{0}, {1}}),
                                          TermOrder::make(OrderKind::lex));
  auto idf = groebner::interpolate(two_pt, {0, 1});
  CHECK(idf == Polynomial::variable(k2, 1, 0));
}

TEST_CASE("interpolating the example trajectory's first coordinate") {
  const auto& k = ff::FieldSpec::get(3);
  // Transitions (0,1)->(1,0), (1,0)->(1,1), (1,1)->(0,0); fit coordinate 1
  // of the successor.
  std::vector<std::vector<uint8_t>> inputs{{0, 1}, {1, 0}, {1, 1}};
  std::vector<uint8_t> values{1, 1, 0};
  auto ideal = groebner::ideal_of_points(
      points_of(k, 2, inputs), TermOrder::make(OrderKind::degrevlex));
  auto f0 = groebner::interpolate(ideal, values);
  for (size_t j = 0; j < inputs.size(); ++j)
    CHECK(f0.evaluate(inputs[j]) == values[j]);
}

TEST_CASE("duplicate points") {
  const auto& k = ff::FieldSpec::get(3);
  // The deduplicating overload accepts consistent repeats...
  auto f = groebner::interpolate(k, 1, {{1}, {1}, {2}}, {2, 2, 0},
                                 TermOrder::make(OrderKind::lex));
  CHECK(f.evaluate(std::vector<uint8_t>{1}) == 2);
  CHECK(f.evaluate(std::vector<uint8_t>{2}) == 0);
  // ...and names the clash otherwise.
  CHECK_THROWS_AS(groebner::interpolate(k, 1, {{1}, {1}}, {2, 0},
                                        TermOrder::make(OrderKind::lex)),
                  InconsistentData);
}

TEST_CASE("normal form pinned example") {
  const auto& k = ff::FieldSpec::get(3);
  auto ideal = groebner::ideal_of_points(points_of(k, 1, {{0}, {1}}),
                                         TermOrder::make(OrderKind::lex));
  auto x = Polynomial::variable(k, 1, 0);
  // x^2 - x vanishes on {0, 1}, so x^2 reduces to x.
  CHECK(groebner::normal_form(x * x, ideal) == x);
}

TEST_CASE("ideal and normal form properties on random point sets") {
  std::mt19937 rng(1571);
  for (int it = 0; it < 60; ++it) {
    unsigned q = std::vector<unsigned>{2, 3, 4, 5}[rng() % 4];
    const auto& k = ff::FieldSpec::get(q);
    unsigned n = 1 + rng() % 3;
    unsigned long long grid = 1;
    for (unsigned i = 0; i < n; ++i) grid *= q;
    size_t count = 1 + rng() % std::min<unsigned long long>(grid, 20);
    auto pts = random_distinct_points(k, n, count, rng);
    auto kind = std::vector<OrderKind>{OrderKind::lex, OrderKind::deglex,
                                       OrderKind::degrevlex}[rng() % 3];
    auto ord = TermOrder::make(kind);
    auto ideal = groebner::ideal_of_points(points_of(k, n, pts), ord);

    // One standard monomial per point.
    CHECK(ideal.standard_monomials.size() == pts.size());

    // Basis elements vanish on every point and nothing's leading term
    // divides another's: the basis is auto-reduced.
    for (const auto& g : ideal.basis) {
      for (const auto& p : pts) CHECK(g.evaluate(p) == 0);
      CHECK(groebner::normal_form(g, ideal).is_zero());
    }
    for (size_t i = 0; i < ideal.basis.size(); ++i)
      for (size_t j = 0; j < ideal.basis.size(); ++j) {
        if (i == j) continue;
        CHECK(!ideal.basis[i]
                   .leading_monomial(ord)
                   .divides(ideal.basis[j].leading_monomial(ord)));
      }
    // Standard monomials are exactly the monomials outside the leading
    // term ideal, and tails of basis elements stay standard.
    std::set<Monomial> standard(ideal.standard_monomials.begin(),
                                ideal.standard_monomials.end());
    for (const auto& g : ideal.basis) {
      auto lt = g.leading_monomial(ord);
      for (const auto& [m, c] : g.terms())
        if (!(m == lt)) CHECK(standard.count(m));
    }

    // normal_form: faithful on points, idempotent, linear, supported on
    // standard monomials.
    auto f = random_poly(k, n, rng);
    auto g2 = random_poly(k, n, rng);
    auto nf = groebner::normal_form(f, ideal);
    for (const auto& p : pts) CHECK(nf.evaluate(p) == f.evaluate(p));
    CHECK(groebner::normal_form(nf, ideal) == nf);
    for (const auto& [m, c] : nf.terms()) CHECK(standard.count(m));
    auto sum_nf = groebner::normal_form(f + g2, ideal);
    CHECK(sum_nf == nf + groebner::normal_form(g2, ideal));

    // Interpolation hits prescribed values and lands on standard monomials.
    std::vector<uint8_t> values;
    for (size_t j = 0; j < pts.size(); ++j)
      values.push_back(static_cast<uint8_t>(rng() % q));
    auto fit = groebner::interpolate(ideal, values);
    for (size_t j = 0; j < pts.size(); ++j)
      CHECK(fit.evaluate(pts[j]) == values[j]);
    for (const auto& [m, c] : fit.terms()) CHECK(standard.count(m));
  }
}

TEST_CASE("normal form over the full grid is the identity") {
  const auto& k = ff::FieldSpec::get(3);
  std::vector<std::vector<uint8_t>> pts;
  for (uint8_t a = 0; a < 3; ++a)
    for (uint8_t b = 0; b < 3; ++b) pts.push_back({a, b});
  auto ideal = groebner::ideal_of_points(points_of(k, 2, pts),
                                         TermOrder::make(OrderKind::deglex));
  std::mt19937 rng(9);
  for (int it = 0; it < 10; ++it) {
    auto f = random_poly(k, 2, rng);
    CHECK(groebner::normal_form(f, ideal) == f);
  }
}

}  // TEST_SUITE
