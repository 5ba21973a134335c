#include "doctest.h"

#include <random>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/parse.hpp"
#include "fdslab/poly.hpp"

using namespace fdslab;
using poly::Monomial;
using poly::OrderKind;
using poly::Polynomial;
using poly::TermOrder;

namespace {

Polynomial random_poly(const ff::FieldSpec& k, unsigned n, std::mt19937& rng) {
  Polynomial p = Polynomial::zero(k, n);
  unsigned terms = rng() % 5;
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    m.e.resize(n);
    for (unsigned i = 0; i < n; ++i)
      m.e[i] = static_cast<uint8_t>(rng() % k.q());
    uint8_t c = static_cast<uint8_t>(rng() % k.q());
    p = p + Polynomial::term(k, n, m, c);
  }
  return p;
}

std::vector<std::vector<uint8_t>> all_points(unsigned q, unsigned n) {
  std::vector<std::vector<uint8_t>> pts;
  std::vector<uint8_t> cur(n, 0);
  for (;;) {
    pts.push_back(cur);
    unsigned i = 0;
    while (i < n && ++cur[i] == q) cur[i++] = 0;
    if (i == n) break;
  }
  return pts;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("canonical reduction keeps exponents below q") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const auto& k = ff::FieldSpec::get(q);
    Polynomial x = Polynomial::variable(k, 1, 0);
    // x^q collapses to x structurally, not just functionally.
    CHECK(x.pow(q) == x);
    CHECK(x.pow(q + 1) == x.pow(2));
    CHECK(x.pow(2 * (q - 1) + 1) == x);
    for (unsigned e = 1; e <= 3 * q; ++e) {
      uint8_t r = poly::reduce_exponent(q, e);
      CHECK(r >= 1);
      CHECK(r <= q - 1);
      CHECK((e - r) % (q - 1) == 0);
    }
    CHECK(poly::reduce_exponent(q, 0) == 0);
  }
}

TEST_CASE("ring laws on random polynomials") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const auto& k = ff::FieldSpec::get(q);
    std::mt19937 rng(1234 + q);
    for (int it = 0; it < 40; ++it) {
      unsigned n = 1 + rng() % 3;
      auto f = random_poly(k, n, rng);
      auto g = random_poly(k, n, rng);
      auto h = random_poly(k, n, rng);
      CHECK((f + g) + h == f + (g + h));
      CHECK(f + g == g + f);
      CHECK(f * g == g * f);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK(f - f == Polynomial::zero(k, n));
      CHECK(f + (-f) == Polynomial::zero(k, n));
      CHECK(f * Polynomial::constant(k, n, k.one()) == f);
      CHECK((f * Polynomial::zero(k, n)).is_zero());
    }
  }
}

TEST_CASE("structural equality is functional equality") {
  // Reduced representatives are unique per function: f == g exactly when
  // they evaluate identically everywhere.
  for (unsigned q : {2u, 3u, 4u}) {
    const auto& k = ff::FieldSpec::get(q);
    std::mt19937 rng(77 + q);
    unsigned n = 2;
    auto pts = all_points(q, n);
    for (int it = 0; it < 30; ++it) {
      auto f = random_poly(k, n, rng);
      auto g = random_poly(k, n, rng);
      bool same = true;
      for (const auto& p : pts)
        if (f.evaluate(p) != g.evaluate(p)) same = false;
      CHECK((f == g) == same);
    }
  }
}

TEST_CASE("evaluation matches the worked arithmetic") {
  const auto& k3 = ff::FieldSpec::get(3);
  auto f1 = parse::polynomial("1 - x1*x2", k3, 2);
  auto f2 = parse::polynomial("1 + 2*x2", k3, 2);
  CHECK(f1.evaluate({1, 1}) == 0);
  CHECK(f2.evaluate({1, 1}) == 0);
  CHECK(f1.evaluate({0, 0}) == 1);
  CHECK(f2.evaluate({0, 2}) == 2);

  const auto& k4 = ff::FieldSpec::get(4);
  uint8_t a = k4.generator();
  auto g = parse::polynomial("a*x1 + x1^2", k4, 1);
  // At x = a: a*a + a^2 = 2*a^2 = 0 in characteristic two.
  CHECK(g.evaluate(std::vector<uint8_t>{a}) == 0);
  std::vector<ff::FieldElement> pt{ff::FieldElement(k4, a)};
  CHECK(g.evaluate(pt).index() == 0);
}

TEST_CASE("term orders on the standard degree-2 ladder") {
  // With x1 > x2 > x3, the classic textbook sequences.
  auto mono = [](std::vector<uint8_t> e) { return Monomial{std::move(e)}; };
  auto expect_chain = [&](const TermOrder& ord,
                          std::vector<Monomial> descending) {
    for (size_t i = 0; i + 1 < descending.size(); ++i) {
      CHECK(ord.compare(descending[i], descending[i + 1]) > 0);
      CHECK(ord.less(descending[i + 1], descending[i]));
    }
  };
  auto lex = TermOrder::make(OrderKind::lex);
  auto deglex = TermOrder::make(OrderKind::deglex);
  auto degrevlex = TermOrder::make(OrderKind::degrevlex);

  expect_chain(lex, {mono({2, 0, 0}), mono({1, 1, 0}), mono({1, 0, 1}),
                     mono({1, 0, 0}), mono({0, 2, 0}), mono({0, 1, 1}),
                     mono({0, 1, 0}), mono({0, 0, 2}), mono({0, 0, 1}),
                     mono({0, 0, 0})});
  expect_chain(deglex, {mono({2, 0, 0}), mono({1, 1, 0}), mono({1, 0, 1}),
                        mono({0, 2, 0}), mono({0, 1, 1}), mono({0, 0, 2})});
  expect_chain(degrevlex, {mono({2, 0, 0}), mono({1, 1, 0}), mono({0, 2, 0}),
                           mono({1, 0, 1}), mono({0, 1, 1}), mono({0, 0, 2})});
  // The two degree orders differ exactly on x2^2 vs x1x3.
  CHECK(deglex.compare(mono({1, 0, 1}), mono({0, 2, 0})) > 0);
  CHECK(degrevlex.compare(mono({1, 0, 1}), mono({0, 2, 0})) < 0);

  // A permutation reverses which variable dominates.
  auto lex_swapped = TermOrder::make(OrderKind::lex, {1, 0});
  CHECK(lex_swapped.compare(Monomial{{0, 1}}, Monomial{{1, 0}}) > 0);
  CHECK(lex.compare(Monomial{{0, 1}}, Monomial{{1, 0}}) < 0);

  CHECK(lex.kind_name() == "lex");
  CHECK(deglex.kind_name() == "deglex");
  CHECK(degrevlex.kind_name() == "degrevlex");
}

TEST_CASE("term order axioms on random monomial pairs") {
  std::mt19937 rng(99);
  for (auto kind :
       {OrderKind::lex, OrderKind::deglex, OrderKind::degrevlex}) {
    auto ord = TermOrder::make(kind);
    Monomial one{{0, 0, 0}};
    for (int it = 0; it < 200; ++it) {
      Monomial a{{static_cast<uint8_t>(rng() % 4),
                  static_cast<uint8_t>(rng() % 4),
                  static_cast<uint8_t>(rng() % 4)}};
      Monomial b{{static_cast<uint8_t>(rng() % 4),
                  static_cast<uint8_t>(rng() % 4),
                  static_cast<uint8_t>(rng() % 4)}};
      Monomial c{{static_cast<uint8_t>(rng() % 2),
                  static_cast<uint8_t>(rng() % 2),
                  static_cast<uint8_t>(rng() % 2)}};
      int ab = ord.compare(a, b);
      CHECK(ab == -ord.compare(b, a));
      if (ab == 0) CHECK(a == b);  // total order
      // 1 is minimal and multiplication is monotone.
      if (!a.is_one()) CHECK(ord.compare(a, one) > 0);
      Monomial ac{{static_cast<uint8_t>(a.e[0] + c.e[0]),
                   static_cast<uint8_t>(a.e[1] + c.e[1]),
                   static_cast<uint8_t>(a.e[2] + c.e[2])}};
      Monomial bc{{static_cast<uint8_t>(b.e[0] + c.e[0]),
                   static_cast<uint8_t>(b.e[1] + c.e[1]),
                   static_cast<uint8_t>(b.e[2] + c.e[2])}};
      if (ab < 0) CHECK(ord.compare(ac, bc) < 0);
    }
  }
}

TEST_CASE("leading terms") {
  const auto& k = ff::FieldSpec::get(5);
  auto f = parse::polynomial("x1*x3 + x2^2 + 3", k, 3);
  CHECK(f.leading_monomial(TermOrder::make(OrderKind::deglex)) ==
        Monomial{{1, 0, 1}});
  CHECK(f.leading_monomial(TermOrder::make(OrderKind::degrevlex)) ==
        Monomial{{0, 2, 0}});
  CHECK(f.leading_coeff(TermOrder::make(OrderKind::deglex)) == 1);
  CHECK_THROWS_AS(Polynomial::zero(k, 3).leading_monomial(
                      TermOrder::make(OrderKind::lex)),
                  EmptyData);
}

TEST_CASE("printing round trips through the parser") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const auto& k = ff::FieldSpec::get(q);
    std::mt19937 rng(4321 + q);
    for (int it = 0; it < 25; ++it) {
      unsigned n = 1 + rng() % 3;
      auto f = random_poly(k, n, rng);
      auto back = parse::polynomial(f.str(), k, n);
      CHECK(back == f);
    }
  }
  const auto& k3 = ff::FieldSpec::get(3);
  CHECK(Polynomial::zero(k3, 2).str() == "0");
  CHECK(Polynomial::constant(k3, 2, 2).str() == "2");
}

TEST_CASE("parser grammar") {
  const auto& k = ff::FieldSpec::get(3);
  // Juxtaposition means multiplication.
  CHECK(parse::polynomial("x1x2", k, 2) == parse::polynomial("x1*x2", k, 2));
  CHECK(parse::polynomial("2x1", k, 2) == parse::polynomial("2*x1", k, 2));
  CHECK(parse::polynomial("x1(x2+1)", k, 2) ==
        parse::polynomial("x1*x2 + x1", k, 2));
  // Coefficients embed mod p.
  CHECK(parse::polynomial("7", k, 1) == Polynomial::constant(k, 1, 1));
  CHECK(parse::polynomial("-x1", k, 1) ==
        parse::polynomial("2*x1", k, 1));
  CHECK(parse::polynomial("x1^4", k, 1) == parse::polynomial("x1^2", k, 1));
  CHECK(parse::polynomial("(x1+1)^2", k, 1) ==
        parse::polynomial("x1^2 + 2*x1 + 1", k, 1));

  const auto& k4 = ff::FieldSpec::get(4);
  CHECK(parse::polynomial("a^2", k4, 1) ==
        Polynomial::constant(k4, 1, k4.mul(k4.generator(), k4.generator())));
  CHECK(parse::polynomial("a + a", k4, 1).is_zero());

  CHECK_THROWS_AS(parse::polynomial("a*x1", k, 1), ParseError);
  CHECK_THROWS_AS(parse::polynomial("x3", k, 2), ParseError);
  CHECK_THROWS_AS(parse::polynomial("x1 +", k, 1), ParseError);
  CHECK_THROWS_AS(parse::polynomial("(x1", k, 1), ParseError);
  CHECK_THROWS_AS(parse::polynomial("", k, 1), ParseError);
  try {
    parse::polynomial("x1 + %", k, 1);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 6);
  }
}

TEST_CASE("dependence and support") {
  const auto& k = ff::FieldSpec::get(3);
  auto f = parse::polynomial("x1*x3 + 2", k, 4);
  CHECK(f.depends_on(0));
  CHECK(!f.depends_on(1));
  CHECK(f.depends_on(2));
  CHECK(!f.depends_on(3));
  CHECK(f.support_vars() == std::vector<unsigned>{0, 2});
}

TEST_CASE("elementary symmetric polynomials") {
  const auto& k = ff::FieldSpec::get(4);
  auto e2 = poly::elementary_symmetric(k, 3, 2, {0, 1, 2});
  CHECK(e2 == parse::polynomial("x1x2 + x1x3 + x2x3", k, 3));
  auto e0 = poly::elementary_symmetric(k, 3, 0, {0, 1, 2});
  CHECK(e0 == Polynomial::constant(k, 3, k.one()));
  auto e1 = poly::elementary_symmetric(k, 2, 1, {1});
  CHECK(e1 == Polynomial::variable(k, 2, 1));
}

TEST_CASE("boolean expressions lower to F_2 polynomials") {
  const auto& k2 = ff::FieldSpec::get(2);
  auto x = poly::bvar(0), y = poly::bvar(1);
  auto to_poly = [&](poly::BoolExprPtr e) {
    return poly::boolean_to_polynomial(e, k2, 2);
  };
  auto check_table = [&](poly::BoolExprPtr e, std::vector<uint8_t> expect) {
    auto p = to_poly(e);
    size_t i = 0;
    for (uint8_t b : {0, 1})
      for (uint8_t a : {0, 1}) CHECK(p.evaluate({a, b}) == expect[i++]);
  };
  check_table(poly::band(x, y), {0, 0, 0, 1});
  check_table(poly::bor(x, y), {0, 1, 1, 1});
  check_table(poly::bnot(x), {1, 0, 1, 0});
  check_table(poly::bor(poly::bnot(x), y), {1, 0, 1, 1});
  CHECK(to_poly(poly::band(x, y)) == parse::polynomial("x1*x2", k2, 2));
  CHECK(to_poly(poly::bconst(true)) == Polynomial::constant(k2, 2, 1));
  CHECK_THROWS_AS(
      poly::boolean_to_polynomial(x, ff::FieldSpec::get(3), 2),
      FieldMismatch);
}

TEST_CASE("state text") {
  const auto& k4 = ff::FieldSpec::get(4);
  CHECK(poly::state_text(k4, {3, 1, 0}) == "(1,a,0)");
  const auto& k3 = ff::FieldSpec::get(3);
  CHECK(poly::state_text(k3, {0, 2}) == "(0,2)");
}

}  // TEST_SUITE
