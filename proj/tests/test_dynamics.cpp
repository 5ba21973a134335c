#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "fdslab/dynamics.hpp"
#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/linalg.hpp"
#include "fdslab/parse.hpp"
#include "fdslab/poly.hpp"

using namespace fdslab;
using dynamics::FiniteDynamicalSystem;

namespace {

FiniteDynamicalSystem toy_f3() {
  const auto& k = ff::FieldSpec::get(3);
  return parse::system_file("f1 = 1 - x1*x2\nf2 = 1 + 2*x2\n", k);
}

// Gcd of the lengths of all simple cycles inside one vertex set, by DFS
// enumeration. Independent of the BFS-levels computation under test.
unsigned brute_loop_gcd(const std::vector<unsigned>& comp,
                        const std::vector<std::vector<unsigned>>& adj) {
  std::set<unsigned> inside(comp.begin(), comp.end());
  unsigned g = 0;
  for (unsigned start : comp) {
    std::vector<std::pair<unsigned, std::vector<unsigned>>> stack;
    stack.push_back({start, {start}});
    while (!stack.empty()) {
      auto [v, path] = stack.back();
      stack.pop_back();
      for (unsigned w : adj[v]) {
        if (!inside.count(w)) continue;
        if (w == start) {
          g = std::gcd(g, static_cast<unsigned>(path.size()));
        } else if (w > start &&
                   std::find(path.begin(), path.end(), w) == path.end()) {
          auto next = path;
          next.push_back(w);
          stack.push_back({w, std::move(next)});
        }
      }
    }
  }
  return g;
}

// Cycle-length multiset and max height straight from iteration.
std::pair<std::map<unsigned long long, unsigned long long>, unsigned>
brute_phase(const FiniteDynamicalSystem& f) {
  unsigned q = f.field->q();
  auto total = dynamics::state_space_size(q, f.n, 1u << 20);
  std::vector<long long> to(total);
  for (unsigned long long i = 0; i < total; ++i)
    to[i] = static_cast<long long>(dynamics::state_to_index(
        f.step(dynamics::index_to_state(i, q, f.n)), q));
  // Mark cycle states by far iteration.
  std::map<unsigned long long, unsigned long long> cycles;
  std::vector<char> on_cycle(total, 0);
  for (unsigned long long i = 0; i < total; ++i) {
    unsigned long long v = i;
    for (unsigned long long s = 0; s < total; ++s) v = to[v];
    if (on_cycle[v]) continue;
    unsigned long long len = 1, w = to[v];
    while (w != v) {
      ++len;
      w = to[w];
    }
    w = v;
    do {
      on_cycle[w] = 1;
      w = to[w];
    } while (w != v);
    ++cycles[len];
  }
  unsigned max_h = 0;
  for (unsigned long long i = 0; i < total; ++i) {
    unsigned long long v = i;
    unsigned h = 0;
    while (!on_cycle[v]) {
      v = to[v];
      ++h;
    }
    max_h = std::max(max_h, h);
  }
  return {cycles, max_h};
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("stepping the two-variable F_3 system") {
  auto f = toy_f3();
  CHECK(f.step({1, 1}) == std::vector<uint8_t>{0, 0});
  CHECK(f.step({0, 0}) == std::vector<uint8_t>{1, 1});
  CHECK(f.step({2, 1}) == std::vector<uint8_t>{2, 0});
  CHECK(f.step({2, 2}) == std::vector<uint8_t>{0, 2});
}

TEST_CASE("phase space of the F_3 example") {
  auto ps = dynamics::phase_space(toy_f3());
  CHECK(ps.total_states == 9);
  REQUIRE(ps.components.size() == 2);
  CHECK(ps.cycle_lengths_sorted() ==
        std::vector<unsigned long long>{2, 3});
  // Ordered by least cycle state: the 2-cycle through (0,0) comes first.
  CHECK(ps.components[0].cycle_length == 2);
  CHECK(ps.components[0].component_size == 6);
  CHECK(ps.components[0].max_transient_height == 2);
  CHECK(ps.components[1].cycle_length == 3);
  CHECK(ps.components[1].component_size == 3);
  CHECK(ps.components[1].max_transient_height == 0);
  CHECK(ps.components[0].cycle[0] == std::vector<uint8_t>{0, 0});
  CHECK(ps.components[0].cycle[1] == std::vector<uint8_t>{1, 1});
  unsigned long long total = 0;
  for (const auto& c : ps.components) total += c.component_size;
  CHECK(total == 9);
}

TEST_CASE("swap system cycles") {
  const auto& k = ff::FieldSpec::get(2);
  auto f = parse::system_file("x2\nx1\n", k);
  auto ps = dynamics::phase_space(f);
  CHECK(ps.cycle_lengths_sorted() ==
        std::vector<unsigned long long>{1, 1, 2});
  auto fixed = dynamics::periodic_points(f, 1);
  CHECK(fixed.size() == 2);
  CHECK(dynamics::periodic_points(f, 2).size() == 4);
  CHECK(dynamics::periodic_points(f, 2, true).size() == 2);
}

TEST_CASE("periodic points of the F_3 example") {
  auto f = toy_f3();
  CHECK(dynamics::periodic_points(f, 1).empty());
  CHECK(dynamics::periodic_points(f, 2).size() == 2);
  CHECK(dynamics::periodic_points(f, 3).size() == 3);
  CHECK(dynamics::periodic_points(f, 6).size() == 5);
  CHECK(dynamics::periodic_points(f, 6, true).empty());
}

TEST_CASE("state indexing round trips") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    unsigned n = 3;
    auto total = dynamics::state_space_size(q, n, 1000);
    for (unsigned long long i = 0; i < total; ++i) {
      auto s = dynamics::index_to_state(i, q, n);
      CHECK(dynamics::state_to_index(s, q) == i);
    }
  }
  CHECK_THROWS_AS(dynamics::state_space_size(3, 20, 1000000), TooLarge);
  CHECK_THROWS_AS(dynamics::phase_space(toy_f3(), 4), TooLarge);
}

TEST_CASE("dependency graph of the F_3 example") {
  auto g = dynamics::dependency_graph(toy_f3());
  // x1 -> x1, x2 -> x1, x2 -> x2 (both variables feed f1, only x2 feeds f2).
  std::vector<std::pair<unsigned, unsigned>> expect{{0, 0}, {1, 0}, {1, 1}};
  CHECK(g.edges == expect);
  REQUIRE(g.sccs.size() == 2);
  CHECK(g.sccs[0].vertices == std::vector<unsigned>{0});
  CHECK(g.sccs[0].loop_number == 1);
  CHECK(g.sccs[1].vertices == std::vector<unsigned>{1});
  CHECK(g.sccs[1].loop_number == 1);
}

TEST_CASE("loop numbers on pinned digraphs") {
  using E = std::vector<std::pair<unsigned, unsigned>>;
  auto ln = [](unsigned n, const E& edges) {
    auto g = dynamics::analyze_digraph(n, edges);
    std::vector<unsigned> out;
    for (const auto& s : g.sccs) out.push_back(s.loop_number);
    return out;
  };
  CHECK(ln(1, {{0, 0}}) == std::vector<unsigned>{1});
  CHECK(ln(1, {}) == std::vector<unsigned>{0});  // trivial component
  CHECK(ln(2, {{0, 1}, {1, 0}}) == std::vector<unsigned>{2});
  CHECK(ln(2, {{0, 1}, {1, 0}, {0, 0}}) == std::vector<unsigned>{1});
  CHECK(ln(3, {{0, 1}, {1, 2}, {2, 0}}) == std::vector<unsigned>{3});
  // 3-cycle plus a 2-chord: gcd(3, 2) = 1.
  CHECK(ln(3, {{0, 1}, {1, 2}, {2, 0}, {1, 0}}) == std::vector<unsigned>{1});
  // Two 3-cycles sharing vertex 0 keep gcd 3; lengths 3 and 6 both occur.
  CHECK(ln(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}) ==
        std::vector<unsigned>{3});
  // A 4-cycle and a 6-cycle sharing vertex 0: gcd = 2.
  E e46;
  for (unsigned i = 0; i < 4; ++i) e46.push_back({i, (i + 1) % 4});
  e46.push_back({0, 4});
  e46.push_back({4, 5});
  e46.push_back({5, 6});
  e46.push_back({6, 7});
  e46.push_back({7, 8});
  e46.push_back({8, 0});
  CHECK(ln(9, e46) == std::vector<unsigned>{2});
}

TEST_CASE("loop numbers match the simple-cycle oracle on random digraphs") {
  std::mt19937 rng(321);
  for (int it = 0; it < 300; ++it) {
    unsigned n = 2 + rng() % 5;  // up to 6 vertices
    std::vector<std::pair<unsigned, unsigned>> edges;
    std::vector<std::vector<unsigned>> adj(n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (rng() % 100 < 30) {
          edges.push_back({i, j});
          adj[i].push_back(j);
        }
    auto g = dynamics::analyze_digraph(n, edges);
    unsigned covered = 0;
    for (const auto& s : g.sccs) {
      CHECK(s.loop_number == brute_loop_gcd(s.vertices, adj));
      covered += static_cast<unsigned>(s.vertices.size());
      auto idx = static_cast<unsigned>(&s - g.sccs.data());
      for (unsigned v : s.vertices) CHECK(g.scc_of[v] == idx);
    }
    CHECK(covered == n);
  }
}

TEST_CASE("monomial detection and the F_2 fixed-point criterion") {
  const auto& k2 = ff::FieldSpec::get(2);
  auto fp = parse::system_file("x1*x2\nx1\n", k2);
  auto r = dynamics::monomial_fixed_point_test(fp);
  CHECK(r.is_monomial);
  REQUIRE(r.all_periodic_are_fixed.has_value());
  CHECK(*r.all_periodic_are_fixed);

  auto swap2 = parse::system_file("x2\nx1\n", k2);
  auto r2 = dynamics::monomial_fixed_point_test(swap2);
  REQUIRE(r2.all_periodic_are_fixed.has_value());
  CHECK(!*r2.all_periodic_are_fixed);
  CHECK(r2.loop_numbers == std::vector<unsigned>{2});

  auto id1 = parse::system_file("x1\n", k2);
  auto r3 = dynamics::monomial_fixed_point_test(id1);
  CHECK(*r3.all_periodic_are_fixed);

  auto notmono = parse::system_file("x1 + x2\nx1\n", k2);
  auto r4 = dynamics::monomial_fixed_point_test(notmono);
  CHECK(!r4.is_monomial);
  CHECK(!r4.all_periodic_are_fixed.has_value());

  // Over F_3 the theorem's verdict is withheld.
  auto f3 = parse::system_file("x1*x2\nx1\n", ff::FieldSpec::get(3));
  auto r5 = dynamics::monomial_fixed_point_test(f3);
  CHECK(r5.is_monomial);
  CHECK(!r5.all_periodic_are_fixed.has_value());
}

TEST_CASE("F_2 criterion agrees with brute force over all n<=3 systems") {
  const auto& k2 = ff::FieldSpec::get(2);
  for (unsigned n = 1; n <= 3; ++n) {
    unsigned subsets = 1u << n;
    std::vector<unsigned> pick(n, 0);
    for (;;) {
      std::vector<poly::Polynomial> coords;
      for (unsigned j = 0; j < n; ++j) {
        poly::Monomial m;
        m.e.resize(n, 0);
        for (unsigned i = 0; i < n; ++i)
          if (pick[j] >> i & 1) m.e[i] = 1;
        coords.push_back(poly::Polynomial::term(k2, n, m, k2.one()));
      }
      auto f = FiniteDynamicalSystem::make(k2, coords);
      auto verdict = dynamics::monomial_fixed_point_test(f);
      REQUIRE(verdict.all_periodic_are_fixed.has_value());
      auto ps = dynamics::phase_space(f);
      bool brute = true;
      for (const auto& c : ps.components)
        if (c.cycle_length > 1) brute = false;
      CHECK(*verdict.all_periodic_are_fixed == brute);
      unsigned i = 0;
      while (i < n && ++pick[i] == subsets) pick[i++] = 0;
      if (i == n) break;
    }
  }
}

TEST_CASE("the divisibility claim fails over F_3") {
  // Strongly connected monomial system with loop number 1 whose phase space
  // has a 3-cycle: cycle lengths need not divide the loop number outside
  // F_2. Kept as a frozen counterexample; the acceptance run reports the
  // same defect.
  const auto& k3 = ff::FieldSpec::get(3);
  auto f = parse::system_file("x1*x2\nx1\n", k3);
  auto g = dynamics::dependency_graph(f);
  REQUIRE(g.sccs.size() == 1);
  CHECK(g.sccs[0].loop_number == 1);
  auto ps = dynamics::phase_space(f);
  bool has3 = false;
  for (const auto& c : ps.components)
    if (c.cycle_length == 3) has3 = true;
  CHECK(has3);
}

TEST_CASE("linear analysis on pinned matrices") {
  const auto& k2 = ff::FieldSpec::get(2);
  auto analysis =
      dynamics::linear_cycle_structure(linalg::Matrix::identity(k2, 3));
  CHECK(analysis.cycle_counts ==
        std::map<unsigned long long, unsigned long long>{{1, 8}});
  CHECK(analysis.max_transient_height == 0);
  CHECK(analysis.order_of_invertible_part == 1);
  CHECK(analysis.invariant_factors.size() == 3);

  linalg::Matrix swapm = linalg::Matrix::zero(k2, 2, 2);
  swapm.at(0, 1) = 1;
  swapm.at(1, 0) = 1;
  auto a2 = dynamics::linear_cycle_structure(swapm);
  CHECK(a2.cycle_counts ==
        std::map<unsigned long long, unsigned long long>{{1, 2}, {2, 1}});

  linalg::Matrix shear = linalg::Matrix::identity(k2, 2);
  shear.at(0, 1) = 1;
  auto a3 = dynamics::linear_cycle_structure(shear);
  CHECK(a3.cycle_counts ==
        std::map<unsigned long long, unsigned long long>{{1, 2}, {2, 1}});
  CHECK(a3.order_of_invertible_part == 2);

  // Nilpotent Jordan block: everything funnels into the origin.
  linalg::Matrix nil = linalg::Matrix::zero(k2, 3, 3);
  nil.at(0, 1) = 1;
  nil.at(1, 2) = 1;
  auto a4 = dynamics::linear_cycle_structure(nil);
  CHECK(a4.cycle_counts ==
        std::map<unsigned long long, unsigned long long>{{1, 1}});
  CHECK(a4.max_transient_height == 3);
  CHECK(a4.order_of_invertible_part == 1);

  CHECK_THROWS_AS(
      dynamics::linear_cycle_structure(linalg::Matrix::zero(k2, 2, 3)),
      ShapeError);
}

TEST_CASE("linear analysis equals brute-force phase space") {
  std::mt19937 rng(2718);
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& k = ff::FieldSpec::get(q);
    for (int it = 0; it < 12; ++it) {
      unsigned n = 1 + rng() % 3;
      linalg::Matrix a = linalg::Matrix::zero(k, n, n);
      for (auto& v : a.a) v = static_cast<uint8_t>(rng() % q);
      // The same map as polynomials.
      std::vector<poly::Polynomial> coords;
      for (unsigned r = 0; r < n; ++r) {
        auto p = poly::Polynomial::zero(k, n);
        for (unsigned c = 0; c < n; ++c)
          p = p + poly::Polynomial::variable(k, n, c).scaled(a.at(r, c));
        coords.push_back(p);
      }
      auto f = FiniteDynamicalSystem::make(k, coords);
      auto [cycles, height] = brute_phase(f);
      auto analysis = dynamics::linear_cycle_structure(a);
      CHECK(analysis.cycle_counts == cycles);
      CHECK(analysis.max_transient_height == height);
    }
  }
}

TEST_CASE("dot emitters") {
  auto f = toy_f3();
  auto dot = dynamics::phase_space_dot(f);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"(0,0)\" -> \"(1,1)\"") != std::string::npos);
  CHECK(dot.find("\"(2,2)\" -> \"(0,2)\"") != std::string::npos);
  auto g = dynamics::dependency_graph(f);
  auto ddot = dynamics::dependency_dot(g);
  CHECK(ddot.find("x2 -> x1") != std::string::npos);
  CHECK(ddot.find("x1 -> x2") == std::string::npos);
}

}  // TEST_SUITE
