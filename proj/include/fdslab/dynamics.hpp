#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/linalg.hpp"
#include "fdslab/poly.hpp"

namespace fdslab::dynamics {

inline constexpr unsigned long long kDefaultBound = 1000000;

// The map f = (f_1,...,f_n): k^n -> k^n with reduced coordinate polynomials.
struct FiniteDynamicalSystem {
  const ff::FieldSpec* field = nullptr;
  unsigned n = 0;
  std::vector<poly::Polynomial> coordinates;

  static FiniteDynamicalSystem make(const ff::FieldSpec& k,
                                    std::vector<poly::Polynomial> coords);

  std::vector<uint8_t> step(const std::vector<uint8_t>& state) const;
};

// States are also handled as mixed-radix indices with x1 the least
// significant digit.
unsigned long long state_space_size(unsigned q, unsigned n,
                                    unsigned long long bound);
std::vector<uint8_t> index_to_state(unsigned long long idx, unsigned q,
                                    unsigned n);
unsigned long long state_to_index(const std::vector<uint8_t>& s, unsigned q);

struct Component {
  std::vector<std::vector<uint8_t>> cycle;  // along f, from the least state
  unsigned long long cycle_length = 0;
  unsigned long long component_size = 0;
  unsigned long long max_transient_height = 0;
};

struct PhaseSpace {
  unsigned long long total_states = 0;
  std::vector<Component> components;  // ordered by least cycle state

  std::vector<unsigned long long> cycle_lengths_sorted() const;
};

// Full functional-graph decomposition. TooLarge when q^n exceeds the bound.
PhaseSpace phase_space(const FiniteDynamicalSystem& f,
                       unsigned long long bound = kDefaultBound);

// All v with f^m(v) = v; with exact_period, only the states whose least
// period is m itself.
std::vector<std::vector<uint8_t>> periodic_points(
    const FiniteDynamicalSystem& f, unsigned long long m,
    bool exact_period = false, unsigned long long bound = kDefaultBound);

struct SccInfo {
  std::vector<unsigned> vertices;  // 0-based, ascending
  unsigned loop_number = 0;        // 0 for a trivial (loop-free) component
};

struct DependencyGraph {
  unsigned n = 0;
  std::vector<std::pair<unsigned, unsigned>> edges;  // (from, to), 0-based
  std::vector<std::vector<unsigned>> adjacency;
  std::vector<SccInfo> sccs;       // ordered by least vertex
  std::vector<unsigned> scc_of;    // vertex -> index into sccs

  bool strongly_connected() const {
    return sccs.size() == 1 && !sccs.empty();
  }
};

// SCCs and loop numbers of an arbitrary digraph. The loop number is the
// graph period, computed as the gcd of level(u)+1-level(v) over intra-SCC
// edges u->v of a BFS layering; it equals the gcd of the lengths of all
// directed loops in the component.
DependencyGraph analyze_digraph(
    unsigned n, const std::vector<std::pair<unsigned, unsigned>>& edges);

// Edge x_i -> x_j iff x_i occurs in the reduced form of f_j.
DependencyGraph dependency_graph(const FiniteDynamicalSystem& f);

struct MonomialTestResult {
  bool is_monomial = false;
  // Only set for monomial systems over the two-element field; the verdict
  // comes from the loop numbers alone, never from state enumeration.
  std::optional<bool> all_periodic_are_fixed;
  std::vector<unsigned> loop_numbers;  // per SCC, same order as the graph
};

MonomialTestResult monomial_fixed_point_test(const FiniteDynamicalSystem& f);

struct LinearSystemAnalysis {
  linalg::Matrix A;
  std::vector<linalg::UPoly> invariant_factors;  // non-unit, divisibility order
  linalg::UPoly characteristic_polynomial;
  // cycle length -> number of distinct limit cycles of that length
  std::map<unsigned long long, unsigned long long> cycle_counts;
  unsigned long long order_of_invertible_part = 1;
  unsigned max_transient_height = 0;
};

// Cycle structure of x -> Ax from ranks of A^t - I; transients from the
// nilpotent part. ShapeError unless A is square and nonempty.
LinearSystemAnalysis linear_cycle_structure(const linalg::Matrix& A);

// DOT emission; states named as comma-joined field literals.
std::string phase_space_dot(const FiniteDynamicalSystem& f,
                            unsigned long long bound = kDefaultBound);
std::string dependency_dot(const DependencyGraph& g);

}  // namespace fdslab::dynamics
