#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fdslab/dynamics.hpp"
#include "fdslab/errors.hpp"
#include "fdslab/groebner.hpp"
#include "fdslab/poly.hpp"

namespace fdslab::inference {

// Experimental time series: each segment is one experiment, a run of
// consecutive states.
struct TimeSeries {
  const ff::FieldSpec* field = nullptr;
  unsigned n = 0;
  std::vector<std::vector<std::vector<uint8_t>>> segments;

  static TimeSeries make(const ff::FieldSpec& field, unsigned n,
                         std::vector<std::vector<std::vector<uint8_t>>> segs);
};

struct Transition {
  std::vector<uint8_t> from;
  std::vector<uint8_t> to;
};

// All consecutive pairs across all segments, in order.
std::vector<Transition> transitions(const TimeSeries& ts);

struct CoordinateProvenance {
  poly::Polynomial interpolant;  // particular solution before normal form
  poly::TermOrder order;
};

struct InferredModel {
  dynamics::FiniteDynamicalSystem system;
  std::vector<CoordinateProvenance> provenance;  // one entry per coordinate
};

// Interpolate a particular solution through the observed transitions, then
// take its normal form modulo the vanishing ideal of the input states.
// InconsistentData when one state maps to two different successors.
InferredModel infer_ls(const TimeSeries& ts, const poly::TermOrder& order);

// Weight assigned to a minimal prime (variable set) before normalization.
// The default is 1/|P|, with weight 1 for the empty prime.
using PrimeWeight = std::function<double(const std::vector<unsigned>&)>;
double default_prime_weight(const std::vector<unsigned>& prime);

struct MinSetsResult {
  unsigned coordinate = 0;  // 0-based
  // Minimal generating set of the difference-monomial ideal.
  std::vector<poly::Monomial> generators;
  // Minimal hitting sets of the generator supports, variables 0-based
  // ascending; a single empty prime when there are no generators.
  std::vector<std::vector<unsigned>> minimal_primes;
  std::vector<double> scores;    // normalized weights, aligned with primes
  std::vector<double> dp_index;  // Deegan-Packel index per variable, size n
};

// Wiring-diagram candidates for one coordinate: difference monomials over
// all pairs of observed input states, their minimal primes, scores, and
// Deegan-Packel indices.
MinSetsResult min_sets(const TimeSeries& ts, unsigned coordinate,
                       const PrimeWeight& weight = default_prime_weight);

// All inclusion-minimal subsets of {0..n-1} meeting every support mask.
// Masks must fit in 64 bits; TooLarge otherwise.
std::vector<std::vector<unsigned>> minimal_hitting_sets(
    const std::vector<unsigned long long>& supports, unsigned n);

struct RankingEntry {
  unsigned variable = 0;  // 0-based
  double index = 0.0;
};

// Variables ranked by descending Deegan-Packel index, ties broken by
// variable number. EmptyRanking when the result has no nonempty prime.
std::vector<RankingEntry> deegan_packel(const MinSetsResult& result);

struct ConsensusReport {
  unsigned samples = 0;  // permutations sampled; 2x models per sample
  // frequency[i][v]: fraction of sampled models whose coordinate i+1
  // depends on variable v+1.
  std::vector<std::vector<double>> frequency;
};

// Monte Carlo term-order consensus: `samples` seeded random variable
// permutations, each run under lex and degrevlex; reports per-coordinate
// variable appearance frequencies. Deterministic for a fixed seed.
ConsensusReport term_order_consensus(const TimeSeries& ts, unsigned samples,
                                     unsigned long long seed);

// Per-variable quantile thresholding of real-valued series into q states;
// thresholds sit at the j/q quantiles of the pooled column values.
TimeSeries discretize(
    const std::vector<std::vector<std::vector<double>>>& real_segments,
    const ff::FieldSpec& field);

}  // namespace fdslab::inference
