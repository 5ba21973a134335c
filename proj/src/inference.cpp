#include "fdslab/inference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace fdslab::inference {

TimeSeries TimeSeries::make(
    const ff::FieldSpec& field, unsigned n,
    std::vector<std::vector<std::vector<uint8_t>>> segs) {
  if (n == 0) throw ArityError("time series needs at least one variable");
  if (segs.empty()) throw EmptyData("time series has no segments");
  for (const auto& seg : segs) {
    if (seg.size() < 2)
      throw ShapeError("every segment needs at least two states");
    for (const auto& st : seg) {
      if (st.size() != n) throw ArityError("state length differs from n");
      for (uint8_t x : st)
        if (x >= field.q())
          throw FieldMismatch("state entry outside the field");
    }
  }
  return TimeSeries{&field, n, std::move(segs)};
}

std::vector<Transition> transitions(const TimeSeries& ts) {
  std::vector<Transition> out;
  for (const auto& seg : ts.segments)
    for (size_t j = 0; j + 1 < seg.size(); ++j)
      out.push_back({seg[j], seg[j + 1]});
  return out;
}

namespace {

// Distinct observed inputs with their successors; InconsistentData when a
// state has two successors.
std::map<std::vector<uint8_t>, std::vector<uint8_t>> transition_map(
    const TimeSeries& ts) {
  std::map<std::vector<uint8_t>, std::vector<uint8_t>> map;
  for (const auto& tr : transitions(ts)) {
    auto it = map.find(tr.from);
    if (it == map.end()) {
      map.emplace(tr.from, tr.to);
    } else if (it->second != tr.to) {
      throw InconsistentData("state " + poly::state_text(*ts.field, tr.from) +
                             " maps to both " +
                             poly::state_text(*ts.field, it->second) +
                             " and " + poly::state_text(*ts.field, tr.to));
    }
  }
  return map;
}

}  // namespace

InferredModel infer_ls(const TimeSeries& ts, const poly::TermOrder& order) {
  const ff::FieldSpec& f = *ts.field;
  auto tmap = transition_map(ts);
  std::vector<std::vector<uint8_t>> inputs;
  inputs.reserve(tmap.size());
  for (const auto& [p, s] : tmap) inputs.push_back(p);
  auto ideal =
      groebner::ideal_of_points(groebner::PointSet::make(f, ts.n, inputs), order);

  std::vector<poly::Polynomial> coords;
  std::vector<CoordinateProvenance> prov;
  for (unsigned i = 0; i < ts.n; ++i) {
    std::vector<uint8_t> values;
    values.reserve(inputs.size());
    for (const auto& p : inputs) values.push_back(tmap.at(p)[i]);
    poly::Polynomial particular = groebner::interpolate(ideal, values);
    poly::Polynomial reduced = groebner::normal_form(particular, ideal);
    prov.push_back({particular, order});
    coords.push_back(std::move(reduced));
  }
  InferredModel model{dynamics::FiniteDynamicalSystem::make(f, coords),
                      std::move(prov)};
  for (const auto& [p, s] : tmap)
    if (model.system.step(p) != s)
      throw Error("InternalError", "inferred model misses a transition");
  return model;
}

double default_prime_weight(const std::vector<unsigned>& prime) {
  return prime.empty() ? 1.0 : 1.0 / static_cast<double>(prime.size());
}

std::vector<std::vector<unsigned>> minimal_hitting_sets(
    const std::vector<unsigned long long>& supports, unsigned n) {
  if (n > 64) throw TooLarge("hitting sets limited to 64 variables");
  if (supports.empty()) return {{}};
  for (auto s : supports)
    if (s == 0)
      throw InconsistentData("an empty support can never be hit");

  std::vector<unsigned long long> found;
  // Depth-first branch on the first unhit support. A variable banned at one
  // branch point stays banned in the sibling subtrees, which kills most
  // duplicates; a final subset filter enforces exact minimality.
  std::vector<unsigned long long> stack_sets{0}, stack_banned{0};
  while (!stack_sets.empty()) {
    unsigned long long cur = stack_sets.back();
    unsigned long long banned = stack_banned.back();
    stack_sets.pop_back();
    stack_banned.pop_back();
    const unsigned long long* unhit = nullptr;
    for (const auto& s : supports)
      if ((s & cur) == 0) {
        unhit = &s;
        break;
      }
    if (unhit == nullptr) {
      bool dominated = false;
      for (auto f2 : found)
        if ((f2 & cur) == f2) {
          dominated = true;
          break;
        }
      if (!dominated) found.push_back(cur);
      continue;
    }
    unsigned long long options = *unhit & ~banned;
    unsigned long long newly_banned = banned;
    for (unsigned v = 0; v < n; ++v) {
      unsigned long long bit = 1ull << v;
      if (!(options & bit)) continue;
      stack_sets.push_back(cur | bit);
      stack_banned.push_back(newly_banned);
      newly_banned |= bit;
    }
  }
  // Exact minimality: drop any set with a proper subset also present.
  std::vector<std::vector<unsigned>> out;
  std::sort(found.begin(), found.end(),
            [](unsigned long long a, unsigned long long b) {
              int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
              return pa != pb ? pa < pb : a < b;
            });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<unsigned long long> kept;
  for (auto c : found) {
    bool has_subset = false;
    for (auto k : kept)
      if ((k & c) == k && k != c) {
        has_subset = true;
        break;
      }
    if (!has_subset) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  for (auto k : kept) {
    std::vector<unsigned> vars;
    for (unsigned v = 0; v < n; ++v)
      if (k & (1ull << v)) vars.push_back(v);
    out.push_back(std::move(vars));
  }
  return out;
}

MinSetsResult min_sets(const TimeSeries& ts, unsigned coordinate,
                       const PrimeWeight& weight) {
  if (coordinate >= ts.n) throw ArityError("coordinate out of range");
  if (ts.n > 64) throw TooLarge("min-sets limited to 64 variables");
  auto tmap = transition_map(ts);
  std::vector<std::vector<uint8_t>> inputs;
  for (const auto& [p, s] : tmap) inputs.push_back(p);

  std::set<unsigned long long> supports;
  for (size_t aa = 0; aa < inputs.size(); ++aa)
    for (size_t bb = aa + 1; bb < inputs.size(); ++bb) {
      const auto& p = inputs[aa];
      const auto& r = inputs[bb];
      if (tmap.at(p)[coordinate] == tmap.at(r)[coordinate]) continue;
      unsigned long long mask = 0;
      for (unsigned j = 0; j < ts.n; ++j)
        if (p[j] != r[j]) mask |= 1ull << j;
      supports.insert(mask);
    }
  // Minimal generating set of the monomial ideal: drop every support that
  // contains another one.
  std::vector<unsigned long long> gens;
  for (auto s : supports) {
    bool redundant = false;
    for (auto t : supports)
      if (t != s && (s & t) == t) {
        redundant = true;
        break;
      }
    if (!redundant) gens.push_back(s);
  }
  std::sort(gens.begin(), gens.end());

  MinSetsResult out;
  out.coordinate = coordinate;
  for (auto g : gens) {
    std::vector<uint8_t> e(ts.n, 0);
    for (unsigned v = 0; v < ts.n; ++v)
      if (g & (1ull << v)) e[v] = 1;
    out.generators.push_back(poly::Monomial{std::move(e)});
  }
  out.minimal_primes = minimal_hitting_sets(gens, ts.n);

  double total = 0.0;
  std::vector<double> weights;
  for (const auto& p : out.minimal_primes) {
    weights.push_back(weight(p));
    total += weights.back();
  }
  for (double w : weights)
    out.scores.push_back(total > 0 ? w / total : 0.0);

  out.dp_index.assign(ts.n, 0.0);
  size_t np = out.minimal_primes.size();
  for (const auto& p : out.minimal_primes)
    for (unsigned v : p)
      out.dp_index[v] +=
          1.0 / (static_cast<double>(p.size()) * static_cast<double>(np));
  return out;
}

std::vector<RankingEntry> deegan_packel(const MinSetsResult& result) {
  bool any_nonempty = false;
  for (const auto& p : result.minimal_primes)
    if (!p.empty()) any_nonempty = true;
  if (!any_nonempty)
    throw EmptyRanking("no nonempty minimal prime to rank");
  std::vector<RankingEntry> out;
  for (unsigned v = 0; v < result.dp_index.size(); ++v)
    out.push_back({v, result.dp_index[v]});
  std::stable_sort(out.begin(), out.end(),
                   [](const RankingEntry& a, const RankingEntry& b) {
                     if (a.index != b.index) return a.index > b.index;
                     return a.variable < b.variable;
                   });
  return out;
}

ConsensusReport term_order_consensus(const TimeSeries& ts, unsigned samples,
                                     unsigned long long seed) {
  if (samples == 0) throw EmptyData("consensus needs at least one sample");
  ConsensusReport report;
  report.samples = samples;
  report.frequency.assign(ts.n, std::vector<double>(ts.n, 0.0));
  std::mt19937_64 master(seed);
  for (unsigned s = 0; s < samples; ++s) {
    std::mt19937_64 rng(master());
    // Fisher-Yates with explicit draws so the permutation stream is pinned
    // by the standardized mt19937_64 sequence, not by library shuffle
    // internals.
    std::vector<unsigned> perm(ts.n);
    for (unsigned i = 0; i < ts.n; ++i) perm[i] = i;
    for (unsigned i = ts.n; i > 1; --i) {
      unsigned j = static_cast<unsigned>(rng() % i);
      std::swap(perm[i - 1], perm[j]);
    }
    for (auto kind : {poly::OrderKind::lex, poly::OrderKind::degrevlex}) {
      auto model = infer_ls(ts, poly::TermOrder::make(kind, perm));
      for (unsigned i = 0; i < ts.n; ++i)
        for (unsigned v = 0; v < ts.n; ++v)
          if (model.system.coordinates[i].depends_on(v))
            report.frequency[i][v] += 1.0;
    }
  }
  double denom = 2.0 * static_cast<double>(samples);
  for (auto& row : report.frequency)
    for (double& x : row) x /= denom;
  return report;
}

TimeSeries discretize(
    const std::vector<std::vector<std::vector<double>>>& real_segments,
    const ff::FieldSpec& field) {
  size_t rows = 0;
  unsigned n = 0;
  for (const auto& seg : real_segments)
    for (const auto& row : seg) {
      if (n == 0)
        n = static_cast<unsigned>(row.size());
      else if (row.size() != n)
        throw ShapeError("rows have differing widths");
      ++rows;
    }
  if (rows == 0 || n == 0) throw EmptyData("nothing to discretize");

  unsigned q = field.q();
  // Per-variable thresholds at the j/q quantiles (nearest-rank), pooled
  // over every segment.
  std::vector<std::vector<double>> thresholds(n);
  for (unsigned v = 0; v < n; ++v) {
    std::vector<double> col;
    col.reserve(rows);
    for (const auto& seg : real_segments)
      for (const auto& row : seg) col.push_back(row[v]);
    std::sort(col.begin(), col.end());
    for (unsigned j = 1; j < q; ++j) {
      size_t rank = (j * col.size() + q - 1) / q;  // ceil(j*N/q)
      thresholds[v].push_back(col[rank - 1]);
    }
  }
  std::vector<std::vector<std::vector<uint8_t>>> segs;
  for (const auto& seg : real_segments) {
    std::vector<std::vector<uint8_t>> states;
    for (const auto& row : seg) {
      std::vector<uint8_t> st(n, 0);
      for (unsigned v = 0; v < n; ++v) {
        uint8_t bucket = 0;
        for (double t : thresholds[v])
          if (row[v] > t) ++bucket;
        st[v] = bucket;
      }
      states.push_back(std::move(st));
    }
    segs.push_back(std::move(states));
  }
  return TimeSeries::make(field, n, std::move(segs));
}

}  // namespace fdslab::inference
