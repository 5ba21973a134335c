#include "fdslab/dynamics.hpp"

#include <algorithm>
#include <numeric>

namespace fdslab::dynamics {

FiniteDynamicalSystem FiniteDynamicalSystem::make(
    const ff::FieldSpec& k, std::vector<poly::Polynomial> coords) {
  FiniteDynamicalSystem f;
  f.field = &k;
  f.n = static_cast<unsigned>(coords.size());
  for (const auto& p : coords) {
    if (&p.field() != &k)
      throw FieldMismatch("coordinate over a different field");
    if (p.nvars() != f.n)
      throw ArityError("coordinate arity differs from the system dimension");
  }
  f.coordinates = std::move(coords);
  return f;
}

std::vector<uint8_t> FiniteDynamicalSystem::step(
    const std::vector<uint8_t>& state) const {
  if (state.size() != n) throw ArityError("state arity mismatch");
  std::vector<uint8_t> out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = coordinates[i].evaluate(state);
  return out;
}

unsigned long long state_space_size(unsigned q, unsigned n,
                                    unsigned long long bound) {
  unsigned long long total = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (total > bound / q)
      throw TooLarge("state space " + std::to_string(q) + "^" +
                     std::to_string(n) + " exceeds the enumeration bound " +
                     std::to_string(bound) +
                     "; raise --bound or FDSLAB_BOUND to enumerate it");
    total *= q;
  }
  if (total > bound)
    throw TooLarge("state space exceeds the enumeration bound " +
                   std::to_string(bound) +
                   "; raise --bound or FDSLAB_BOUND to enumerate it");
  return total;
}

std::vector<uint8_t> index_to_state(unsigned long long idx, unsigned q,
                                    unsigned n) {
  std::vector<uint8_t> s(n);
  for (unsigned i = 0; i < n; ++i) {
    s[i] = static_cast<uint8_t>(idx % q);
    idx /= q;
  }
  return s;
}

unsigned long long state_to_index(const std::vector<uint8_t>& s, unsigned q) {
  unsigned long long idx = 0;
  for (size_t i = s.size(); i-- > 0;) idx = idx * q + s[i];
  return idx;
}

namespace {

// Successor table for every state, plus shared bound handling.
std::vector<uint32_t> successor_table(const FiniteDynamicalSystem& f,
                                      unsigned long long bound,
                                      unsigned long long& total_out) {
  const unsigned q = f.field->q();
  unsigned long long total = state_space_size(q, f.n, bound);
  if (total > UINT32_MAX)
    throw TooLarge("state space too large for dense enumeration");
  total_out = total;
  std::vector<uint32_t> next(total);
  std::vector<uint8_t> state(f.n, 0);
  for (unsigned long long idx = 0; idx < total; ++idx) {
    next[idx] =
        static_cast<uint32_t>(state_to_index(f.step(state), q));
    // odometer increment
    for (unsigned i = 0; i < f.n; ++i) {
      if (++state[i] < q) break;
      state[i] = 0;
    }
  }
  return next;
}

}  // namespace

std::vector<unsigned long long> PhaseSpace::cycle_lengths_sorted() const {
  std::vector<unsigned long long> ls;
  ls.reserve(components.size());
  for (const auto& c : components) ls.push_back(c.cycle_length);
  std::sort(ls.begin(), ls.end());
  return ls;
}

PhaseSpace phase_space(const FiniteDynamicalSystem& f,
                       unsigned long long bound) {
  const unsigned q = f.field->q();
  unsigned long long total = 0;
  std::vector<uint32_t> next = successor_table(f, bound, total);

  constexpr uint32_t kUnset = UINT32_MAX;
  std::vector<uint32_t> comp(total, kUnset);
  std::vector<uint8_t> color(total, 0);  // 0 fresh, 1 on current walk, 2 done
  std::vector<uint32_t> walk_pos(total, 0);
  std::vector<uint8_t> on_cycle(total, 0);
  std::vector<uint32_t> cycle_entry;  // least state of each component's cycle

  std::vector<uint32_t> path;
  for (unsigned long long v0 = 0; v0 < total; ++v0) {
    if (color[v0]) continue;
    path.clear();
    uint32_t u = static_cast<uint32_t>(v0);
    while (color[u] == 0) {
      color[u] = 1;
      walk_pos[u] = static_cast<uint32_t>(path.size());
      path.push_back(u);
      u = next[u];
    }
    uint32_t cid;
    if (color[u] == 1) {
      // Closed a new cycle inside the current walk.
      cid = static_cast<uint32_t>(cycle_entry.size());
      uint32_t least = u;
      for (size_t i = walk_pos[u]; i < path.size(); ++i) {
        on_cycle[path[i]] = 1;
        least = std::min(least, path[i]);
      }
      cycle_entry.push_back(least);
    } else {
      cid = comp[u];
    }
    for (uint32_t w : path) {
      comp[w] = cid;
      color[w] = 2;
    }
  }

  const size_t ncomp = cycle_entry.size();
  std::vector<unsigned long long> sizes(ncomp, 0);
  for (unsigned long long v = 0; v < total; ++v) ++sizes[comp[v]];

  // Reverse adjacency in CSR form for the height sweep.
  std::vector<uint32_t> off(total + 1, 0);
  for (unsigned long long v = 0; v < total; ++v) ++off[next[v] + 1];
  for (unsigned long long v = 0; v < total; ++v) off[v + 1] += off[v];
  std::vector<uint32_t> preds(total);
  {
    std::vector<uint32_t> cursor(off.begin(), off.end() - 1);
    for (unsigned long long v = 0; v < total; ++v)
      preds[cursor[next[v]]++] = static_cast<uint32_t>(v);
  }

  // Multi-source BFS from cycle states along reversed edges.
  std::vector<unsigned long long> height(ncomp, 0);
  std::vector<uint32_t> queue;
  std::vector<uint32_t> depth(total, 0);
  queue.reserve(total);
  for (unsigned long long v = 0; v < total; ++v)
    if (on_cycle[v]) queue.push_back(static_cast<uint32_t>(v));
  for (size_t head = 0; head < queue.size(); ++head) {
    uint32_t u = queue[head];
    for (uint32_t i = off[u]; i < off[u + 1]; ++i) {
      uint32_t w = preds[i];
      if (on_cycle[w] || depth[w]) continue;
      depth[w] = depth[u] + 1;
      height[comp[w]] = std::max(height[comp[w]],
                                 static_cast<unsigned long long>(depth[w]));
      queue.push_back(w);
    }
  }

  PhaseSpace ps;
  ps.total_states = total;
  std::vector<size_t> order(ncomp);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return cycle_entry[a] < cycle_entry[b];
  });
  for (size_t cid : order) {
    Component c;
    c.component_size = sizes[cid];
    c.max_transient_height = height[cid];
    uint32_t start = cycle_entry[cid];
    uint32_t u = start;
    do {
      c.cycle.push_back(index_to_state(u, q, f.n));
      u = next[u];
    } while (u != start);
    c.cycle_length = c.cycle.size();
    ps.components.push_back(std::move(c));
  }
  return ps;
}

std::vector<std::vector<uint8_t>> periodic_points(
    const FiniteDynamicalSystem& f, unsigned long long m, bool exact_period,
    unsigned long long bound) {
  if (m == 0) throw ArityError("period must be positive");
  const unsigned q = f.field->q();
  unsigned long long total = 0;
  std::vector<uint32_t> next = successor_table(f, bound, total);

  auto compose = [&](unsigned long long e) {
    std::vector<uint32_t> acc(total), base = next;
    for (unsigned long long v = 0; v < total; ++v)
      acc[v] = static_cast<uint32_t>(v);
    while (e > 0) {
      if (e & 1)
        for (unsigned long long v = 0; v < total; ++v) acc[v] = base[acc[v]];
      e >>= 1;
      if (e > 0) {
        std::vector<uint32_t> sq(total);
        for (unsigned long long v = 0; v < total; ++v) sq[v] = base[base[v]];
        base = std::move(sq);
      }
    }
    return acc;
  };

  std::vector<uint32_t> fm = compose(m);
  std::vector<std::vector<uint32_t>> proper;
  if (exact_period) {
    unsigned long long rest = m;
    for (unsigned long long p = 2; p * p <= rest; ++p)
      if (rest % p == 0) {
        proper.push_back(compose(m / p));
        while (rest % p == 0) rest /= p;
      }
    if (rest > 1 && rest != m) proper.push_back(compose(m / rest));
    if (rest == m && m > 1) proper.push_back(compose(1));
  }

  std::vector<std::vector<uint8_t>> out;
  for (unsigned long long v = 0; v < total; ++v) {
    if (fm[v] != v) continue;
    if (exact_period) {
      bool least = true;
      for (const auto& g : proper)
        if (g[v] == v) {
          least = false;
          break;
        }
      if (!least) continue;
    }
    out.push_back(index_to_state(v, q, f.n));
  }
  return out;
}

DependencyGraph analyze_digraph(
    unsigned n, const std::vector<std::pair<unsigned, unsigned>>& edges) {
  DependencyGraph g;
  g.n = n;
  g.edges = edges;
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.adjacency.assign(n, {});
  for (auto [u, v] : g.edges) {
    if (u >= n || v >= n) throw ArityError("edge endpoint out of range");
    g.adjacency[u].push_back(v);
  }

  // Iterative Tarjan.
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<uint8_t> on_stack(n, 0);
  std::vector<unsigned> stack;
  int counter = 0;
  int ncomp = 0;
  struct Frame {
    unsigned v;
    size_t child;
  };
  for (unsigned root = 0; root < n; ++root) {
    if (idx[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      if (fr.child < g.adjacency[fr.v].size()) {
        unsigned w = g.adjacency[fr.v][fr.child++];
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], idx[w]);
        }
      } else {
        if (low[fr.v] == idx[fr.v]) {
          for (;;) {
            unsigned w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == fr.v) break;
          }
          ++ncomp;
        }
        unsigned v = fr.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  std::vector<SccInfo> raw(ncomp);
  for (unsigned v = 0; v < n; ++v) raw[comp[v]].vertices.push_back(v);
  for (auto& s : raw) std::sort(s.vertices.begin(), s.vertices.end());
  std::sort(raw.begin(), raw.end(), [](const SccInfo& a, const SccInfo& b) {
    return a.vertices.front() < b.vertices.front();
  });

  g.scc_of.assign(n, 0);
  for (size_t c = 0; c < raw.size(); ++c)
    for (unsigned v : raw[c].vertices) g.scc_of[v] = static_cast<unsigned>(c);

  // Loop number: gcd of level(u)+1-level(v) over intra-SCC edges from a BFS
  // layering started at the least vertex.
  for (auto& s : raw) {
    std::vector<long long> level(n, -1);
    std::vector<unsigned> queue{s.vertices.front()};
    level[s.vertices.front()] = 0;
    const unsigned cid = g.scc_of[s.vertices.front()];
    for (size_t head = 0; head < queue.size(); ++head) {
      unsigned u = queue[head];
      for (unsigned w : g.adjacency[u]) {
        if (g.scc_of[w] != cid) continue;
        if (level[w] < 0) {
          level[w] = level[u] + 1;
          queue.push_back(w);
        }
      }
    }
    long long gg = 0;
    for (unsigned u : s.vertices)
      for (unsigned w : g.adjacency[u]) {
        if (g.scc_of[w] != cid) continue;
        gg = std::gcd(gg, level[u] + 1 - level[w]);
      }
    s.loop_number = static_cast<unsigned>(gg < 0 ? -gg : gg);
  }
  g.sccs = std::move(raw);
  return g;
}

DependencyGraph dependency_graph(const FiniteDynamicalSystem& f) {
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (unsigned j = 0; j < f.n; ++j)
    for (unsigned i = 0; i < f.n; ++i)
      if (f.coordinates[j].depends_on(i)) edges.push_back({i, j});
  return analyze_digraph(f.n, edges);
}

MonomialTestResult monomial_fixed_point_test(const FiniteDynamicalSystem& f) {
  MonomialTestResult r;
  r.is_monomial = true;
  for (const auto& p : f.coordinates)
    if (p.terms().size() != 1) r.is_monomial = false;
  DependencyGraph g = dependency_graph(f);
  for (const auto& s : g.sccs) r.loop_numbers.push_back(s.loop_number);
  if (!r.is_monomial) return r;  // abstain
  if (f.field->q() == 2) {
    bool all_small = true;
    for (unsigned ln : r.loop_numbers)
      if (ln > 1) all_small = false;
    r.all_periodic_are_fixed = all_small;
  }
  return r;
}

LinearSystemAnalysis linear_cycle_structure(const linalg::Matrix& A) {
  if (!A.is_square() || A.rows == 0)
    throw ShapeError("analysis needs a nonempty square matrix");
  const auto& k = *A.field;
  const unsigned n = A.rows;
  const unsigned q = k.q();

  LinearSystemAnalysis out;
  out.A = A;

  std::vector<linalg::UPoly> diag = linalg::smith_diagonal(A);
  linalg::UPoly prod = linalg::UPoly::from(k, {k.one()});
  for (const auto& d : diag) {
    prod = prod * d;
    if (d.degree() > 0) out.invariant_factors.push_back(d);
  }
  out.characteristic_polynomial = linalg::charpoly_hessenberg(A);
  if (prod != out.characteristic_polynomial)
    throw Error("InternalError",
                "Smith diagonal product disagrees with the characteristic "
                "polynomial");

  const linalg::Matrix I = linalg::Matrix::identity(k, n);
  // Stable rank = dimension of the invertible part; the rank of A^t falls
  // to it no later than t = n.
  unsigned stable = linalg::rank(linalg::mat_pow(A, n));
  unsigned nilpotency = 0;
  {
    linalg::Matrix p = I;
    while (linalg::rank(p) != stable) {
      p = p * A;
      ++nilpotency;
    }
  }
  out.max_transient_height = nilpotency;

  // Multiplicative order of the invertible part: least t >= 1 with
  // rank(A^t - I) = n - stable.
  unsigned long long cap = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (cap > (1ULL << 62) / q) {
      cap = 1ULL << 62;
      break;
    }
    cap *= q;
  }
  unsigned long long ord = 0;
  {
    linalg::Matrix p = A;
    for (unsigned long long t = 1; t <= cap; ++t) {
      if (linalg::rank(p - I) == n - stable) {
        ord = t;
        break;
      }
      p = p * A;
    }
  }
  if (ord == 0)
    throw Error("InternalError", "order search exceeded its hard cap");
  out.order_of_invertible_part = ord;

  std::vector<unsigned long long> divisors;
  for (unsigned long long d = 1; d * d <= ord; ++d)
    if (ord % d == 0) {
      divisors.push_back(d);
      if (d != ord / d) divisors.push_back(ord / d);
    }
  std::sort(divisors.begin(), divisors.end());

  auto qpow = [&](unsigned e) {
    unsigned long long v = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (v > (1ULL << 62) / q)
        throw TooLarge("cycle counts overflow 64-bit integers");
      v *= q;
    }
    return v;
  };

  std::map<unsigned long long, unsigned long long> exact;
  for (unsigned long long t : divisors) {
    unsigned long long dividing = qpow(n - linalg::rank(mat_pow(A, t) - I));
    unsigned long long e = dividing;
    for (unsigned long long d : divisors) {
      if (d >= t) break;
      if (t % d == 0) e -= exact[d];
    }
    exact[t] = e;
    if (e > 0) {
      if (e % t != 0)
        throw Error("InternalError", "period class not divisible by length");
      out.cycle_counts[t] = e / t;
    }
  }
  return out;
}

std::string phase_space_dot(const FiniteDynamicalSystem& f,
                            unsigned long long bound) {
  const unsigned q = f.field->q();
  unsigned long long total = 0;
  std::vector<uint32_t> next = successor_table(f, bound, total);
  std::string out = "digraph phase_space {\n";
  for (unsigned long long v = 0; v < total; ++v) {
    out += "  \"" + poly::state_text(*f.field, index_to_state(v, q, f.n)) +
           "\" -> \"" +
           poly::state_text(*f.field, index_to_state(next[v], q, f.n)) +
           "\";\n";
  }
  out += "}\n";
  return out;
}

std::string dependency_dot(const DependencyGraph& g) {
  std::string out = "digraph dependency {\n";
  for (const auto& s : g.sccs) {
    out += "  // scc {";
    for (size_t i = 0; i < s.vertices.size(); ++i) {
      if (i) out += ",";
      out += "x" + std::to_string(s.vertices[i] + 1);
    }
    out += "} loop number " + std::to_string(s.loop_number) + "\n";
  }
  for (unsigned v = 0; v < g.n; ++v)
    out += "  x" + std::to_string(v + 1) + ";\n";
  for (auto [u, v] : g.edges)
    out += "  x" + std::to_string(u + 1) + " -> x" + std::to_string(v + 1) +
           ";\n";
  out += "}\n";
  return out;
}

}  // namespace fdslab::dynamics
