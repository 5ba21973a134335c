#include "fdslab/control.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace fdslab::control {

const ff::FieldSpec& gf4() { return ff::FieldSpec::get(4); }

namespace {

constexpr unsigned kRings = 10;
constexpr unsigned kCells = 331;
constexpr unsigned kCenterCells = 19;

// Cube-coordinate neighbor directions; the ring walk starts one step out
// along direction 4 and then turns through all six directions.
constexpr int kDirs[6][3] = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1},
                             {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}};

}  // namespace

HexGrid build_hex_grid() {
  HexGrid g;
  g.rings = kRings;
  g.cube.push_back({0, 0, 0});
  g.ring.push_back(0);
  for (unsigned r = 1; r <= kRings; ++r) {
    std::array<int, 3> c = {-static_cast<int>(r), 0, static_cast<int>(r)};
    for (unsigned side = 0; side < 6; ++side)
      for (unsigned step = 0; step < r; ++step) {
        g.cube.push_back(c);
        g.ring.push_back(r);
        c = {c[0] + kDirs[side][0], c[1] + kDirs[side][1],
             c[2] + kDirs[side][2]};
      }
  }
  std::map<std::array<int, 3>, unsigned> id_of;  // 1-based
  for (unsigned i = 0; i < g.cube.size(); ++i) id_of[g.cube[i]] = i + 1;
  g.neighbors.resize(g.cube.size());
  for (unsigned i = 0; i < g.cube.size(); ++i) {
    for (const auto& d : kDirs) {
      std::array<int, 3> nb = {g.cube[i][0] + d[0], g.cube[i][1] + d[1],
                               g.cube[i][2] + d[2]};
      auto it = id_of.find(nb);
      if (it != id_of.end()) g.neighbors[i].push_back(it->second);
    }
    std::sort(g.neighbors[i].begin(), g.neighbors[i].end());
  }
  return g;
}

std::vector<unsigned> HexGrid::ring_cells(unsigned r) const {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < ring.size(); ++i)
    if (ring[i] == r) out.push_back(i + 1);
  return out;
}

poly::Polynomial virus_polynomial() {
  const auto& k = gf4();
  const std::vector<unsigned> vars{0, 1, 2, 3, 4, 5};
  auto g1 = poly::elementary_symmetric(k, 6, 1, vars);
  auto g2 = poly::elementary_symmetric(k, 6, 2, vars);
  auto a2 = poly::Polynomial::constant(k, 6, kYellow);  // the scalar a^2
  return g2 * g2 + g2 * g1 * g1 * g1 + a2 * g1 * g1 * g1 + a2 * g1 * g1 +
         a2 * g1;
}

namespace {

// The rule is symmetric, so the update value only depends on the color
// counts of the neighborhood. 7^4 slots indexed by (green, white, yellow,
// red) counts; filled once from the polynomial itself.
struct RuleTable {
  uint8_t value[7][7][7][7];

  RuleTable() {
    auto f = virus_polynomial();
    for (unsigned gg = 0; gg <= 6; ++gg)
      for (unsigned w = 0; w + gg <= 6; ++w)
        for (unsigned y = 0; y + w + gg <= 6; ++y) {
          unsigned r = 6 - gg - w - y;
          std::vector<uint8_t> nb;
          nb.insert(nb.end(), gg, kGreen);
          nb.insert(nb.end(), w, kWhite);
          nb.insert(nb.end(), y, kYellow);
          nb.insert(nb.end(), r, kRed);
          value[gg][w][y][r] = f.evaluate(nb);
        }
  }
};

const RuleTable& rule_table() {
  static const RuleTable t;
  return t;
}

void require_state(const GridState& state) {
  if (state.size() != kCells)
    throw ShapeError("grid state needs exactly 331 cells");
  for (uint8_t v : state)
    if (v > 3) throw FieldMismatch("grid state entry outside GF(4)");
}

}  // namespace

GridState virus_step(const HexGrid& grid, const GridState& state) {
  require_state(state);
  const RuleTable& table = rule_table();
  GridState next = state;
  for (unsigned i = 0; i < kCells; ++i) {
    if (state[i] != kWhite) continue;  // infected and Green cells absorb
    unsigned counts[4] = {0, 0, 0, 0};
    for (unsigned id : grid.neighbors[i]) ++counts[state[id - 1]];
    counts[kWhite] += 6 - static_cast<unsigned>(grid.neighbors[i].size());
    next[i] = table.value[counts[0]][counts[1]][counts[2]][counts[3]];
  }
  return next;
}

VarietyCheck check_varieties(const HexGrid& grid, const GridState& state,
                             bool include_cell_271) {
  require_state(state);
  const auto& k = gf4();
  const uint8_t a = kWhite;

  bool admissible = true;
  for (unsigned i = kCenterCells; i < kCells; ++i)
    if (state[i] != kWhite) admissible = false;
  // 1 - prod_{i=20..331} (1 - (x_i - a)^3), zero exactly on the variety.
  uint8_t prod = k.one();
  for (unsigned i = kCenterCells; i < kCells; ++i) {
    uint8_t d = k.sub(state[i], a);
    prod = k.mul(prod, k.sub(k.one(), k.pow(d, 3)));
  }
  uint8_t indicator = k.sub(k.one(), prod);
  if ((indicator == k.zero()) != admissible)
    throw Error("InternalError", "admissibility indicator disagrees");

  unsigned outer_first = include_cell_271 ? 271 : 272;
  bool constraint = true;
  for (unsigned id = outer_first; id <= kCells; ++id) {
    uint8_t v = state[id - 1];
    if (v != kGreen && v != kWhite) constraint = false;
  }
  prod = k.one();
  for (unsigned id = outer_first; id <= kCells; ++id) {
    uint8_t v = state[id - 1];
    uint8_t expr = k.sub(k.mul(v, v), k.mul(a, v));  // x^2 - a x
    prod = k.mul(prod, k.sub(k.one(), k.pow(expr, 3)));
  }
  indicator = k.sub(k.one(), prod);
  if ((indicator == k.zero()) != constraint)
    throw Error("InternalError", "constraint indicator disagrees");

  (void)grid;
  return VarietyCheck{admissible, constraint, constraint};
}

GridState apply_control(const HexGrid& grid, const GridState& state,
                        const std::vector<unsigned>& cells) {
  require_state(state);
  (void)grid;
  GridState next = state;
  for (unsigned id : cells) {
    if (id == 0 || id > kCells)
      throw IllegalControl("cell id " + std::to_string(id) + " out of range");
    if (next[id - 1] != kWhite)
      throw IllegalControl("cell " + std::to_string(id) +
                           " is not White and cannot be inoculated");
    next[id - 1] = kGreen;
  }
  return next;
}

double cost(const ControlSchedule& schedule, const CostParams& params) {
  double total = 0.0;
  for (const auto& step : schedule)
    if (!step.empty())
      total += params.per_cell * static_cast<double>(step.size()) +
               params.per_step_fixed;
  return total;
}

ControllerRun greedy_controller(const HexGrid& grid, const GridState& initial,
                                const CostParams& params, unsigned horizon,
                                bool include_cell_271) {
  auto check = check_varieties(grid, initial, include_cell_271);
  if (!check.admissible_init)
    throw InadmissibleStart("initial state must be White outside the center");

  ControllerRun run;
  run.trajectory.push_back(initial);
  GridState state = initial;
  for (unsigned t = 0; t < horizon; ++t) {
    // Infection frontier: the highest ring currently holding Red or Yellow.
    unsigned frontier = 0;
    for (unsigned i = 0; i < kCells; ++i)
      if (state[i] == kRed || state[i] == kYellow)
        frontier = std::max(frontier, grid.ring[i]);

    // Sweep: inoculate every cell beyond the frontier that the uncontrolled
    // update would infect; the added Green can breed new Red, so iterate
    // until the lookahead stays clean out there.
    std::set<unsigned> chosen;
    GridState controlled = state;
    for (;;) {
      GridState look = virus_step(grid, controlled);
      std::vector<unsigned> bad;
      for (unsigned i = 0; i < kCells; ++i)
        if (grid.ring[i] > frontier &&
            (look[i] == kRed || look[i] == kYellow))
          bad.push_back(i + 1);
      if (bad.empty()) break;
      for (unsigned id : bad) {
        controlled[id - 1] = kGreen;
        chosen.insert(id);
      }
    }
    std::vector<unsigned> step_cells(chosen.begin(), chosen.end());
    GridState next = virus_step(grid, controlled);
    if (step_cells.empty() && next == state) {
      run.reached_fixed_point = true;
      break;
    }
    run.schedule.push_back(step_cells);
    run.trajectory.push_back(next);
    state = std::move(next);
  }
  auto final_check = check_varieties(grid, state, include_cell_271);
  run.goal_reached = final_check.constraint_ok;
  run.total_cost = cost(run.schedule, params);
  return run;
}

std::string state_to_text(const HexGrid& grid, const GridState& state) {
  require_state(state);
  const auto& k = gf4();
  std::string out;
  unsigned current_ring = 0;
  for (unsigned i = 0; i < kCells; ++i) {
    if (i > 0) {
      if (grid.ring[i] != current_ring) {
        out += "\n";
      } else {
        out += " ";
      }
    }
    current_ring = grid.ring[i];
    out += k.literal(state[i]);
  }
  out += "\n";
  return out;
}

std::string state_svg(const HexGrid& grid, const GridState& state) {
  require_state(state);
  static const char* fills[4] = {"#2e7d32", "#f2f2f2", "#fbc02d", "#c62828"};
  const double size = 14.0;
  const double sqrt3 = 1.7320508075688772;
  std::string svg;
  double span = size * sqrt3 * (2 * kRings + 1) + 20;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(static_cast<int>(span)) + "\" height=\"" +
         std::to_string(static_cast<int>(span)) + "\" viewBox=\"" +
         std::to_string(-span / 2) + " " + std::to_string(-span / 2) + " " +
         std::to_string(span) + " " + std::to_string(span) + "\">\n";
  for (unsigned i = 0; i < kCells; ++i) {
    double qa = grid.cube[i][0], ra = grid.cube[i][2];
    double cx = size * (sqrt3 * qa + sqrt3 / 2 * ra);
    double cy = size * 1.5 * ra;
    svg += "<polygon points=\"";
    for (int corner = 0; corner < 6; ++corner) {
      double ang = 3.14159265358979 / 180.0 * (60.0 * corner - 30.0);
      double x = cx + size * 0.95 * std::cos(ang);
      double y = cy + size * 0.95 * std::sin(ang);
      svg += std::to_string(x) + "," + std::to_string(y);
      if (corner < 5) svg += " ";
    }
    svg += "\" fill=\"";
    svg += fills[state[i]];
    svg += "\" stroke=\"#555\" stroke-width=\"0.6\"><title>cell ";
    svg += std::to_string(i + 1);
    svg += "</title></polygon>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace fdslab::control
