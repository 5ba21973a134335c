#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/poly.hpp"

namespace fdslab::control {

// GF(4) color encoding shared by the whole module.
inline constexpr uint8_t kGreen = 0;   // 0
inline constexpr uint8_t kWhite = 1;   // a
inline constexpr uint8_t kYellow = 2;  // a^2
inline constexpr uint8_t kRed = 3;     // a^3 = 1

const ff::FieldSpec& gf4();

// Radius-10 hexagon of 331 cells. Cells are numbered 1..331 ring by ring:
// cell 1 is the center, ring r occupies a contiguous id block of 6r cells,
// and cells 1..19 (rings 0..2) form the inoculation center. Ring 10 is ids
// 272..331.
struct HexGrid {
  unsigned rings = 0;
  std::vector<std::array<int, 3>> cube;          // cube coords per id-1
  std::vector<std::vector<unsigned>> neighbors;  // 1-based ids per id-1
  std::vector<unsigned> ring;                    // ring number per id-1

  unsigned cell_count() const { return static_cast<unsigned>(cube.size()); }
  unsigned ring_of(unsigned id) const { return ring.at(id - 1); }
  std::vector<unsigned> ring_cells(unsigned r) const;
};

HexGrid build_hex_grid();

// Vector of 331 GF(4) values in cell-id order.
using GridState = std::vector<uint8_t>;

// The symmetric update rule in the six neighbor values y1..y6:
//   gamma2^2 + gamma2*gamma1^3 + a^2*gamma1^3 + a^2*gamma1^2 + a^2*gamma1
// with gamma1, gamma2 the first two elementary symmetric polynomials.
poly::Polynomial virus_polynomial();

// Synchronous update: every White cell takes the rule's value on its
// neighborhood (missing neighbors padded White); infected and Green cells
// are absorbing. Pure function of the state.
GridState virus_step(const HexGrid& grid, const GridState& state);

struct VarietyCheck {
  bool admissible_init = false;  // all cells outside the center are White
  bool constraint_ok = false;    // outer ring free of Red and Yellow
  bool goal = false;             // state-level goal: constraint_ok holds
};

// Direct membership tests for the admissibility and constraint varieties,
// cross-checked against the single indicator polynomials
// 1 - prod(1-(x_i-a)^3) and 1 - prod(1-(x_i^2-a x_i)^3) evaluated
// pointwise. include_cell_271 widens the outer ring to ids 271..331, the
// range as printed; the geometric ring 10 is 272..331.
VarietyCheck check_varieties(const HexGrid& grid, const GridState& state,
                             bool include_cell_271 = false);

// Inoculate the listed (1-based) cells Green. Every cell must currently be
// White; IllegalControl otherwise.
GridState apply_control(const HexGrid& grid, const GridState& state,
                        const std::vector<unsigned>& cells);

// One entry per time step: the ids inoculated before that step's update.
using ControlSchedule = std::vector<std::vector<unsigned>>;

struct CostParams {
  double per_cell = 1.0;      // c
  double per_step_fixed = 0;  // d, charged once per step that acts
};

// C = sum over steps of (c * c_i + d) for steps with c_i > 0 inoculations.
double cost(const ControlSchedule& schedule, const CostParams& params);

struct ControllerRun {
  ControlSchedule schedule;
  std::vector<GridState> trajectory;  // initial state first
  bool goal_reached = false;
  bool reached_fixed_point = false;
  double total_cost = 0.0;
};

// Deterministic greedy containment: at each step, find every cell beyond
// the current infection frontier (the highest ring holding Red or Yellow)
// that the uncontrolled update would turn Red or Yellow, inoculate it, and
// repeat within the step until the update stays clean beyond the frontier
// (inoculated Green cells can themselves breed new Red). Runs to a fixed
// point or the horizon. InadmissibleStart unless the initial state lies in
// the admissibility variety.
ControllerRun greedy_controller(const HexGrid& grid, const GridState& initial,
                                const CostParams& params,
                                unsigned horizon = 1000,
                                bool include_cell_271 = false);

// 331 field literals, ring-major, one ring per line.
std::string state_to_text(const HexGrid& grid, const GridState& state);

// Static SVG snapshot of one state.
std::string state_svg(const HexGrid& grid, const GridState& state);

}  // namespace fdslab::control
