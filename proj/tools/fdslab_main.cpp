// fdslab command-line front end: parse input files, run the analyses, emit
// JSON (stdout or --out) plus optional DOT/SVG artifacts.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdslab/control.hpp"
#include "fdslab/dynamics.hpp"
#include "fdslab/errors.hpp"
#include "fdslab/field.hpp"
#include "fdslab/groebner.hpp"
#include "fdslab/inference.hpp"
#include "fdslab/ncf.hpp"
#include "fdslab/parse.hpp"
#include "fdslab/poly.hpp"

using nlohmann::json;
using namespace fdslab;

namespace {

unsigned long long default_bound() {
  const char* env = std::getenv("FDSLAB_BOUND");
  if (env == nullptr || *env == '\0') return dynamics::kDefaultBound;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0')
    throw ParseError(0, 0, "FDSLAB_BOUND is not a number");
  return v;
}

const ff::FieldSpec& field_from_flag(unsigned q) { return ff::FieldSpec::get(q); }

poly::TermOrder order_from_flags(const std::string& kind,
                                 const std::string& perm_flag, unsigned n) {
  poly::OrderKind k = poly::OrderKind::degrevlex;
  if (kind == "lex")
    k = poly::OrderKind::lex;
  else if (kind == "deglex")
    k = poly::OrderKind::deglex;
  else if (kind == "degrevlex")
    k = poly::OrderKind::degrevlex;
  else
    throw ParseError(0, 0, "unknown order '" + kind + "'");
  if (perm_flag.empty()) return poly::TermOrder::make(k);
  std::vector<unsigned> perm;
  std::string tok;
  std::vector<bool> seen(n, false);
  auto push = [&](const std::string& t) {
    if (t.empty()) throw ParseError(0, 0, "empty entry in --perm");
    unsigned long long v = 0;
    for (char c : t) {
      if (c < '0' || c > '9')
        throw ParseError(0, 0, "bad entry '" + t + "' in --perm");
      v = v * 10 + static_cast<unsigned long long>(c - '0');
    }
    if (v == 0 || v > n || seen[v - 1])
      throw ParseError(0, 0, "--perm must be a permutation of 1.." +
                                 std::to_string(n));
    seen[v - 1] = true;
    perm.push_back(static_cast<unsigned>(v - 1));
  };
  for (char c : perm_flag) {
    if (c == ',') {
      push(tok);
      tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  push(tok);
  if (perm.size() != n)
    throw ParseError(0, 0, "--perm must list all of 1.." + std::to_string(n));
  return poly::TermOrder::make(k, std::move(perm));
}

json order_json(const poly::TermOrder& ord, unsigned n) {
  json j;
  j["kind"] = ord.kind_name();
  std::vector<unsigned> perm;
  if (ord.perm.empty()) {
    for (unsigned i = 1; i <= n; ++i) perm.push_back(i);
  } else {
    for (unsigned v : ord.perm) perm.push_back(v + 1);
  }
  j["permutation"] = perm;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IOError("cannot write " + out_path);
    out << text;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << text;
}

int run_phase_space(const std::string& input, unsigned q,
                    unsigned long long bound, const std::string& dot_path,
                    const std::string& out_path) {
  const auto& field = field_from_flag(q);
  auto sys = parse::system_file(parse::read_file(input), field);
  auto ps = dynamics::phase_space(sys, bound);
  json j;
  j["command"] = "phase-space";
  j["field"] = field.q();
  j["n"] = sys.n;
  j["bound"] = bound;
  j["total_states"] = ps.total_states;
  j["component_count"] = ps.components.size();
  j["cycle_lengths"] = ps.cycle_lengths_sorted();
  j["components"] = json::array();
  for (const auto& comp : ps.components) {
    json c;
    c["cycle_length"] = comp.cycle_length;
    c["component_size"] = comp.component_size;
    c["max_transient_height"] = comp.max_transient_height;
    c["cycle"] = json::array();
    for (const auto& st : comp.cycle)
      c["cycle"].push_back(poly::state_text(field, st));
    j["components"].push_back(c);
  }
  if (!dot_path.empty()) write_text(dot_path, dynamics::phase_space_dot(sys, bound));
  emit(j, out_path);
  return 0;
}

int run_analyze_linear(const std::string& input, unsigned q,
                       const std::string& out_path) {
  const auto& field = field_from_flag(q);
  auto mat = parse::matrix_file(parse::read_file(input), field);
  auto analysis = dynamics::linear_cycle_structure(mat);
  json j;
  j["command"] = "analyze-linear";
  j["field"] = field.q();
  j["n"] = mat.rows;
  j["characteristic_polynomial"] = analysis.characteristic_polynomial.str("x");
  j["invariant_factors"] = json::array();
  for (const auto& f : analysis.invariant_factors)
    j["invariant_factors"].push_back(f.str("x"));
  j["order_of_invertible_part"] = analysis.order_of_invertible_part;
  j["max_transient_height"] = analysis.max_transient_height;
  j["cycle_counts"] = json::array();
  for (const auto& [len, count] : analysis.cycle_counts) {
    json c;
    c["length"] = len;
    c["count"] = count;
    j["cycle_counts"].push_back(c);
  }
  emit(j, out_path);
  return 0;
}

int run_deps(const std::string& input, unsigned q, const std::string& dot_path,
             const std::string& out_path) {
  const auto& field = field_from_flag(q);
  auto sys = parse::system_file(parse::read_file(input), field);
  auto dg = dynamics::dependency_graph(sys);
  json j;
  j["command"] = "deps";
  j["field"] = field.q();
  j["n"] = sys.n;
  j["edges"] = json::array();
  for (const auto& [from, to] : dg.edges)
    j["edges"].push_back(json::array({from + 1, to + 1}));
  j["sccs"] = json::array();
  for (const auto& scc : dg.sccs) {
    json s;
    s["vertices"] = json::array();
    for (unsigned v : scc.vertices) s["vertices"].push_back(v + 1);
    s["loop_number"] = scc.loop_number;
    j["sccs"].push_back(s);
  }
  if (!dot_path.empty()) write_text(dot_path, dynamics::dependency_dot(dg));
  emit(j, out_path);
  return 0;
}

std::string bits_string(const std::vector<uint8_t>& bits) {
  std::string s;
  for (uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

int run_ncf(const std::string& table_flag, unsigned enumerate_n,
            const std::string& out_path) {
  json j;
  j["command"] = "ncf";
  if (!table_flag.empty()) {
    std::vector<uint8_t> bits;
    for (char c : table_flag) {
      if (c != '0' && c != '1')
        throw ParseError(0, 0, "truth table must be a string of 0/1 bits");
      bits.push_back(c == '1' ? 1 : 0);
    }
    unsigned n = 0;
    while ((size_t{1} << n) < bits.size()) ++n;
    if ((size_t{1} << n) != bits.size() || n == 0)
      throw ShapeError("truth table length must be a power of two, >= 2");
    auto table = ncf::BooleanFunctionTable::make(n, bits);
    j["mode"] = "detect";
    j["n"] = n;
    j["table"] = bits_string(bits);
    auto coeffs = ncf::anf_transform(table);
    j["anf"] = ncf::to_polynomial(coeffs).str();
    j["coefficients"] = bits_string(coeffs.c);
    j["canalyzing"] = json::array();
    for (const auto& t : ncf::is_canalyzing(table)) {
      json c;
      c["variable"] = t.variable;
      c["input"] = t.input;
      c["output"] = t.output;
      j["canalyzing"].push_back(c);
    }
    bool essential = ncf::depends_on_all(table);
    j["depends_on_all"] = essential;
    if (essential) {
      auto cert = ncf::is_ncf_by_definition(table);
      j["is_ncf"] = cert.has_value();
      if (cert) {
        json c;
        c["order"] = cert->order;
        c["inputs"] = cert->inputs;
        c["outputs"] = cert->outputs;
        j["certificate"] = c;
      } else {
        j["certificate"] = nullptr;
      }
    } else {
      j["is_ncf"] = false;
      j["certificate"] = nullptr;
    }
  } else {
    auto e = ncf::enumerate_ncfs(enumerate_n);
    j["mode"] = "enumerate";
    j["n"] = e.n;
    j["count"] = e.count();
    j["functions"] = json::array();
    for (const auto& c : e.functions) {
      json f;
      f["coefficients"] = bits_string(c.c);
      f["anf"] = ncf::to_polynomial(c).str();
      j["functions"].push_back(f);
    }
  }
  emit(j, out_path);
  return 0;
}

int run_infer(const std::string& input, unsigned q, const std::string& order,
              const std::string& perm, bool discretize_input, unsigned samples,
              unsigned long long seed, const std::string& out_path) {
  const auto& field = field_from_flag(q);
  inference::TimeSeries ts;
  bool discretized = false;
  if (discretize_input) {
    auto reals = parse::real_csv(parse::read_file(input));
    ts = inference::discretize(reals, field);
    discretized = true;
  } else {
    ts = parse::time_series_csv(parse::read_file(input), field);
  }
  auto ord = order_from_flags(order, perm, ts.n);
  auto model = inference::infer_ls(ts, ord);

  json j;
  j["command"] = "infer";
  j["field"] = field.q();
  j["n"] = ts.n;
  j["discretized"] = discretized;
  j["order"] = order_json(ord, ts.n);
  j["point_convention"] =
      "inputs are the first r points p_0..p_(r-1) of each segment; the last "
      "point appears only as a successor";
  j["transitions"] = inference::transitions(ts).size();
  j["model"] = json::array();
  for (unsigned i = 0; i < ts.n; ++i) {
    json c;
    c["coordinate"] = i + 1;
    c["polynomial"] = model.system.coordinates[i].str();
    j["model"].push_back(c);
  }
  j["min_sets"] = json::array();
  for (unsigned i = 0; i < ts.n; ++i) {
    auto ms = inference::min_sets(ts, i);
    json m;
    m["coordinate"] = i + 1;
    m["generators"] = json::array();
    for (const auto& g : ms.generators)
      m["generators"].push_back(
          poly::Polynomial::term(field, ts.n, g, field.one()).str());
    m["minimal_primes"] = json::array();
    for (const auto& p : ms.minimal_primes) {
      json vars = json::array();
      for (unsigned v : p) vars.push_back("x" + std::to_string(v + 1));
      m["minimal_primes"].push_back(vars);
    }
    m["scores"] = ms.scores;
    m["dp_index"] = ms.dp_index;
    m["ranking"] = json::array();
    try {
      for (const auto& entry : inference::deegan_packel(ms)) {
        json r;
        r["variable"] = entry.variable + 1;
        r["index"] = entry.index;
        m["ranking"].push_back(r);
      }
    } catch (const EmptyRanking&) {
      // constant coordinate: nothing to rank
    }
    j["min_sets"].push_back(m);
  }
  if (samples > 0) {
    auto rep = inference::term_order_consensus(ts, samples, seed);
    json c;
    c["samples"] = rep.samples;
    c["seed"] = seed;
    c["frequency"] = rep.frequency;
    j["consensus"] = c;
  } else {
    j["consensus"] = nullptr;
  }
  emit(j, out_path);
  return 0;
}

int run_control_sim(const std::string& input, unsigned horizon,
                    double cell_cost, double step_cost, bool include_271,
                    const std::string& svg_path,
                    const std::string& trajectory_path,
                    const std::string& out_path) {
  auto grid = control::build_hex_grid();
  auto initial = parse::grid_state(parse::read_file(input));
  control::CostParams params{cell_cost, step_cost};
  auto initial_check = control::check_varieties(grid, initial, include_271);
  auto run = control::greedy_controller(grid, initial, params, horizon,
                                        include_271);
  const auto& final_state = run.trajectory.back();
  auto final_check = control::check_varieties(grid, final_state, include_271);

  json j;
  j["command"] = "control-sim";
  j["include_cell_271"] = include_271;
  j["horizon"] = horizon;
  json p;
  p["per_cell"] = params.per_cell;
  p["per_step"] = params.per_step_fixed;
  j["params"] = p;
  auto check_json = [](const control::VarietyCheck& c) {
    json v;
    v["admissible_init"] = c.admissible_init;
    v["constraint_ok"] = c.constraint_ok;
    v["goal"] = c.goal;
    return v;
  };
  j["initial_check"] = check_json(initial_check);
  j["final_check"] = check_json(final_check);
  j["steps"] = run.schedule.size();
  j["schedule"] = json::array();
  size_t inoculated = 0;
  for (size_t t = 0; t < run.schedule.size(); ++t) {
    json s;
    s["step"] = t + 1;
    s["cells"] = run.schedule[t];
    inoculated += run.schedule[t].size();
    j["schedule"].push_back(s);
  }
  j["inoculated_total"] = inoculated;
  j["goal_reached"] = run.goal_reached;
  j["reached_fixed_point"] = run.reached_fixed_point;
  j["total_cost"] = run.total_cost;
  if (!svg_path.empty())
    write_text(svg_path, control::state_svg(grid, final_state));
  if (!trajectory_path.empty()) {
    std::string dump;
    for (const auto& st : run.trajectory) {
      std::string line;
      for (size_t i = 0; i < st.size(); ++i) {
        if (i) line += " ";
        line += control::gf4().literal(st[i]);
      }
      dump += line + "\n";
    }
    write_text(trajectory_path, dump);
  }
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis, inference and control of polynomial dynamical "
               "systems over finite fields"};
  app.require_subcommand(1);

  std::string input, out_path, dot_path, svg_path, trajectory_path;
  std::string order = "degrevlex", perm, table_flag;
  unsigned q = 2;
  unsigned long long bound_flag = 0, seed = 1;
  unsigned enumerate_n = 0, samples = 0, horizon = 1000;
  double cell_cost = 1.0, step_cost = 0.0;
  bool include_271 = false, discretize_input = false;

  auto* ps = app.add_subcommand("phase-space",
                                "Full phase space of a polynomial system");
  ps->add_option("input", input, "system file")->required();
  ps->add_option("--field", q, "field size (prime or 4)")->required();
  ps->add_option("--bound", bound_flag, "state-count ceiling (0 = default)");
  ps->add_option("--dot", dot_path, "write the phase space as DOT");
  ps->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* al = app.add_subcommand("analyze-linear",
                                "Cycle structure of a linear system");
  al->add_option("input", input, "matrix file")->required();
  al->add_option("--field", q, "field size (prime or 4)")->required();
  al->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* dp = app.add_subcommand("deps", "Dependency graph and loop numbers");
  dp->add_option("input", input, "system file")->required();
  dp->add_option("--field", q, "field size (prime or 4)")->required();
  dp->add_option("--dot", dot_path, "write the dependency graph as DOT");
  dp->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* nc = app.add_subcommand("ncf", "Nested canalyzing function tools");
  nc->add_option("--table", table_flag,
                 "truth table bits, input 0 first, x1 least significant");
  nc->add_option("--enumerate", enumerate_n, "enumerate all NCFs on n vars");
  nc->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* in = app.add_subcommand("infer", "Model inference from time series");
  in->add_option("input", input, "time-series CSV")->required();
  in->add_option("--field", q, "field size (prime or 4)")->required();
  in->add_option("--order", order, "term order")
      ->check(CLI::IsMember({"lex", "deglex", "degrevlex"}));
  in->add_option("--perm", perm, "variable significance order, e.g. 2,1,3");
  in->add_flag("--discretize", discretize_input,
               "input holds reals; quantile-discretize into the field");
  in->add_option("--samples", samples, "term-order consensus sample count");
  in->add_option("--seed", seed, "consensus RNG seed");
  in->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* cs = app.add_subcommand("control-sim",
                                "Greedy containment on the 331-cell dish");
  cs->add_option("input", input, "initial grid state file")->required();
  cs->add_option("--horizon", horizon, "maximum number of steps");
  cs->add_option("--cell-cost", cell_cost, "cost per inoculated cell");
  cs->add_option("--step-cost", step_cost, "fixed overhead per acting step");
  cs->add_flag("--include-cell-271", include_271,
               "use the printed outer-ring range 271..331 instead of the "
               "geometric ring 272..331");
  cs->add_option("--svg", svg_path, "write the final state as SVG");
  cs->add_option("--trajectory", trajectory_path,
                 "write the trajectory, one state per line");
  cs->add_option("--out", out_path, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    unsigned long long bound = bound_flag ? bound_flag : default_bound();
    if (ps->parsed())
      return run_phase_space(input, q, bound, dot_path, out_path);
    if (al->parsed()) return run_analyze_linear(input, q, out_path);
    if (dp->parsed()) return run_deps(input, q, dot_path, out_path);
    if (nc->parsed()) {
      if (table_flag.empty() == (enumerate_n == 0))
        throw ParseError(0, 0,
                         "ncf needs exactly one of --table and --enumerate");
      return run_ncf(table_flag, enumerate_n, out_path);
    }
    if (in->parsed())
      return run_infer(input, q, order, perm, discretize_input, samples, seed,
                       out_path);
    if (cs->parsed())
      return run_control_sim(input, horizon, cell_cost, step_cost, include_271,
                             svg_path, trajectory_path, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
