// Command-line front end: preprocess, solve, simulate, oracle-check and
// validate subcommands over CSV networks and trip tables.
//
// Exit codes: 0 success (an infeasible model still exits 0 after saying
// so), 1 usage or configuration problems, 2 unreadable or malformed
// inputs, 3 solver failures, 4 verification or validation mismatches.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flexride/assignment.hpp"
#include "flexride/errors.hpp"
#include "flexride/horizon.hpp"
#include "flexride/instance_gen.hpp"
#include "flexride/model.hpp"
#include "flexride/network.hpp"
#include "flexride/oracle.hpp"
#include "flexride/preprocess.hpp"
#include "flexride/solve.hpp"
#include "flexride/trips.hpp"

namespace fs = std::filesystem;
using namespace flexride;

namespace {

struct Options {
  std::string nodes_path, edges_path, trips_path, hov_nodes_path;
  std::string config_path;
  std::string out_dir = ".";
  std::string solution_path; // validate only
  std::string solver_cmd;

  bool flex = true;
  bool hov = true;
  int min_occupancy = 2;
  bool count_driver = true;
  bool driver_edges = true;
  std::string objective = "direct"; // direct | weighted
  std::string factor = "2";
  int yen_k = 0; // 0 = exact accessibility
  bool edge_filter = true;

  std::int64_t period = 300, start = 32400, end = 68400;
  std::int64_t max_nodes = 0;
  double max_seconds = 0.0;
};

// Flat key=value configuration, '#' comments. CLI flags override file
// values, which override the defaults.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed;
    for (char c : line) {
      if (c == '#') break;
      trimmed.push_back(c);
    }
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) {
      trimmed.pop_back();
    }
    std::size_t at = 0;
    while (at < trimmed.size() && (trimmed[at] == ' ' || trimmed[at] == '\t')) {
      ++at;
    }
    if (at == trimmed.size()) continue;
    std::size_t eq = trimmed.find('=', at);
    if (eq == std::string::npos) {
      throw ModelError("config " + path + ":" + std::to_string(line_no) +
                       ": expected key=value");
    }
    std::string key = trimmed.substr(at, eq - at);
    std::string value = trimmed.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
      value.erase(value.begin());
    }
    if (key.empty()) {
      throw ModelError("config " + path + ":" + std::to_string(line_no) +
                       ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "0" || value == "false" || value == "no" || value == "off") {
    return false;
  }
  throw ModelError("config key " + key + ": cannot read '" + value +
                   "' as a boolean");
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    throw ModelError("config key " + key + ": cannot read '" + value +
                     "' as an integer");
  }
}

// Applies config-file values for every option the command line left alone.
void merge_config(Options& opt, CLI::App* sub) {
  if (opt.config_path.empty()) return;
  std::map<std::string, std::string> kv = read_config(opt.config_path);
  auto fresh = [&](const char* flag) { return sub->count(flag) == 0; };
  for (const auto& [key, value] : kv) {
    if (key == "flex") {
      if (fresh("--flex")) opt.flex = parse_bool(key, value);
    } else if (key == "hov") {
      if (fresh("--hov")) opt.hov = parse_bool(key, value);
    } else if (key == "min_occupancy") {
      if (fresh("--min-occupancy")) {
        opt.min_occupancy = static_cast<int>(parse_int(key, value));
      }
    } else if (key == "count_driver") {
      if (fresh("--count-driver")) opt.count_driver = parse_bool(key, value);
    } else if (key == "driver_edges") {
      if (fresh("--driver-edges")) opt.driver_edges = parse_bool(key, value);
    } else if (key == "objective") {
      if (fresh("--objective")) opt.objective = value;
    } else if (key == "factor") {
      if (fresh("--factor")) opt.factor = value;
    } else if (key == "yen_k") {
      if (fresh("--yen-k")) opt.yen_k = static_cast<int>(parse_int(key, value));
    } else if (key == "edge_filter") {
      if (fresh("--edge-filter")) opt.edge_filter = parse_bool(key, value);
    } else if (key == "period") {
      if (fresh("--period")) opt.period = parse_int(key, value);
    } else if (key == "start") {
      if (fresh("--start")) opt.start = parse_int(key, value);
    } else if (key == "end") {
      if (fresh("--end")) opt.end = parse_int(key, value);
    } else if (key == "max_nodes") {
      if (fresh("--max-nodes")) opt.max_nodes = parse_int(key, value);
    } else if (key == "max_seconds") {
      if (fresh("--max-seconds")) {
        try {
          opt.max_seconds = std::stod(value);
        } catch (const std::exception&) {
          throw ModelError("config key max_seconds: cannot read '" + value +
                           "' as a number");
        }
      }
    } else if (key == "solver_cmd") {
      if (fresh("--solver-cmd")) opt.solver_cmd = value;
    } else {
      throw ModelError("config " + opt.config_path + ": unknown key '" + key +
                       "'");
    }
  }
}

ModelConfig model_config(const Options& opt) {
  ModelConfig cfg;
  cfg.flex_roles = opt.flex;
  cfg.hov_enabled = opt.hov;
  cfg.min_occupancy = opt.min_occupancy;
  cfg.count_driver = opt.count_driver;
  cfg.driver_edges_in_objective = opt.driver_edges;
  if (opt.objective == "direct") {
    cfg.objective = ObjectiveMode::as_printed();
  } else if (opt.objective == "weighted") {
    try {
      cfg.objective = ObjectiveMode::weight(Rational::from_decimal(opt.factor));
    } catch (const std::exception& e) {
      throw ModelError(std::string("bad objective factor: ") + e.what());
    }
  } else {
    throw ModelError("objective must be 'direct' or 'weighted', got '" +
                     opt.objective + "'");
  }
  return cfg;
}

PreprocessOptions preprocess_options(const Options& opt) {
  PreprocessOptions p;
  if (opt.yen_k < 0) throw ModelError("yen_k must be >= 0");
  p.method = opt.yen_k == 0 ? AccessMethod::exact() : AccessMethod::yen(opt.yen_k);
  p.edge_time_filter = opt.edge_filter;
  return p;
}

RoadNetwork load_network(const Options& opt) {
  std::ifstream nodes(opt.nodes_path);
  if (!nodes) throw IoError("cannot read nodes file " + opt.nodes_path);
  std::ifstream edges(opt.edges_path);
  if (!edges) throw IoError("cannot read edges file " + opt.edges_path);
  if (!opt.hov_nodes_path.empty()) {
    std::ifstream hov(opt.hov_nodes_path);
    if (!hov) throw IoError("cannot read hov nodes file " + opt.hov_nodes_path);
    return RoadNetwork::load(nodes, edges, &hov, &std::cerr, opt.nodes_path,
                             opt.edges_path);
  }
  return RoadNetwork::load(nodes, edges, nullptr, &std::cerr, opt.nodes_path,
                           opt.edges_path);
}

std::vector<Participant> load_participants(const Options& opt) {
  std::ifstream trips(opt.trips_path);
  if (!trips) throw IoError("cannot read trips file " + opt.trips_path);
  return load_trips(trips, opt.trips_path);
}

std::vector<EnrichedParticipant> feasible_parts(
    const RoadNetwork& net, const std::vector<Participant>& parts,
    std::ostream& log) {
  std::vector<EnrichedParticipant> enriched = enrich_all(net, parts);
  std::vector<EnrichedParticipant> kept;
  for (EnrichedParticipant& p : enriched) {
    if (p.feasible) {
      kept.push_back(std::move(p));
    } else {
      log << "note: " << p.base.id
          << " cannot reach its destination in time, excluded\n";
    }
  }
  return kept;
}

void write_file(const fs::path& path, const std::string& what,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + what + " to " + path.string());
  body(out);
}

int cmd_preprocess(const Options& opt) {
  RoadNetwork net = load_network(opt);
  std::vector<Participant> parts = load_participants(opt);
  std::vector<EnrichedParticipant> kept = feasible_parts(net, parts, std::cout);
  AccessSets sets = build_access_sets(net, kept, preprocess_options(opt));
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "access_sets.json", "access sets",
             [&](std::ostream& out) { write_access_sets_json(sets, out); });
  std::cout << "participants " << kept.size() << " pairs " << sets.rd.size()
            << " -> " << (fs::path(opt.out_dir) / "access_sets.json").string()
            << "\n";
  return 0;
}

int cmd_solve(const Options& opt) {
  RoadNetwork net = load_network(opt);
  std::vector<Participant> parts = load_participants(opt);
  std::vector<EnrichedParticipant> kept = feasible_parts(net, parts, std::cout);
  ModelConfig cfg = model_config(opt);
  AccessSets sets = build_access_sets(net, kept, preprocess_options(opt));
  ModelInstance model = build_model(net, kept, sets, cfg);
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "model.lp", "model",
             [&](std::ostream& out) { export_lp(model, out); });

  SolverOutcome outcome;
  if (!opt.solver_cmd.empty()) {
    ExternalSolverConfig ext;
    ext.command_template = opt.solver_cmd;
    ext.workdir = opt.out_dir;
    outcome = solve_external(model, ext);
  } else {
    SolveLimits limits;
    limits.max_nodes = opt.max_nodes;
    limits.max_seconds = opt.max_seconds;
    outcome = solve_exact(model, limits);
  }

  if (outcome.status == SolveStatus::Infeasible) {
    std::cout << "status infeasible\n";
    return 0;
  }
  if (outcome.status == SolveStatus::LimitReached &&
      !outcome.stats.has_incumbent) {
    throw SolveError("hit limits before finding any solution (" +
                     std::to_string(outcome.stats.nodes_explored) + " nodes)");
  }

  Assignment asg = decode_solution(model, net, outcome.values);
  std::vector<std::string> bad = validate_solution(net, kept, cfg, asg);
  if (!bad.empty()) {
    for (const std::string& b : bad) std::cerr << "invalid: " << b << "\n";
    throw VerifyError("solver output failed validation");
  }
  write_file(fs::path(opt.out_dir) / "solution.json", "solution",
             [&](std::ostream& out) { write_assignment_json(asg, out); });
  write_file(fs::path(opt.out_dir) / "solution.sol", "solution values",
             [&](std::ostream& out) {
               out << "# objective " << outcome.objective.str() << "\n";
               for (const auto& [name, value] : outcome.values) {
                 if (value != 0.0) {
                   out << name << " " << static_cast<std::int64_t>(value)
                       << "\n";
                 }
               }
             });
  std::cout << "status "
            << (outcome.status == SolveStatus::Optimal ? "optimal" : "limit")
            << " objective " << asg.objective.str() << " matched "
            << asg.matched.size() << " driving " << asg.driving.size() << "\n";
  return 0;
}

int cmd_validate(const Options& opt) {
  RoadNetwork net = load_network(opt);
  std::vector<Participant> parts = load_participants(opt);
  std::vector<EnrichedParticipant> kept = feasible_parts(net, parts, std::cout);
  std::ifstream in(opt.solution_path);
  if (!in) throw IoError("cannot read solution file " + opt.solution_path);
  Assignment asg = read_assignment_json(in);
  std::vector<std::string> bad =
      validate_solution(net, kept, model_config(opt), asg);
  if (bad.empty()) {
    std::cout << "valid: " << asg.matched.size() << " matched, "
              << asg.driving.size() << " driving\n";
    return 0;
  }
  for (const std::string& b : bad) std::cout << "invalid: " << b << "\n";
  return 4;
}

int cmd_oracle_check(const Options& opt) {
  RoadNetwork net = load_network(opt);
  std::vector<Participant> parts = load_participants(opt);
  std::vector<EnrichedParticipant> kept = feasible_parts(net, parts, std::cout);
  ModelConfig cfg = model_config(opt);

  OracleLimits limits;
  limits.max_nodes = net.node_count();
  limits.max_participants = kept.size();
  limits.max_route_length = net.node_count() - 1;
  std::size_t owners = 0;
  for (const EnrichedParticipant& p : kept) owners += p.base.is_car_owner();
  limits.max_legs_per_rider = owners > 0 ? owners : 1;
  OracleResult truth = oracle_optimum(net, kept, cfg, limits);

  AccessSets sets = build_access_sets(net, kept, preprocess_options(opt));
  ModelInstance model = build_model(net, kept, sets, cfg);
  SolverOutcome outcome = solve_exact(model);
  if (outcome.status != SolveStatus::Optimal) {
    throw SolveError("exact solve did not finish");
  }
  std::cout << "solver objective " << outcome.objective.str()
            << ", enumeration objective " << truth.objective.str() << " ("
            << truth.assignments_checked << " assignments)\n";
  if (outcome.objective != truth.objective) {
    std::cout << "MISMATCH\n";
    return 4;
  }
  std::cout << "match\n";
  return 0;
}

int cmd_simulate(const Options& opt) {
  RoadNetwork net = load_network(opt);
  std::vector<Participant> parts = load_participants(opt);
  HorizonConfig hc;
  hc.period = opt.period;
  hc.start = opt.start;
  hc.end = opt.end;
  hc.model = model_config(opt);
  hc.preprocess = preprocess_options(opt);
  hc.limits.max_nodes = opt.max_nodes;
  hc.limits.max_seconds = opt.max_seconds;
  HorizonSimulator sim(net, parts, hc);
  RunMetrics metrics = sim.run();
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "metrics.csv", "metrics",
             [&](std::ostream& out) { write_metrics_csv(metrics, out); });
  write_file(fs::path(opt.out_dir) / "summary.json", "summary",
             [&](std::ostream& out) { write_summary_json(metrics, out); });
  write_file(fs::path(opt.out_dir) / "routes.geojson", "routes",
             [&](std::ostream& out) {
               write_routes_geojson(net, sim.committed_routes(), out);
             });
  int failures = 0;
  for (const PeriodReport& rep : metrics.periods) {
    failures += rep.error.empty() ? 0 : 1;
  }
  std::cout << "periods " << metrics.periods.size() << " matched "
            << metrics.total_matches << " shifted " << metrics.total_shifts
            << " expired " << metrics.total_expired << " failures " << failures
            << "\n";
  return 0;
}

void add_network_options(CLI::App* sub, Options& opt, bool with_trips = true) {
  sub->add_option("--nodes", opt.nodes_path, "node table (node_id,lat,lon)")
      ->required();
  sub->add_option("--edges", opt.edges_path,
                  "edge table (tail,head,travel_time_s,hov)")
      ->required();
  if (with_trips) {
    sub->add_option("--trips", opt.trips_path, "trip announcements table")
        ->required();
  }
  sub->add_option("--hov-nodes", opt.hov_nodes_path,
                  "optional node list inducing HOV edges");
}

void add_model_options(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config_path, "key=value configuration file");
  sub->add_flag("--flex,!--no-flex", opt.flex,
                "let car owners ride instead of driving");
  sub->add_flag("--hov,!--no-hov", opt.hov, "enforce HOV minimum occupancy");
  sub->add_option("--min-occupancy", opt.min_occupancy,
                  "people required on HOV edges");
  sub->add_flag("--count-driver,!--no-count-driver", opt.count_driver,
                "driver counts toward HOV occupancy");
  sub->add_flag("--driver-edges,!--no-driver-edges", opt.driver_edges,
                "charge the driver's own edges in the objective");
  sub->add_option("--objective", opt.objective, "direct or weighted")
      ->check(CLI::IsMember({"direct", "weighted"}));
  sub->add_option("--factor", opt.factor, "weight factor for weighted mode");
  sub->add_option("--yen-k", opt.yen_k,
                  "restrict accessibility to the k shortest paths (0 = exact)");
  sub->add_flag("--edge-filter,!--no-edge-filter", opt.edge_filter,
                "time-filter pair edges during preprocessing");
  sub->add_option("--out", opt.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"role-flexible ridesharing with HOV-lane constraints"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* pre = app.add_subcommand("preprocess",
                                     "compute accessibility sets");
  add_network_options(pre, opt);
  add_model_options(pre, opt);

  CLI::App* solve = app.add_subcommand("solve", "build and solve one instance");
  add_network_options(solve, opt);
  add_model_options(solve, opt);
  solve->add_option("--solver-cmd", opt.solver_cmd,
                    "external solver command, {lp} and {sol} substituted");
  solve->add_option("--max-nodes", opt.max_nodes,
                    "search node limit (0 = unlimited)");
  solve->add_option("--max-seconds", opt.max_seconds,
                    "search time limit (0 = unlimited)");

  CLI::App* val = app.add_subcommand("validate",
                                     "check a solution file against inputs");
  add_network_options(val, opt);
  add_model_options(val, opt);
  val->add_option("--solution", opt.solution_path, "solution JSON to check")
      ->required();

  CLI::App* oc = app.add_subcommand(
      "oracle-check", "cross-check the solver against direct enumeration");
  add_network_options(oc, opt);
  add_model_options(oc, opt);

  CLI::App* sim = app.add_subcommand("simulate", "rolling-horizon run");
  add_network_options(sim, opt);
  add_model_options(sim, opt);
  sim->add_option("--period", opt.period, "seconds per decision period");
  sim->add_option("--start", opt.start, "horizon start, seconds of day");
  sim->add_option("--end", opt.end, "horizon end, seconds of day");
  sim->add_option("--max-nodes", opt.max_nodes,
                  "per-period search node limit (0 = unlimited)");
  sim->add_option("--max-seconds", opt.max_seconds,
                  "per-period search time limit (0 = unlimited)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (pre->parsed()) {
      merge_config(opt, pre);
      return cmd_preprocess(opt);
    }
    if (solve->parsed()) {
      merge_config(opt, solve);
      return cmd_solve(opt);
    }
    if (val->parsed()) {
      merge_config(opt, val);
      return cmd_validate(opt);
    }
    if (oc->parsed()) {
      merge_config(opt, oc);
      return cmd_oracle_check(opt);
    }
    if (sim->parsed()) {
      merge_config(opt, sim);
      return cmd_simulate(opt);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const VerifyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
