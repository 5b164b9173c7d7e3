#ifndef FLEXRIDE_SOLVE_HPP
#define FLEXRIDE_SOLVE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "flexride/model.hpp"
#include "flexride/rational.hpp"

namespace flexride {

struct SolveLimits {
  std::int64_t max_nodes = 0; // 0 = unlimited
  double max_seconds = 0.0;   // 0 = unlimited
};

enum class SolveStatus { Optimal, Infeasible, LimitReached };

struct SolveStats {
  std::int64_t nodes_explored = 0;
  double wall_seconds = 0.0;
  bool has_incumbent = false;
};

struct SolverOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::map<std::string, double> values; // every variable, when incumbent
  Rational objective;                   // exact, when incumbent
  SolveStats stats;
};

/// Built-in exact solver: depth-first branch and bound over the binary
/// variables in declaration order (zero branch first), with interval
/// propagation at every node. Counters, orders and clocks are settled at
/// the leaves from the difference constraints, so the reported optimum is
/// exact and the tie-broken solution deterministic: among objective ties
/// the lexicographically smallest binary vector in branch order wins.
SolverOutcome solve_exact(const ModelInstance& model,
                          const SolveLimits& limits = {});

/// External solver adapter. Writes `model.lp` into `workdir`, substitutes
/// `{lp}` and `{sol}` in the command template, runs it through the shell,
/// then parses, rounds and re-verifies the solution file. The file lists
/// `name value` pairs, one per line, `#` comments allowed; an optional
/// `# objective <v>` header is cross-checked against the recomputed
/// objective and a `# infeasible` header reports infeasibility. Missing
/// variables default to zero. Throws SolveError when the command fails
/// and VerifyError when the solution does not check out.
struct ExternalSolverConfig {
  std::string command_template; // e.g. "mysolver {lp} --out {sol}"
  std::string workdir;
};

SolverOutcome solve_external(const ModelInstance& model,
                             const ExternalSolverConfig& config);

} // namespace flexride

#endif
