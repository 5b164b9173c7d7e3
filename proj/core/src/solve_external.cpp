#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flexride/errors.hpp"
#include "flexride/solve.hpp"

namespace flexride {

namespace {

std::string substitute(std::string text, const std::string& key,
                       const std::string& value) {
  std::size_t at = 0;
  while ((at = text.find(key, at)) != std::string::npos) {
    text.replace(at, key.size(), value);
    at += value.size();
  }
  return text;
}

std::string slurp(const std::filesystem::path& path, std::size_t cap = 2000) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.size() > cap) text = text.substr(0, cap) + "...";
  return text;
}

} // namespace

SolverOutcome solve_external(const ModelInstance& model,
                             const ExternalSolverConfig& config) {
  namespace fs = std::filesystem;
  auto t0 = std::chrono::steady_clock::now();
  fs::path dir(config.workdir.empty() ? "." : config.workdir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create solver workdir " + dir.string() + ": " +
                  ec.message());
  }
  fs::path lp = dir / "model.lp";
  fs::path sol = dir / "solution.sol";
  fs::path errs = dir / "stderr.txt";
  {
    std::ofstream out(lp, std::ios::binary);
    if (!out) throw IoError("cannot write " + lp.string());
    export_lp(model, out);
  }
  fs::remove(sol, ec);

  std::string cmd = substitute(config.command_template, "{lp}", lp.string());
  cmd = substitute(cmd, "{sol}", sol.string());
  cmd += " 2> " + errs.string();
  int rc = std::system(cmd.c_str());
  if (rc != 0) {
    std::string how = "status " + std::to_string(rc);
    if (WIFEXITED(rc)) {
      how = "exit code " + std::to_string(WEXITSTATUS(rc));
    } else if (WIFSIGNALED(rc)) {
      how = "signal " + std::to_string(WTERMSIG(rc));
    }
    throw SolveError("external solver failed (" + how +
                     "): " + slurp(errs));
  }
  std::ifstream in(sol);
  if (!in) {
    throw SolveError("external solver produced no solution file at " +
                     sol.string());
  }

  std::map<std::string, double> values;
  std::optional<double> reported;
  bool infeasible = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;
    if (first == "#") {
      std::string keyword;
      if (row >> keyword) {
        if (keyword == "objective") {
          double v;
          if (!(row >> v)) {
            throw SolveError("solution file line " + std::to_string(line_no) +
                             ": bad objective header");
          }
          reported = v;
        } else if (keyword == "infeasible") {
          infeasible = true;
        }
      }
      continue;
    }
    if (first[0] == '#') continue;
    double v;
    if (!(row >> v)) {
      throw SolveError("solution file line " + std::to_string(line_no) +
                       ": expected 'name value'");
    }
    if (!values.emplace(first, v).second) {
      throw SolveError("solution file line " + std::to_string(line_no) +
                       ": duplicate entry for " + first);
    }
  }

  SolverOutcome out;
  out.stats.nodes_explored = 0;
  if (infeasible) {
    out.status = SolveStatus::Infeasible;
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
  }
  std::vector<std::int64_t> ints = round_and_verify(model, values);
  out.objective = model.objective_value(ints);
  if (reported &&
      std::abs(out.objective.to_double() - *reported) > 1e-6) {
    std::ostringstream msg;
    msg << "external objective " << *reported
        << " disagrees with recomputed " << out.objective.str();
    throw VerifyError(msg.str());
  }
  for (std::size_t v = 0; v < model.vars.size(); ++v) {
    out.values[model.vars[v].name] = static_cast<double>(ints[v]);
  }
  out.status = SolveStatus::Optimal;
  out.stats.has_incumbent = true;
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

} // namespace flexride
