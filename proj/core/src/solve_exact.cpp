#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "flexride/errors.hpp"
#include "flexride/solve.hpp"

namespace flexride {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  if (r != 0 && ((r < 0) == (b < 0))) ++q;
  return q;
}

struct LimitHit {};

class Search {
 public:
  Search(const ModelInstance& model, const SolveLimits& limits)
      : model_(model), limits_(limits), start_(Clock::now()) {
    for (const VarInfo& v : model.vars) {
      if (!v.is_binary && v.objective != 0) {
        throw ModelError("objective on non-binary variable " + v.name +
                         " is unsupported");
      }
      lo_.push_back(v.lo);
      hi_.push_back(v.hi);
    }
    rows_of_var_.resize(model.vars.size());
    for (std::size_t r = 0; r < model.rows.size(); ++r) {
      for (const LinearTerm& t : model.rows[r].terms) {
        rows_of_var_[t.var].push_back(static_cast<int>(r));
      }
    }
    in_queue_.assign(model.rows.size(), 0);
  }

  SolverOutcome run() {
    SolverOutcome out;
    bool limited = false;
    for (std::size_t r = 0; r < model_.rows.size(); ++r) enqueue(r);
    try {
      if (propagate()) dfs();
    } catch (const LimitHit&) {
      limited = true;
    }
    out.stats.nodes_explored = nodes_;
    out.stats.wall_seconds = elapsed();
    out.stats.has_incumbent = best_.has_value();
    if (best_) {
      for (std::size_t v = 0; v < model_.vars.size(); ++v) {
        out.values[model_.vars[v].name] = static_cast<double>((*best_)[v]);
      }
      out.objective = Rational(best_obj_, model_.objective_den);
    }
    out.status = limited ? SolveStatus::LimitReached
                 : best_ ? SolveStatus::Optimal
                         : SolveStatus::Infeasible;
    return out;
  }

 private:
  using Clock = std::chrono::steady_clock;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  void check_limits() {
    if (limits_.max_nodes > 0 && nodes_ >= limits_.max_nodes) throw LimitHit{};
    if (limits_.max_seconds > 0 && (nodes_ & 1023) == 0 &&
        elapsed() > limits_.max_seconds) {
      throw LimitHit{};
    }
  }

  void enqueue(std::size_t row) {
    if (!in_queue_[row]) {
      in_queue_[row] = 1;
      queue_.push_back(static_cast<int>(row));
    }
  }

  struct TrailEntry {
    int var;
    bool is_lo;
    std::int64_t old;
  };

  bool set_lo(int v, std::int64_t val) {
    if (val <= lo_[v]) return true;
    if (val > hi_[v]) return false;
    trail_.push_back({v, true, lo_[v]});
    lo_[v] = val;
    for (int r : rows_of_var_[v]) enqueue(r);
    return true;
  }

  bool set_hi(int v, std::int64_t val) {
    if (val >= hi_[v]) return true;
    if (val < lo_[v]) return false;
    trail_.push_back({v, false, hi_[v]});
    hi_[v] = val;
    for (int r : rows_of_var_[v]) enqueue(r);
    return true;
  }

  void rollback(std::size_t mark) {
    while (trail_.size() > mark) {
      const TrailEntry& e = trail_.back();
      (e.is_lo ? lo_ : hi_)[e.var] = e.old;
      trail_.pop_back();
    }
  }

  void clear_queue() {
    for (std::size_t k = qhead_; k < queue_.size(); ++k) in_queue_[queue_[k]] = 0;
    queue_.clear();
    qhead_ = 0;
  }

  // Tightens bounds until fixpoint. False means the current box is empty.
  bool propagate() {
    while (qhead_ < queue_.size()) {
      int r = queue_[qhead_++];
      in_queue_[r] = 0;
      const ConstraintRow& row = model_.rows[r];
      std::int64_t min_sum = 0, max_sum = 0;
      for (const LinearTerm& t : row.terms) {
        if (t.coef > 0) {
          min_sum += t.coef * lo_[t.var];
          max_sum += t.coef * hi_[t.var];
        } else {
          min_sum += t.coef * hi_[t.var];
          max_sum += t.coef * lo_[t.var];
        }
      }
      bool need_le = row.sense != RowSense::GE;
      bool need_ge = row.sense != RowSense::LE;
      if (need_le && min_sum > row.rhs) { clear_queue(); return false; }
      if (need_ge && max_sum < row.rhs) { clear_queue(); return false; }
      for (const LinearTerm& t : row.terms) {
        std::int64_t own_min =
            t.coef > 0 ? t.coef * lo_[t.var] : t.coef * hi_[t.var];
        std::int64_t own_max =
            t.coef > 0 ? t.coef * hi_[t.var] : t.coef * lo_[t.var];
        if (need_le) {
          std::int64_t slack = row.rhs - (min_sum - own_min);
          bool ok = t.coef > 0 ? set_hi(t.var, floor_div(slack, t.coef))
                               : set_lo(t.var, ceil_div(slack, t.coef));
          if (!ok) { clear_queue(); return false; }
        }
        if (need_ge) {
          std::int64_t slack = row.rhs - (max_sum - own_max);
          bool ok = t.coef > 0 ? set_lo(t.var, ceil_div(slack, t.coef))
                               : set_hi(t.var, floor_div(slack, t.coef));
          if (!ok) { clear_queue(); return false; }
        }
      }
    }
    qhead_ = 0;
    queue_.clear();
    return true;
  }

  std::int64_t objective_bound() const {
    std::int64_t b = 0;
    for (std::size_t v = 0; v < model_.vars.size(); ++v) {
      std::int64_t c = model_.vars[v].objective;
      if (c > 0) b += c * hi_[v];
      else if (c < 0) b += c * lo_[v];
    }
    return b;
  }

  void dfs() {
    ++nodes_;
    check_limits();
    if (best_ && objective_bound() <= best_obj_) return;
    int branch = -1;
    for (std::size_t v = 0; v < model_.vars.size(); ++v) {
      if (model_.vars[v].is_binary && lo_[v] < hi_[v]) {
        branch = static_cast<int>(v);
        break;
      }
    }
    if (branch < 0) {
      settle_and_record();
      return;
    }
    for (std::int64_t val : {0, 1}) {
      std::size_t mark = trail_.size();
      if (set_lo(branch, val) && set_hi(branch, val) && propagate()) {
        dfs();
      } else {
        clear_queue(); // a failed set leaves its enqueued rows behind
      }
      rollback(mark);
    }
  }

  // All binaries are fixed here. Counters, orders and clocks appear in the
  // remaining rows only as single variables or as differences with unit
  // coefficients, so their minimal feasible values come from a longest-path
  // pass over the implied difference graph.
  void settle_and_record() {
    std::vector<std::int64_t> values(lo_);
    std::vector<char> unfixed(model_.vars.size(), 0);
    std::vector<std::int64_t> slo(lo_), shi(hi_);
    std::vector<int> loose;
    for (std::size_t v = 0; v < model_.vars.size(); ++v) {
      if (lo_[v] < hi_[v]) {
        unfixed[v] = 1;
        loose.push_back(static_cast<int>(v));
      }
    }
    struct Edge {
      int from, to;
      std::int64_t weight; // value[to] >= value[from] + weight
    };
    std::vector<Edge> edges;
    for (const ConstraintRow& row : model_.rows) {
      std::int64_t constant = 0;
      int nloose = 0;
      const LinearTerm* a = nullptr;
      const LinearTerm* b = nullptr;
      for (const LinearTerm& t : row.terms) {
        if (unfixed[t.var]) {
          if (nloose == 0) a = &t;
          else b = &t;
          ++nloose;
        } else {
          constant += t.coef * lo_[t.var];
        }
      }
      bool need_le = row.sense != RowSense::GE;
      bool need_ge = row.sense != RowSense::LE;
      if (nloose == 0) {
        if ((need_le && constant > row.rhs) ||
            (need_ge && constant < row.rhs)) {
          return; // box looked fine but the fixed part fails: dead leaf
        }
        continue;
      }
      if (nloose == 1) {
        std::int64_t s = row.rhs - constant;
        if (need_le) {
          if (a->coef > 0) shi[a->var] = std::min(shi[a->var], floor_div(s, a->coef));
          else slo[a->var] = std::max(slo[a->var], ceil_div(s, a->coef));
        }
        if (need_ge) {
          if (a->coef > 0) slo[a->var] = std::max(slo[a->var], ceil_div(s, a->coef));
          else shi[a->var] = std::min(shi[a->var], floor_div(s, a->coef));
        }
        if (slo[a->var] > shi[a->var]) return;
        continue;
      }
      if (nloose == 2 && a->coef + b->coef == 0 &&
          (a->coef == 1 || a->coef == -1)) {
        const LinearTerm* pos = a->coef == 1 ? a : b;
        const LinearTerm* neg = a->coef == 1 ? b : a;
        std::int64_t s = row.rhs - constant; // pos - neg vs s
        if (need_le) edges.push_back({pos->var, neg->var, -s});
        if (need_ge) edges.push_back({neg->var, pos->var, s});
        continue;
      }
      throw ModelError("row " + row.name +
                       " is not settleable once binaries are fixed");
    }
    for (int v : loose) values[v] = slo[v];
    bool changed = true;
    for (std::size_t pass = 0; changed && pass <= loose.size() + 1; ++pass) {
      changed = false;
      for (const Edge& e : edges) {
        if (values[e.from] + e.weight > values[e.to]) {
          values[e.to] = values[e.from] + e.weight;
          if (values[e.to] > shi[e.to]) return;
          changed = true;
        }
      }
    }
    if (changed) return; // positive cycle: no finite schedule exists
    for (const ConstraintRow& row : model_.rows) {
      std::int64_t lhs = 0;
      for (const LinearTerm& t : row.terms) lhs += t.coef * values[t.var];
      bool ok = row.sense == RowSense::LE   ? lhs <= row.rhs
                : row.sense == RowSense::GE ? lhs >= row.rhs
                                            : lhs == row.rhs;
      if (!ok) {
        throw ModelError("settlement left row " + row.name + " violated");
      }
    }
    std::int64_t obj = 0;
    for (std::size_t v = 0; v < model_.vars.size(); ++v) {
      obj += model_.vars[v].objective * values[v];
    }
    if (!best_ || obj > best_obj_) {
      best_ = std::move(values);
      best_obj_ = obj;
    }
  }

  const ModelInstance& model_;
  SolveLimits limits_;
  Clock::time_point start_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::vector<int>> rows_of_var_;
  std::vector<TrailEntry> trail_;
  std::vector<int> queue_;
  std::size_t qhead_ = 0;
  std::vector<char> in_queue_;
  std::int64_t nodes_ = 0;
  std::optional<std::vector<std::int64_t>> best_;
  std::int64_t best_obj_ = 0;
};

} // namespace

SolverOutcome solve_exact(const ModelInstance& model,
                          const SolveLimits& limits) {
  return Search(model, limits).run();
}

} // namespace flexride
