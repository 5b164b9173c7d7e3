#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "flexride/errors.hpp"
#include "flexride/model.hpp"

namespace flexride {

namespace {

// Exact decimal text for num/den, e.g. "3", "-2.5", "0.125". The
// denominators in play divide a power of ten; anything else is refused
// rather than rounded.
std::string exact_decimal(std::int64_t num, std::int64_t den) {
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
  if (den == 1) return std::to_string(num);
  bool neg = num < 0;
  std::uint64_t mag = neg ? -static_cast<std::uint64_t>(num) : num;
  std::string text = (neg ? "-" : "") + std::to_string(mag / den) + ".";
  std::uint64_t rem = mag % den;
  for (int digit = 0; digit < 18 && rem != 0; ++digit) {
    rem *= 10;
    text.push_back(static_cast<char>('0' + rem / den));
    rem %= den;
  }
  if (rem != 0) {
    throw ModelError("objective coefficient is not a terminating decimal");
  }
  return text;
}

// Accumulates "  c name" tokens into lines, wrapping before they get
// unwieldy. Output is a pure function of the tokens.
class LineWriter {
 public:
  LineWriter(std::ostream& out, std::string head) : out_(out),
      line_(std::move(head)) {}

  void term(const std::string& coef_text, const std::string& name,
            bool negative) {
    std::string tok;
    if (first_) {
      tok = std::string(negative ? " -" : " ") + coef_text + " " + name;
      first_ = false;
    } else {
      tok = (negative ? " - " : " + ") + coef_text + " " + name;
    }
    if (line_.size() + tok.size() > 240) {
      out_ << line_ << "\n";
      line_ = "  ";
      if (tok.size() >= 3 && tok[0] == ' ') tok = tok.substr(1);
    }
    line_ += tok;
  }

  void tail(const std::string& text) { line_ += text; }

  void flush() { out_ << line_ << "\n"; }

 private:
  std::ostream& out_;
  std::string line_;
  bool first_ = true;
};

} // namespace

void export_lp(const ModelInstance& model, std::ostream& out) {
  out << "Maximize\n";
  {
    LineWriter w(out, " obj:");
    for (const VarInfo& v : model.vars) {
      if (v.objective == 0) continue;
      std::int64_t c = v.objective;
      w.term(exact_decimal(c < 0 ? -c : c, model.objective_den), v.name,
             c < 0);
    }
    w.flush();
  }
  out << "Subject To\n";
  for (const ConstraintRow& row : model.rows) {
    if (row.terms.empty()) {
      bool fine = (row.sense == RowSense::LE && 0 <= row.rhs) ||
                  (row.sense == RowSense::GE && 0 >= row.rhs) ||
                  (row.sense == RowSense::EQ && 0 == row.rhs);
      if (!fine) {
        throw ModelError("constant row is infeasible: " + row.name);
      }
      continue; // trivial rows have no LP spelling
    }
    LineWriter w(out, " " + row.name + ":");
    for (const LinearTerm& t : row.terms) {
      std::int64_t c = t.coef;
      w.term(std::to_string(c < 0 ? -c : c), model.vars[t.var].name, c < 0);
    }
    const char* rel = row.sense == RowSense::LE   ? " <= "
                      : row.sense == RowSense::GE ? " >= "
                                                  : " = ";
    w.tail(rel + std::to_string(row.rhs));
    w.flush();
  }
  bool any_bound = false, any_general = false, any_binary = false;
  for (const VarInfo& v : model.vars) {
    if (v.is_binary) {
      any_binary = true;
      if (v.lo != 0 || v.hi != 1) any_bound = true;
    } else {
      any_general = true;
      any_bound = true;
    }
  }
  if (any_bound) {
    out << "Bounds\n";
    for (const VarInfo& v : model.vars) {
      if (v.is_binary) {
        if (v.lo == 0 && v.hi == 1) continue;
        if (v.lo == v.hi) {
          out << " " << v.name << " = " << v.lo << "\n";
        } else {
          out << " " << v.lo << " <= " << v.name << " <= " << v.hi << "\n";
        }
      } else {
        out << " " << v.lo << " <= " << v.name << " <= " << v.hi << "\n";
      }
    }
  }
  if (any_general) {
    out << "Generals\n";
    for (const VarInfo& v : model.vars) {
      if (!v.is_binary) out << " " << v.name << "\n";
    }
  }
  if (any_binary) {
    out << "Binaries\n";
    for (const VarInfo& v : model.vars) {
      if (v.is_binary) out << " " << v.name << "\n";
    }
  }
  out << "End\n";
}

} // namespace flexride
