#pragma once

#include <optional>
#include <vector>

#include "coopls/rational.hpp"

namespace coopls {

enum class Sense { Minimize, Maximize };
enum class Rel { LE, EQ, GE };

/// Dense linear program over exact rationals. Variables have optional bounds
/// (nullopt = unbounded on that side); rows are linear constraints.
struct LinearProgram {
  Sense sense = Sense::Minimize;
  std::vector<Rat> objective;

  struct Row {
    std::vector<Rat> coeffs;
    Rel rel = Rel::LE;
    Rat rhs;
  };
  std::vector<Row> rows;

  std::vector<std::optional<Rat>> lower;
  std::vector<std::optional<Rat>> upper;

  /// Appends a variable; returns its index. Default bounds are [0, +inf).
  int add_var(std::optional<Rat> lb = Rat(0),
              std::optional<Rat> ub = std::nullopt, Rat obj = Rat(0));
  int add_free_var(Rat obj = Rat(0)) {
    return add_var(std::nullopt, std::nullopt, std::move(obj));
  }
  void add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs);

  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

/// Basic optimal solution from the exact two-phase simplex.
///
/// Dual convention: `duals[r]` multiplies row r and `reduced_costs[j]` is
/// objective[j] minus the dual-weighted column of variable j (computed over
/// the reported rows). At an Optimal solution the following hold exactly:
///
///   objective == sum_r duals[r]*rhs[r] + sum_j reduced_costs[j]*primal[j]
///
/// and for Minimize: duals[r] <= 0 on LE rows, >= 0 on GE rows, free on EQ;
/// reduced_costs[j] >= 0 when primal[j] sits at its lower bound, <= 0 at its
/// upper bound, 0 when strictly between. For Maximize all signs flip. In
/// particular, for a minimization with all variables bounded by 0 below and
/// unbounded above, the duals are feasible for the classical dual and
/// primal and dual objectives coincide (strong duality).
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Rat objective;
  std::vector<Rat> primal;
  std::vector<Rat> duals;
  std::vector<Rat> reduced_costs;
};

/// Exact two-phase dense simplex with Bland's rule (no cycling). Throws
/// Error(MalformedLP) on shape problems or a lower bound above an upper
/// bound. Deterministic: the same program yields the same basis, primal
/// and duals on every run.
LPSolution solve_lp(const LinearProgram& lp);

}  // namespace coopls
