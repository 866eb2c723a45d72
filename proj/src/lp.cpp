#include "coopls/lp.hpp"

#include <algorithm>
#include <string>

#include "coopls/errors.hpp"

namespace coopls {

int LinearProgram::add_var(std::optional<Rat> lb, std::optional<Rat> ub, Rat obj) {
  objective.push_back(std::move(obj));
  lower.push_back(std::move(lb));
  upper.push_back(std::move(ub));
  return num_vars() - 1;
}

void LinearProgram::add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
  rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

/// How one user variable maps into nonnegative internal columns.
///   Shift:  x = offset + x'          (finite lower bound)
///   Mirror: x = offset - x'          (upper bound only)
///   Split:  x = x'(pos) - x'(neg)    (free variable)
struct ColMap {
  enum class Kind { Shift, Mirror, Split } kind = Kind::Shift;
  int col = -1;
  int col_neg = -1;
  Rat offset;
};

struct Simplex {
  int m = 0;           // rows
  int ncols = 0;       // columns excluding the rhs
  std::vector<std::vector<Rat>> a;  // m rows, each ncols+1 wide (last = rhs)
  std::vector<Rat> obj;             // ncols+1 wide, reduced-cost row
  std::vector<int> basis;           // basic column per row
  std::vector<char> barred;         // columns excluded from entering

  Rat& rhs(int r) { return a[r][ncols]; }

  void pivot(int r, int e) {
    const Rat piv = a[r][e];
    for (Rat& v : a[r]) v /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      if (a[i][e] == 0) continue;
      const Rat f = a[i][e];
      for (int j = 0; j <= ncols; ++j) a[i][j] -= f * a[r][j];
    }
    if (obj[e] != 0) {
      const Rat f = obj[e];
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * a[r][j];
    }
    basis[r] = e;
  }

  /// Sets the reduced-cost row for the given cost vector and prices out the
  /// current basis.
  void load_objective(const std::vector<Rat>& cost) {
    obj.assign(ncols + 1, Rat(0));
    for (int j = 0; j < static_cast<int>(cost.size()); ++j) obj[j] = cost[j];
    for (int r = 0; r < m; ++r) {
      const int b = basis[r];
      if (obj[b] == 0) continue;
      const Rat f = obj[b];
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * a[r][j];
    }
  }

  /// Bland's rule: entering column = smallest index with negative reduced
  /// cost; leaving row = smallest basic index among minimum-ratio rows.
  /// Returns false when the phase objective is unbounded below.
  bool run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!barred[j] && obj[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best_ratio;
      for (int r = 0; r < m; ++r) {
        if (a[r][enter] <= 0) continue;
        Rat ratio = rhs(r) / a[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Rat current_value() const { return -obj[ncols]; }
};

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  if (static_cast<int>(lp.lower.size()) != nv ||
      static_cast<int>(lp.upper.size()) != nv) {
    fail(Errc::MalformedLP, "bounds arrays must match the variable count");
  }
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != nv) {
      fail(Errc::MalformedLP, "row width " + std::to_string(row.coeffs.size()) +
                                  " does not match " + std::to_string(nv) +
                                  " variables");
    }
  }
  for (int j = 0; j < nv; ++j) {
    if (lp.lower[j] && lp.upper[j] && *lp.lower[j] > *lp.upper[j]) {
      fail(Errc::MalformedLP,
           "variable " + std::to_string(j) + " has lower bound above upper bound");
    }
  }

  // Internal form: minimize over nonnegative columns.
  std::vector<Rat> user_cost = lp.objective;
  if (lp.sense == Sense::Maximize) {
    for (Rat& c : user_cost) c = -c;
  }

  std::vector<ColMap> map(nv);
  int struct_cols = 0;
  struct BoundRow {
    int var;
    Rat cap;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < nv; ++j) {
    if (lp.lower[j]) {
      map[j].kind = ColMap::Kind::Shift;
      map[j].col = struct_cols++;
      map[j].offset = *lp.lower[j];
      if (lp.upper[j]) bound_rows.push_back({j, *lp.upper[j] - *lp.lower[j]});
    } else if (lp.upper[j]) {
      map[j].kind = ColMap::Kind::Mirror;
      map[j].col = struct_cols++;
      map[j].offset = *lp.upper[j];
    } else {
      map[j].kind = ColMap::Kind::Split;
      map[j].col = struct_cols++;
      map[j].col_neg = struct_cols++;
    }
  }

  const int user_rows = static_cast<int>(lp.rows.size());
  const int m = user_rows + static_cast<int>(bound_rows.size());

  // Assemble internal rows (structural part + rhs), before slack columns.
  std::vector<std::vector<Rat>> rowsa(m, std::vector<Rat>(struct_cols, Rat(0)));
  std::vector<Rat> rowrhs(m, Rat(0));
  std::vector<Rel> rowrel(m, Rel::LE);
  std::vector<char> negated(m, 0);
  for (int r = 0; r < user_rows; ++r) {
    const auto& row = lp.rows[r];
    Rat rhs = row.rhs;
    for (int j = 0; j < nv; ++j) {
      const Rat& aij = row.coeffs[j];
      if (aij == 0) continue;
      switch (map[j].kind) {
        case ColMap::Kind::Shift:
          rowsa[r][map[j].col] += aij;
          rhs -= aij * map[j].offset;
          break;
        case ColMap::Kind::Mirror:
          rowsa[r][map[j].col] -= aij;
          rhs -= aij * map[j].offset;
          break;
        case ColMap::Kind::Split:
          rowsa[r][map[j].col] += aij;
          rowsa[r][map[j].col_neg] -= aij;
          break;
      }
    }
    rowrhs[r] = std::move(rhs);
    rowrel[r] = row.rel;
  }
  for (std::size_t b = 0; b < bound_rows.size(); ++b) {
    const int r = user_rows + static_cast<int>(b);
    rowsa[r][map[bound_rows[b].var].col] = 1;
    rowrhs[r] = bound_rows[b].cap;
    rowrel[r] = Rel::LE;
  }
  for (int r = 0; r < m; ++r) {
    if (rowrhs[r] < 0) {
      for (Rat& v : rowsa[r]) v = -v;
      rowrhs[r] = -rowrhs[r];
      if (rowrel[r] == Rel::LE) {
        rowrel[r] = Rel::GE;
      } else if (rowrel[r] == Rel::GE) {
        rowrel[r] = Rel::LE;
      }
      negated[r] = 1;
    }
  }

  // Column layout: structural, then one slack/surplus per inequality row,
  // then one artificial per GE/EQ row. id_col[r] is a column that is +1 in
  // row r with zero phase-2 cost; its final reduced cost yields the dual.
  int ncols = struct_cols;
  std::vector<int> slack_col(m, -1), art_col(m, -1), id_col(m, -1);
  for (int r = 0; r < m; ++r) {
    if (rowrel[r] != Rel::EQ) slack_col[r] = ncols++;
  }
  for (int r = 0; r < m; ++r) {
    if (rowrel[r] != Rel::LE) art_col[r] = ncols++;
  }

  Simplex sx;
  sx.m = m;
  sx.ncols = ncols;
  sx.barred.assign(ncols, 0);
  sx.a.assign(m, std::vector<Rat>(ncols + 1, Rat(0)));
  sx.basis.assign(m, -1);
  bool need_phase1 = false;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < struct_cols; ++j) sx.a[r][j] = rowsa[r][j];
    sx.a[r][ncols] = rowrhs[r];
    if (slack_col[r] >= 0) {
      sx.a[r][slack_col[r]] = (rowrel[r] == Rel::LE) ? 1 : -1;
    }
    if (art_col[r] >= 0) {
      sx.a[r][art_col[r]] = 1;
      sx.basis[r] = art_col[r];
      need_phase1 = true;
      id_col[r] = art_col[r];
    } else {
      sx.basis[r] = slack_col[r];
      id_col[r] = slack_col[r];
    }
  }

  LPSolution sol;
  if (need_phase1) {
    std::vector<Rat> phase1(ncols, Rat(0));
    for (int r = 0; r < m; ++r) {
      if (art_col[r] >= 0) phase1[art_col[r]] = 1;
    }
    sx.load_objective(phase1);
    sx.run();  // bounded below by zero, cannot report unbounded
    if (sx.current_value() != 0) {
      sol.status = LPStatus::Infeasible;
      return sol;
    }
    // Pivot artificials out of the basis where a structural or slack column
    // is available; rows with no such column are redundant and keep their
    // artificial basic at level zero.
    std::vector<char> is_art(ncols, 0);
    for (int r = 0; r < m; ++r) {
      if (art_col[r] >= 0) is_art[art_col[r]] = 1;
    }
    for (int r = 0; r < m; ++r) {
      if (!is_art[sx.basis[r]]) continue;
      for (int j = 0; j < ncols; ++j) {
        if (is_art[j] || sx.a[r][j] == 0) continue;
        sx.pivot(r, j);
        break;
      }
    }
    for (int r = 0; r < m; ++r) {
      if (art_col[r] >= 0) sx.barred[art_col[r]] = 1;
    }
  }

  std::vector<Rat> phase2(ncols, Rat(0));
  for (int j = 0; j < nv; ++j) {
    switch (map[j].kind) {
      case ColMap::Kind::Shift:
        phase2[map[j].col] += user_cost[j];
        break;
      case ColMap::Kind::Mirror:
        phase2[map[j].col] -= user_cost[j];
        break;
      case ColMap::Kind::Split:
        phase2[map[j].col] += user_cost[j];
        phase2[map[j].col_neg] -= user_cost[j];
        break;
    }
  }
  sx.load_objective(phase2);
  if (!sx.run()) {
    sol.status = LPStatus::Unbounded;
    return sol;
  }

  // Primal recovery in user space.
  std::vector<Rat> xint(ncols, Rat(0));
  for (int r = 0; r < m; ++r) xint[sx.basis[r]] = sx.rhs(r);
  sol.primal.assign(nv, Rat(0));
  for (int j = 0; j < nv; ++j) {
    switch (map[j].kind) {
      case ColMap::Kind::Shift:
        sol.primal[j] = map[j].offset + xint[map[j].col];
        break;
      case ColMap::Kind::Mirror:
        sol.primal[j] = map[j].offset - xint[map[j].col];
        break;
      case ColMap::Kind::Split:
        sol.primal[j] = xint[map[j].col] - xint[map[j].col_neg];
        break;
    }
  }
  sol.objective = 0;
  for (int j = 0; j < nv; ++j) sol.objective += lp.objective[j] * sol.primal[j];

  // Duals: the reduced cost of row r's identity column is -y_r for the
  // internal minimize form; undo row negation and the sense flip.
  sol.duals.assign(user_rows, Rat(0));
  for (int r = 0; r < user_rows; ++r) {
    Rat y = -sx.obj[id_col[r]];
    if (negated[r]) y = -y;
    if (lp.sense == Sense::Maximize) y = -y;
    sol.duals[r] = std::move(y);
  }
  sol.reduced_costs.assign(nv, Rat(0));
  for (int j = 0; j < nv; ++j) {
    Rat rc = lp.objective[j];
    for (int r = 0; r < user_rows; ++r) {
      if (lp.rows[r].coeffs[j] != 0) rc -= sol.duals[r] * lp.rows[r].coeffs[j];
    }
    sol.reduced_costs[j] = std::move(rc);
  }
  sol.status = LPStatus::Optimal;
  return sol;
}

}  // namespace coopls
