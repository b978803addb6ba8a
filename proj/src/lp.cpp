#include "splitspan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "splitspan/error.hpp"

namespace splitspan {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), a_(rows, std::vector<Rat>(cols + 1)), basis_(rows), obj_(cols + 1) {}

  Rat& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rat& rhs(std::size_t r) { return a_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  [[nodiscard]] std::size_t rows() const { return a_.size(); }

  // Installs the cost vector and prices out the current basis.
  void set_cost(const std::vector<Rat>& cost) {
    for (std::size_t c = 0; c < cols_; ++c) obj_[c] = cost[c];
    obj_[cols_] = Rat(0);
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rat cb = cost[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (!a_[r][c].is_zero()) obj_[c] -= cb * a_[r][c];
      }
    }
  }

  // Returns false if the objective is unbounded below.
  bool optimise(const std::vector<bool>& allowed) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && obj_[c].sign() < 0) {
          enter = c;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (a_[r][*enter].sign() <= 0) continue;
        const Rat ratio = a_[r][cols_] / a_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rat p = a_[r][c];
    for (auto& v : a_[r]) {
      if (!v.is_zero()) v /= p;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || a_[i][c].is_zero()) continue;
      eliminate(a_[i], a_[r], a_[i][c]);
    }
    if (!obj_[c].is_zero()) eliminate(obj_, a_[r], obj_[c]);
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  [[nodiscard]] Rat objective_value() const { return -obj_[cols_]; }

 private:
  static void eliminate(std::vector<Rat>& row, const std::vector<Rat>& pivot_row, Rat factor) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!pivot_row[k].is_zero()) row[k] -= factor * pivot_row[k];
    }
  }

  std::size_t cols_;
  std::vector<std::vector<Rat>> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rat> obj_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  const std::size_t m = lp.constraints.size();
  if (lp.objective.size() != n) throw Error(ErrorCode::InvalidArgument, "objective size mismatch");

  // Column layout: originals, one slack/surplus per inequality, one artificial per row needing one.
  std::vector<Relation> rel(m);
  std::vector<bool> flip(m, false);
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    if (c.coeffs.size() != n) throw Error(ErrorCode::InvalidArgument, "constraint size mismatch");
    rel[i] = c.relation;
    if (c.rhs.sign() < 0) {
      flip[i] = true;
      if (rel[i] == Relation::GreaterEqual) {
        rel[i] = Relation::LessEqual;
      } else if (rel[i] == Relation::LessEqual) {
        rel[i] = Relation::GreaterEqual;
      }
    }
    if (rel[i] != Relation::Equal) ++slacks;
    if (rel[i] != Relation::LessEqual) ++artificials;
  }
  const std::size_t cols = n + slacks + artificials;
  Tableau t(m, cols);
  std::size_t next_slack = n;
  std::size_t next_art = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    const Rat sgn = flip[i] ? Rat(-1) : Rat(1);
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sgn * c.coeffs[j];
    t.rhs(i) = sgn * c.rhs;
    if (rel[i] == Relation::LessEqual) {
      t.at(i, next_slack) = Rat(1);
      t.basic(i) = next_slack++;
    } else {
      if (rel[i] == Relation::GreaterEqual) t.at(i, next_slack++) = Rat(-1);
      t.at(i, next_art) = Rat(1);
      t.basic(i) = next_art++;
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);
  if (artificials > 0) {
    std::vector<Rat> phase1(cols);
    for (std::size_t j = n + slacks; j < cols; ++j) phase1[j] = Rat(1);
    t.set_cost(phase1);
    t.optimise(allowed);
    if (t.objective_value().sign() > 0) return result;  // infeasible
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basic(r) < n + slacks) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n + slacks; ++j) {
        if (!t.at(r, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col) {
        t.pivot(r, *col);
        ++r;
      } else {
        t.drop_row(r);  // redundant constraint
      }
    }
    for (std::size_t j = n + slacks; j < cols; ++j) allowed[j] = false;
  }

  std::vector<Rat> cost(cols);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  t.set_cost(cost);
  if (!t.optimise(allowed)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rat(0));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basic(r) < n) result.x[t.basic(r)] = t.rhs(r);
  }
  result.value = Rat(0);
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];
  return result;
}

FloatLpResult solve_lp_float(const LinearProgram& lp) {
  constexpr double eps = 1e-9;
  const std::size_t n = lp.variables;
  const std::size_t m = lp.constraints.size();
  std::size_t slacks = 0;
  for (const auto& c : lp.constraints) slacks += c.relation != Relation::Equal ? 1 : 0;
  const std::size_t art = n + slacks;
  const std::size_t cols = art + m;
  const std::size_t width = cols + 1;

  std::vector<double> t(m * width, 0.0);
  std::vector<double> flip(m, 1.0);
  std::vector<std::size_t> basis(m);
  std::size_t next_slack = n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    double* row = &t[i * width];
    for (std::size_t j = 0; j < n; ++j) row[j] = c.coeffs[j].approx();
    row[cols] = c.rhs.approx();
    if (c.relation == Relation::GreaterEqual) row[next_slack++] = -1.0;
    if (c.relation == Relation::LessEqual) row[next_slack++] = 1.0;
    if (row[cols] < 0) {
      flip[i] = -1.0;
      for (std::size_t j = 0; j <= cols; ++j) row[j] = -row[j];
    }
    row[art + i] = 1.0;
    basis[i] = art + i;
  }

  std::vector<double> obj(width, 0.0);
  const auto price = [&](const std::vector<double>& cost) {
    for (std::size_t j = 0; j < cols; ++j) obj[j] = cost[j];
    obj[cols] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= cb * t[i * width + j];
    }
  };
  const auto pivot = [&](std::size_t r, std::size_t c) {
    double* pr = &t[r * width];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j <= cols; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      double* row = &t[i * width];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) row[j] -= f * pr[j];
      row[c] = 0.0;
    }
    const double f = obj[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * pr[j];
      obj[c] = 0.0;
    }
    basis[r] = c;
  };
  const auto optimise = [&](std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj[j] < -eps) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      double best = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double a = t[i * width + *enter];
        if (a <= eps) continue;
        const double ratio = t[i * width + cols] / a;
        if (!leave || ratio < best - eps || (ratio <= best + eps && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  };
  const auto duals = [&](const std::vector<double>& cost) {
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = flip[i] * (cost[art + i] - obj[art + i]);
    return y;
  };

  FloatLpResult result;
  std::vector<double> cost(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) cost[art + i] = 1.0;
  price(cost);
  optimise(cols);
  if (-obj[cols] > 1e-7) {
    result.status = LpStatus::Infeasible;
    result.duals = duals(cost);
    return result;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < art) continue;
    for (std::size_t j = 0; j < art; ++j) {
      if (std::abs(t[i * width + j]) > 1e-7) {
        pivot(i, j);
        break;
      }
    }
  }
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j].approx();
  price(cost);
  if (!optimise(art)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = t[i * width + cols];
  }
  for (std::size_t j = 0; j < n; ++j) result.value += cost[j] * result.x[j];
  result.duals = duals(cost);
  return result;
}

Rat certified_bound(const LinearProgram& lp, std::vector<Rat> y, const Rat& total,
                    bool with_objective) {
  Rat bound;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto rel = lp.constraints[i].relation;
    if ((rel == Relation::GreaterEqual && y[i].sign() < 0) || (rel == Relation::LessEqual && y[i].sign() > 0)) {
      y[i] = Rat(0);
    }
    if (!y[i].is_zero()) bound += y[i] * lp.constraints[i].rhs;
  }
  Rat worst;
  for (std::size_t j = 0; j < lp.variables; ++j) {
    Rat r = with_objective ? -lp.objective[j] : Rat(0);
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
      const Rat& a = lp.constraints[i].coeffs[j];
      if (!a.is_zero() && !y[i].is_zero()) r += y[i] * a;
    }
    worst = max(worst, r);
  }
  return bound - worst * total;
}

Rat rationalize(double v, std::int64_t max_den) {
  const bool negative = v < 0;
  double x = std::abs(v);
  if (!(x < 9e15)) throw RationalOverflow("value out of range for rationalize");
  // Convergents p/q of the continued fraction of x.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(x);
    const auto ai = static_cast<std::int64_t>(a);
    if (q1 != 0 && ai > (max_den - q0) / q1) break;
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  Rat r(p1, q1);
  return negative ? -r : r;
}

}  // namespace splitspan
