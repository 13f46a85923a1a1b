#include "fsdamp/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fsdamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tableau over the nonbasic columns only: x_B = rhs - T x_N. With a few
// structural variables and many rows this keeps pivots at O(rows * columns).
class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& lp, const LpOptions& options) : opt_(options) {
    n_ = lp.cost.size();
    m_ = lp.a.rows();
    // Start each variable at the bound that relaxes the rows on balance, so
    // few rows need an artificial.
    Vector start = lp.lower;
    std::vector<bool> start_upper(static_cast<std::size_t>(n_), false);
    for (Index j = 0; j < n_; ++j)
      if (m_ > 0 && lp.a.col(j).sum() < 0.0) {
        start(j) = lp.upper(j);
        start_upper[static_cast<std::size_t>(j)] = true;
      }
    const Vector residual = lp.b - lp.a * start;
    std::vector<Index> art_rows;
    for (Index k = 0; k < m_; ++k)
      if (residual(k) < 0.0) art_rows.push_back(k);
    na_ = static_cast<Index>(art_rows.size());
    total_ = n_ + m_ + na_;

    lo_ = Vector::Zero(total_);
    hi_ = Vector::Constant(total_, kInf);
    lo_.head(n_) = lp.lower;
    hi_.head(n_) = lp.upper;
    value_ = lo_;
    value_.head(n_) = start;
    basic_row_.assign(static_cast<std::size_t>(total_), -1);
    at_upper_.assign(static_cast<std::size_t>(total_), false);
    for (Index j = 0; j < n_; ++j) at_upper_[static_cast<std::size_t>(j)] = start_upper[static_cast<std::size_t>(j)];

    const Index q = n_ + na_;
    tab_ = Matrix::Zero(m_, q);
    rhs_ = lp.b;
    basis_.resize(static_cast<std::size_t>(m_));
    nonbasic_.resize(static_cast<std::size_t>(q));
    for (Index j = 0; j < n_; ++j) set_nonbasic(j, j);
    tab_.leftCols(n_) = lp.a;
    Index next_art = 0;
    for (Index k = 0; k < m_; ++k) {
      Index basic = n_ + k;
      if (next_art < na_ && art_rows[static_cast<std::size_t>(next_art)] == k) {
        // -a x - s + art = -b with the slack nonbasic at zero.
        const Index col = n_ + next_art;
        basic = n_ + m_ + next_art++;
        tab_.row(k).head(n_) *= -1.0;
        rhs_(k) = -rhs_(k);
        tab_(k, col) = -1.0;
        set_nonbasic(n_ + k, col);
      }
      basis_[static_cast<std::size_t>(k)] = basic;
      basic_row_[static_cast<std::size_t>(basic)] = k;
    }
    refresh_basic_values();
  }

  // Returns the sum of artificials after phase 1.
  double phase_one() {
    Vector cost = Vector::Zero(total_);
    cost.tail(na_).setOnes();
    run(cost);
    return value_.tail(na_).sum();
  }

  void phase_two(const Vector& structural_cost) {
    for (Index j = n_ + m_; j < total_; ++j) hi_(j) = 0.0;
    Vector cost = Vector::Zero(total_);
    cost.head(n_) = structural_cost;
    run(cost);
  }

  Vector structural() const { return value_.head(n_); }
  int pivots() const { return pivots_; }

 private:
  void set_nonbasic(Index var, Index col) {
    nonbasic_[static_cast<std::size_t>(col)] = var;
  }

  void refresh_basic_values() {
    Vector xn(tab_.cols());
    for (Index c = 0; c < tab_.cols(); ++c) xn(c) = value_(nonbasic_[static_cast<std::size_t>(c)]);
    const Vector xb = rhs_ - tab_ * xn;
    for (Index r = 0; r < m_; ++r) value_(basis_[static_cast<std::size_t>(r)]) = xb(r);
  }

  void pivot(Index row, Index col) {
    const double p = tab_(row, col);
    const Vector column = tab_.col(col);
    tab_.row(row) /= p;
    rhs_(row) /= p;
    tab_(row, col) = 1.0 / p;
    for (Index r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = column(r);
      if (f == 0.0) continue;
      const double keep = -f / p;
      tab_.row(r) -= f * tab_.row(row);
      tab_(r, col) = keep;
      rhs_(r) -= f * rhs_(row);
    }
    const Index entering = nonbasic_[static_cast<std::size_t>(col)];
    const Index leaving = basis_[static_cast<std::size_t>(row)];
    basic_row_[static_cast<std::size_t>(leaving)] = -1;
    set_nonbasic(leaving, col);
    basis_[static_cast<std::size_t>(row)] = entering;
    basic_row_[static_cast<std::size_t>(entering)] = row;
    at_upper_[static_cast<std::size_t>(entering)] = false;
    ++pivots_;
  }

  void run(const Vector& cost) {
    while (true) {
      if (pivots_ > opt_.max_pivots) throw std::runtime_error("LP pivot limit exceeded");
      Vector cb(m_);
      for (Index r = 0; r < m_; ++r) cb(r) = cost(basis_[static_cast<std::size_t>(r)]);
      const RowVector basic_part = cb.transpose() * tab_;

      // Bland: the eligible variable with the smallest index enters.
      Index enter_col = -1;
      double dir = 0.0;
      for (Index c = 0; c < tab_.cols(); ++c) {
        const Index j = nonbasic_[static_cast<std::size_t>(c)];
        if (!(hi_(j) > lo_(j))) continue;
        if (enter_col >= 0 && j > nonbasic_[static_cast<std::size_t>(enter_col)]) continue;
        const double reduced = cost(j) - basic_part(c);
        const bool up = at_upper_[static_cast<std::size_t>(j)];
        if (!up && reduced < -opt_.optimality_tol) {
          enter_col = c;
          dir = 1.0;
        } else if (up && reduced > opt_.optimality_tol) {
          enter_col = c;
          dir = -1.0;
        }
      }
      if (enter_col < 0) break;
      const Index enter = nonbasic_[static_cast<std::size_t>(enter_col)];

      double best = kInf;
      Index leave_row = -1;
      bool leave_to_upper = false;
      for (Index r = 0; r < m_; ++r) {
        const double rate = -tab_(r, enter_col) * dir;
        if (std::abs(rate) <= opt_.pivot_tol) continue;
        const Index b = basis_[static_cast<std::size_t>(r)];
        double limit;
        bool to_upper;
        if (rate < 0.0) {
          limit = (value_(b) - lo_(b)) / -rate;
          to_upper = false;
        } else {
          if (hi_(b) == kInf) continue;
          limit = (hi_(b) - value_(b)) / rate;
          to_upper = true;
        }
        limit = std::max(limit, 0.0);
        // Bland: among ties the basic variable with the smallest index leaves.
        const bool tie = leave_row >= 0 && std::abs(limit - best) <= 1e-13;
        if ((!tie && limit < best) || (tie && b < basis_[static_cast<std::size_t>(leave_row)])) {
          best = limit;
          leave_row = r;
          leave_to_upper = to_upper;
        }
      }
      const double flip = hi_(enter) - lo_(enter);
      if (flip <= best) leave_row = -1;
      const double step = std::min(flip, best);
      if (step == kInf) throw std::runtime_error("LP is unbounded");

      for (Index r = 0; r < m_; ++r) {
        const Index b = basis_[static_cast<std::size_t>(r)];
        value_(b) -= tab_(r, enter_col) * dir * step;
      }
      value_(enter) += dir * step;

      if (leave_row < 0) {
        at_upper_[static_cast<std::size_t>(enter)] = dir > 0.0;
        value_(enter) = dir > 0.0 ? hi_(enter) : lo_(enter);
        continue;
      }
      const Index leaving = basis_[static_cast<std::size_t>(leave_row)];
      pivot(leave_row, enter_col);
      at_upper_[static_cast<std::size_t>(leaving)] = leave_to_upper;
      value_(leaving) = leave_to_upper ? hi_(leaving) : lo_(leaving);
    }
    refresh_basic_values();
  }

  LpOptions opt_;
  Index n_ = 0, m_ = 0, na_ = 0, total_ = 0;
  Matrix tab_;
  Vector rhs_;
  Vector lo_, hi_, value_;
  std::vector<Index> basis_;
  std::vector<Index> nonbasic_;
  std::vector<Index> basic_row_;
  std::vector<bool> at_upper_;
  int pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LpProblem& problem, const LpOptions& options) {
  const Index n = problem.cost.size();
  if (problem.lower.size() != n || problem.upper.size() != n || problem.a.cols() != n ||
      problem.b.size() != problem.a.rows())
    throw std::invalid_argument("LP dimensions are inconsistent");
  if (!problem.lower.allFinite() || !problem.upper.allFinite())
    throw std::invalid_argument("LP bounds must be finite");
  if ((problem.lower.array() > problem.upper.array()).any())
    throw std::invalid_argument("LP lower bound exceeds upper bound");

  BoundedSimplex simplex(problem, options);
  LpResult result;
  const double scale = 1.0 + problem.b.cwiseAbs().sum();
  const double art = simplex.phase_one();
  if (art > options.feasibility_tol * scale) {
    result.status = LpStatus::infeasible;
  } else {
    simplex.phase_two(problem.cost);
  }
  result.x = simplex.structural().cwiseMax(problem.lower).cwiseMin(problem.upper);
  result.objective = problem.cost.dot(result.x);
  result.infeasibility = (problem.a * result.x - problem.b).cwiseMax(0.0).sum();
  result.pivots = simplex.pivots();
  return result;
}

}  // namespace fsdamp
