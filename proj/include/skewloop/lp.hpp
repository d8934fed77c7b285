///
/// file: lp.hpp
///
/// Self-contained dense linear programming: maximize c.x subject to
/// A x = b and per-variable lower bounds, via a two-phase tableau simplex
/// with Bland's anti-cycling rule.  Deterministic pivot order; sized for
/// the few-hundred-variable instances this library produces.
///

#ifndef SKEWLOOP_LP_HPP
#define SKEWLOOP_LP_HPP

#include "skewloop/core.hpp"

namespace skewloop {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Maximization problem: maximize objective . x  s.t.  equality * x = rhs,
/// x_i >= lower_bounds_i.  A lower bound of -infinity marks a free variable.
struct LpProblem {
    Vector objective;
    Matrix equality;
    Vector rhs;
    Vector lower_bounds;  // entries may be -infinity

    static constexpr double kFree = -std::numeric_limits<double>::infinity();

    Index num_vars() const { return objective.size(); }
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vector x;
    double objective = 0.0;
};

namespace detail {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 200000;

/// Standard-form core: minimize c.x s.t. A x = b, x >= 0.
class SimplexTableau {
  public:
    SimplexTableau(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
        rows_ = a_.rows();
        cols_ = a_.cols();
        for (Index i = 0; i < rows_; ++i)
            if (b_(i) < 0.0) {
                a_.row(i) *= -1.0;
                b_(i) *= -1.0;
            }
    }

    /// Runs both phases; returns the status.  On Optimal, solution() holds
    /// the standard-form variable values.
    LpStatus solve(const Vector& cost) {
        if (!phase_one()) return LpStatus::Infeasible;
        return phase_two(cost);
    }

    const Vector& solution() const { return x_; }

  private:
    // tableau_ holds B^{-1} [A | b]; cost_row_ holds the reduced costs and
    // cost_rhs_ the negated objective value of the current basis
    bool phase_one() {
        const Index n_total = cols_ + rows_;
        tableau_.resize(rows_, n_total + 1);
        basis_.resize(rows_);
        cost_row_ = Vector::Zero(n_total);
        cost_rhs_ = 0.0;
        artificial_start_ = cols_;
        if (rows_ == 0) return true;  // nothing to satisfy

        tableau_.block(0, 0, rows_, cols_) = a_;
        tableau_.block(0, cols_, rows_, rows_) = Matrix::Identity(rows_, rows_);
        tableau_.col(n_total) = b_;
        for (Index i = 0; i < rows_; ++i) basis_[i] = cols_ + i;

        // phase-1 cost: sum of artificials; with artificial basis the
        // reduced cost of column j is -sum_i a_ij
        for (Index j = 0; j < cols_; ++j) cost_row_(j) = -tableau_.col(j).head(rows_).sum();
        cost_rhs_ = -b_.sum();  // b >= 0 after the sign flips

        iterate(n_total);
        const double infeasibility = -cost_rhs_;
        if (infeasibility > 1e-9 * (1.0 + b_.maxCoeff())) return false;

        drive_out_artificials();
        return true;
    }

    LpStatus phase_two(const Vector& cost) {
        const Index n_total = tableau_.cols() - 1;
        // rebuild reduced costs for the real objective over the current basis
        cost_row_ = Vector::Zero(n_total);
        cost_rhs_ = 0.0;
        for (Index j = 0; j < cols_; ++j) cost_row_(j) = cost(j);
        for (Index i = 0; i < rows_; ++i) {
            const Index bi = basis_[i];
            const double cb = (bi < cols_) ? cost(bi) : 0.0;
            if (cb != 0.0) {
                cost_row_ -= cb * tableau_.row(i).head(n_total).transpose();
                cost_rhs_ -= cb * tableau_(i, n_total);
            }
        }
        // artificial columns must never re-enter
        for (Index j = artificial_start_; j < n_total; ++j) cost_row_(j) = 0.0;

        const bool bounded = iterate(artificial_start_);
        if (!bounded) return LpStatus::Unbounded;

        x_ = Vector::Zero(cols_);
        for (Index i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) x_(basis_[i]) = std::max(0.0, tableau_(i, tableau_.cols() - 1));
        return LpStatus::Optimal;
    }

    /// Bland's rule main loop over columns [0, eligible_cols).  Returns
    /// false when an improving column proves the problem unbounded.
    bool iterate(Index eligible_cols) {
        const Index rhs_col = tableau_.cols() - 1;
        for (int iter = 0; iter < kMaxPivots; ++iter) {
            // entering: smallest index with negative reduced cost
            Index enter = -1;
            for (Index j = 0; j < eligible_cols; ++j)
                if (cost_row_(j) < -kReducedCostTol) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;  // optimal

            // leaving: min ratio, ties by smallest basic variable index
            Index leave = -1;
            double best_ratio = 0.0;
            for (Index i = 0; i < rows_; ++i) {
                const double aij = tableau_(i, enter);
                if (aij > kPivotTol) {
                    const double ratio = tableau_(i, rhs_col) / aij;
                    if (leave < 0 || ratio < best_ratio - 1e-15 ||
                        (std::abs(ratio - best_ratio) <= 1e-15 && basis_[i] < basis_[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded direction

            pivot(leave, enter);
        }
        throw Error("solve_lp: pivot limit exceeded");
    }

    void pivot(Index row, Index col) {
        const Index rhs_col = tableau_.cols() - 1;
        tableau_.row(row) /= tableau_(row, col);
        for (Index i = 0; i < rows_; ++i) {
            if (i == row) continue;
            const double f = tableau_(i, col);
            if (f != 0.0) tableau_.row(i) -= f * tableau_.row(row);
        }
        const double fc = cost_row_(col);
        if (fc != 0.0) {
            cost_row_ -= fc * tableau_.row(row).head(rhs_col).transpose();
            cost_rhs_ -= fc * tableau_(row, rhs_col);
        }
        basis_[row] = col;
    }

    /// Pivot zero-level artificials out of the basis; a row that offers no
    /// structural pivot is a redundant constraint and is dropped.
    void drive_out_artificials() {
        for (Index i = 0; i < rows_; ++i) {
            if (basis_[i] < artificial_start_) continue;
            Index col = -1;
            for (Index j = 0; j < artificial_start_; ++j)
                if (std::abs(tableau_(i, j)) > kPivotTol) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(i, col);
            } else {
                remove_row(i);
                --i;
            }
        }
    }

    void remove_row(Index row) {
        const Index last = rows_ - 1;
        if (row != last) {
            tableau_.row(row).swap(tableau_.row(last));
            std::swap(basis_[row], basis_[last]);
        }
        tableau_.conservativeResize(last, Eigen::NoChange);
        basis_.resize(last);
        rows_ = last;
    }

    Matrix a_;
    Vector b_;
    Vector x_;
    Matrix tableau_;
    Vector cost_row_;
    double cost_rhs_ = 0.0;
    std::vector<Index> basis_;
    Index rows_ = 0, cols_ = 0;
    Index artificial_start_ = 0;
};

}  // namespace detail

/// Two-phase dense simplex with Bland's anti-cycling rule.  Free variables
/// are split, finite lower bounds shifted; the result is reported in the
/// original variables.
inline LpSolution solve_lp(const LpProblem& p) {
    const Index n = p.num_vars();
    if (p.equality.cols() != n)
        throw InvalidInput("solve_lp: constraint matrix width does not match variable count");
    if (p.equality.rows() != p.rhs.size())
        throw InvalidInput("solve_lp: constraint matrix height does not match rhs");
    if (p.lower_bounds.size() != n)
        throw InvalidInput("solve_lp: lower bound count does not match variable count");
    if (!p.objective.allFinite() || !p.equality.allFinite() || !p.rhs.allFinite())
        throw InvalidInput("solve_lp: non-finite problem data");

    // standard form: shift finite lower bounds, split free variables
    Index cols = 0;
    std::vector<Index> pos_col(n), neg_col(n, -1);
    for (Index j = 0; j < n; ++j) {
        pos_col[j] = cols++;
        if (p.lower_bounds(j) == LpProblem::kFree) neg_col[j] = cols++;
    }

    const Index rows = p.equality.rows();
    Matrix a = Matrix::Zero(rows, cols);
    Vector b = p.rhs;
    Vector cost = Vector::Zero(cols);  // minimization cost = -objective
    for (Index j = 0; j < n; ++j) {
        a.col(pos_col[j]) = p.equality.col(j);
        cost(pos_col[j]) = -p.objective(j);
        if (neg_col[j] >= 0) {
            a.col(neg_col[j]) = -p.equality.col(j);
            cost(neg_col[j]) = p.objective(j);
        } else {
            b -= p.lower_bounds(j) * p.equality.col(j);
        }
    }

    detail::SimplexTableau tableau(std::move(a), std::move(b));
    const LpStatus status = tableau.solve(cost);

    LpSolution out;
    out.status = status;
    if (status == LpStatus::Optimal) {
        const Vector& y = tableau.solution();
        out.x = Vector::Zero(n);
        for (Index j = 0; j < n; ++j) {
            if (neg_col[j] >= 0)
                out.x(j) = y(pos_col[j]) - y(neg_col[j]);
            else
                out.x(j) = p.lower_bounds(j) + y(pos_col[j]);
        }
        out.objective = p.objective.dot(out.x);
    }
    return out;
}

}  // namespace skewloop

#endif  // SKEWLOOP_LP_HPP
