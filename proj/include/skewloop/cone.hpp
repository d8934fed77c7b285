///
/// file: cone.hpp
///
/// Membership of a vector in the interior of the convex cone over a finite
/// direction set, decided by linear programming with machine-checkable
/// certificates: strictly positive interior weights, or a separating unit
/// normal u with u.g <= 0 <= u.dirs.
///

#ifndef SKEWLOOP_CONE_HPP
#define SKEWLOOP_CONE_HPP

#include "skewloop/core.hpp"
#include "skewloop/lp.hpp"

#include <optional>

namespace skewloop {

/// The direction set does not span R^n; callers must restrict to the span
/// before asking cone questions.
struct FullnessError : Error {
    using Error::Error;
};

enum class ConeVerdict { Interior, Boundary, Outside };

inline const char* to_string(ConeVerdict v) {
    switch (v) {
        case ConeVerdict::Interior: return "Interior";
        case ConeVerdict::Boundary: return "Boundary";
        default: return "Outside";
    }
}

/// Certificate for g versus the interior of the convex cone over `dirs`.
///   Interior: weights (all >= delta) with sum_i weights_i dirs_i = g.
///   Boundary: unit normal u with u.g ~ 0 and u.dirs_i >= 0.
///   Outside:  unit normal u with u.g < 0 and u.dirs_i >= 0.
struct ConeCertificate {
    ConeVerdict verdict = ConeVerdict::Outside;
    std::optional<std::vector<double>> weights;  // present iff Interior
    std::optional<double> delta;                 // LP margin, present iff Interior
    std::optional<Vector> normal;                // present iff Boundary or Outside
};

/// Independent re-validation of a certificate against the instance it was
/// issued for (the acceptance-grade soundness inequalities).
inline bool certificate_is_sound(const ConeCertificate& cert, const Vector& g,
                                 const std::vector<Vector>& dirs, double coord_tol = 1e-8) {
    if (cert.verdict == ConeVerdict::Interior) {
        if (!cert.weights || !cert.delta) return false;
        if (cert.weights->size() != dirs.size()) return false;
        Vector recon = Vector::Zero(g.size());
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const double w = (*cert.weights)[i];
            if (!(w > 0.0) || w + 1e-15 < *cert.delta) return false;
            recon += w * dirs[i];
        }
        return (recon - g).cwiseAbs().maxCoeff() <= coord_tol;
    }
    if (!cert.normal) return false;
    const Vector& u = *cert.normal;
    if (std::abs(u.norm() - 1.0) > 1e-9) return false;
    if (u.dot(g) > coord_tol) return false;
    if (cert.verdict == ConeVerdict::Boundary && std::abs(u.dot(g)) > coord_tol) return false;
    if (cert.verdict == ConeVerdict::Outside && !(u.dot(g) < -coord_tol)) return false;
    for (const Vector& d : dirs)
        if (u.dot(d) < -coord_tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Fullness
// ---------------------------------------------------------------------------

/// Numerical rank of the direction set; the set is "full" iff this equals
/// the ambient dimension.
inline int fullness_rank(const std::vector<Vector>& dirs, const ToleranceConfig& tol = {}) {
    if (dirs.empty()) throw InvalidInput("fullness_rank: empty direction set");
    const Index n = dirs.front().size();
    Matrix m(static_cast<Index>(dirs.size()), n);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        require_dimension(dirs[i], n, "fullness_rank");
        require_finite(dirs[i], "fullness_rank");
        m.row(static_cast<Index>(i)) = dirs[i];
    }
    return eliminate_rank(m, tol.rank_eps);
}

inline void require_full(const std::vector<Vector>& dirs, const ToleranceConfig& tol,
                         const char* who) {
    const Index n = dirs.front().size();
    const int rank = fullness_rank(dirs, tol);
    if (rank != n)
        throw FullnessError(std::string(who) + ": direction set spans only " +
                            std::to_string(rank) + " of " + std::to_string(n) + " dimensions");
}

// ---------------------------------------------------------------------------
// The two LP workhorses
// ---------------------------------------------------------------------------

namespace detail {

struct InteriorLpResult {
    bool feasible = false;
    double delta = 0.0;            // optimal min weight (capped)
    std::vector<double> weights;   // valid iff feasible
};

/// max delta s.t. sum_i w_i cols_i = g, w_i >= delta, 0 <= delta <= cap.
/// Substituting w_i = nu_i + delta keeps everything in lower-bound form.
/// The cap keeps the LP bounded when the cone is all of R^n.
inline InteriorLpResult interior_weights_lp(const std::vector<Vector>& cols, const Vector& g,
                                            double cap) {
    const Index n = g.size();
    const Index m = static_cast<Index>(cols.size());
    Vector col_sum = Vector::Zero(n);
    for (const Vector& c : cols) col_sum += c;

    // variables: nu_1..nu_m, delta, cap slack
    LpProblem p;
    p.objective = Vector::Zero(m + 2);
    p.objective(m) = 1.0;
    p.equality = Matrix::Zero(n + 1, m + 2);
    for (Index j = 0; j < m; ++j) p.equality.col(j).head(n) = cols[j];
    p.equality.col(m).head(n) = col_sum;
    p.equality(n, m) = 1.0;
    p.equality(n, m + 1) = 1.0;
    p.rhs = Vector::Zero(n + 1);
    p.rhs.head(n) = g;
    p.rhs(n) = cap;
    p.lower_bounds = Vector::Zero(m + 2);

    const LpSolution sol = solve_lp(p);
    InteriorLpResult out;
    if (sol.status != LpStatus::Optimal) return out;  // infeasible: g outside the closed cone
    out.feasible = true;
    out.delta = sol.x(m);
    out.weights.resize(m);
    for (Index j = 0; j < m; ++j) out.weights[j] = sol.x(j) + out.delta;
    return out;
}

struct SeparationLpResult {
    Vector normal;   // unit
    double margin;   // min(min_i u.dirs_i, -u.g) after normalization
};

/// Best separating/supporting normal: max t s.t. u.d_i >= t for all i,
/// -u.g >= t, normalized by (sum_i d_i - g).u = 1.  The normalization row
/// excludes u = 0 and is satisfiable by every valid normal of a full set,
/// so the LP is always optimal when dirs are full and g is not interior.
inline SeparationLpResult separating_normal_lp(const std::vector<Vector>& dirs, const Vector& g) {
    const Index n = g.size();
    const Index m = static_cast<Index>(dirs.size());
    Vector dir_sum = Vector::Zero(n);
    for (const Vector& d : dirs) dir_sum += d;
    const Vector norm_row = dir_sum - g;

    // variables: u (free, n), t (free), clearance slacks (m), g slack
    const Index n_vars = n + 1 + m + 1;
    LpProblem p;
    p.objective = Vector::Zero(n_vars);
    p.objective(n) = 1.0;
    p.equality = Matrix::Zero(m + 2, n_vars);
    p.rhs = Vector::Zero(m + 2);
    for (Index i = 0; i < m; ++i) {
        p.equality.row(i).head(n) = dirs[i];
        p.equality(i, n) = -1.0;
        p.equality(i, n + 1 + i) = -1.0;
    }
    p.equality.row(m).head(n) = -g;
    p.equality(m, n) = -1.0;
    p.equality(m, n + 1 + m) = -1.0;
    p.equality.row(m + 1).head(n) = norm_row;
    p.rhs(m + 1) = 1.0;
    p.lower_bounds = Vector::Zero(n_vars);
    p.lower_bounds.head(n + 1).setConstant(LpProblem::kFree);

    const LpSolution sol = solve_lp(p);
    if (sol.status != LpStatus::Optimal)
        throw Error("separating_normal_lp: separation program unexpectedly " +
                    std::string(sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded"));
    Vector u = sol.x.head(n);
    const double len = u.norm();
    if (len <= 0.0) throw Error("separating_normal_lp: degenerate normal");
    return SeparationLpResult{u / len, sol.x(n) / len};
}

inline double interior_cap(const Vector& g) { return 10.0 * (1.0 + g.norm()); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

/// Decide g against int Cc(dirs) and produce the matching certificate.
/// Interior iff the max-min-weight LP clears the interior band; otherwise a
/// separating (Outside) or supporting (Boundary) unit normal is returned,
/// Boundary meaning g lies in the closed cone but not clear of its boundary.
inline ConeCertificate cone_membership(const Vector& g, const std::vector<Vector>& dirs,
                                       const ToleranceConfig& tol = {}) {
    require_finite(g, "cone_membership");
    if (dirs.empty()) throw InvalidInput("cone_membership: empty direction set");
    for (const Vector& d : dirs) require_dimension(d, g.size(), "cone_membership");
    require_full(dirs, tol, "cone_membership");

    const auto interior = detail::interior_weights_lp(dirs, g, detail::interior_cap(g));
    ConeCertificate cert;
    if (interior.feasible && interior.delta > tol.interior_delta) {
        cert.verdict = ConeVerdict::Interior;
        cert.weights = interior.weights;
        cert.delta = interior.delta;
        return cert;
    }
    const auto sep = detail::separating_normal_lp(dirs, g);
    cert.verdict = interior.feasible ? ConeVerdict::Boundary : ConeVerdict::Outside;
    cert.normal = sep.normal;
    return cert;
}

// ---------------------------------------------------------------------------
// Grid oracle
// ---------------------------------------------------------------------------

enum class OracleVerdict { Interior, NotInterior };

/// Quasi-uniform unit directions: angle grid on S^1, Fibonacci lattice on S^2.
inline std::vector<Vector> sphere_grid(Index n, Index count) {
    std::vector<Vector> grid;
    grid.reserve(count);
    if (n == 2) {
        for (Index k = 0; k < count; ++k) {
            const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
            Vector u(2);
            u << std::cos(theta), std::sin(theta);
            grid.push_back(u);
        }
    } else if (n == 3) {
        const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
        for (Index k = 0; k < count; ++k) {
            const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden_angle * static_cast<double>(k);
            Vector u(3);
            u << r * std::cos(phi), r * std::sin(phi), z;
            grid.push_back(u);
        }
    } else {
        throw InvalidInput("sphere_grid: only dimensions 2 and 3 are supported");
    }
    return grid;
}

/// Independent separation oracle: g is declared NotInterior iff some grid
/// direction u satisfies u.g <= 1e-6 and min_i u.dirs_i >= -1e-6.
inline OracleVerdict brute_force_membership(const Vector& g, const std::vector<Vector>& dirs,
                                            Index grid_size) {
    require_finite(g, "brute_force_membership");
    const Index n = g.size();
    if (n != 2 && n != 3)
        throw InvalidInput("brute_force_membership: oracle supports only n in {2,3}");
    if (grid_size < 1000)
        throw InvalidInput("brute_force_membership: grid_size must be at least 1000");
    for (const Vector& d : dirs) require_dimension(d, n, "brute_force_membership");

    for (const Vector& u : sphere_grid(n, grid_size)) {
        if (u.dot(g) > 1e-6) continue;
        bool supports = true;
        for (const Vector& d : dirs)
            if (u.dot(d) < -1e-6) {
                supports = false;
                break;
            }
        if (supports) return OracleVerdict::NotInterior;
    }
    return OracleVerdict::Interior;
}

// ---------------------------------------------------------------------------
// Hull/cone commutation
// ---------------------------------------------------------------------------

namespace detail {

/// Second formulation: hull weights constrained to sum to a free dilation
/// sigma >= 0 (cone over the convex hull), same interior margin notion.
inline InteriorLpResult cone_over_hull_lp(const std::vector<Vector>& points, const Vector& g,
                                          double cap) {
    const Index n = g.size();
    const Index m = static_cast<Index>(points.size());
    Vector col_sum = Vector::Zero(n);
    for (const Vector& c : points) col_sum += c;

    // variables: nu_1..nu_m, delta, sigma, cap slack; rows: reconstruction,
    // mass bookkeeping (sum_i beta_i = sigma with beta_i = nu_i + delta), cap
    LpProblem p;
    p.objective = Vector::Zero(m + 3);
    p.objective(m) = 1.0;
    p.equality = Matrix::Zero(n + 2, m + 3);
    for (Index j = 0; j < m; ++j) {
        p.equality.col(j).head(n) = points[j];
        p.equality(n, j) = 1.0;
    }
    p.equality.col(m).head(n) = col_sum;
    p.equality(n, m) = static_cast<double>(m);
    p.equality(n, m + 1) = -1.0;
    p.equality(n + 1, m) = 1.0;
    p.equality(n + 1, m + 2) = 1.0;
    p.rhs = Vector::Zero(n + 2);
    p.rhs.head(n) = g;
    p.rhs(n + 1) = cap;
    p.lower_bounds = Vector::Zero(m + 3);

    const LpSolution sol = solve_lp(p);
    InteriorLpResult out;
    if (sol.status != LpStatus::Optimal) return out;
    out.feasible = true;
    out.delta = sol.x(m);
    out.weights.resize(m);
    for (Index j = 0; j < m; ++j) out.weights[j] = sol.x(j) + out.delta;
    return out;
}

inline ConeVerdict classify(const InteriorLpResult& r, double interior_delta) {
    if (!r.feasible) return ConeVerdict::Outside;
    return r.delta > interior_delta ? ConeVerdict::Interior : ConeVerdict::Boundary;
}

}  // namespace detail

/// Cross-checks that "convex hull of the cone" and "cone over the convex
/// hull" agree on every probe, using two structurally different LPs.
/// Probes whose margin sits inside the interior band may differ between
/// Boundary and Outside without failing the check.
inline bool hull_cone_commutation_check(const std::vector<Vector>& points,
                                        const std::vector<Vector>& probes,
                                        const ToleranceConfig& tol = {}) {
    if (points.empty()) throw InvalidInput("hull_cone_commutation_check: empty point set");
    require_full(points, tol, "hull_cone_commutation_check");
    for (const Vector& p : probes) {
        require_finite(p, "hull_cone_commutation_check");
        const double cap = detail::interior_cap(p);
        const auto hull_of_cone = detail::interior_weights_lp(points, p, cap);
        const auto cone_of_hull = detail::cone_over_hull_lp(points, p, cap);
        const ConeVerdict v1 = detail::classify(hull_of_cone, tol.interior_delta);
        const ConeVerdict v2 = detail::classify(cone_of_hull, tol.interior_delta);
        if (v1 == v2) continue;
        // tolerance band: near-boundary probes may classify as any mix of
        // Boundary/Outside, or Interior with margin inside a small band
        const bool v1_noninterior = v1 != ConeVerdict::Interior;
        const bool v2_noninterior = v2 != ConeVerdict::Interior;
        if (v1_noninterior && v2_noninterior) continue;
        const double band = 100.0 * tol.interior_delta;
        const double margin1 = hull_of_cone.feasible ? hull_of_cone.delta : 0.0;
        const double margin2 = cone_of_hull.feasible ? cone_of_hull.delta : 0.0;
        if (std::abs(margin1 - margin2) <= band &&
            std::min(margin1, margin2) <= tol.interior_delta + band)
            continue;
        return false;
    }
    return true;
}

}  // namespace skewloop

#endif  // SKEWLOOP_CONE_HPP
