///
/// file: core.hpp
///
/// Foundational value types for sampled curves in R^n and their quotients:
/// vectors, closed/open sampled curves, translation lattices, homotopy
/// classes, and the single tolerance policy shared by every algorithm.
///

#ifndef SKEWLOOP_CORE_HPP
#define SKEWLOOP_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewloop {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (wrong dimension, non-finite data, ...).
struct InvalidInput : Error {
    using Error::Error;
};

/// A sampled curve stops being an immersion at the sample scale: two
/// consecutive samples (or a central difference) collapse below the
/// immersion tolerance.
struct ImmersionFailure : Error {
    Index sample_index;
    ImmersionFailure(const std::string& what, Index index)
        : Error(what), sample_index(index) {}
};

// ---------------------------------------------------------------------------
// Tolerance policy
// ---------------------------------------------------------------------------

/// One declared numerical policy for the whole pipeline.  All fields are
/// strictly positive; defaults are the library-wide contract.
struct ToleranceConfig {
    double immersion_eps = 1e-12;      // minimum chordal step between samples
    double rank_eps = 1e-10;           // pivot threshold for numerical rank
    double embedding_eps = 1e-8;       // minimum chordal separation on S^{n-1}
    double interior_delta = 1e-9;      // LP band separating Interior from Boundary
    double closure_eps = 1e-8;         // loop-closure residual bound
    double tantrix_match_eps = 1e-6;   // nodal tantrix match bound
    double hemisphere_eps = 1e-3;      // quantifies "compactly in a hemisphere"

    void validate() const {
        const double fields[] = {immersion_eps, rank_eps,    embedding_eps,
                                 interior_delta, closure_eps, tantrix_match_eps,
                                 hemisphere_eps};
        for (double v : fields)
            if (!(v > 0.0))
                throw InvalidInput("ToleranceConfig: all tolerances must be strictly positive");
    }
};

// ---------------------------------------------------------------------------
// Small vector helpers
// ---------------------------------------------------------------------------

inline bool is_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Vector& v, const char* who) {
    if (!is_finite(v))
        throw InvalidInput(std::string(who) + ": non-finite coordinate");
}

inline void require_dimension(const Vector& v, Index n, const char* who) {
    if (v.size() != n)
        throw InvalidInput(std::string(who) + ": dimension mismatch (" +
                           std::to_string(v.size()) + " vs " + std::to_string(n) + ")");
}

/// Numerical rank of the rows of `m` by Gaussian elimination with full
/// pivoting; a pivot counts while its magnitude exceeds `pivot_eps`.
inline int eliminate_rank(Matrix m, double pivot_eps) {
    const Index rows = m.rows(), cols = m.cols();
    int rank = 0;
    Index r = 0, c = 0;
    while (r < rows && c < cols) {
        Index pr = r, pc = c;
        double best = 0.0;
        for (Index i = r; i < rows; ++i)
            for (Index j = c; j < cols; ++j)
                if (std::abs(m(i, j)) > best) { best = std::abs(m(i, j)); pr = i; pc = j; }
        if (best <= pivot_eps) break;
        m.row(r).swap(m.row(pr));
        m.col(c).swap(m.col(pc));
        for (Index i = r + 1; i < rows; ++i) {
            const double f = m(i, c) / m(r, c);
            m.row(i).tail(cols - c) -= f * m.row(r).tail(cols - c);
        }
        ++rank; ++r; ++c;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Sampled curves
// ---------------------------------------------------------------------------

/// Closed immersed curve: m >= 3 ordered samples at strictly increasing
/// parameters in [0,1) with params[0] = 0.  The closing sample is not
/// duplicated; index m wraps to index 0 at parameter 1.
struct SampledLoop {
    Index dimension = 0;
    std::vector<Vector> samples;
    std::vector<double> params;

    Index size() const { return static_cast<Index>(samples.size()); }
};

/// Open immersed curve: m >= 2 ordered samples at strictly increasing
/// parameters with params[0] = 0 and params[m-1] = 1.  Used for lifts of
/// loops in R^n/G, whose endpoint displacement is a lattice element.
struct SampledArc {
    Index dimension = 0;
    std::vector<Vector> samples;
    std::vector<double> params;

    Index size() const { return static_cast<Index>(samples.size()); }
    Vector displacement() const { return samples.back() - samples.front(); }
};

namespace detail {

inline void check_param_grid(const std::vector<double>& params, bool closed, const char* who) {
    if (params.empty() || params.front() != 0.0)
        throw InvalidInput(std::string(who) + ": params must start at 0");
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
        if (!(params[i] < params[i + 1]))
            throw InvalidInput(std::string(who) + ": params must be strictly increasing");
    if (closed) {
        if (!(params.back() < 1.0))
            throw InvalidInput(std::string(who) + ": loop params must stay below 1");
    } else {
        if (params.back() != 1.0)
            throw InvalidInput(std::string(who) + ": arc params must end at 1");
    }
    for (double t : params)
        if (!std::isfinite(t))
            throw InvalidInput(std::string(who) + ": non-finite parameter");
}

}  // namespace detail

inline void validate_loop(const SampledLoop& loop, const ToleranceConfig& tol) {
    if (loop.dimension < 1)
        throw InvalidInput("SampledLoop: dimension must be >= 1");
    if (loop.size() < 3)
        throw InvalidInput("SampledLoop: need at least 3 samples");
    if (loop.params.size() != loop.samples.size())
        throw InvalidInput("SampledLoop: params/samples length mismatch");
    detail::check_param_grid(loop.params, /*closed=*/true, "SampledLoop");
    for (const Vector& s : loop.samples) {
        require_dimension(s, loop.dimension, "SampledLoop");
        require_finite(s, "SampledLoop");
    }
    const Index m = loop.size();
    for (Index i = 0; i < m; ++i) {
        const Vector step = loop.samples[(i + 1) % m] - loop.samples[i];
        if (step.norm() <= tol.immersion_eps)
            throw ImmersionFailure("SampledLoop: consecutive samples coincide at index " +
                                       std::to_string(i),
                                   i);
    }
}

inline void validate_arc(const SampledArc& arc, const ToleranceConfig& tol) {
    if (arc.dimension < 1)
        throw InvalidInput("SampledArc: dimension must be >= 1");
    if (arc.size() < 2)
        throw InvalidInput("SampledArc: need at least 2 samples");
    if (arc.params.size() != arc.samples.size())
        throw InvalidInput("SampledArc: params/samples length mismatch");
    detail::check_param_grid(arc.params, /*closed=*/false, "SampledArc");
    for (const Vector& s : arc.samples) {
        require_dimension(s, arc.dimension, "SampledArc");
        require_finite(s, "SampledArc");
    }
    for (Index i = 0; i + 1 < arc.size(); ++i)
        if ((arc.samples[i + 1] - arc.samples[i]).norm() <= tol.immersion_eps)
            throw ImmersionFailure("SampledArc: consecutive samples coincide at index " +
                                       std::to_string(i),
                                   i);
}

// ---------------------------------------------------------------------------
// Lattices and homotopy classes
// ---------------------------------------------------------------------------

/// Discrete translation subgroup of R^n given by r <= n independent
/// generators.  r = 0 (the trivial group) is legal.
struct Lattice {
    Index dimension = 0;
    std::vector<Vector> generators;

    Index rank() const { return static_cast<Index>(generators.size()); }

    /// n x r generator matrix (columns are generators).
    Matrix generator_matrix() const {
        Matrix b(dimension, rank());
        for (Index j = 0; j < rank(); ++j) b.col(j) = generators[j];
        return b;
    }
};

inline void validate_lattice(const Lattice& lattice, const ToleranceConfig& tol) {
    if (lattice.dimension < 1)
        throw InvalidInput("Lattice: dimension must be >= 1");
    if (lattice.rank() > lattice.dimension)
        throw InvalidInput("Lattice: more generators than dimensions");
    for (const Vector& g : lattice.generators) {
        require_dimension(g, lattice.dimension, "Lattice");
        require_finite(g, "Lattice");
    }
    if (lattice.rank() > 0) {
        Matrix rows(lattice.rank(), lattice.dimension);
        for (Index i = 0; i < lattice.rank(); ++i) rows.row(i) = lattice.generators[i];
        if (eliminate_rank(rows, tol.rank_eps) != lattice.rank())
            throw InvalidInput("Lattice: generators are not linearly independent");
    }
}

namespace detail {

/// Generator-basis coordinates of p: least squares in the generator span
/// (the pseudo-inverse applied to p).  Empty for rank-0 lattices.
inline Vector lattice_coordinates(const Vector& p, const Lattice& lattice) {
    if (lattice.rank() == 0) return Vector(0);
    const Matrix b = lattice.generator_matrix();
    return (b.transpose() * b).ldlt().solve(b.transpose() * p);
}

}  // namespace detail

/// Integer coefficients with respect to a lattice's generators; identifies a
/// homotopy class of loops in R^n/G.
struct HomotopyClass {
    std::vector<long long> coeffs;

    bool operator==(const HomotopyClass& other) const { return coeffs == other.coeffs; }
};

/// The lattice element this class represents.
inline Vector class_element(const HomotopyClass& cls, const Lattice& lattice) {
    if (static_cast<Index>(cls.coeffs.size()) != lattice.rank())
        throw InvalidInput("class_element: coefficient count does not match lattice rank");
    Vector g = Vector::Zero(lattice.dimension);
    for (Index i = 0; i < lattice.rank(); ++i)
        g += static_cast<double>(cls.coeffs[i]) * lattice.generators[i];
    return g;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

namespace detail {

/// Piecewise-linear evaluation of a loop at parameter t in [0,1); the last
/// segment wraps from params.back() back to sample 0 at parameter 1.
inline Vector eval_loop_linear(const SampledLoop& loop, double t) {
    const Index m = loop.size();
    // locate segment [params[i], params[i+1]) containing t
    Index i = static_cast<Index>(
        std::upper_bound(loop.params.begin(), loop.params.end(), t) - loop.params.begin());
    i = (i == 0) ? 0 : i - 1;
    const double t0 = loop.params[i];
    const double t1 = (i + 1 < m) ? loop.params[i + 1] : 1.0;
    const Vector& a = loop.samples[i];
    const Vector& b = loop.samples[(i + 1) % m];
    const double f = (t - t0) / (t1 - t0);
    if (f == 0.0) return a;
    return a + f * (b - a);
}

}  // namespace detail

/// Resample a loop at m' equally spaced parameters by piecewise-linear
/// interpolation.  The output keeps the implicit wraparound convention.
inline SampledLoop resample_uniform(const SampledLoop& loop, Index new_count,
                                    const ToleranceConfig& tol = {}) {
    validate_loop(loop, tol);
    if (new_count < 3)
        throw InvalidInput("resample_uniform: need at least 3 output samples");
    SampledLoop out;
    out.dimension = loop.dimension;
    out.samples.reserve(new_count);
    out.params.reserve(new_count);
    for (Index k = 0; k < new_count; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(new_count);
        out.params.push_back(t);
        out.samples.push_back(detail::eval_loop_linear(loop, t));
    }
    for (Index i = 0; i < new_count; ++i) {
        const Vector step = out.samples[(i + 1) % new_count] - out.samples[i];
        if (step.norm() <= tol.immersion_eps)
            throw ImmersionFailure(
                "resample_uniform: degenerate segment at index " + std::to_string(i), i);
    }
    return out;
}

/// Deterministic orthonormal pair {u1, u2} perpendicular to g, built by
/// orthonormalizing the standard basis vectors against g in index order and
/// keeping the first two survivors.  Requires n >= 3 and g != 0.
inline std::pair<Vector, Vector> orthonormal_complement_pair(const Vector& g) {
    require_finite(g, "orthonormal_complement_pair");
    const Index n = g.size();
    if (n < 3)
        throw InvalidInput("orthonormal_complement_pair: dimension must be >= 3");
    const double gn = g.norm();
    if (gn == 0.0)
        throw InvalidInput("orthonormal_complement_pair: zero vector");
    const Vector ghat = g / gn;

    std::vector<Vector> found;
    for (Index k = 0; k < n && found.size() < 2; ++k) {
        Vector v = Vector::Unit(n, k);
        // two Gram-Schmidt passes keep the identities at the 1e-12 level
        for (int pass = 0; pass < 2; ++pass) {
            v -= v.dot(ghat) * ghat;
            for (const Vector& u : found) v -= v.dot(u) * u;
        }
        const double vn = v.norm();
        if (vn > 1e-6) found.push_back(v / vn);
    }
    if (found.size() < 2)
        throw InvalidInput("orthonormal_complement_pair: no orthonormal pair found");
    return {found[0], found[1]};
}

}  // namespace skewloop

#endif  // SKEWLOOP_CORE_HPP
