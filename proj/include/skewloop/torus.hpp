///
/// file: torus.hpp
///
/// Quotient-space bookkeeping: reduction to a fundamental domain, homotopy
/// classes of lifted arcs, and the n = 3 spherical-region membership test
/// for tantrices compactly contained in an open hemisphere.
///

#ifndef SKEWLOOP_TORUS_HPP
#define SKEWLOOP_TORUS_HPP

#include "skewloop/core.hpp"
#include "skewloop/segments.hpp"
#include "skewloop/tantrix.hpp"

namespace skewloop {

/// The arc's endpoint displacement is not a lattice element, so its
/// projection does not close up.
struct NotALoop : Error {
    using Error::Error;
};

/// A direction sample leaves the prescribed open hemisphere.
struct OutOfHemisphere : Error {
    using Error::Error;
};

/// The projected tantrix polygon self-intersects, so "the region it
/// bounds" is undefined.
struct NotEmbedded : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Fundamental domain and homotopy classes
// ---------------------------------------------------------------------------

/// Representative of p with generator-basis coordinates in [0,1), plus the
/// integer class that was removed.  For rank r < n the reduction acts only
/// in the generator span.
inline std::pair<Vector, HomotopyClass> reduce_mod_lattice(const Vector& p,
                                                           const Lattice& lattice,
                                                           const ToleranceConfig& tol = {}) {
    require_finite(p, "reduce_mod_lattice");
    validate_lattice(lattice, tol);
    require_dimension(p, lattice.dimension, "reduce_mod_lattice");

    const Vector y = detail::lattice_coordinates(p, lattice);
    HomotopyClass cls;
    Vector rep = p;
    for (Index i = 0; i < lattice.rank(); ++i) {
        // snap coordinates that are integers up to roundoff, so exact
        // lattice points reduce to coordinate zero rather than 1 - ulp
        double yi = y(i);
        const double nearest = std::round(yi);
        if (std::abs(yi - nearest) < 1e-12) yi = nearest;
        const double k = std::floor(yi);
        cls.coeffs.push_back(static_cast<long long>(k));
        rep -= k * lattice.generators[i];
    }
    return {std::move(rep), std::move(cls)};
}

/// Integer class of the lattice element nearest the arc's displacement.
/// Depends only on the endpoints; fails when the displacement is not
/// within tolerance of a lattice element.
inline HomotopyClass homotopy_class_of(const SampledArc& arc, const Lattice& lattice,
                                       const ToleranceConfig& tol = {}) {
    validate_arc(arc, tol);
    validate_lattice(lattice, tol);
    if (arc.dimension != lattice.dimension)
        throw InvalidInput("homotopy_class_of: dimension mismatch");

    const Vector d = arc.displacement();
    const Vector y = detail::lattice_coordinates(d, lattice);
    HomotopyClass cls;
    Vector recon = Vector::Zero(arc.dimension);
    for (Index i = 0; i < lattice.rank(); ++i) {
        const double k = std::round(y(i));
        if (std::abs(y(i) - k) > 1e-6)
            throw NotALoop("homotopy_class_of: displacement is not a lattice element");
        cls.coeffs.push_back(static_cast<long long>(k));
        recon += k * lattice.generators[i];
    }
    if ((recon - d).cwiseAbs().maxCoeff() > 1e-6)
        throw NotALoop("homotopy_class_of: displacement leaves the lattice span");
    return cls;
}

// ---------------------------------------------------------------------------
// Spherical-region test (n = 3)
// ---------------------------------------------------------------------------

namespace detail {

/// Stereographic projection from -pole onto the equatorial plane, expressed
/// in the orthonormal basis {e1, e2} of that plane.  Well-defined on the
/// open hemisphere about pole.
inline Eigen::Vector2d stereographic(const Vector& x, const Vector& pole, const Vector& e1,
                                     const Vector& e2) {
    const double denom = 1.0 + x.dot(pole);
    return {x.dot(e1) / denom, x.dot(e2) / denom};
}

}  // namespace detail

/// True iff d lies in the open region bounded by tx on the sphere, decided
/// by the winding number of the stereographic image polygon (projected
/// from the antipode of the hemisphere's pole).  Preconditions: n = 3,
/// every tantrix direction compactly inside the hemisphere about `pole`,
/// and d strictly inside it too.  If `winding_margin` is given it receives
/// the planar distance from the projected probe to the polygon.
inline bool region_contains_direction(const TantrixSamples& tx, const Vector& d,
                                      const Vector& pole, const ToleranceConfig& tol = {},
                                      double* winding_margin = nullptr) {
    validate_tantrix(tx);
    if (tx.dimension != 3)
        throw InvalidInput("region_contains_direction: only n = 3 is supported");
    require_finite(d, "region_contains_direction");
    require_dimension(d, 3, "region_contains_direction");
    require_finite(pole, "region_contains_direction");
    require_dimension(pole, 3, "region_contains_direction");
    if (std::abs(pole.norm() - 1.0) > 1e-9 || std::abs(d.norm() - 1.0) > 1e-9)
        throw InvalidInput("region_contains_direction: pole and d must be unit vectors");

    for (Index i = 0; i < tx.size(); ++i)
        if (tx.dirs[i].dot(pole) < tol.hemisphere_eps)
            throw OutOfHemisphere(
                "region_contains_direction: tantrix leaves the open hemisphere at index " +
                std::to_string(i));
    if (!(d.dot(pole) > 0.0))
        throw OutOfHemisphere("region_contains_direction: probe direction is not in the hemisphere");

    const auto [e1, e2] = orthonormal_complement_pair(pole);
    const Index m = tx.size();
    std::vector<Eigen::Vector2d> poly;
    poly.reserve(m);
    for (const Vector& dir : tx.dirs) poly.push_back(detail::stereographic(dir, pole, e1, e2));
    const Eigen::Vector2d probe = detail::stereographic(d, pole, e1, e2);

    // the bounded region is only defined for a simple polygon
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // adjacent through the wrap
            Vector a0(2), a1(2), b0(2), b1(2);
            a0 = poly[i];
            a1 = poly[(i + 1) % m];
            b0 = poly[j];
            b1 = poly[(j + 1) % m];
            if (segment_distance(a0, a1, b0, b1).distance <= tol.embedding_eps)
                throw NotEmbedded("region_contains_direction: projected polygon self-intersects");
        }
    }

    // winding number by signed crossings of the horizontal ray from probe
    int winding = 0;
    double min_dist = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % m];
        if (a.y() <= probe.y()) {
            if (b.y() > probe.y() &&
                (b.x() - a.x()) * (probe.y() - a.y()) - (probe.x() - a.x()) * (b.y() - a.y()) > 0)
                ++winding;
        } else {
            if (b.y() <= probe.y() &&
                (b.x() - a.x()) * (probe.y() - a.y()) - (probe.x() - a.x()) * (b.y() - a.y()) < 0)
                --winding;
        }
        Vector a0(2), a1(2), p0(2);
        a0 = a;
        a1 = b;
        p0 = probe;
        min_dist = std::min(min_dist, segment_distance(p0, p0, a0, a1).distance);
    }
    if (winding_margin) *winding_margin = min_dist;
    return winding != 0;
}

}  // namespace skewloop

#endif  // SKEWLOOP_TORUS_HPP
