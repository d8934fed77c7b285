///
/// file: segments.hpp
///
/// Closest-pair geometry for polyline segments in R^n.
///

#ifndef SKEWLOOP_SEGMENTS_HPP
#define SKEWLOOP_SEGMENTS_HPP

#include "skewloop/core.hpp"

namespace skewloop {

/// Closest approach between two segments [a0,a1] and [b0,b1] in R^n.
/// `s` and `t` are the fractional positions of the closest points.
struct SegmentClosest {
    double distance = 0.0;
    double s = 0.0;
    double t = 0.0;
};

/// Minimum distance between two segments by clamped quadratic minimization
/// (Lumelsky's scheme).  Exact up to roundoff for all degenerate layouts.
inline SegmentClosest segment_distance(const Vector& a0, const Vector& a1, const Vector& b0,
                                       const Vector& b1) {
    const Vector d1 = a1 - a0;
    const Vector d2 = b1 - b0;
    const Vector r = a0 - b0;
    const double a = d1.squaredNorm();
    const double e = d2.squaredNorm();
    const double f = d2.dot(r);

    double s = 0.0, t = 0.0;
    if (a <= 0.0 && e <= 0.0) {
        // both degenerate: point-point
    } else if (a <= 0.0) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= 0.0) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            if (denom > 0.0)
                s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    SegmentClosest out;
    out.s = s;
    out.t = t;
    out.distance = (a0 + s * d1 - (b0 + t * d2)).norm();
    return out;
}

}  // namespace skewloop

#endif  // SKEWLOOP_SEGMENTS_HPP
