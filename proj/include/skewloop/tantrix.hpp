///
/// file: tantrix.hpp
///
/// Tantrix computation for sampled loops and the skewness decision: a loop
/// is skew iff its tantrix is embedded and disjoint from its antipodal
/// image.  All decisions are made at segment-polygon level with an explicit
/// chordal margin.
///

#ifndef SKEWLOOP_TANTRIX_HPP
#define SKEWLOOP_TANTRIX_HPP

#include "skewloop/core.hpp"
#include "skewloop/segments.hpp"

#include <array>
#include <optional>
#include <tuple>

namespace skewloop {

/// Unit-direction samples on S^{n-1} at loop parameters, wraparound implicit.
struct TantrixSamples {
    Index dimension = 0;
    std::vector<Vector> dirs;
    std::vector<double> params;

    Index size() const { return static_cast<Index>(dirs.size()); }
};

inline void validate_tantrix(const TantrixSamples& tx) {
    if (tx.dimension < 1)
        throw InvalidInput("TantrixSamples: dimension must be >= 1");
    if (tx.size() < 3)
        throw InvalidInput("TantrixSamples: need at least 3 directions");
    if (tx.params.size() != tx.dirs.size())
        throw InvalidInput("TantrixSamples: params/dirs length mismatch");
    detail::check_param_grid(tx.params, /*closed=*/true, "TantrixSamples");
    for (const Vector& d : tx.dirs) {
        require_dimension(d, tx.dimension, "TantrixSamples");
        require_finite(d, "TantrixSamples");
        if (std::abs(d.norm() - 1.0) > 1e-12)
            throw InvalidInput("TantrixSamples: direction is not unit length");
    }
}

/// Outcome of the skewness decision, with enough data to audit it.
struct SkewVerdict {
    bool is_skew = false;
    bool embedded = false;
    bool antipode_free = false;
    std::optional<std::array<double, 2>> witness;  // parameter pair of the violation
    double min_separation = 0.0;            // chordal, over tested tantrix segment pairs
    double min_antipodal_separation = 0.0;  // chordal, tantrix vs negated tantrix
};

// ---------------------------------------------------------------------------
// Tantrix computation
// ---------------------------------------------------------------------------

namespace detail {

/// Periodic central differences over (samples, params); `lift` is the
/// offset added when the stencil wraps (zero for genuine loops, the
/// endpoint displacement for lifted arcs).
inline TantrixSamples central_difference_tantrix(const std::vector<Vector>& samples,
                                                 const std::vector<double>& params,
                                                 const Vector& lift, double immersion_eps) {
    const Index m = static_cast<Index>(samples.size());
    TantrixSamples tx;
    tx.dimension = samples.front().size();
    tx.params = params;
    tx.dirs.reserve(m);
    for (Index i = 0; i < m; ++i) {
        Vector next = samples[(i + 1) % m];
        Vector prev = samples[(i + m - 1) % m];
        if (i + 1 == m) next += lift;
        if (i == 0) prev -= lift;
        const Vector diff = next - prev;
        const double len = diff.norm();
        if (len <= immersion_eps)
            throw ImmersionFailure(
                "compute_tantrix: central difference collapses at index " + std::to_string(i),
                i);
        tx.dirs.push_back(diff / len);
    }
    return tx;
}

}  // namespace detail

/// Normalized central-difference velocity directions of a closed loop.
inline TantrixSamples compute_tantrix(const SampledLoop& loop, const ToleranceConfig& tol = {}) {
    validate_loop(loop, tol);
    return detail::central_difference_tantrix(loop.samples, loop.params, Vector::Zero(loop.dimension),
                                              tol.immersion_eps);
}

/// Tantrix of an arc regarded as the lift of a loop in R^n/G: the endpoint
/// displacement re-enters the stencil wherever it wraps, so the last sample
/// (a translate of the first) carries no node of its own.
inline TantrixSamples compute_tantrix(const SampledArc& arc, const ToleranceConfig& tol = {}) {
    validate_arc(arc, tol);
    if (arc.size() < 4)
        throw InvalidInput("compute_tantrix: lifted arc needs at least 4 samples");
    const Vector lift = arc.displacement();
    std::vector<Vector> samples(arc.samples.begin(), arc.samples.end() - 1);
    std::vector<double> params(arc.params.begin(), arc.params.end() - 1);
    return detail::central_difference_tantrix(samples, params, lift, tol.immersion_eps);
}

// ---------------------------------------------------------------------------
// Embeddedness / antipode checks
// ---------------------------------------------------------------------------

namespace detail {

inline double node_param(const TantrixSamples& tx, Index i) {
    return (i < tx.size()) ? tx.params[i] : 1.0;
}

inline double segment_param(const TantrixSamples& tx, Index seg, double frac) {
    const double t0 = node_param(tx, seg);
    const double t1 = node_param(tx, seg + 1);
    return t0 + frac * (t1 - t0);
}

struct PairScan {
    double min_distance = std::numeric_limits<double>::infinity();
    double param_a = 0.0;
    double param_b = 0.0;

    void offer(double d, double ta, double tb) {
        if (d < min_distance) {
            min_distance = d;
            param_a = ta;
            param_b = tb;
        }
    }
};

}  // namespace detail

/// True iff the spherical polygon through the tantrix directions has no
/// near-self-contact: every non-adjacent segment pair stays more than
/// `embedding_eps` apart (chordally), and adjacent segments are tested away
/// from their shared node.  On failure the witness holds the closest
/// offending parameter pair.
inline std::tuple<bool, std::optional<std::array<double, 2>>, double> is_embedded(
    const TantrixSamples& tx, const ToleranceConfig& tol = {}) {
    validate_tantrix(tx);
    const Index m = tx.size();
    const auto node = [&](Index i) -> const Vector& { return tx.dirs[i % m]; };
    detail::PairScan scan;

    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) {
            const bool j_follows_i = (j == i + 1);
            const bool i_follows_j = (i == 0 && j == m - 1);
            if (j_follows_i || i_follows_j) {
                // adjacent: test against the far half of the later segment,
                // clear of the shared node
                const Index lead = i_follows_j ? j : i;    // segment ending at the shared node
                const Index trail = i_follows_j ? i : j;   // segment starting there
                const Vector mid = 0.5 * (node(trail) + node(trail + 1));
                const SegmentClosest c =
                    segment_distance(node(lead), node(lead + 1), mid, node(trail + 1));
                scan.offer(c.distance, detail::segment_param(tx, lead, c.s),
                           detail::segment_param(tx, trail, 0.5 + 0.5 * c.t));
            } else {
                const SegmentClosest c =
                    segment_distance(node(i), node(i + 1), node(j), node(j + 1));
                scan.offer(c.distance, detail::segment_param(tx, i, c.s),
                           detail::segment_param(tx, j, c.t));
            }
        }
    }

    const bool ok = scan.min_distance > tol.embedding_eps;
    std::optional<std::array<double, 2>> witness;
    if (!ok) witness = std::array<double, 2>{scan.param_a, scan.param_b};
    return {ok, witness, scan.min_distance};
}

/// True iff every segment of the tantrix polygon stays more than
/// `embedding_eps` away from every segment of the negated polygon.
inline std::tuple<bool, std::optional<std::array<double, 2>>, double> avoids_antipodes(
    const TantrixSamples& tx, const ToleranceConfig& tol = {}) {
    validate_tantrix(tx);
    const Index m = tx.size();
    const auto node = [&](Index i) -> const Vector& { return tx.dirs[i % m]; };
    detail::PairScan scan;

    for (Index i = 0; i < m; ++i) {
        const Vector& a0 = node(i);
        const Vector& a1 = node(i + 1);
        for (Index j = 0; j < m; ++j) {
            const Vector b0 = -node(j);
            const Vector b1 = -node(j + 1);
            const SegmentClosest c = segment_distance(a0, a1, b0, b1);
            scan.offer(c.distance, detail::segment_param(tx, i, c.s),
                       detail::segment_param(tx, j, c.t));
        }
    }

    const bool ok = scan.min_distance > tol.embedding_eps;
    std::optional<std::array<double, 2>> witness;
    if (!ok) witness = std::array<double, 2>{scan.param_a, scan.param_b};
    return {ok, witness, scan.min_distance};
}

/// Skewness decision for a tantrix that is already computed.
inline SkewVerdict skew_verdict_of_tantrix(const TantrixSamples& tx,
                                           const ToleranceConfig& tol = {}) {
    SkewVerdict v;
    auto [emb, emb_witness, emb_min] = is_embedded(tx, tol);
    auto [anti, anti_witness, anti_min] = avoids_antipodes(tx, tol);
    v.embedded = emb;
    v.antipode_free = anti;
    v.is_skew = emb && anti;
    v.min_separation = emb_min;
    v.min_antipodal_separation = anti_min;
    if (!emb)
        v.witness = emb_witness;
    else if (!anti)
        v.witness = anti_witness;
    return v;
}

/// Full skewness decision for a closed loop in R^n.
inline SkewVerdict is_skew(const SampledLoop& loop, const ToleranceConfig& tol = {}) {
    return skew_verdict_of_tantrix(compute_tantrix(loop, tol), tol);
}

/// Skewness of the loop in R^n/G presented by a lifted arc.
inline SkewVerdict is_skew(const SampledArc& arc, const ToleranceConfig& tol = {}) {
    return skew_verdict_of_tantrix(compute_tantrix(arc, tol), tol);
}

}  // namespace skewloop

#endif  // SKEWLOOP_TANTRIX_HPP
