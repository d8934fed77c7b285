//
// Acceptance suite: one pass/fail line per criterion, exit code equal to
// the number of failed criteria.  Every tolerance is pinned in code.
//
//   1. helix suite (skewness, nodal tantrix radius, displacement)
//   2. cone membership vs the independent grid oracle
//   3. certificate soundness of everything emitted while running the suite
//   4. realize round trip, planted interior and planted outside
//   5. vanishing-integral inequalities on every density failure
//   6. lattice-class search over the 45-degree circle cone
//   7. spherical-region test vs cone membership on random caps
//   8. hull/cone commutation on random point sets
//   9. negative controls (planar circle, hemisphere with trivial group)
//

#include "test_support.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace skewloop;
using namespace skewloop::testing;

namespace {

struct CertTally {
    long total = 0;
    long unsound = 0;

    void offer(const ConeCertificate& cert, const Vector& g, const std::vector<Vector>& dirs) {
        ++total;
        if (!certificate_is_sound(cert, g, dirs)) ++unsound;
    }
};

struct SharpTally {
    long total = 0;
    long violated = 0;

    // the discrete form of the vanishing-integral contradiction:
    // min_i u.tau_i >= -1e-8 and u.g <= 1e-8
    void offer(const Vector& u, const Vector& g, const std::vector<Vector>& dirs) {
        ++total;
        double min_clearance = std::numeric_limits<double>::infinity();
        for (const Vector& d : dirs) min_clearance = std::min(min_clearance, u.dot(d));
        if (min_clearance < -1e-8 || u.dot(g) > 1e-8) ++violated;
    }
};

struct Criterion {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() < 400) detail << " [" << what << "]";
        }
    }
};

CertTally g_certs;
SharpTally g_sharp;

// --------------------------------------------------------------------------
// 1. helix suite
// --------------------------------------------------------------------------

Criterion criterion_1_helices() {
    Criterion c;
    const std::vector<Vector> gs = {vec3(0, 0, 1), vec3(1, 1, 1), vec3(2, 0, 1)};
    const std::vector<double> rs = {0.05, 0.5, 1.0, 5.0, 50.0};
    const Index m = 512;
    int checked = 0;
    for (const Vector& g : gs) {
        const auto [u1, u2] = orthonormal_complement_pair(g);
        for (const double r : rs) {
            std::ostringstream tag;
            tag << "g=(" << g.transpose() << ") r=" << r;

            const SampledArc arc = helix_loop_for_class(g, r, m);
            c.require((arc.displacement() - g).cwiseAbs().maxCoeff() <= 1e-10,
                      "displacement " + tag.str());
            c.require(is_skew(arc).is_skew, "skewness " + tag.str());

            // nodal tantrix radius, corrected convention: slope g / 2pi
            const double expected =
                2.0 * M_PI * r / std::sqrt(g.squaredNorm() + 4.0 * M_PI * M_PI * r * r);
            const TantrixSamples tx = helix_tantrix(HelixSpec{g / (2.0 * M_PI), u1, u2, r, m});
            const Vector axis = g / g.norm();
            double worst = 0.0;
            for (const Vector& d : tx.dirs)
                worst = std::max(worst,
                                 std::abs((d - d.dot(axis) * axis).norm() - expected));
            c.require(worst <= 1e-6, "tantrix radius " + tag.str());

            // raw formula: radius r / sqrt(|g|^2 + r^2)
            const double raw_expected = r / std::sqrt(g.squaredNorm() + r * r);
            const TantrixSamples raw = helix_tantrix(HelixSpec{g, u1, u2, r, m});
            worst = 0.0;
            for (const Vector& d : raw.dirs)
                worst = std::max(worst,
                                 std::abs((d - d.dot(axis) * axis).norm() - raw_expected));
            c.require(worst <= 1e-6, "raw radius " + tag.str());
            ++checked;
        }
    }
    c.detail << " " << checked << " (g, r) grid points at m = " << m;
    return c;
}

// --------------------------------------------------------------------------
// 2. cone membership vs grid oracle
// --------------------------------------------------------------------------

struct ConeInstance {
    std::vector<Vector> dirs;
    Vector g;
};

std::vector<Vector> sampled_cap_dirs(Rng& rng, Index n, const Vector& axis, double beta,
                                     Index m) {
    std::uniform_real_distribution<double> colat(0.55 * beta, beta);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    std::vector<Vector> dirs;
    if (n == 2) {
        const double a0 = std::atan2(axis(1), axis(0));
        for (Index k = 0; k < m; ++k) {
            const double spread =
                -beta + 2.0 * beta * (static_cast<double>(k) + 0.5 + jitter(rng)) /
                            static_cast<double>(m);
            dirs.push_back(vec2(std::cos(a0 + spread), std::sin(a0 + spread)));
        }
    } else {
        const auto [e1, e2] = orthonormal_complement_pair(axis);
        for (Index k = 0; k < m; ++k) {
            const double phi = 2.0 * M_PI * (static_cast<double>(k) + jitter(rng)) /
                               static_cast<double>(m);
            const double th = colat(rng);
            Vector d = std::sin(th) * (std::cos(phi) * e1 + std::sin(phi) * e2) +
                       std::cos(th) * axis;
            dirs.push_back(d / d.norm());
        }
    }
    return dirs;
}

Vector tilted_from_axis(Rng& rng, Index n, const Vector& axis, double angle) {
    if (n == 2) {
        const double a0 = std::atan2(axis(1), axis(0));
        const double sign = (rng() % 2 == 0) ? 1.0 : -1.0;
        return vec2(std::cos(a0 + sign * angle), std::sin(a0 + sign * angle));
    }
    const auto [e1, e2] = orthonormal_complement_pair(axis);
    std::uniform_real_distribution<double> azim(0.0, 2.0 * M_PI);
    const double phi = azim(rng);
    Vector d = std::sin(angle) * (std::cos(phi) * e1 + std::sin(phi) * e2) +
               std::cos(angle) * axis;
    return d / d.norm();
}

Criterion criterion_2_oracle(long& band_out) {
    Criterion c;
    Rng rng(20260809);
    std::uniform_int_distribution<Index> m_dist(8, 128);
    std::uniform_real_distribution<double> beta_dist(0.35, 1.2);
    std::uniform_real_distribution<double> lam(0.5, 1.5);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> gamma_dist(0.25, 1.4);

    const int total = 500;
    long band_count = 0;
    long mismatches = 0;
    for (int i = 0; i < total; ++i) {
        const Index n = (i % 2 == 0) ? 2 : 3;
        const Index m = m_dist(rng);
        const Vector axis = random_unit_vector(rng, n);
        const double beta = beta_dist(rng);

        ConeInstance inst;
        inst.dirs = sampled_cap_dirs(rng, n, axis, beta, m);
        if (fullness_rank(inst.dirs) != n) {
            --i;
            continue;
        }
        const int family = (i % 50 == 49) ? 2 : ((i % 5 >= 3) ? 1 : 0);
        if (family == 2) {
            inst.g = Vector::Zero(n);  // exactly on the boundary of any cap cone
        } else if (family == 1) {
            inst.g = scale(rng) * tilted_from_axis(rng, n, axis, beta + gamma_dist(rng));
        } else {
            Vector g = Vector::Zero(n);
            for (const Vector& d : inst.dirs) g += lam(rng) * d;
            inst.g = scale(rng) * g / g.norm();
        }

        const ConeCertificate cert = cone_membership(inst.g, inst.dirs);
        g_certs.offer(cert, inst.g, inst.dirs);

        double margin = 0.0;
        if (cert.verdict == ConeVerdict::Interior)
            margin = *cert.delta;
        else if (cert.verdict == ConeVerdict::Outside)
            margin = -cert.normal->dot(inst.g);
        if (std::abs(margin) <= 1e-6) {
            ++band_count;
            continue;
        }
        const OracleVerdict oracle = brute_force_membership(inst.g, inst.dirs, 20000);
        const bool lp_interior = cert.verdict == ConeVerdict::Interior;
        if (lp_interior != (oracle == OracleVerdict::Interior)) ++mismatches;
    }
    c.require(mismatches == 0, std::to_string(mismatches) + " oracle disagreements");
    c.require(band_count < total / 20, "band instances " + std::to_string(band_count) +
                                           " exceed 5% of " + std::to_string(total));
    c.detail << " " << total << " instances, " << band_count << " in tolerance band, "
             << mismatches << " disagreements";
    band_out = band_count;
    return c;
}

// --------------------------------------------------------------------------
// 4 (+5). realize round trips
// --------------------------------------------------------------------------

Lattice lattice_through(const Vector& g) {
    Lattice lattice;
    lattice.dimension = g.size();
    const auto [w1, w2] = orthonormal_complement_pair(g);
    lattice.generators = {g, w1, w2};
    return lattice;
}

Criterion criterion_4_round_trip() {
    Criterion c;
    Rng rng(4040);
    std::uniform_real_distribution<double> lam(0.5, 1.5);
    const Index m = 128;
    const double match_bound = std::max(1e-6, 10.0 / (static_cast<double>(m) *
                                                      static_cast<double>(m)));

    int interior_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const TantrixSamples tx = wobbly_cap_tantrix(rng, m);
        Vector g = Vector::Zero(3);
        for (const Vector& d : tx.dirs) g += lam(rng) * d;
        g /= static_cast<double>(m);

        bool ok = true;
        try {
            const RealizeResult result = realize_skew_loop(tx, g, lattice_through(g));
            g_certs.offer(result.certificate, g, tx.dirs);
            ok &= (result.arc.displacement() - g).cwiseAbs().maxCoeff() <= 1e-8;
            ok &= result.verdict.is_skew;
            const TantrixSamples back = compute_tantrix(result.arc);
            for (Index i = 0; i < tx.size() && ok; ++i)
                ok &= (back.dirs[i] - tx.dirs[i]).norm() <= match_bound;
        } catch (const NotRealizable&) {
            ok = false;
        }
        if (ok) ++interior_ok;
    }
    c.require(interior_ok == 100,
              "planted-interior successes " + std::to_string(interior_ok) + "/100");

    int outside_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const TantrixSamples tx = wobbly_cap_tantrix(rng, 96);
        Vector axis = Vector::Zero(3);
        for (const Vector& d : tx.dirs) axis += d;
        axis /= axis.norm();
        const Vector g = -axis;
        try {
            realize_skew_loop(tx, g, lattice_through(g));
        } catch (const NotRealizable& e) {
            if (e.condition == RealizeCondition::ConeInterior && e.certificate &&
                e.certificate->normal) {
                g_certs.offer(*e.certificate, g, tx.dirs);
                g_sharp.offer(*e.certificate->normal, g, tx.dirs);
                if (certificate_is_sound(*e.certificate, g, tx.dirs)) ++outside_ok;
            }
        }
    }
    c.require(outside_ok == 100,
              "planted-outside sound failures " + std::to_string(outside_ok) + "/100");
    c.detail << " 100 interior + 100 outside instances at m = " << m
             << ", tantrix match bound " << match_bound;
    return c;
}

// --------------------------------------------------------------------------
// 6. lattice-class search
// --------------------------------------------------------------------------

Criterion criterion_6_search() {
    Criterion c;
    const TantrixSamples tx = cap_circle_tantrix(vec3(0, 0, 1), M_PI / 4.0, 128);
    const auto classes = find_lattice_class(tx, integer_lattice(3), 3);
    const auto contains = [&](const HomotopyClass& cls) {
        return std::find(classes.begin(), classes.end(), cls) != classes.end();
    };
    c.require(!classes.empty(), "empty result");
    c.require(contains(HomotopyClass{{0, 0, 1}}), "missing class (0,0,1)");
    c.require(!contains(HomotopyClass{{0, 0, -1}}), "contains class (0,0,-1)");
    c.detail << " radius 3 over Z^3: " << classes.size() << " admissible classes";
    return c;
}

// --------------------------------------------------------------------------
// 7. spherical region vs cone
// --------------------------------------------------------------------------

Criterion criterion_7_region() {
    Criterion c;
    Rng rng(7070);
    std::uniform_real_distribution<double> theta_dist(0.3, 1.1);
    std::uniform_real_distribution<double> inner(0.0, 0.8);
    std::uniform_real_distribution<double> outer(1.2, 1.45);
    std::uniform_real_distribution<double> azim(0.0, 2.0 * M_PI);

    int implications = 0;
    int failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Vector pole = random_unit_vector(rng, 3);
        const double theta = theta_dist(rng);
        const TantrixSamples tx = cap_circle_tantrix(pole, theta, 96);
        const auto [e1, e2] = orthonormal_complement_pair(pole);

        const bool probe_inside = trial % 5 < 3;
        const double colat =
            probe_inside ? theta * inner(rng) : std::min(theta * outer(rng), 1.5);
        const double phi = azim(rng);
        Vector d = std::sin(colat) * (std::cos(phi) * e1 + std::sin(phi) * e2) +
                   std::cos(colat) * pole;
        d /= d.norm();

        double margin = 0.0;
        const bool in_region = region_contains_direction(tx, d, pole, {}, &margin);
        if (in_region != probe_inside) ++failures;
        if (in_region && margin > 1e-6) {
            const ConeCertificate cert = cone_membership(d, tx.dirs);
            g_certs.offer(cert, d, tx.dirs);
            const bool band = cert.verdict == ConeVerdict::Interior && *cert.delta <= 1e-6;
            if (!band) {
                ++implications;
                if (cert.verdict != ConeVerdict::Interior) ++failures;
            }
        }
    }
    c.require(failures == 0, std::to_string(failures) + " verdict failures");
    c.require(implications >= 250, "too few above-band implications checked");
    c.detail << " 500 caps, " << implications << " above-band implications, " << failures
             << " failures";
    return c;
}

// --------------------------------------------------------------------------
// 8. hull/cone commutation
// --------------------------------------------------------------------------

Criterion criterion_8_commutation() {
    Criterion c;
    Rng rng(8080);
    std::uniform_int_distribution<Index> m_dist(6, 40);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> lam(0.3, 1.7);
    std::normal_distribution<double> gauss(0.0, 1.0);

    int sets_passed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = (trial % 2 == 0) ? 2 : 3;
        std::vector<Vector> points;
        const Index m = m_dist(rng);
        for (Index k = 0; k < m; ++k) points.push_back(random_unit_vector(rng, n));
        if (fullness_rank(points) != n) {
            --trial;
            continue;
        }
        std::vector<Vector> probes;
        for (int k = 0; k < 50; ++k) {
            if (k % 3 == 0) {
                Vector p(n);
                for (Index i = 0; i < n; ++i) p(i) = gauss(rng);
                probes.push_back(scale(rng) * p);
            } else if (k % 3 == 1) {
                Vector p = Vector::Zero(n);
                for (const Vector& q : points) p += lam(rng) * q;
                probes.push_back(scale(rng) * p / std::max(1.0, p.norm()));
            } else {
                Vector p = Vector::Zero(n);
                for (const Vector& q : points) p += lam(rng) * q;
                probes.push_back(-scale(rng) * p / std::max(1.0, p.norm()));
            }
        }
        if (hull_cone_commutation_check(points, probes)) ++sets_passed;
    }
    c.require(sets_passed == 100, "agreements " + std::to_string(sets_passed) + "/100");
    c.detail << " 100 point sets x 50 probes, " << sets_passed << " full agreements";
    return c;
}

// --------------------------------------------------------------------------
// 9. negative controls
// --------------------------------------------------------------------------

Criterion criterion_9_negative_controls() {
    Criterion c;
    Rng rng(9090);

    // planar circles have antipodal tantrix pairs, in the plane and in space
    const SkewVerdict flat2 = is_skew(unit_circle_loop(128));
    c.require(!flat2.is_skew && flat2.embedded && !flat2.antipode_free &&
                  flat2.witness.has_value(),
              "planar circle in R^2");
    const Matrix q = random_rotation(rng, 3);
    SampledLoop tilted;
    tilted.dimension = 3;
    for (Index k = 0; k < 128; ++k) {
        const double t = static_cast<double>(k) / 128.0;
        tilted.params.push_back(t);
        tilted.samples.push_back(
            q * vec3(std::cos(2.0 * M_PI * t), std::sin(2.0 * M_PI * t), 0.0));
    }
    const SkewVerdict flat3 = is_skew(tilted);
    c.require(!flat3.is_skew && !flat3.antipode_free && flat3.witness.has_value(),
              "planar circle in R^3");

    // a full loop in a hemisphere is never a tantrix over the trivial group
    const TantrixSamples cap = cap_circle_tantrix(vec3(0, 0, 1), M_PI / 4.0, 64);
    Lattice trivial;
    trivial.dimension = 3;
    bool hemisphere_ok = false;
    try {
        realize_skew_loop(cap, Vector::Zero(3), trivial);
    } catch (const NotRealizable& e) {
        if (e.condition == RealizeCondition::ConeInterior && e.certificate &&
            e.certificate->verdict != ConeVerdict::Interior) {
            g_certs.offer(*e.certificate, Vector::Zero(3), cap.dirs);
            if (e.certificate->normal) g_sharp.offer(*e.certificate->normal, Vector::Zero(3), cap.dirs);
            hemisphere_ok = certificate_is_sound(*e.certificate, Vector::Zero(3), cap.dirs);
        }
    }
    c.require(hemisphere_ok, "hemisphere tantrix over the trivial group");
    c.detail << " planar circles rejected via antipode witnesses; hemisphere case "
             << (hemisphere_ok ? "Boundary/Outside" : "unexpected");
    return c;
}

}  // namespace

int main() {
    struct Row {
        int number;
        const char* title;
        Criterion result;
        double seconds;
    };
    std::vector<Row> rows;

    const auto timed = [&](int number, const char* title, auto&& fn) {
        const auto start = std::chrono::steady_clock::now();
        Criterion result = fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(Row{number, title, std::move(result), secs});
    };

    long band_count = 0;
    timed(1, "helix suite", criterion_1_helices);
    timed(2, "cone/oracle agreement", [&] { return criterion_2_oracle(band_count); });
    timed(4, "realize round trip", criterion_4_round_trip);
    timed(6, "lattice-class search", criterion_6_search);
    timed(7, "region/cone consistency", criterion_7_region);
    timed(8, "hull/cone commutation", criterion_8_commutation);
    timed(9, "negative controls", criterion_9_negative_controls);

    // criteria 3 and 5 aggregate everything emitted above
    Criterion c3;
    c3.require(g_certs.total > 500 && g_certs.unsound == 0,
               std::to_string(g_certs.unsound) + " unsound of " +
                   std::to_string(g_certs.total));
    c3.detail << " " << g_certs.total << " certificates re-validated, " << g_certs.unsound
              << " unsound";
    rows.push_back(Row{3, "certificate soundness", std::move(c3), 0.0});

    Criterion c5;
    c5.require(g_sharp.total >= 100 && g_sharp.violated == 0,
               std::to_string(g_sharp.violated) + " violations of " +
                   std::to_string(g_sharp.total));
    c5.detail << " " << g_sharp.total << " density failures checked, " << g_sharp.violated
              << " inequality violations";
    rows.push_back(Row{5, "density-failure inequalities", std::move(c5), 0.0});

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.number < b.number;
    });

    int failed = 0;
    for (const Row& row : rows) {
        if (!row.result.pass) ++failed;
        std::cout << (row.result.pass ? "[PASS]" : "[FAIL]") << " criterion " << row.number
                  << " (" << row.title << "):" << row.result.detail.str() << std::fixed
                  << std::setprecision(1);
        if (row.seconds > 0.0) std::cout << " (" << row.seconds << " s)";
        std::cout << "\n";
    }
    std::cout << (failed == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " (" << failed
              << " of " << rows.size() << " criteria failed)\n";
    return failed;
}
