///
/// file: io.hpp
///
/// File formats: JSON curve and lattice files (numbers emitted with 17
/// significant digits so write-then-read is bit-exact), plus JSON records
/// for skew verdicts and cone certificates.
///

#ifndef SKEWLOOP_IO_HPP
#define SKEWLOOP_IO_HPP

#include "skewloop/cone.hpp"
#include "skewloop/core.hpp"
#include "skewloop/tantrix.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace skewloop {

/// On-disk curve: a loop (closed, params in [0,1)) or an arc (params end
/// at 1).  Tantrix files are loops whose samples are unit directions.
struct CurveData {
    Index dimension = 0;
    bool closed = false;
    std::vector<double> params;
    std::vector<Vector> samples;
};

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// 17 significant digits: the shortest fixed precision that round-trips
/// every IEEE double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline void append_number_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    out += ']';
}

inline void append_vector(std::string& out, const Vector& v) {
    out += '[';
    for (Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v(i));
    }
    out += ']';
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open file for writing: " + path);
    out << text;
    if (!out) throw InvalidInput("failed writing file: " + path);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Curve files
// ---------------------------------------------------------------------------

inline std::string curve_to_json(const CurveData& curve) {
    std::string out = "{\n  \"dimension\": " + std::to_string(curve.dimension) +
                      ",\n  \"closed\": " + (curve.closed ? "true" : "false") +
                      ",\n  \"params\": ";
    detail::append_number_array(out, curve.params);
    out += ",\n  \"samples\": [\n";
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
        out += "    ";
        detail::append_vector(out, curve.samples[i]);
        if (i + 1 < curve.samples.size()) out += ',';
        out += '\n';
    }
    out += "  ]\n}\n";
    return out;
}

inline CurveData curve_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("curve file: invalid JSON: ") + e.what());
    }
    CurveData curve;
    try {
        curve.dimension = j.at("dimension").get<Index>();
        curve.closed = j.at("closed").get<bool>();
        curve.params = j.at("params").get<std::vector<double>>();
        for (const auto& row : j.at("samples")) {
            const auto coords = row.get<std::vector<double>>();
            Vector v(static_cast<Index>(coords.size()));
            for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Index>(i)) = coords[i];
            curve.samples.push_back(std::move(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("curve file: missing or malformed field: ") + e.what());
    }
    if (curve.samples.size() != curve.params.size())
        throw InvalidInput("curve file: params/samples length mismatch");
    for (const Vector& s : curve.samples)
        if (s.size() != curve.dimension)
            throw InvalidInput("curve file: sample dimension mismatch");
    return curve;
}

inline void write_curve(const std::string& path, const CurveData& curve) {
    detail::write_file(path, curve_to_json(curve));
}

inline CurveData read_curve(const std::string& path) {
    return curve_from_json(detail::read_file(path));
}

// conversions ---------------------------------------------------------------

inline CurveData to_curve_data(const SampledLoop& loop) {
    return CurveData{loop.dimension, true, loop.params, loop.samples};
}

inline CurveData to_curve_data(const SampledArc& arc) {
    return CurveData{arc.dimension, false, arc.params, arc.samples};
}

inline CurveData to_curve_data(const TantrixSamples& tx) {
    return CurveData{tx.dimension, true, tx.params, tx.dirs};
}

inline SampledLoop loop_from_curve(const CurveData& curve, const ToleranceConfig& tol = {}) {
    if (!curve.closed) throw InvalidInput("expected a closed curve file");
    SampledLoop loop{curve.dimension, curve.samples, curve.params};
    validate_loop(loop, tol);
    return loop;
}

inline SampledArc arc_from_curve(const CurveData& curve, const ToleranceConfig& tol = {}) {
    if (curve.closed) throw InvalidInput("expected an open (arc) curve file");
    SampledArc arc{curve.dimension, curve.samples, curve.params};
    validate_arc(arc, tol);
    return arc;
}

/// Tantrix files are closed curves of unit directions; samples within 1e-6
/// of unit length are renormalized, anything further off is rejected.
inline TantrixSamples tantrix_from_curve(const CurveData& curve) {
    if (!curve.closed) throw InvalidInput("tantrix file must be a closed curve");
    TantrixSamples tx;
    tx.dimension = curve.dimension;
    tx.params = curve.params;
    tx.dirs.reserve(curve.samples.size());
    for (const Vector& s : curve.samples) {
        const double len = s.norm();
        if (std::abs(len - 1.0) > 1e-6)
            throw InvalidInput("tantrix file: sample is not a unit direction");
        tx.dirs.push_back(s / len);
    }
    validate_tantrix(tx);
    return tx;
}

// ---------------------------------------------------------------------------
// Lattice files
// ---------------------------------------------------------------------------

inline std::string lattice_to_json(const Lattice& lattice) {
    std::string out = "{\n  \"dimension\": " + std::to_string(lattice.dimension) +
                      ",\n  \"generators\": [";
    for (std::size_t i = 0; i < lattice.generators.size(); ++i) {
        if (i) out += ',';
        out += "\n    ";
        detail::append_vector(out, lattice.generators[i]);
    }
    out += lattice.generators.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

inline Lattice lattice_from_json(const std::string& text, const ToleranceConfig& tol = {}) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("lattice file: invalid JSON: ") + e.what());
    }
    Lattice lattice;
    try {
        lattice.dimension = j.at("dimension").get<Index>();
        for (const auto& row : j.at("generators")) {
            const auto coords = row.get<std::vector<double>>();
            Vector v(static_cast<Index>(coords.size()));
            for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Index>(i)) = coords[i];
            lattice.generators.push_back(std::move(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("lattice file: missing or malformed field: ") + e.what());
    }
    validate_lattice(lattice, tol);
    return lattice;
}

inline void write_lattice(const std::string& path, const Lattice& lattice) {
    detail::write_file(path, lattice_to_json(lattice));
}

inline Lattice read_lattice(const std::string& path, const ToleranceConfig& tol = {}) {
    return lattice_from_json(detail::read_file(path), tol);
}

// ---------------------------------------------------------------------------
// Verdict and certificate records
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const SkewVerdict& v) {
    nlohmann::json j{{"is_skew", v.is_skew},
                     {"embedded", v.embedded},
                     {"antipode_free", v.antipode_free},
                     {"min_separation", v.min_separation},
                     {"min_antipodal_separation", v.min_antipodal_separation}};
    if (v.witness)
        j["witness"] = {(*v.witness)[0], (*v.witness)[1]};
    else
        j["witness"] = nullptr;
    return j;
}

inline nlohmann::json to_json(const ConeCertificate& cert) {
    nlohmann::json j{{"verdict", to_string(cert.verdict)}};
    if (cert.weights) j["weights"] = *cert.weights;
    if (cert.delta) j["delta"] = *cert.delta;
    if (cert.normal) {
        std::vector<double> u((*cert.normal).data(), (*cert.normal).data() + (*cert.normal).size());
        j["normal"] = u;
    }
    return j;
}

/// Re-reads a printed certificate; used to re-validate emitted certificates
/// independently of the solver that produced them.
inline ConeCertificate certificate_from_json(const nlohmann::json& j) {
    ConeCertificate cert;
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "Interior")
        cert.verdict = ConeVerdict::Interior;
    else if (verdict == "Boundary")
        cert.verdict = ConeVerdict::Boundary;
    else if (verdict == "Outside")
        cert.verdict = ConeVerdict::Outside;
    else
        throw InvalidInput("certificate: unknown verdict " + verdict);
    if (j.contains("weights")) cert.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("delta")) cert.delta = j.at("delta").get<double>();
    if (j.contains("normal")) {
        const auto coords = j.at("normal").get<std::vector<double>>();
        Vector u(static_cast<Index>(coords.size()));
        for (std::size_t i = 0; i < coords.size(); ++i) u(static_cast<Index>(i)) = coords[i];
        cert.normal = std::move(u);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Plot rows
// ---------------------------------------------------------------------------

/// CSV rows `t,x1,...,xn`; closed curves get a final wrap row at t = 1.
inline std::string curve_to_csv(const CurveData& curve) {
    std::string out = "t";
    for (Index i = 1; i <= curve.dimension; ++i) out += ",x" + std::to_string(i);
    out += '\n';
    const auto emit = [&](double t, const Vector& s) {
        out += format_double(t);
        for (Index i = 0; i < s.size(); ++i) {
            out += ',';
            out += format_double(s(i));
        }
        out += '\n';
    };
    for (std::size_t i = 0; i < curve.samples.size(); ++i) emit(curve.params[i], curve.samples[i]);
    if (curve.closed && !curve.samples.empty()) emit(1.0, curve.samples.front());
    return out;
}

}  // namespace skewloop

#endif  // SKEWLOOP_IO_HPP
