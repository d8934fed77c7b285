//
// skewloop command-line tool: generate helical skew loops, verify skewness,
// compute tantrices, test cone membership, realize loops from prescribed
// tantrices, and search homotopy classes.
//
// Exit codes: 0 affirmative/success, 1 negative mathematical verdict,
// 2 input or usage error.
//

#include "skewloop/skewloop.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace skewloop;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

Vector parse_csv_vector(const std::string& text) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            coords.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInput("cannot parse vector component '" + item + "'");
        }
    }
    if (coords.empty()) throw InvalidInput("empty vector argument");
    Vector v(static_cast<Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Index>(i)) = coords[i];
    require_finite(v, "vector argument");
    return v;
}

TantrixSamples load_tantrix(const std::string& path) {
    return tantrix_from_curve(read_curve(path));
}

int cmd_gen_helix(const std::string& g_text, double r, long long samples, bool raw,
                  const std::string& out) {
    const Vector g = parse_csv_vector(g_text);
    SampledArc arc;
    if (raw) {
        const auto [u1, u2] = orthonormal_complement_pair(g);
        arc = helix_arc(HelixSpec{g, u1, u2, r, static_cast<Index>(samples)});
    } else {
        arc = helix_loop_for_class(g, r, static_cast<Index>(samples));
    }
    write_curve(out, to_curve_data(arc));
    return kExitYes;
}

int cmd_verify_skew(const std::string& path, double tol_emb) {
    ToleranceConfig tol;
    if (tol_emb > 0.0) tol.embedding_eps = tol_emb;
    const CurveData curve = read_curve(path);
    const SkewVerdict verdict =
        curve.closed ? is_skew(loop_from_curve(curve, tol), tol) : is_skew(arc_from_curve(curve, tol), tol);
    std::cout << to_json(verdict).dump(2) << "\n";
    return verdict.is_skew ? kExitYes : kExitNo;
}

int cmd_tantrix(const std::string& path, const std::string& out) {
    const CurveData curve = read_curve(path);
    const TantrixSamples tx =
        curve.closed ? compute_tantrix(loop_from_curve(curve)) : compute_tantrix(arc_from_curve(curve));
    write_curve(out, to_curve_data(tx));
    return kExitYes;
}

int cmd_cone_test(const std::string& tx_path, const std::string& g_text) {
    const TantrixSamples tx = load_tantrix(tx_path);
    const Vector g = parse_csv_vector(g_text);
    require_dimension(g, tx.dimension, "cone-test");
    const ConeCertificate cert = cone_membership(g, tx.dirs);
    std::cout << to_json(cert).dump(2) << "\n";
    return cert.verdict == ConeVerdict::Interior ? kExitYes : kExitNo;
}

int cmd_realize(const std::string& tx_path, const std::string& g_text,
                const std::string& lattice_path, const std::string& out) {
    const TantrixSamples tx = load_tantrix(tx_path);
    const Vector g = parse_csv_vector(g_text);
    const Lattice lattice = read_lattice(lattice_path);
    try {
        const RealizeResult result = realize_skew_loop(tx, g, lattice);
        write_curve(out, to_curve_data(result.arc));
        nlohmann::json j{{"realizable", true},
                         {"certificate", to_json(result.certificate)},
                         {"verdict", to_json(result.verdict)}};
        const Vector d = result.arc.displacement();
        j["displacement"] = std::vector<double>(d.data(), d.data() + d.size());
        j["class"] = homotopy_class_of(result.arc, lattice).coeffs;
        std::cout << j.dump(2) << "\n";
        return kExitYes;
    } catch (const NotRealizable& e) {
        nlohmann::json j{{"realizable", false},
                         {"failed_condition", static_cast<int>(e.condition)},
                         {"reason", e.what()}};
        if (e.witness) j["witness"] = {(*e.witness)[0], (*e.witness)[1]};
        if (e.certificate) j["certificate"] = to_json(*e.certificate);
        std::cout << j.dump(2) << "\n";
        return kExitNo;
    }
}

int cmd_find_class(const std::string& tx_path, const std::string& lattice_path, long long radius) {
    const TantrixSamples tx = load_tantrix(tx_path);
    const Lattice lattice = read_lattice(lattice_path);
    const auto classes = find_lattice_class(tx, lattice, static_cast<Index>(radius));
    for (const HomotopyClass& cls : classes) {
        for (std::size_t i = 0; i < cls.coeffs.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << cls.coeffs[i];
        }
        std::cout << "\n";
    }
    return classes.empty() ? kExitNo : kExitYes;
}

int cmd_plot_data(const std::string& path, const std::string& out) {
    detail::write_file(out, curve_to_csv(read_curve(path)));
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skew loops in flat tori: tantrix verification, cone certificates, synthesis"};
    app.require_subcommand(1);

    // accepted everywhere for reproducibility of randomized self-checks;
    // the shipped commands are deterministic and do not consume it
    long long seed = 0;

    std::string g_text, curve_path, tantrix_path, lattice_path, out_path;
    double radius_r = 1.0;
    long long samples = 512;
    bool raw = false;
    double tol_emb = -1.0;
    long long search_radius = 3;

    auto* gen = app.add_subcommand("gen-helix", "generate a helical skew loop for a class g");
    gen->add_option("--g", g_text, "displacement vector, comma separated")->required();
    gen->add_option("--r", radius_r, "tube radius (> 0)")->required();
    gen->add_option("--samples", samples, "sample count (>= 16)")->capture_default_str();
    gen->add_flag("--raw", raw, "use the uncorrected formula (displacement 2*pi*g)");
    gen->add_option("--out", out_path, "output curve file")->required();
    gen->add_option("--seed", seed, "seed for randomized self-checks");

    auto* verify = app.add_subcommand("verify-skew", "decide skewness of a curve file");
    verify->add_option("--curve", curve_path, "curve file")->required();
    verify->add_option("--tol-emb", tol_emb, "override the chordal separation tolerance");
    verify->add_option("--seed", seed, "seed for randomized self-checks");

    auto* tanx = app.add_subcommand("tantrix", "write the tantrix of a curve file");
    tanx->add_option("--curve", curve_path, "curve file")->required();
    tanx->add_option("--out", out_path, "output tantrix curve file")->required();
    tanx->add_option("--seed", seed, "seed for randomized self-checks");

    auto* cone = app.add_subcommand("cone-test", "cone-interior certificate for g vs a tantrix");
    cone->add_option("--tantrix", tantrix_path, "tantrix curve file")->required();
    cone->add_option("--g", g_text, "query vector, comma separated")->required();
    cone->add_option("--seed", seed, "seed for randomized self-checks");

    auto* realize = app.add_subcommand("realize", "synthesize a g-homotopic skew loop from a tantrix");
    realize->add_option("--tantrix", tantrix_path, "tantrix curve file")->required();
    realize->add_option("--g", g_text, "class displacement, comma separated")->required();
    realize->add_option("--lattice", lattice_path, "lattice file")->required();
    realize->add_option("--out", out_path, "output curve file")->required();
    realize->add_option("--seed", seed, "seed for randomized self-checks");

    auto* findc = app.add_subcommand("find-class", "admissible homotopy classes within a radius");
    findc->add_option("--tantrix", tantrix_path, "tantrix curve file")->required();
    findc->add_option("--lattice", lattice_path, "lattice file")->required();
    findc->add_option("--radius", search_radius, "coefficient max-norm bound")->required();
    findc->add_option("--seed", seed, "seed for randomized self-checks");

    auto* plot = app.add_subcommand("plot-data", "write CSV rows t,x1,...,xn for plotting");
    plot->add_option("--curve", curve_path, "curve file")->required();
    plot->add_option("--out", out_path, "output CSV file")->required();
    plot->add_option("--seed", seed, "seed for randomized self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (gen->parsed()) return cmd_gen_helix(g_text, radius_r, samples, raw, out_path);
        if (verify->parsed()) return cmd_verify_skew(curve_path, tol_emb);
        if (tanx->parsed()) return cmd_tantrix(curve_path, out_path);
        if (cone->parsed()) return cmd_cone_test(tantrix_path, g_text);
        if (realize->parsed()) return cmd_realize(tantrix_path, g_text, lattice_path, out_path);
        if (findc->parsed()) return cmd_find_class(tantrix_path, lattice_path, search_radius);
        if (plot->parsed()) return cmd_plot_data(curve_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cerr << "error: no command\n";
    return kExitError;
}
