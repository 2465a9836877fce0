#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coneminq/io.hpp"
#include "coneminq/ma.hpp"

namespace {

using namespace coneminq;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitVerifyFailed = 4;

struct Options {
    std::string cone_path, measure_path, polytope_path;
    std::string support_path, density_path, manifest_path;
    std::string out_path;
    double p = 0.0, q = 0.0;
    int grid = 1024;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    double tau = 1e-6;
    double t = 10.0;
};

int worker_cap() {
    // Execution is sequential and bit-reproducible; the cap is accepted for
    // interface compatibility and sanity-checked only.
    if (const char* env = std::getenv("CONEMINQ_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

void emit_manifest(const std::string& command, const Options& o,
                   double wall_time_s) {
    if (o.out_path.empty()) return;
    RunManifest m;
    m.command = command;
    if (!o.cone_path.empty()) m.inputs["cone"] = o.cone_path;
    if (!o.measure_path.empty()) m.inputs["measure"] = o.measure_path;
    if (!o.polytope_path.empty()) m.inputs["polytope"] = o.polytope_path;
    if (!o.support_path.empty()) m.inputs["support"] = o.support_path;
    if (!o.density_path.empty()) m.inputs["density"] = o.density_path;
    m.inputs["output"] = o.out_path;
    m.params["p"] = o.p;
    m.params["q"] = o.q;
    m.params["grid"] = static_cast<double>(o.grid);
    m.params["seed"] = static_cast<double>(o.seed);
    m.params["tol"] = o.tol;
    m.params["tau"] = o.tau;
    m.params["t"] = o.t;
    m.wall_time_s = wall_time_s;
    write_atomic(o.out_path + ".manifest.json", serialize(manifest_to_json(m)));
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

int run_solve(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    Cone cone = cone_from_json(load_json(o.cone_path), &warnings);
    DiscreteMeasure target = measure_from_json(load_json(o.measure_path), &warnings);
    Problem prob{std::move(cone), std::move(target), o.p, o.q, o.tau};
    SolverConfig cfg;
    cfg.resolution = o.grid;
    cfg.seed = o.seed;
    cfg.tol = o.tol;
    print_warnings(warnings);
    const Solution sol = solve(prob, cfg);
    print_warnings(sol.warnings);
    if (!o.out_path.empty())
        write_atomic(o.out_path, serialize(solution_to_json(sol)));
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    emit_manifest("solve", o, wall);
    std::cout << "converged: " << (sol.converged ? "yes" : "no")
              << "  iterations: " << sol.iterations
              << "  max residual: " << sol.max_residual()
              << "  tau1: " << sol.tau1 << "\n";
    return sol.converged ? kExitOk : kExitNotConverged;
}

std::string measure_csv(const DiscreteMeasure& mu) {
    std::ostringstream os;
    os.precision(17);
    os << "index";
    const int dim = mu.atoms.empty() ? 0 : static_cast<int>(mu.atoms[0].u.size());
    for (int k = 0; k < dim; ++k) os << ",u" << k;
    os << ",mass,error\n";
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        os << i;
        for (int k = 0; k < dim; ++k) os << "," << mu.atoms[i].u[k];
        os << "," << mu.atoms[i].mass << "," << mu.atoms[i].error << "\n";
    }
    return os.str();
}

int run_measure(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    const CPolytope P =
        polytope_from_json(load_json(o.polytope_path),
                           std::filesystem::path(o.polytope_path)
                               .parent_path()
                               .string(),
                           &warnings);
    print_warnings(warnings);
    const DiscreteMeasure mu = pq_measure_with_error(P, o.p, o.q, o.grid, o.seed);
    const std::string csv = measure_csv(mu);
    std::cout << csv;
    if (!o.out_path.empty()) write_atomic(o.out_path, csv);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    emit_manifest("measure", o, wall);
    return kExitOk;
}

int run_volume(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    const CPolytope P =
        polytope_from_json(load_json(o.polytope_path),
                           std::filesystem::path(o.polytope_path)
                               .parent_path()
                               .string(),
                           &warnings);
    print_warnings(warnings);
    const QuadratureGrid grid = make_grid(P.cone(), o.grid, o.seed);
    std::ostringstream os;
    os.precision(17);
    if (o.q != 0.0)
        os << "dual_volume," << o.q << "," << dual_volume(P, o.q, grid) << "\n";
    else
        os << "dual_entropy,0," << dual_entropy(P, grid) << "\n";
    std::cout << os.str();
    if (!o.out_path.empty()) write_atomic(o.out_path, os.str());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    emit_manifest("volume", o, wall);
    return kExitOk;
}

int run_verify(const Options& o) {
    std::vector<std::string> warnings;
    const CPolytope P =
        polytope_from_json(load_json(o.polytope_path),
                           std::filesystem::path(o.polytope_path)
                               .parent_path()
                               .string(),
                           &warnings);
    const DiscreteMeasure target =
        measure_from_json(load_json(o.measure_path), &warnings);
    print_warnings(warnings);
    const QuadratureGrid grid = make_grid(P.cone(), o.grid, o.seed);
    const DiscreteMeasure got = pq_measure(P, o.p, o.q, grid);
    double worst = 0.0;
    for (const MeasureAtom& a : target.atoms) {
        double mass = 0.0;
        bool found = false;
        for (const MeasureAtom& b : got.atoms) {
            if (a.u.size() == b.u.size() && angle_between(a.u, b.u) < 1e-9) {
                mass = b.mass;
                found = true;
                break;
            }
        }
        if (!found) {
            std::cout << "verify: missing atom, max relative error inf\n";
            return kExitVerifyFailed;
        }
        worst = std::max(worst, std::abs(mass - a.mass) / a.mass);
    }
    std::cout << "verify: max relative atom error " << worst << "\n";
    return worst <= o.tol ? kExitOk : kExitVerifyFailed;
}

std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (ls >> a >> b) rows.emplace_back(a, b);
    }
    if (rows.empty()) throw InputError(path + ": no numeric rows");
    return rows;
}

int run_residual(const Options& o) {
    const auto hs = read_csv_pairs(o.support_path);
    const auto fs = read_csv_pairs(o.density_path);
    SupportProfile prof;
    for (const auto& [phi, h] : hs) {
        prof.phi.push_back(phi);
        prof.h.push_back(h);
    }
    auto density = [&fs](double phi) {
        // piecewise-linear interpolation of the sampled density
        if (phi <= fs.front().first) return fs.front().second;
        if (phi >= fs.back().first) return fs.back().second;
        for (size_t k = 0; k + 1 < fs.size(); ++k) {
            if (phi <= fs[k + 1].first) {
                const double t =
                    (phi - fs[k].first) / (fs[k + 1].first - fs[k].first);
                return (1.0 - t) * fs[k].second + t * fs[k + 1].second;
            }
        }
        return fs.back().second;
    };
    const ResidualReport rep = residual(prof, density, o.p, o.q);
    std::cout << "max residual: " << rep.max_abs << "\n";
    if (!o.out_path.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "phi,residual\n";
        for (size_t k = 0; k < rep.values.size(); ++k)
            os << prof.phi[k] << "," << rep.values[k] << "\n";
        write_atomic(o.out_path, os.str());
    }
    return kExitOk;
}

int run_export(const Options& o) {
    std::vector<std::string> warnings;
    const CPolytope P =
        polytope_from_json(load_json(o.polytope_path),
                           std::filesystem::path(o.polytope_path)
                               .parent_path()
                               .string(),
                           &warnings);
    print_warnings(warnings);
    const std::string obj = export_obj(P, o.t);
    if (o.out_path.empty()) throw InputError("export needs -o");
    write_atomic(o.out_path, obj);
    std::cout << "wrote " << o.out_path << "\n";
    return kExitOk;
}

int run_replay(const Options& o) {
    const RunManifest m = manifest_from_json(load_json(o.manifest_path));
    Options r;
    auto input = [&](const char* key) {
        const auto it = m.inputs.find(key);
        return it == m.inputs.end() ? std::string() : it->second;
    };
    r.cone_path = input("cone");
    r.measure_path = input("measure");
    r.polytope_path = input("polytope");
    r.support_path = input("support");
    r.density_path = input("density");
    r.out_path = input("output");
    auto param = [&](const char* key, double fallback) {
        const auto it = m.params.find(key);
        return it == m.params.end() ? fallback : it->second;
    };
    r.p = param("p", 0.0);
    r.q = param("q", 0.0);
    r.grid = static_cast<int>(param("grid", 1024));
    r.seed = static_cast<std::uint64_t>(param("seed", 0));
    r.tol = param("tol", 1e-6);
    r.tau = param("tau", 1e-6);
    r.t = param("t", 10.0);
    if (m.command == "solve") return run_solve(r);
    if (m.command == "measure") return run_measure(r);
    if (m.command == "volume") return run_volume(r);
    throw InputError("replay: unsupported command " + m.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for convex sets determined by a pointed cone"};
    app.require_subcommand(1);
    Options o;
    (void)worker_cap();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-p", o.p, "exponent p");
        cmd->add_option("-q", o.q, "exponent q");
        cmd->add_option("--grid", o.grid, "quadrature resolution");
        cmd->add_option("--seed", o.seed, "random seed");
        cmd->add_option("--tol", o.tol, "tolerance");
        cmd->add_option("--tau", o.tau, "interior margin");
        cmd->add_option("-t", o.t, "truncation height");
        cmd->add_option("-o", o.out_path, "output path");
    };

    CLI::App* c_solve = app.add_subcommand("solve", "solve the inverse problem");
    c_solve->add_option("--cone", o.cone_path)->required();
    c_solve->add_option("--measure", o.measure_path)->required();
    add_common(c_solve);

    CLI::App* c_measure = app.add_subcommand("measure", "curvature measure of a polytope");
    c_measure->add_option("--polytope", o.polytope_path)->required();
    add_common(c_measure);

    CLI::App* c_volume = app.add_subcommand("volume", "dual volume / entropy");
    c_volume->add_option("--polytope", o.polytope_path)->required();
    add_common(c_volume);

    CLI::App* c_verify = app.add_subcommand("verify", "check a polytope against a measure");
    c_verify->add_option("--polytope", o.polytope_path)->required();
    c_verify->add_option("--measure", o.measure_path)->required();
    add_common(c_verify);

    CLI::App* c_residual = app.add_subcommand("residual", "planar equation residual");
    c_residual->add_option("--support", o.support_path)->required();
    c_residual->add_option("--density", o.density_path)->required();
    add_common(c_residual);

    CLI::App* c_export = app.add_subcommand("export", "OBJ mesh of the truncated boundary");
    c_export->add_option("--polytope", o.polytope_path)->required();
    add_common(c_export);

    CLI::App* c_replay = app.add_subcommand("replay", "re-run a recorded manifest");
    c_replay->add_option("--manifest", o.manifest_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (c_solve->parsed()) return run_solve(o);
        if (c_measure->parsed()) return run_measure(o);
        if (c_volume->parsed()) return run_volume(o);
        if (c_verify->parsed()) return run_verify(o);
        if (c_residual->parsed()) return run_residual(o);
        if (c_export->parsed()) return run_export(o);
        if (c_replay->parsed()) return run_replay(o);
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
