#include "coneminq/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace coneminq {
namespace {

Vec vec_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw InputError("expected a numeric array for a vector");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number()) throw InputError("vector entries must be numbers");
        v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
    }
    return v;
}

Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) j.push_back(v[k]);
    return j;
}

Vec ingest_unit(const Vec& v, const char* what,
                std::vector<std::string>* warnings) {
    const double nrm = v.norm();
    if (nrm <= 0.0) throw InputError(std::string(what) + ": zero vector");
    if (std::abs(nrm - 1.0) > 1e-6 && warnings) {
        std::ostringstream os;
        os << what << " renormalized (|v| = " << nrm << ")";
        warnings->push_back(os.str());
    }
    return v / nrm;
}

}  // namespace

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Cone cone_from_json(const Json& j, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw InputError("cone: expected an object");
    const std::string kind = j.value("kind", j.contains("axis")
                                                 ? std::string("circular")
                                                 : std::string("polyhedral"));
    if (kind == "circular") {
        if (!j.contains("axis") || !j.contains("half_angle"))
            throw InputError("cone: circular kind needs axis and half_angle");
        const Vec axis = ingest_unit(vec_from_json(j["axis"]), "cone.axis", warnings);
        return Cone::circular(axis, j["half_angle"].get<double>());
    }
    if (kind != "polyhedral") throw InputError("cone.kind: unknown value " + kind);
    if (!j.contains("dim") || !j.contains("generators"))
        throw InputError("cone: polyhedral kind needs dim and generators");
    const int dim = j["dim"].get<int>();
    std::vector<Vec> gens;
    for (const Json& g : j["generators"])
        gens.push_back(ingest_unit(vec_from_json(g), "cone.generators", warnings));
    return Cone::polyhedral(dim, gens);
}

Json cone_to_json(const Cone& cone) {
    Json j;
    j["dim"] = cone.dim();
    if (cone.kind() == Cone::Kind::Circular) {
        j["kind"] = "circular";
        j["axis"] = vec_to_json(cone.axis());
        j["half_angle"] = cone.half_angle();
    } else {
        j["kind"] = "polyhedral";
        Json gens = Json::array();
        for (const Vec& g : cone.generators()) gens.push_back(vec_to_json(g));
        j["generators"] = gens;
    }
    return j;
}

CPolytope polytope_from_json(const Json& j, const std::string& base_dir,
                             std::vector<std::string>* warnings) {
    if (!j.is_object() || !j.contains("cone") || !j.contains("facets"))
        throw InputError("polytope: needs cone and facets fields");
    Cone cone = [&] {
        if (j["cone"].is_string()) {
            std::filesystem::path p = j["cone"].get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            return cone_from_json(load_json(p.string()), warnings);
        }
        return cone_from_json(j["cone"], warnings);
    }();
    std::vector<Facet> facets;
    for (const Json& f : j["facets"]) {
        if (!f.contains("u") || !f.contains("h"))
            throw InputError("polytope.facets: each entry needs u and h");
        facets.push_back({ingest_unit(vec_from_json(f["u"]), "facet.u", warnings),
                          f["h"].get<double>()});
    }
    return CPolytope(std::move(cone), std::move(facets));
}

Json polytope_to_json(const CPolytope& p) {
    Json j;
    j["cone"] = cone_to_json(p.cone());
    Json facets = Json::array();
    for (const Facet& f : p.facets()) {
        Json jf;
        jf["u"] = vec_to_json(f.u);
        jf["h"] = f.h;
        facets.push_back(jf);
    }
    j["facets"] = facets;
    return j;
}

DiscreteMeasure measure_from_json(const Json& j,
                                  std::vector<std::string>* warnings) {
    if (!j.is_object() || !j.contains("atoms"))
        throw InputError("measure: needs an atoms field");
    DiscreteMeasure mu;
    const std::string dom = j.value("domain", std::string("omega_polar"));
    if (dom == "omega_polar")
        mu.domain = DiscreteMeasure::Domain::OmegaPolar;
    else if (dom == "omega")
        mu.domain = DiscreteMeasure::Domain::Omega;
    else
        throw InputError("measure.domain: unknown value " + dom);
    for (const Json& a : j["atoms"]) {
        if (!a.contains("u") || !a.contains("mass"))
            throw InputError("measure.atoms: each entry needs u and mass");
        MeasureAtom atom;
        atom.u = ingest_unit(vec_from_json(a["u"]), "atom.u", warnings);
        atom.mass = a["mass"].get<double>();
        atom.error = a.value("error", 0.0);
        if (atom.mass <= 0.0) throw InputError("measure.atoms: mass must be > 0");
        mu.atoms.push_back(std::move(atom));
    }
    return mu;
}

Json measure_to_json(const DiscreteMeasure& mu) {
    Json j;
    j["domain"] = mu.domain == DiscreteMeasure::Domain::OmegaPolar
                      ? "omega_polar"
                      : "omega";
    Json atoms = Json::array();
    for (const MeasureAtom& a : mu.atoms) {
        Json ja;
        ja["u"] = vec_to_json(a.u);
        ja["mass"] = a.mass;
        if (a.error > 0.0) ja["error"] = a.error;
        atoms.push_back(ja);
    }
    j["atoms"] = atoms;
    return j;
}

Json solution_to_json(const Solution& sol) {
    Json j;
    if (sol.polytope) j["polytope"] = polytope_to_json(*sol.polytope);
    j["achieved"] = measure_to_json(sol.achieved);
    j["residuals"] = sol.residuals;
    j["tau1"] = sol.tau1;
    j["iterations"] = sol.iterations;
    j["converged"] = sol.converged;
    j["up_to_dilation"] = sol.up_to_dilation;
    j["objective_trace"] = sol.objective_trace;
    j["warnings"] = sol.warnings;
    return j;
}

Json manifest_to_json(const RunManifest& m) {
    Json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["params"] = m.params;
    j["version"] = m.version;
    j["wall_time_s"] = m.wall_time_s;
    return j;
}

RunManifest manifest_from_json(const Json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.params = j.at("params").get<std::map<std::string, double>>();
    m.version = j.value("version", std::string(kToolVersion));
    m.wall_time_s = j.value("wall_time_s", 0.0);
    return m;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp =
        target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

std::string export_obj(const CPolytope& p, double t) {
    if (p.cone().dim() != 3)
        throw UnsupportedDim("OBJ export requires dim 3");
    const Vec xi = p.cone().reference_direction();
    std::ostringstream os;
    os.precision(17);
    os << "# boundary mesh, truncation height " << t << "\n";
    std::vector<std::vector<int>> faces;
    int base = 1;
    for (const FacetGeometry& fg : p.facet_geometry()) {
        if (!fg.active()) continue;
        // clip the facet polygon against xi . x <= t
        std::vector<Vec> poly;
        const int n = static_cast<int>(fg.vertices.size());
        for (int i = 0; i < n; ++i) {
            const Vec& a = fg.vertices[i];
            const Vec& b = fg.vertices[(i + 1) % n];
            const double da = xi.dot(a) - t, db = xi.dot(b) - t;
            if (da <= 0.0) poly.push_back(a);
            if ((da < 0.0) != (db < 0.0) && da != db)
                poly.push_back(a + (da / (da - db)) * (b - a));
        }
        if (poly.size() < 3) continue;
        for (const Vec& v : poly)
            os << "v " << v[0] << " " << v[1] << " " << v[2] << "\n";
        for (size_t k = 1; k + 1 < poly.size(); ++k) {
            faces.push_back({base, base + static_cast<int>(k),
                             base + static_cast<int>(k) + 1});
        }
        base += static_cast<int>(poly.size());
    }
    if (faces.empty()) throw EmptyTruncation("truncated boundary is empty");
    for (const auto& f : faces)
        os << "f " << f[0] << " " << f[1] << " " << f[2] << "\n";
    return os.str();
}

}  // namespace coneminq
