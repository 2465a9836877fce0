#pragma once

#include <map>

#include "json.hpp"

#include "coneminq/solver.hpp"

namespace coneminq {

inline constexpr const char* kToolVersion = "coneminq 1.0.0";

using Json = nlohmann::ordered_json;

/// Parses a JSON file; throws InputError with a line/field diagnostic.
Json load_json(const std::string& path);

/// Cone schema: {"dim": n, "kind": "polyhedral", "generators": [[...], ...]}
/// or {"kind": "circular", "axis": [...], "half_angle": r}. Vectors are
/// normalized on ingestion; adjustments beyond 1e-6 produce a warning.
Cone cone_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);
Json cone_to_json(const Cone& cone);

/// Polytope schema: {"cone": <object or path string>, "facets":
/// [{"u": [...], "h": -r}, ...]}. Relative cone paths resolve against
/// `base_dir`.
CPolytope polytope_from_json(const Json& j, const std::string& base_dir = ".",
                             std::vector<std::string>* warnings = nullptr);
Json polytope_to_json(const CPolytope& p);

/// Measure schema: {"domain": "omega_polar"|"omega",
/// "atoms": [{"u": [...], "mass": r, "error": r?}, ...]}.
DiscreteMeasure measure_from_json(const Json& j,
                                  std::vector<std::string>* warnings = nullptr);
Json measure_to_json(const DiscreteMeasure& mu);

Json solution_to_json(const Solution& sol);

/// Reproducibility record emitted next to every solve/measure output.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> inputs;
    std::map<std::string, double> params;
    std::string version = kToolVersion;
    double wall_time_s = 0.0;
};
Json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

/// Writes via a temporary file in the same directory plus rename.
void write_atomic(const std::string& path, const std::string& content);

/// OBJ mesh of the facet boundary of A clipped to the truncation
/// C_t = { x : x . reference_direction <= t } (dim 3 only).
std::string export_obj(const CPolytope& p, double t);

}  // namespace coneminq
