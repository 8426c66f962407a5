#pragma once

#include "pltopo/complex.hpp"
#include "pltopo/simplicial_map.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace pltopo {

struct LoadedComplex {
    ComplexPtr complex;
    std::vector<std::string> warnings;
};

struct LoadedMap {
    MapPtr map;
    std::vector<std::string> warnings;
};

/// {"vertices": [...], "simplices": [[...], ...], "positions": {"a": [x, y], ...}}.
/// Missing faces are added with a warning. Throws MalformedInput naming the
/// offending field.
LoadedComplex parse_complex(const nlohmann::json& doc, const std::string& origin = "complex");
LoadedComplex load_complex(const std::filesystem::path& path);

/// {"source": <path or object>, "target": <path or object>, "vertex_map": {...}}.
/// Relative paths resolve against the map file. Throws MalformedInput naming
/// every source simplex whose image is not a simplex.
LoadedMap parse_map(const nlohmann::json& doc, const std::filesystem::path& base_dir, const std::string& origin = "map");
LoadedMap load_map(const std::filesystem::path& path);

nlohmann::json read_json(const std::filesystem::path& path);

/// {"a": 0.5, "b": 0.5}.
Point parse_point(const SimplicialComplex& k, const nlohmann::json& doc);
nlohmann::json point_to_json(const SimplicialComplex& k, const Point& p);

nlohmann::json complex_to_json(const SimplicialComplex& k);

}  // namespace pltopo
