#include "pltopo/io.hpp"

#include "pltopo/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pltopo {

using nlohmann::json;

namespace {

const json& field(const json& doc, const std::string& key, const std::string& origin)
{
    if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, origin + ": expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) throw Error(ErrorCode::MalformedInput, origin + ": missing field '" + key + "'");
    return *it;
}

std::string string_at(const json& v, const std::string& where)
{
    if (!v.is_string()) throw Error(ErrorCode::MalformedInput, where + ": expected a string, got " + v.dump());
    return v.get<std::string>();
}

std::string bracket(const std::vector<std::string>& labels)
{
    std::string out = "[";
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
    return out + "]";
}

}  // namespace

json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::NotFound, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, path.string() + ": " + e.what());
    }
}

LoadedComplex parse_complex(const json& doc, const std::string& origin)
{
    LoadedComplex out;
    const json& verts = field(doc, "vertices", origin);
    if (!verts.is_array()) throw Error(ErrorCode::MalformedInput, origin + ": 'vertices' must be an array");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto l = string_at(verts[i], origin + ": vertices[" + std::to_string(i) + "]");
        if (!seen.insert(l).second) throw Error(ErrorCode::MalformedInput, origin + ": duplicate vertex '" + l + "'");
        labels.push_back(l);
    }

    const json& simps = field(doc, "simplices", origin);
    if (!simps.is_array()) throw Error(ErrorCode::MalformedInput, origin + ": 'simplices' must be an array");
    std::vector<std::vector<std::string>> gens;
    std::set<std::set<std::string>> listed;
    for (std::size_t i = 0; i < simps.size(); ++i) {
        const std::string where = origin + ": simplices[" + std::to_string(i) + "]";
        if (!simps[i].is_array() || simps[i].empty())
            throw Error(ErrorCode::MalformedInput, where + ": expected a non-empty array");
        std::vector<std::string> g;
        std::set<std::string> unique;
        for (std::size_t j = 0; j < simps[i].size(); ++j) {
            auto l = string_at(simps[i][j], where + "[" + std::to_string(j) + "]");
            if (!seen.count(l)) throw Error(ErrorCode::MalformedInput, where + ": unknown vertex '" + l + "'");
            if (!unique.insert(l).second)
                throw Error(ErrorCode::MalformedInput, where + ": duplicate vertex '" + l + "' in " + bracket(g));
            g.push_back(l);
        }
        listed.insert(unique);
        gens.push_back(std::move(g));
    }
    for (const auto& l : labels) listed.insert({l});

    SimplicialComplex k = SimplicialComplex::from_labels(labels, gens);
    std::size_t added = 0;
    std::string first;
    for (const auto& s : k.simplices()) {
        std::set<std::string> names;
        for (auto v : s.vertices()) names.insert(k.label(v));
        if (listed.count(names)) continue;
        if (!added) first = k.name(s);
        ++added;
    }
    if (added)
        out.warnings.push_back(origin + ": added " + std::to_string(added) + " missing face" + (added > 1 ? "s" : "") +
                               " by closure (first: " + first + ")");

    if (auto it = doc.find("positions"); it != doc.end()) {
        if (!it->is_object()) throw Error(ErrorCode::MalformedInput, origin + ": 'positions' must map labels to coordinates");
        std::vector<std::vector<double>> pos(labels.size());
        for (const auto& [label, coords] : it->items()) {
            auto v = k.find_vertex(label);
            if (!v) throw Error(ErrorCode::MalformedInput, origin + ": positions: unknown vertex '" + label + "'");
            if (!coords.is_array()) throw Error(ErrorCode::MalformedInput, origin + ": positions." + label + ": expected an array");
            for (const auto& c : coords) {
                if (!c.is_number()) throw Error(ErrorCode::MalformedInput, origin + ": positions." + label + ": expected numbers");
                pos[static_cast<std::size_t>(*v)].push_back(c.get<double>());
            }
        }
        for (std::size_t v = 0; v < pos.size(); ++v)
            if (pos[v].size() != pos[0].size())
                throw Error(ErrorCode::MalformedInput, origin + ": positions must all have the same length (vertex '" +
                                                           labels[v] + "')");
        k.set_positions(std::move(pos));
    }
    out.complex = make_complex(std::move(k));
    return out;
}

LoadedComplex load_complex(const std::filesystem::path& path) { return parse_complex(read_json(path), path.string()); }

LoadedMap parse_map(const json& doc, const std::filesystem::path& base_dir, const std::string& origin)
{
    LoadedMap out;
    auto side = [&](const std::string& key) {
        const json& v = field(doc, key, origin);
        LoadedComplex c;
        if (v.is_string()) {
            std::filesystem::path p = v.get<std::string>();
            if (p.is_relative()) p = base_dir / p;
            c = load_complex(p);
        } else {
            c = parse_complex(v, origin + "." + key);
        }
        out.warnings.insert(out.warnings.end(), c.warnings.begin(), c.warnings.end());
        return c.complex;
    };
    const ComplexPtr source = side("source");
    const ComplexPtr target = side("target");
    const json& vm = field(doc, "vertex_map", origin);
    if (!vm.is_object()) throw Error(ErrorCode::MalformedInput, origin + ": 'vertex_map' must be an object");
    std::map<std::string, std::string> labels;
    for (const auto& [from, to] : vm.items()) labels[from] = string_at(to, origin + ": vertex_map." + from);
    SimplicialMap f = SimplicialMap::from_labels(source, target, labels);
    const auto bad = validate_map(f);
    if (!bad.empty()) {
        std::string msg = origin + ": image is not a simplex for";
        for (const auto& s : bad) msg += " " + source->name(s);
        throw Error(ErrorCode::MalformedInput, msg);
    }
    out.map = std::make_shared<const SimplicialMap>(std::move(f));
    return out;
}

LoadedMap load_map(const std::filesystem::path& path)
{
    return parse_map(read_json(path), path.parent_path(), path.string());
}

Point parse_point(const SimplicialComplex& k, const json& doc)
{
    if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "point: expected {\"label\": weight, ...}");
    std::map<VertexIndex, double> w;
    double total = 0.0;
    for (const auto& [label, value] : doc.items()) {
        auto v = k.find_vertex(label);
        if (!v) throw Error(ErrorCode::MalformedInput, "point: unknown vertex '" + label + "'");
        if (!value.is_number() || value.get<double>() < 0.0)
            throw Error(ErrorCode::MalformedInput, "point: weight of '" + label + "' must be a non-negative number");
        w[*v] += value.get<double>();
        total += value.get<double>();
    }
    if (std::abs(total - 1.0) > 1e-7)
        throw Error(ErrorCode::MalformedInput, "point: weights sum to " + std::to_string(total) + ", not 1");
    Point p = Point::from_weights(w);
    if (!in_complex(k, p)) throw Error(ErrorCode::GeometryError, "point: " + k.name(p.carrier()) + " is not a simplex");
    return p;
}

json point_to_json(const SimplicialComplex& k, const Point& p)
{
    json out = json::object();
    for (const auto& [v, w] : p.weights()) out[k.label(v)] = w;
    return out;
}

json complex_to_json(const SimplicialComplex& k)
{
    json out;
    out["vertices"] = k.labels();
    json simps = json::array();
    for (const auto& s : k.maximal_simplices()) {
        json g = json::array();
        for (auto v : s.vertices()) g.push_back(k.label(v));
        simps.push_back(g);
    }
    out["simplices"] = simps;
    if (!k.positions().empty()) {
        json pos = json::object();
        for (std::size_t v = 0; v < k.vertex_count(); ++v) pos[k.labels()[v]] = k.positions()[v];
        out["positions"] = pos;
    }
    return out;
}

}  // namespace pltopo
