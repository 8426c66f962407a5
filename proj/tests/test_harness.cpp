#include "doctest.h"

#include "pltopo/cli.hpp"
#include "pltopo/error.hpp"
#include "pltopo/fixtures.hpp"
#include "pltopo/io.hpp"
#include "pltopo/svg.hpp"
#include "pltopo/verify.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace pltopo;

namespace {

const std::filesystem::path kData = PLTOPO_DATA_DIR;

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "pltopo-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("loading fixtures")
{
    const auto x = load_complex(kData / "ex44_source.json");
    CHECK(x.complex->vertex_count() == 6);
    CHECK(x.complex->count_of_dim(2) == 4);
    CHECK(x.complex->labels().front() == "0");
    const auto f = load_map(kData / "ex44_map.json");
    CHECK(validate_map(*f.map).empty());
    CHECK(f.map->target()->count_of_dim(2) == 2);
    CHECK(f.map->target()->positions().size() == 4);
    for (const auto* name : {"point", "d1", "d2", "bd2", "boundary_tetrahedron", "cone_bd2"})
        CHECK_NOTHROW(load_complex(kData / (std::string(name) + ".json")));
}

TEST_CASE("auto-closure warns")
{
    const auto c = parse_complex(nlohmann::json::parse(R"({"vertices":["a","b","c"],"simplices":[["a","b","c"],["a","b"]]})"));
    CHECK(c.complex->size() == 7);
    REQUIRE(c.warnings.size() == 1);
    CHECK(c.warnings[0].find("2 missing faces") != std::string::npos);
    const auto closed = parse_complex(nlohmann::json::parse(
        R"({"vertices":["a","b"],"simplices":[["a","b"],["a"],["b"]]})"));
    CHECK(closed.warnings.empty());
}

TEST_CASE("malformed input names the problem")
{
    auto message = [](const std::string& text) {
        try {
            parse_complex(nlohmann::json::parse(text));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedInput);
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"vertices":["a","b"],"simplices":[["a","a"]]})").find("duplicate vertex 'a'") != std::string::npos);
    CHECK(message(R"({"vertices":["a"],"simplices":[["a","z"]]})").find("simplices[0]") != std::string::npos);
    CHECK(message(R"({"vertices":["a"]})").find("'simplices'") != std::string::npos);
    CHECK(message(R"({"vertices":["a", 3],"simplices":[]})").find("vertices[1]") != std::string::npos);

    const auto bad = nlohmann::json::parse(R"({
        "source": {"vertices":["a","b"],"simplices":[["a","b"]]},
        "target": {"vertices":["x","y","z"],"simplices":[["x","y"],["y","z"]]},
        "vertex_map": {"a":"x","b":"z"}})");
    try {
        parse_map(bad, ".");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("[a,b]") != std::string::npos);
    }

    const auto path = scratch("broken.json");
    std::ofstream(path) << "{\"vertices\": [\"a\",\n  }";
    CHECK_THROWS_WITH_AS(load_complex(path), doctest::Contains("line 2"), Error);
}

TEST_CASE("verification reports")
{
    VerifyOptions light;
    light.random = 300;
    light.lattice = 3;
    const auto good = run_verify(load_map(kData / "map_collapse.json").map, light);
    CHECK(good.verdict == OverallVerdict::TheoremConsistent);
    CHECK(good.exit_code() == 0);
    CHECK(good.controls.size() == 5);
    REQUIRE(good.bound);
    CHECK(*good.bound <= 1.0 + 1e-3);
    CHECK(good.slices.size() == 3);

    const auto bad = run_verify(load_map(kData / "map_bad.json").map, light);
    CHECK(bad.verdict == OverallVerdict::FibersNotContractible);
    CHECK(bad.exit_code() == 1);
    REQUIRE(bad.failing.size() == 1);
    CHECK(bad.failing[0] == "[a,b]");
    CHECK(bad.controls.empty());
    CHECK(bad.refusal.find("[a,b]") != std::string::npos);
    CHECK(bad.to_text() == run_verify(load_map(kData / "map_bad.json").map, light).to_text());
}

TEST_CASE("svg output")
{
    const auto d2 = Cellulation::build(fixtures::d2(), 0.1);
    const std::string svg = cellulation_svg(d2);
    CHECK(count(svg, "<polygon") == 43);
    CHECK(count(svg, "class=\"collar\"") == 9);
    CHECK(svg == cellulation_svg(Cellulation::build(fixtures::d2(), 0.1)));

    const std::string dot = complex_svg(*fixtures::point());
    CHECK(count(dot, "<circle") == 1);
    CHECK(count(dot, "<polygon") == 0);

    const auto y = Cellulation::build(fixtures::ex44_target(), 0.05);
    const std::string two = cellulation_svg(y);
    CHECK(count(two, "<polygon") == y.cells().size());
    CHECK(count(two, "class=\"collar\"") > 0);

    const auto tetra = make_complex(SimplicialComplex::from_labels({"a", "b", "c", "d"}, {{"a", "b", "c", "d"}}));
    CHECK_THROWS_AS(complex_svg(*tetra), Error);
    CHECK_THROWS_AS(cellulation_svg(Cellulation::build(tetra, 0.1)), Error);

    const auto a = scratch("a.svg"), b = scratch("b.svg");
    emit_svg(d2, a);
    emit_svg(Cellulation::build(fixtures::d2(), 0.1), b);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    CHECK(std::string(std::istreambuf_iterator<char>(fa), {}) == std::string(std::istreambuf_iterator<char>(fb), {}));
}

TEST_CASE("command line")
{
    const auto bad = cli({"verify", (kData / "map_bad.json").string()});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("[a,b]") != std::string::npos);

    const auto fibers = cli({"check-fibers", (kData / "map_collapse.json").string()});
    CHECK(fibers.code == 0);
    CHECK(count(fibers.out, "Contractible") == 3);

    const auto cells = cli({"cellulate", (kData / "d2.json").string(), "--epsilon", "0.1"});
    CHECK(cells.code == 0);
    CHECK(cells.out.find("cells 43") != std::string::npos);
    CHECK(cells.out.find("profile 12 21 10") != std::string::npos);
    CHECK(cells.err.find("warning") != std::string::npos);

    const auto cone = cli({"cone-distance", (kData / "d1.json").string(), "--a", R"({"a":1})", "--ta", "2", "--b",
                           R"({"b":1})", "--tb", "2"});
    CHECK(cone.code == 0);
    CHECK(cone.out == "2.828427125\n");
    const auto flat = cli({"cone-distance", (kData / "d1.json").string(), "--a", R"({"a":1})", "--ta", "-1", "--b",
                           R"({"b":1})", "--tb", "-3"});
    CHECK(flat.out == "2.000000000\n");

    const auto lift = cli({"lift", (kData / "ex44_map.json").string(), (kData / "ex44_lift.json").string(), "--epsilon", "0.1"});
    CHECK(lift.code == 0);
    CHECK(lift.out.find("discrepancy") != std::string::npos);

    const auto inv = cli({"inverse", (kData / "map_collapse.json").string(), "--epsilon", "0.2"});
    CHECK(inv.code == 0);
    CHECK(count(inv.out, "->") == 3);

    const auto meas = cli({"measure-control", (kData / "map_collapse.json").string(), "--epsilon", "0.1", "--samples", "500"});
    CHECK(meas.code == 0);
    CHECK(meas.out.find("within") != std::string::npos);

    CHECK(cli({"verify"}).code != 0);
    CHECK(cli({"cellulate", "/nonexistent.json", "--epsilon", "0.1"}).code == 1);
}
