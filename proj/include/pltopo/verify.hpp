#pragma once

#include "pltopo/contractibility.hpp"
#include "pltopo/controlled_homotopy.hpp"
#include "pltopo/simplicial_map.hpp"

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pltopo {

enum class OverallVerdict { TheoremConsistent, CounterexampleToImplementation, Unknown, FibersNotContractible };

const char* to_string(OverallVerdict v);

struct FiberRow {
    std::string simplex;
    Verdict verdict;
    /// Round-trip error of the product identification; empty when skipped.
    std::optional<double> product_error;
};

struct ControlRow {
    double epsilon = 0.0;
    double g = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    /// Largest residual of the identities f∘g = h₂(·,1), f∘h₁′ = h₂∘f, f∘h₁″ = f.
    double identity_residual = 0.0;
    bool within = false;
};

struct SliceRow {
    double height = 0.0;
    double control = 0.0;
    double predicted = 0.0;
    bool within = false;
};

/// Evidence for a fibre that is not contractible: no ε-inverse exists for ε
/// below the star radius of its barycentre.
struct Obstruction {
    std::string simplex;
    std::string reason;
    double star_radius = 0.0;
};

struct VerificationReport {
    bool surjective = true;
    std::vector<std::string> missed;
    std::vector<FiberRow> fibers;
    std::vector<ControlRow> controls;
    std::optional<double> bound;
    std::vector<SliceRow> slices;
    std::vector<Obstruction> obstructions;
    /// Why the controlled family was not built, when it was not.
    std::string refusal;
    std::vector<std::string> failing;
    OverallVerdict verdict = OverallVerdict::Unknown;

    /// 0 consistent, 2 unknown, 1 otherwise.
    int exit_code() const;
    std::string to_text() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    /// Empty means comesh/2, …, comesh/32.
    std::vector<double> schedule;
    std::uint64_t seed = kDefaultSeed;
    double tolerance = 1e-4;
    int lattice = 4;
    std::size_t random = 2000;
    bool assemble = true;
    GammaChoices choices;
};

std::vector<double> default_schedule(double comesh);

VerificationReport run_verify(const MapPtr& f, const VerifyOptions& options = {});

}  // namespace pltopo
