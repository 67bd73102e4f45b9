#pragma once

#include "poly120/parity.hpp"
#include "poly120/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace poly120 {

using json = nlohmann::json;

/// A malformed input file; `invariant` names the first rule it breaks.
class FormatError : public std::runtime_error {
public:
    FormatError(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

json to_json(const GoldenNumber& x);
GoldenNumber golden_from_json(const json& j);

// Ray / basis / graph exports ---------------------------------------------

json rays_json(const Polytope& polytope);
/// Header "index,x1,x2,x3,x4,col,row" then one line per ray.
std::string rays_csv(const Polytope& polytope);

json bases_json(const RayBasisSystem& system);
/// Header "id,r1,r2,r3,r4,tag".
std::string bases_csv(const RayBasisSystem& system);

/// Orthogonality graph restricted to the system's rays, "i: j k l ...".
std::string graph_adjacency(const RayBasisSystem& system);
std::string graph_dot(const RayBasisSystem& system);

// Systems ------------------------------------------------------------------

json system_to_json(const RayBasisSystem& system);
json system_ref_to_json(const SystemRef& ref);
SystemRef system_ref_from_json(const json& j);
/// Rebuilds the host system named by a reference.
RayBasisSystem resolve_system(const SystemRef& ref, const Polytope& polytope = Polytope::shared());
RayBasisSystem system_from_json(const json& j, const Polytope& polytope = Polytope::shared());

// Proof certificates ---------------------------------------------------------

struct Certificate {
    ParityProof proof;
    std::optional<std::string> symbol;
    std::optional<bool> critical;
    std::vector<std::string> spanned_600cells;
    std::optional<std::uint64_t> rng_seed;
    std::optional<std::string> mode;
};

/// Fills symbol, criticality and spanned cells from the proof and host.
Certificate make_certificate(const ParityProof& proof, const RayBasisSystem& host,
                             std::optional<std::uint64_t> rng_seed = std::nullopt,
                             std::optional<std::string> mode = std::nullopt);

json to_json(const Certificate& cert, const Polytope& polytope = Polytope::shared());
/// Accepts basis_ids, bases (ray quadruples) or both; when both are present
/// they must agree. Throws FormatError.
Certificate certificate_from_json(const json& j, const Polytope& polytope = Polytope::shared());

json catalog_to_json(const Catalog& catalog);

json read_json_file(const std::string& path);

}  // namespace poly120
