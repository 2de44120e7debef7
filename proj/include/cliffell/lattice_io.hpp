#pragma once

// Lattice configuration documents:
//   {"m": 1, "scalar_field": "real", "omegas": [[x0, x1, ...], ...]}
// Doubles are written in shortest round-trip form, so parse(serialize(L))
// reproduces every coefficient bit for bit.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cliffell/lattice.hpp"

namespace cliffell {

nlohmann::json to_json(const PeriodLattice& l);
PeriodLattice lattice_from_json(const nlohmann::json& doc);

std::string serialize_lattice(const PeriodLattice& l);
PeriodLattice parse_lattice(std::string_view text);
PeriodLattice load_lattice(const std::filesystem::path& path);

// A bundled name or a path to a JSON document.
PeriodLattice resolve_lattice(std::string_view name_or_path);

}  // namespace cliffell
