#pragma once

#include <cstdint>
#include <string>

#include "soficlab/microstate.hpp"
#include "soficlab/quasitiling.hpp"

namespace soficlab {

/// FNV-1a hash of the canonical text serialization; stable across runs.
std::uint64_t sofic_hash(const SoficMap& sigma);

/// Microstate fixture dump: d, the sofic map's hash, and per-entry window
/// values, in a canonical JSON layout.
std::string microstate_to_json(const ActionSpec& action, const Microstate& phi);

/// TileSystem round-trip carrying all witnesses for replay validation.
std::string tile_system_to_json(const TileSystem& tiles, const SoficMap& sigma);
TileSystem tile_system_from_json(const std::string& text,
                                 const SoficMap& sigma);

}  // namespace soficlab
