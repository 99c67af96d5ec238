#include "soficlab/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace soficlab {

using nlohmann::json;

std::uint64_t sofic_hash(const SoficMap& sigma) {
  std::ostringstream os;
  save_sofic(sigma, os);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string microstate_to_json(const ActionSpec& action, const Microstate& phi) {
  json out;
  out["d"] = phi.d();
  out["sigma_hash"] = phi.sigma ? sofic_hash(*phi.sigma) : 0;
  json entries = json::array();
  for (const auto& entry : phi.entries) {
    json cell;
    cell["radius"] = entry.radius;
    json values = json::object();
    if (entry.is_symbolic()) {
      for (const auto& [g, sym] : entry.symbols)
        values[format_element(action.group, g)] = sym;
    } else {
      for (const auto& [g, vec] : entry.torus)
        values[format_element(action.group, g)] = vec;
      cell["tail"] = entry.tail;
    }
    cell["values"] = std::move(values);
    entries.push_back(std::move(cell));
  }
  out["entries"] = std::move(entries);
  return out.dump(2);
}

std::string tile_system_to_json(const TileSystem& tiles, const SoficMap& sigma) {
  json out;
  out["sigma_hash"] = sofic_hash(sigma);
  out["d"] = sigma.d();
  out["tau"] = tiles.tau;
  out["eta"] = tiles.eta;
  out["cover_fraction"] = tiles.cover_fraction;
  json shapes = json::array();
  for (const auto& shape : tiles.shapes) {
    json names = json::array();
    for (const auto& s : shape) names.push_back(format_element(sigma.group(), s));
    shapes.push_back(std::move(names));
  }
  out["shapes"] = std::move(shapes);
  out["centers"] = tiles.centers;
  out["witnesses"] = tiles.witnesses;
  if (!tiles.occupancy.empty()) out["occupancy"] = tiles.occupancy;
  return out.dump(2);
}

TileSystem tile_system_from_json(const std::string& text,
                                 const SoficMap& sigma) {
  json in = json::parse(text);
  if (in.contains("sigma_hash") &&
      in["sigma_hash"].get<std::uint64_t>() != sofic_hash(sigma))
    throw MismatchError("tile system was built against a different sofic map");
  TileSystem tiles;
  tiles.tau = in.at("tau").get<double>();
  tiles.eta = in.at("eta").get<double>();
  tiles.cover_fraction = in.at("cover_fraction").get<double>();
  for (const auto& shape : in.at("shapes")) {
    std::vector<GroupElement> elems;
    for (const auto& name : shape)
      elems.push_back(parse_element(sigma.group(), name.get<std::string>()));
    tiles.shapes.push_back(std::move(elems));
  }
  tiles.centers = in.at("centers").get<std::vector<IndexSet>>();
  tiles.witnesses =
      in.at("witnesses").get<std::vector<std::vector<IndexSet>>>();
  if (in.contains("occupancy"))
    tiles.occupancy = in["occupancy"].get<std::vector<double>>();
  return tiles;
}

}  // namespace soficlab
