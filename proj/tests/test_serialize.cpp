#include <doctest.h>

#include "soficlab/serialize.hpp"

using namespace soficlab;

namespace {
const GroupSpec kZ = GroupSpec::lattice(1);
}

TEST_CASE("sofic hash is stable and sensitive") {
  SoficMap a = quotient_sofic(kZ, {8}, 2);
  SoficMap b = quotient_sofic(kZ, {8}, 2);
  SoficMap c = perturb(a, 4, 5);
  CHECK(sofic_hash(a) == sofic_hash(b));
  CHECK(sofic_hash(a) != sofic_hash(c));
}

TEST_CASE("microstate dumps are hash-stable") {
  ActionSpec shift = full_shift(kZ, 2);
  SoficMap sigma = quotient_sofic(kZ, {6}, 1);
  Microstate phi = fullshift_microstate(shift, {0, 1, 1, 0, 1, 0}, sigma, 1);
  std::string once = microstate_to_json(shift, phi);
  std::string twice = microstate_to_json(shift, phi);
  CHECK(once == twice);
  CHECK(once.find("sigma_hash") != std::string::npos);
}

TEST_CASE("tile systems replay through JSON with all witnesses") {
  SoficMap sigma = quotient_sofic(kZ, {12}, 3);
  std::vector<GroupElement> shape;
  for (int g = 0; g <= 2; ++g) shape.push_back(GroupElement{{g}});
  TileSystem tiles = quasitile(sigma, {shape}, [&] {
    IndexSet v(12);
    for (int i = 0; i < 12; ++i) v[i] = i;
    return v;
  }(), 0.0, 0.1);

  std::string text = tile_system_to_json(tiles, sigma);
  TileSystem loaded = tile_system_from_json(text, sigma);
  CHECK(loaded.centers == tiles.centers);
  CHECK(loaded.witnesses == tiles.witnesses);
  validate_tile_system(loaded, sigma);  // replay validation passes

  SoficMap other = quotient_sofic(kZ, {12}, 2);
  CHECK_THROWS_AS(tile_system_from_json(text, other), MismatchError);
}

TEST_CASE("tampered tile systems fail replay validation") {
  SoficMap sigma = quotient_sofic(kZ, {12}, 3);
  std::vector<GroupElement> shape;
  for (int g = 0; g <= 2; ++g) shape.push_back(GroupElement{{g}});
  IndexSet v(12);
  for (int i = 0; i < 12; ++i) v[i] = i;
  TileSystem tiles = quasitile(sigma, {shape}, v, 0.0, 0.1);
  tiles.centers[0].back() = 1;  // overlapping tile
  CHECK_THROWS_AS(validate_tile_system(tiles, sigma), MismatchError);
}
