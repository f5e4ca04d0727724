#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

using Json = nlohmann::ordered_json;

// Non-finite reals are written as the strings "inf" / "-inf".
Json real_to_json(double v);
double real_from_json(const Json& j);

// Run lengths of alternating values, starting with a run of zeros (possibly of length 0).
std::vector<std::size_t> rle_encode(const std::vector<std::uint8_t>& mask);
std::vector<std::uint8_t> rle_decode(const std::vector<std::size_t>& runs);

Json to_json(const Interval& iv);
Json to_json(const IdentifiedSet& s);
IdentifiedSet set_from_json(const Json& j);

}  // namespace mrb
