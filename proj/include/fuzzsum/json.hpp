#pragma once

#include <json.hpp>

namespace fuzzsum {

// Insertion-ordered so extents and attribute lists keep their natural order
// through export and import.
using Json = nlohmann::ordered_json;

}  // namespace fuzzsum
