#pragma once

#include <functional>

#include "pcook/ast.hpp"
#include "pcook/world.hpp"

namespace pcook {

// Ground-truth answer to a perception query. Items in agents' hands count
// as present for is_there.
bool eval(const Query& q, const WorldState& s);

// Anything that answers queries; eval is the default.
using PerceptionFn = std::function<bool(const Query&, const WorldState&)>;

}  // namespace pcook
