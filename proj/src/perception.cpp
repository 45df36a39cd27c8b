#include "pcook/perception.hpp"

namespace pcook {

bool eval(const Query& q, const WorldState& s) {
  switch (q.kind) {
    case QueryKind::IsOnFire:
      for (int r = 0; r < s.rows; ++r) {
        for (int c = 0; c < s.cols; ++c) {
          if (s.at(r, c).on_fire) return true;
        }
      }
      return false;
    case QueryKind::IsOrdered: {
      const auto slot = q.arg ? order_slot(*q.arg) : std::nullopt;
      return slot && s.orders[static_cast<std::size_t>(*slot)];
    }
    case QueryKind::IsThere:
      if (!q.arg) return false;
      for (const auto& a : s.agents) {
        if (a.holding == q.arg) return true;
      }
      for (int r = 0; r < s.rows; ++r) {
        for (int c = 0; c < s.cols; ++c) {
          if (s.at(r, c).item == q.arg) return true;
        }
      }
      return false;
  }
  return false;
}

}  // namespace pcook
