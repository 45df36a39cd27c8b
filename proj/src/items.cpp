#include "pcook/items.hpp"

namespace pcook {

namespace {

constexpr std::array<std::string_view, kItemCount> kNames = {
    "FreshOnion",
    "FreshTomato",
    "Plate",
    "ChoppedOnion",
    "ChoppedTomato",
    "ChoppedOnion+Plate",
    "ChoppedTomato+Plate",
    "ChoppedOnion+ChoppedTomato",
    "ChoppedOnion+ChoppedTomato+Plate",
    "DirtyPlate",
    "FireExtinguisher",
};

}  // namespace

std::optional<Item> item_from_constituents(std::uint8_t bits) {
  for (Item item : kAllItems) {
    if (constituents(item) != 0 && constituents(item) == bits) return item;
  }
  return std::nullopt;
}

std::optional<Item> merge_result(Item a, Item b) {
  const auto ca = constituents(a);
  const auto cb = constituents(b);
  if (ca == 0 || cb == 0 || (ca & cb) != 0) return std::nullopt;
  return item_from_constituents(static_cast<std::uint8_t>(ca | cb));
}

std::optional<Item> chopped_form(Item fresh) {
  if (fresh == Item::FreshOnion) return Item::ChoppedOnion;
  if (fresh == Item::FreshTomato) return Item::ChoppedTomato;
  return std::nullopt;
}

std::optional<int> order_slot(Item item) {
  switch (item) {
    case Item::FreshOnion:
    case Item::ChoppedOnion:
    case Item::ChoppedOnionPlate: return 0;
    case Item::FreshTomato:
    case Item::ChoppedTomato:
    case Item::ChoppedTomatoPlate: return 1;
    case Item::ChoppedOnionTomato:
    case Item::ChoppedOnionTomatoPlate: return 2;
    default: return std::nullopt;
  }
}

std::string_view item_name(Item item) { return kNames[static_cast<std::size_t>(index_of(item))]; }

std::optional<Item> item_from_name(std::string_view name) {
  for (Item item : kAllItems) {
    if (kNames[static_cast<std::size_t>(index_of(item))] == name) return item;
  }
  return std::nullopt;
}

}  // namespace pcook
