#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pcook {

// The first nine kinds are the items a program may name. DirtyPlate and
// FireExtinguisher exist only in the world.
enum class Item : std::uint8_t {
  FreshOnion,
  FreshTomato,
  Plate,
  ChoppedOnion,
  ChoppedTomato,
  ChoppedOnionPlate,
  ChoppedTomatoPlate,
  ChoppedOnionTomato,
  ChoppedOnionTomatoPlate,
  DirtyPlate,
  FireExtinguisher,
};

inline constexpr int kItemCount = 11;
inline constexpr int kDslItemCount = 9;

inline constexpr std::array<Item, kItemCount> kAllItems = {
    Item::FreshOnion,         Item::FreshTomato,        Item::Plate,
    Item::ChoppedOnion,       Item::ChoppedTomato,      Item::ChoppedOnionPlate,
    Item::ChoppedTomatoPlate, Item::ChoppedOnionTomato, Item::ChoppedOnionTomatoPlate,
    Item::DirtyPlate,         Item::FireExtinguisher};

constexpr int index_of(Item item) { return static_cast<int>(item); }

constexpr bool is_dsl_item(Item item) { return index_of(item) < kDslItemCount; }

constexpr bool is_fresh(Item item) {
  return item == Item::FreshOnion || item == Item::FreshTomato;
}

// Constituent bits of mergeable items: onion, tomato, plate. Fresh
// ingredients and world-only objects have no constituents and never merge.
inline constexpr std::uint8_t kOnionBit = 1;
inline constexpr std::uint8_t kTomatoBit = 2;
inline constexpr std::uint8_t kPlateBit = 4;

constexpr std::uint8_t constituents(Item item) {
  switch (item) {
    case Item::Plate: return kPlateBit;
    case Item::ChoppedOnion: return kOnionBit;
    case Item::ChoppedTomato: return kTomatoBit;
    case Item::ChoppedOnionPlate: return kOnionBit | kPlateBit;
    case Item::ChoppedTomatoPlate: return kTomatoBit | kPlateBit;
    case Item::ChoppedOnionTomato: return kOnionBit | kTomatoBit;
    case Item::ChoppedOnionTomatoPlate: return kOnionBit | kTomatoBit | kPlateBit;
    default: return 0;
  }
}

std::optional<Item> item_from_constituents(std::uint8_t bits);

// Result of combining two items, if they compose into a defined item.
std::optional<Item> merge_result(Item a, Item b);

// Item produced by chopping a fresh ingredient.
std::optional<Item> chopped_form(Item fresh);

// A dish can be delivered once it sits on a plate with at least one
// chopped ingredient.
constexpr bool is_servable(Item item) {
  const auto bits = constituents(item);
  return (bits & kPlateBit) != 0 && (bits & (kOnionBit | kTomatoBit)) != 0;
}

// Orders are three flags: onion dish, tomato dish, onion-tomato salad.
inline constexpr int kOrderCount = 3;

// Which order flag an item refers to, if any (plates refer to none).
std::optional<int> order_slot(Item item);

std::string_view item_name(Item item);
std::optional<Item> item_from_name(std::string_view name);

}  // namespace pcook
