#pragma once

// Sequence recipes: pinned positions with greedy fill everywhere else.

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sidon/prefix.hpp"
#include "sidon/types.hpp"

namespace sidon {

struct SequenceRecipe {
  std::string name;
  // 1-based position -> forced value. Must contain position 1.
  std::map<Position, Term> pins;

  SequenceRecipe() = default;
  SequenceRecipe(std::string recipe_name, std::map<Position, Term> recipe_pins)
      : name(std::move(recipe_name)), pins(std::move(recipe_pins)) {
    if (!pins.contains(1)) throw FormatError("recipe '" + name + "' does not pin position 1");
    if (pins.contains(0)) throw FormatError("recipe '" + name + "' pins position 0");
    for (const auto& [pos, value] : pins) {
      if (value == 0) {
        throw FormatError("recipe '" + name + "' pins position " + std::to_string(pos) + " to 0");
      }
    }
  }

  std::optional<Term> pin_at(Position p) const {
    if (auto it = pins.find(p); it != pins.end()) return it->second;
    return std::nullopt;
  }
};

// The greedy Mian-Chowla sequence, 1, 2, 4, 8, 13, ...
inline SequenceRecipe mian_chowla_recipe() { return {"mian-chowla", {{1, 1}}}; }

// Greedy for 14 terms, 229 at position 15, greedy after.
inline SequenceRecipe zhang_recipe() { return {"zhang", {{1, 1}, {15, 229}}}; }

// Zhang's first 26 terms, 962 at position 27, greedy after.
inline SequenceRecipe h_recipe() { return {"h", {{1, 1}, {15, 229}, {27, 962}}}; }

inline std::vector<SequenceRecipe> builtin_recipes() {
  return {mian_chowla_recipe(), zhang_recipe(), h_recipe()};
}

// Accepts "mian-chowla", "mian_chowla", "g", "zhang", "z", "h" (any case).
inline std::optional<SequenceRecipe> find_recipe(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return c == '_' ? '-' : static_cast<char>(std::tolower(c)); });
  if (key == "mian-chowla" || key == "g") return mian_chowla_recipe();
  if (key == "zhang" || key == "z") return zhang_recipe();
  if (key == "h") return h_recipe();
  return std::nullopt;
}

// Generates terms for positions prefix.size()+1 .. n in place. Pinned
// positions are validated when reached; an inadmissible or non-increasing pin
// throws AdmissibilityError with the position.
inline void extend(SidonPrefix& prefix, const SequenceRecipe& recipe, std::size_t n,
                   EngineStats* stats = nullptr) {
  while (prefix.size() < n) {
    const Position p = prefix.size() + 1;
    if (auto pin = recipe.pin_at(p)) {
      prefix.append(*pin);
    } else {
      prefix.append_unchecked(prefix.next_greedy(stats));
    }
  }
}

inline SidonPrefix generate_prefix(const SequenceRecipe& recipe, std::size_t n,
                                   EngineStats* stats = nullptr) {
  if (n == 0) throw std::invalid_argument("generate: count must be at least 1");
  SidonPrefix prefix;
  extend(prefix, recipe, n, stats);
  return prefix;
}

inline std::vector<Term> generate(const SequenceRecipe& recipe, std::size_t n,
                                  EngineStats* stats = nullptr) {
  const auto prefix = generate_prefix(recipe, n, stats);
  return {prefix.terms().begin(), prefix.terms().end()};
}

}  // namespace sidon
