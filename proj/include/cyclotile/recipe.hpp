#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclotile/productform.hpp"

namespace cyclotile {

// Construction recipe, JSON:
//   {"base": 12, "kind": "product" | "modulo" | "weak" | "higher",
//    "parts": [[0,1],[0,4,8],[0,2]], "exponents": [0,1],
//    "representatives": [[], [[5,17]], [[24,72]]],   // modulo: per stage
//    "reduce": [false, false, true],                 // modulo: optional
//    "replacements": [[1,17]],                       // weak
//    "inner": { ...recipe... }}                      // higher: parts regroup inner
struct Recipe {
  enum class Kind { Product, Modulo, Weak, Higher };

  std::uint64_t base = 0;
  Kind kind = Kind::Product;
  std::vector<Part> parts;
  std::vector<unsigned> exponents;
  ModuloChoices choices;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> replacements;
  std::shared_ptr<const Recipe> inner;
};

const char* kindName(Recipe::Kind k);

/// Throws InvalidRecipe naming the offending field.
Recipe parseRecipe(std::string_view json);
Recipe loadRecipe(const std::filesystem::path& path);

struct Construction {
  DigitSet digits;
  /// 1 for product, modulo and weak forms; inner order + 1 for each regrouping.
  unsigned order = 1;
  /// Stage trace of the innermost modulo construction, when there is one.
  std::optional<ModuloTrace> trace;
};

/// Errors from any stage are rethrown as InvalidRecipe prefixed with the
/// nesting level and the original message.
Construction buildFromRecipe(const Recipe& recipe);

}  // namespace cyclotile
