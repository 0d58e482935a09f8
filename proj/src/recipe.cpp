#include "cyclotile/recipe.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cyclotile/errors.hpp"

namespace cyclotile {

using json = nlohmann::json;

const char* kindName(Recipe::Kind k) {
  switch (k) {
    case Recipe::Kind::Product: return "product";
    case Recipe::Kind::Modulo: return "modulo";
    case Recipe::Kind::Weak: return "weak";
    case Recipe::Kind::Higher: return "higher";
  }
  return "unknown";
}

namespace {

using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

Pairs pairsFrom(const json& j, const std::string& field) {
  Pairs out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw InvalidRecipe(field + ": expected [digit, representative] pairs");
    out.emplace_back(p[0].get<std::uint64_t>(), p[1].get<std::uint64_t>());
  }
  return out;
}

Recipe fromJson(const json& j, unsigned depth) {
  if (!j.is_object()) throw InvalidRecipe("recipe must be a JSON object");
  if (depth > 16) throw InvalidRecipe("recipe nesting too deep");
  Recipe r;
  try {
    r.base = j.at("base").get<std::uint64_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "product") r.kind = Recipe::Kind::Product;
    else if (kind == "modulo") r.kind = Recipe::Kind::Modulo;
    else if (kind == "weak") r.kind = Recipe::Kind::Weak;
    else if (kind == "higher") r.kind = Recipe::Kind::Higher;
    else throw InvalidRecipe("unknown kind '" + kind + "'");
    r.parts = j.at("parts").get<std::vector<Part>>();
    r.exponents = j.value("exponents", std::vector<unsigned>{});
    if (j.contains("representatives")) {
      if (r.kind != Recipe::Kind::Modulo) throw InvalidRecipe("representatives only apply to modulo recipes");
      for (const auto& stage : j.at("representatives"))
        r.choices.representatives.push_back(pairsFrom(stage, "representatives"));
    }
    if (j.contains("reduce")) {
      if (r.kind != Recipe::Kind::Modulo) throw InvalidRecipe("reduce only applies to modulo recipes");
      r.choices.reduce = j.at("reduce").get<std::vector<bool>>();
    }
    if (j.contains("replacements")) {
      if (r.kind != Recipe::Kind::Weak) throw InvalidRecipe("replacements only apply to weak recipes");
      r.replacements = pairsFrom(j.at("replacements"), "replacements");
    }
    if (r.kind == Recipe::Kind::Higher) {
      auto inner = fromJson(j.at("inner"), depth + 1);
      if (inner.base != r.base) throw InvalidRecipe("inner recipe has a different base");
      r.inner = std::make_shared<const Recipe>(std::move(inner));
    } else if (j.contains("inner")) {
      throw InvalidRecipe("inner only applies to higher recipes");
    }
  } catch (const InvalidRecipe&) {
    throw;
  } catch (const json::exception& e) {
    throw InvalidRecipe(std::string("malformed recipe: ") + e.what());
  }
  return r;
}

Construction build(const Recipe& r, unsigned depth) {
  const std::string where = depth == 0 ? "" : "inner recipe (level " + std::to_string(depth) + "): ";
  try {
    Decomposition dec{r.base, r.parts, r.exponents};
    switch (r.kind) {
      case Recipe::Kind::Product: {
        auto digits = buildProductForm(dec);
        // Without modulo choices the stage trace records the plain partial sums.
        return {std::move(digits), 1, buildModuloProductForm(dec).trace};
      }
      case Recipe::Kind::Modulo: {
        auto m = buildModuloProductForm(dec, r.choices);
        return {std::move(m.digits), 1, std::move(m.trace)};
      }
      case Recipe::Kind::Weak: {
        auto m = buildWeakProductForm(dec, r.replacements);
        return {std::move(m.digits), 1, std::move(m.trace)};
      }
      case Recipe::Kind::Higher: {
        auto inner = build(*r.inner, depth + 1);
        auto h = buildHigherOrderProductForm(inner.digits, inner.order, r.parts, r.exponents, r.base);
        return {std::move(h.digits), h.order, std::move(inner.trace)};
      }
    }
  } catch (const InvalidRecipe& e) {
    if (depth == 0) throw;
    throw InvalidRecipe(where + e.what());
  } catch (const std::exception& e) {
    throw InvalidRecipe(where + e.what());
  }
  throw InvalidRecipe("unknown recipe kind");
}

}  // namespace

Recipe parseRecipe(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidRecipe(std::string("malformed JSON: ") + e.what());
  }
  return fromJson(j, 0);
}

Recipe loadRecipe(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidRecipe("cannot open recipe " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseRecipe(ss.str());
}

Construction buildFromRecipe(const Recipe& recipe) { return build(recipe, 0); }

}  // namespace cyclotile
