#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbound/character_table.hpp"
#include "mbound/serialization.hpp"

namespace mbound {

/// Content-addressed on-disk store of character tables, keyed by a hash of the
/// generator list. Entries are validated on load; a bad entry is recomputed.
class TableCache {
 public:
  static constexpr const char* kEnvVar = "MBOUND_CACHE_DIR";

  TableCache() = default;
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static TableCache disabled() { return TableCache(); }
  /// Directory from MBOUND_CACHE_DIR, or disabled when unset or empty.
  static TableCache from_environment() {
    const char* v = std::getenv(kEnvVar);
    if (!v || !*v) return disabled();
    return TableCache(v);
  }

  bool enabled() const { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& directory() const { return dir_; }

  /// FNV-1a over the degree and the generator images, as 16 hex digits.
  static std::string key(const FiniteGroup& G) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    };
    mix(G.degree());
    mix(G.generators().size());
    for (const auto& g : G.generators())
      for (auto v : g) mix(v);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::filesystem::path path_for(const FiniteGroup& G) const { return *dir_ / ("table-" + key(G) + ".json"); }

  /// Cached table when present and consistent with G, otherwise computed (and stored).
  CharacterTable get(const FiniteGroup& G, const ClassData& classes) const {
    if (!enabled()) return character_table(G, classes);
    if (auto t = load(G, classes)) return *t;
    auto t = character_table(G, classes);
    store(G, t);
    return t;
  }

  std::optional<CharacterTable> load(const FiniteGroup& G, const ClassData& classes) const {
    std::ifstream in(path_for(G));
    if (!in) return std::nullopt;
    try {
      const auto j = nlohmann::json::parse(in);
      if (j.at("format") != "mbound-character-table" || j.at("version") != 1) return std::nullopt;
      if (j.at("group_order").get<std::size_t>() != classes->group_order) return std::nullopt;
      if (j.at("representatives").get<std::vector<FiniteGroup::Index>>() != classes->representatives) return std::nullopt;
      CharacterTable t{classes, {}};
      for (const auto& row : j.at("irreducibles")) {
        std::vector<Cyclotomic> vals;
        for (const auto& v : row) vals.push_back(cyclotomic_from_json(v));
        t.irreducibles.emplace_back(classes, std::move(vals));
      }
      if (t.size() != classes->num_classes()) return std::nullopt;
      for (const auto& chi : t.irreducibles)
        if (inner_product(chi, chi) != Cyclotomic(1)) return std::nullopt;
      return t;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const FiniteGroup& G, const CharacterTable& t) const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& chi : t.irreducibles) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& v : chi.values()) row.push_back(to_json_value(v));
      rows.push_back(std::move(row));
    }
    const nlohmann::json j = {{"format", "mbound-character-table"},
                              {"version", 1},
                              {"group_order", t.classes->group_order},
                              {"representatives", t.classes->representatives},
                              {"irreducibles", rows}};
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec) return;  // caching is best effort
    const auto final_path = path_for(G);
    std::ostringstream tmp_name;
    tmp_name << final_path.string() << ".tmp" << std::hash<std::string>{}(final_path.string() + std::to_string(reinterpret_cast<std::uintptr_t>(&t)));
    {
      std::ofstream out(tmp_name.str());
      if (!out) return;
      out << j.dump();
    }
    std::filesystem::rename(tmp_name.str(), final_path, ec);
    if (ec) std::filesystem::remove(tmp_name.str(), ec);
  }

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace mbound
