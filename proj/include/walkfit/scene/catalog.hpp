#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkfit/scene/layout.hpp"

namespace walkfit {

inline std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<Asset> assets) : assets_(std::move(assets)) {}

  static Catalog from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("assets") || !j["assets"].is_array())
      throw SchemaError("/assets", "catalog needs an 'assets' array");
    std::vector<Asset> assets;
    for (std::size_t i = 0; i < j["assets"].size(); ++i) {
      const auto& a = j["assets"][i];
      const std::string at = "/assets/" + std::to_string(i);
      try {
        Asset asset;
        asset.name = lowercase(a.at("name").get<std::string>());
        asset.width = a.at("footprint").at(0).get<double>();
        asset.length = a.at("footprint").at(1).get<double>();
        asset.height = a.at("height").get<double>();
        asset.category = a.value("category", "");
        asset.tags = a.value("tags", std::vector<std::string>{});
        if (!(asset.width > 0 && asset.length > 0 && asset.height > 0))
          throw SchemaError(at + "/footprint", "asset dimensions must be positive");
        assets.push_back(std::move(asset));
      } catch (const nlohmann::json::exception& e) {
        throw SchemaError(at, e.what());
      }
    }
    return Catalog(std::move(assets));
  }

  static Catalog load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("", "catalog " + path + " is not valid JSON: " + e.what());
    }
    return from_json(j);
  }

  const std::vector<Asset>& assets() const { return assets_; }
  bool empty() const { return assets_.empty(); }

  const Asset* find(const std::string& name) const {
    const std::string key = lowercase(trim(name));
    for (const Asset& a : assets_)
      if (a.name == key) return &a;
    return nullptr;
  }

  const Asset& at(const std::string& name) const {
    if (const Asset* a = find(name)) return *a;
    throw CatalogMiss(name);
  }

  // Closest catalog name within an edit distance of a third of the query length.
  const Asset* nearest(const std::string& name) const {
    const std::string key = lowercase(trim(name));
    const Asset* best = nullptr;
    std::size_t best_d = std::max<std::size_t>(2, key.size() / 3) + 1;
    for (const Asset& a : assets_) {
      std::size_t d = edit_distance(key, a.name);
      if (a.name.find(key) != std::string::npos || key.find(a.name) != std::string::npos)
        d = std::min(d, std::max(a.name.size(), key.size()) - std::min(a.name.size(), key.size()));
      if (d < best_d) {
        best_d = d;
        best = &a;
      }
    }
    return best;
  }

  std::vector<const Asset*> tagged(const std::string& tag) const {
    std::vector<const Asset*> out;
    for (const Asset& a : assets_)
      if (std::find(a.tags.begin(), a.tags.end(), tag) != a.tags.end()) out.push_back(&a);
    return out;
  }

 private:
  std::vector<Asset> assets_;
};

}  // namespace walkfit
