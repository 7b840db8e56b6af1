#pragma once

// Text-completion providers. Every exchange is kept in a transcript for auditing.

#include <cstdint>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "walkfit/layout/parse.hpp"
#include "walkfit/layout/prompt.hpp"
#include "walkfit/layout/validate.hpp"
#include "walkfit/scene/catalog.hpp"

namespace walkfit::layout {

struct Exchange {
  std::string system;
  std::string user;
  std::string response;
};

inline nlohmann::json to_json(const Exchange& e) {
  return {{"system", e.system}, {"user", e.user}, {"response", e.response}};
}

class Provider {
 public:
  virtual ~Provider() = default;

  std::string ask(const std::string& system, const std::string& user) {
    std::string r = complete(system, user);
    transcript_.push_back({system, user, r});
    return r;
  }

  const std::vector<Exchange>& transcript() const { return transcript_; }
  virtual std::string name() const = 0;

 protected:
  virtual std::string complete(const std::string& system, const std::string& user) = 0;

 private:
  std::vector<Exchange> transcript_;
};

namespace mock_detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Fisher-Yates with raw engine output, so the order does not depend on the standard library.
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

inline std::string function_of(const std::string& label) {
  static const std::regex numbered(R"((.*\S)\s+\d+)");
  std::smatch m;
  return std::regex_match(label, m, numbered) ? m[1].str() : label;
}

inline int default_count(const std::string& size) {
  if (size == "huge") return 5;
  if (size == "large") return 4;
  if (size == "medium") return 3;
  if (size == "small") return 2;
  return 1;
}

struct RoomAsk {
  std::string label;
  std::string size;
  double width = 0, length = 0, area = 0;
  int count = 0;
};

}  // namespace mock_detail

// Offline stand-in: reads its own prompts back and answers from the catalog by room tag.
// Output depends only on the seed and the prompt text.
class MockProvider : public Provider {
 public:
  MockProvider(const Catalog& catalog, std::uint64_t seed, SelectionRules rules = {})
      : catalog_(catalog), seed_(seed), rules_(rules) {
    if (catalog_.empty()) throw ConfigError("mock provider needs a non-empty catalog");
  }

  std::string name() const override { return "mock"; }

 protected:
  std::string complete(const std::string& system, const std::string& user) override {
    if (system == kRelationSystem) return relations(user);
    if (user.rfind("The selection for ", 0) == 0) return replacement(user);
    return objects(user);
  }

 private:
  static constexpr double kSlack = 0.005;  // prompt numbers are rounded to two decimals

  std::mt19937_64 rng_for(const std::string& key) const {
    return std::mt19937_64(seed_ ^ mock_detail::fnv1a(key));
  }

  // Catalog entries for a room that pass the per-item rules.
  std::vector<const Asset*> candidates(const mock_detail::RoomAsk& r) const {
    const std::string fn = mock_detail::function_of(r.label);
    const auto tagged = catalog_.tagged(fn);
    if (tagged.empty()) throw ConfigError("catalog has no assets tagged '" + fn + "'");
    std::vector<const Asset*> out;
    for (const Asset* a : tagged) {
      if (!fits_box(*a, r.width - kSlack, r.length - kSlack)) continue;
      if (r.size == "tiny" && a->footprint_area() > rules_.tiny_item_share * (r.area - kSlack)) continue;
      out.push_back(a);
    }
    return out;
  }

  // Picks `r.count` assets, distinct first, repeating the smallest ones only if needed, while
  // the summed footprint stays under the cap.
  std::vector<std::string> pick(const mock_detail::RoomAsk& r, std::vector<std::string> keep,
                                const std::vector<std::string>& avoid) const {
    auto pool = candidates(r);
    auto rng = rng_for(r.label + "|" + std::to_string(keep.size()));
    mock_detail::shuffle(pool, rng);
    double used = 0.0;
    for (const std::string& k : keep)
      if (const Asset* a = catalog_.find(k)) used += a->footprint_area();
    const double budget = rules_.area_cap * (r.area - kSlack);
    auto try_add = [&](const Asset* a, bool allow_repeat) {
      if (static_cast<int>(keep.size()) >= r.count) return;
      if (std::find(avoid.begin(), avoid.end(), a->name) != avoid.end()) return;
      if (!allow_repeat && std::find(keep.begin(), keep.end(), a->name) != keep.end()) return;
      if (used + a->footprint_area() > budget - 1e-9) return;
      used += a->footprint_area();
      keep.push_back(a->name);
    };
    for (const Asset* a : pool) try_add(a, false);
    std::sort(pool.begin(), pool.end(), [](const Asset* a, const Asset* b) {
      return a->footprint_area() < b->footprint_area() ||
             (a->footprint_area() == b->footprint_area() && a->name < b->name);
    });
    for (bool progress = true; progress && static_cast<int>(keep.size()) < r.count;) {
      const std::size_t before = keep.size();
      for (const Asset* a : pool) try_add(a, true);
      progress = keep.size() > before;
    }
    return keep;
  }

  std::string objects(const std::string& user) const {
    static const std::regex line(
        R"(- an? (\w+) (.+?) \(([\d.]+)\*([\d.]+), ([\d.]+) m2\)(?: with at least (\d+) items)?)");
    const auto start = user.rfind("Input:");
    std::istringstream body(user.substr(start == std::string::npos ? 0 : start));
    ObjectLists out;
    std::smatch m;
    for (std::string ln; std::getline(body, ln);) {
      if (!std::regex_match(ln, m, line)) continue;
      mock_detail::RoomAsk r{m[2].str(), m[1].str(), std::stod(m[3].str()), std::stod(m[4].str()),
                             std::stod(m[5].str()), 0};
      // A stated minimum raises the usual count for the size but never lowers it.
      r.count = mock_detail::default_count(r.size);
      if (m[6].matched) r.count = std::max(r.count, std::stoi(m[6].str()));
      out.emplace_back(r.label, pick(r, {}, {}));
    }
    if (out.empty()) throw ProviderError("mock could not read the object prompt");
    return format_object_lists(out);
  }

  std::string replacement(const std::string& user) const {
    static const std::regex head(R"(^The selection for (.+?) \(([\d.]+)\*([\d.]+), ([\d.]+) m2\))");
    static const std::regex current(R"(Current: .+? \((.*)\)\nChange Suggestion: (.*)\. Delete Suggestion: (.*)\.\n)");
    std::smatch h, c;
    if (!std::regex_search(user, h, head) || !std::regex_search(user, c, current))
      throw ProviderError("mock could not read the replacement prompt");
    mock_detail::RoomAsk r{h[1].str(), "", std::stod(h[2].str()), std::stod(h[3].str()),
                           std::stod(h[4].str()), 0};
    auto split = [](const std::string& s) {
      std::vector<std::string> v;
      if (s == "None") return v;
      for (std::string& x : parse_detail::items(s, s)) v.push_back(parse_detail::strip_dims(x));
      return v;
    };
    const auto now = split(c[1].str());
    const auto change = split(c[2].str());
    const auto drop = split(c[3].str());
    if (r.area <= 0.0) throw ProviderError("mock read a room without area");
    // A tiny room is recognisable from the prompt only by its rejection reason.
    if (user.find("too big for a tiny room") != std::string::npos) r.size = "tiny";
    std::vector<std::string> keep;
    for (const std::string& n : now)
      if (std::find(change.begin(), change.end(), n) == change.end() &&
          std::find(drop.begin(), drop.end(), n) == drop.end())
        keep.push_back(n);
    // Trim further if the kept items alone exceed the cap.
    auto area_of = [&](const std::string& n) {
      const Asset* a = catalog_.find(n);
      return a ? a->footprint_area() : 0.0;
    };
    double used = 0.0;
    for (const std::string& n : keep) used += area_of(n);
    while (!keep.empty() && used > rules_.area_cap * (r.area - kSlack)) {
      auto big = std::max_element(keep.begin(), keep.end(),
                                  [&](const std::string& a, const std::string& b) { return area_of(a) < area_of(b); });
      used -= area_of(*big);
      keep.erase(big);
    }
    r.count = static_cast<int>(keep.size() + change.size());
    std::vector<std::string> avoid = change;
    avoid.insert(avoid.end(), drop.begin(), drop.end());
    return format_object_lists({{r.label, pick(r, keep, avoid)}});
  }

  std::string relations(const std::string& user) const {
    static const std::regex head(R"(Input: (.+?) \(([\d.]+)\*([\d.]+); walls: ([^)]*)\) \((.*)\)\nOutput:)");
    std::smatch m;
    const auto start = user.rfind("Input:");
    const std::string body = user.substr(start == std::string::npos ? 0 : start);
    if (!std::regex_search(body, m, head)) throw ProviderError("mock could not read the relation prompt");
    const std::string label = m[1].str();
    std::vector<std::string> walls;
    for (std::string& w : parse_detail::items(m[4].str(), user)) walls.push_back(w);
    std::vector<std::string> objs;
    for (std::string& o : parse_detail::items(m[5].str(), user)) objs.push_back(parse_detail::strip_dims(o));
    if (walls.size() < 2 || objs.empty()) throw ProviderError("mock read an empty relation prompt");

    auto rng = rng_for(label + "|relations");
    std::vector<int> wall_use(walls.size(), 0);
    auto least_used_wall = [&]() {
      std::size_t best = rng() % walls.size();
      for (std::size_t k = 0; k < walls.size(); ++k)
        if (wall_use[k] < wall_use[best]) best = k;
      ++wall_use[best];
      return best;
    };
    auto has = [](const std::string& s, const char* w) { return s.find(w) != std::string::npos; };
    std::string table;
    for (const std::string& o : objs)
      if (has(o, "table") || has(o, "desk")) {
        table = o;
        break;
      }
    std::vector<std::string> clauses;
    int seats = 0;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const std::string& o = objs[i];
      const bool seat = has(o, "chair") || has(o, "stool");
      if (seat && !table.empty() && o != table && seats < 2) {
        clauses.push_back(o + (seats++ == 0 ? " left of " : " right of ") + table);
        continue;
      }
      if (i == 0 || rng() % 4 != 0) {
        clauses.push_back(o + " near " + walls[least_used_wall()] + " wall");
      } else {
        const std::size_t a = least_used_wall();
        const std::size_t b = (a + 1) % walls.size();
        ++wall_use[b];
        clauses.push_back(o + " corner of " + walls[a] + " wall and " + walls[b] + " wall");
      }
    }
    std::string s = label + " (";
    for (std::size_t i = 0; i < clauses.size(); ++i) s += (i ? ", " : "") + clauses[i];
    return s + ")\n";
  }

  const Catalog& catalog_;
  std::uint64_t seed_;
  SelectionRules rules_;
};

}  // namespace walkfit::layout
