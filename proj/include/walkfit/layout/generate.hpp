#pragma once

// Provider-driven object selection with the bounded validation loop, then relation requests.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "walkfit/layout/parse.hpp"
#include "walkfit/layout/prompt.hpp"
#include "walkfit/layout/provider.hpp"
#include "walkfit/layout/validate.hpp"
#include "walkfit/scene/catalog.hpp"

namespace walkfit::layout {

struct GenerationOptions {
  int max_rounds = 3;     // replacement rounds after the first answer
  int parse_retries = 3;  // re-asks of the same prompt after an unreadable reply
  SelectionRules rules;
};

struct RoomSelection {
  std::string room_id;
  std::string label;
  std::vector<Asset> assets;
  std::vector<std::string> instances;  // unique per room, "chair a", "chair b", ...
  std::vector<RelationSpec> relations;  // subjects/targets are instance names
  int rounds = 0;
  std::vector<std::string> warnings;
};

// Repeated names get letter suffixes in order of appearance.
inline std::vector<std::string> instance_names(const std::vector<Asset>& assets) {
  std::map<std::string, int> total, seen;
  for (const Asset& a : assets) ++total[a.name];
  std::vector<std::string> out;
  for (const Asset& a : assets) {
    if (total[a.name] == 1) {
      out.push_back(a.name);
      continue;
    }
    const int k = seen[a.name]++;
    std::string suffix;
    for (int n = k;; n = n / 26 - 1) {
      suffix.insert(suffix.begin(), static_cast<char>('a' + n % 26));
      if (n < 26) break;
    }
    out.push_back(a.name + " " + suffix);
  }
  return out;
}

inline std::string object_id(const std::string& room_id, const std::string& instance) {
  std::string s = room_id + ":" + instance;
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

// Asks until `parse` accepts the reply or the retries run out.
template <class T>
T ask_parsed(Provider& provider, const std::string& system, const std::string& user, int retries,
             const std::function<T(const std::string&)>& parse) {
  for (int attempt = 0;; ++attempt) {
    const std::string reply = provider.ask(system, user);
    try {
      return parse(reply);
    } catch (const ParseError&) {
      if (attempt >= retries) throw;
    }
  }
}

namespace generate_detail {

struct Resolved {
  std::vector<Asset> assets;
  std::vector<std::string> misses;
};

inline Resolved resolve(const Catalog& catalog, const std::vector<std::string>& names) {
  Resolved r;
  for (const std::string& n : names) {
    const Asset* a = catalog.find(n);
    if (a == nullptr) a = catalog.nearest(n);
    if (a != nullptr)
      r.assets.push_back(*a);
    else
      r.misses.push_back(n);
  }
  return r;
}

inline const std::vector<std::string>& list_for(const ObjectLists& lists, const std::string& label,
                                                const std::string& raw) {
  for (const auto& [l, items] : lists)
    if (l == lowercase(label)) return items;
  throw ParseError("reply has no list for '" + label + "'", raw);
}

inline std::vector<SizedName> sized(const std::vector<Asset>& assets, const std::vector<std::string>& names) {
  std::vector<SizedName> out;
  for (std::size_t i = 0; i < assets.size(); ++i) out.push_back({names[i], assets[i].width, assets[i].length});
  return out;
}

}  // namespace generate_detail

// One call for the whole house, then per-room repair rounds.
inline std::vector<RoomSelection> select_objects(Provider& provider, const Catalog& catalog,
                                                 const std::vector<Room>& rooms,
                                                 const std::vector<RoomBrief>& briefs,
                                                 const GenerationOptions& opt = {}) {
  using namespace generate_detail;
  if (catalog.empty()) throw ConfigError("asset catalog is empty");
  if (rooms.size() != briefs.size()) throw ConfigError("one brief per room is required");
  std::vector<std::string> names;
  for (const Asset& a : catalog.assets()) names.push_back(a.name);
  const std::string prompt = build_object_prompt(briefs, names);
  const ObjectLists lists = ask_parsed<ObjectLists>(
      provider, kObjectSystem, prompt, opt.parse_retries, [&](const std::string& raw) {
        ObjectLists l = parse_object_lists(raw);
        for (const RoomBrief& b : briefs) list_for(l, b.label, raw);
        return l;
      });

  std::vector<RoomSelection> out;
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const Room& room = rooms[i];
    const RoomBrief& brief = briefs[i];
    RoomSelection sel;
    sel.room_id = room.id;
    sel.label = brief.label;
    Resolved cur = resolve(catalog, list_for(lists, brief.label, ""));
    ValidationVerdict v;
    for (int round = 0;; ++round) {
      v = validate_selection(room, cur.assets, opt.rules);
      for (const std::string& m : cur.misses) {
        v.ok = false;
        v.reason += (v.reason.empty() ? "" : "; ") + m + " is not an available asset";
        v.change.push_back(m);
      }
      sel.rounds = round;
      if (v.ok || round >= opt.max_rounds) break;
      std::vector<Asset> shown = cur.assets;
      std::vector<SizedName> current = sized(shown, [&] {
        std::vector<std::string> n;
        for (const Asset& a : shown) n.push_back(a.name);
        return n;
      }());
      for (const std::string& m : cur.misses) current.push_back({m, 0.0, 0.0});
      const std::string ask = build_replacement_prompt(brief, current, v.reason, v.change, v.remove);
      try {
        const ObjectLists reply = ask_parsed<ObjectLists>(
            provider, kObjectSystem, ask, opt.parse_retries, [&](const std::string& raw) {
              ObjectLists l = parse_object_lists(raw);
              list_for(l, brief.label, raw);
              return l;
            });
        cur = resolve(catalog, list_for(reply, brief.label, ""));
      } catch (const ParseError& e) {
        sel.warnings.push_back(brief.label + ": unreadable replacement reply (" + e.what() + ")");
        break;
      }
    }
    // Whatever is still flagged after the last round is dropped.
    for (int guard = 0; !v.ok && !cur.assets.empty() && guard < 1000; ++guard) {
      std::set<std::string> flagged(v.change.begin(), v.change.end());
      flagged.insert(v.remove.begin(), v.remove.end());
      auto& as = cur.assets;
      const auto keep_end = std::remove_if(as.begin(), as.end(), [&](const Asset& a) { return flagged.count(a.name) > 0; });
      for (auto it = keep_end; it != as.end(); ++it)
        sel.warnings.push_back(brief.label + ": dropped " + it->name);
      as.erase(keep_end, as.end());
      cur.misses.clear();
      v = validate_selection(room, as, opt.rules);
    }
    for (const std::string& m : cur.misses) sel.warnings.push_back(brief.label + ": dropped unknown " + m);
    sel.assets = std::move(cur.assets);
    sel.instances = instance_names(sel.assets);
    if (brief.min_items && static_cast<int>(sel.assets.size()) < *brief.min_items)
      sel.warnings.push_back(brief.label + ": only " + std::to_string(sel.assets.size()) + " of " +
                             std::to_string(*brief.min_items) + " items could be fitted");
    out.push_back(std::move(sel));
  }
  return out;
}

// Keeps the first relation of each subject and drops object anchors that would close a cycle.
inline std::vector<RelationSpec> canonicalize(const std::vector<RelationSpec>& rs,
                                              std::vector<std::string>* warnings = nullptr) {
  std::vector<RelationSpec> out;
  std::map<std::string, std::string> parent;
  for (const RelationSpec& r : rs) {
    if (std::any_of(out.begin(), out.end(), [&](const RelationSpec& o) { return o.subject == r.subject; })) {
      if (warnings) warnings->push_back(r.subject + ": extra relation ignored");
      continue;
    }
    if (const auto* oa = std::get_if<ObjectAnchor>(&r.anchor)) {
      bool cycle = false;
      for (std::string t = oa->target;;) {
        if (t == r.subject) {
          cycle = true;
          break;
        }
        const auto it = parent.find(t);
        if (it == parent.end()) break;
        t = it->second;
      }
      if (cycle) {
        if (warnings) warnings->push_back(r.subject + ": relation to " + oa->target + " would form a cycle");
        continue;
      }
      parent[r.subject] = oa->target;
    }
    out.push_back(r);
  }
  return out;
}

inline void request_relations(Provider& provider, const Room& room, const RoomBrief& brief,
                              RoomSelection& sel, const GenerationOptions& opt = {}) {
  if (sel.assets.empty()) return;
  const std::string prompt = build_relation_prompt(brief, generate_detail::sized(sel.assets, sel.instances));
  try {
    const auto rs = ask_parsed<std::vector<RelationSpec>>(
        provider, kRelationSystem, prompt, opt.parse_retries, [&](const std::string& raw) {
          return parse_relations(raw, brief.label, room.polygon, sel.instances);
        });
    sel.relations = canonicalize(rs, &sel.warnings);
  } catch (const ParseError& e) {
    sel.warnings.push_back(brief.label + ": no usable relations (" + e.what() + ")");
    sel.relations.clear();
  }
}

}  // namespace walkfit::layout
