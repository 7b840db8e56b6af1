#pragma once

// End-to-end layout generation: score map, room capacities, provider selection and relations,
// placement with repair, and metric-directed refinement.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "walkfit/eni/score_map.hpp"
#include "walkfit/eni/summary.hpp"
#include "walkfit/layout/generate.hpp"
#include "walkfit/placement/refine.hpp"
#include "walkfit/scene/io.hpp"
#include "walkfit/scene/segment.hpp"

namespace walkfit::pipeline {

struct PipelineOptions {
  eni::MetricConfig metric;
  eni::SampleTargets samples;
  placement::PlacementConfig placement;
  layout::GenerationOptions generation;
  bool refine = true;
  unsigned threads = 0;
};

inline std::vector<Room> scene_rooms(const SceneBundle& s, const Environment& V) {
  if (!s.rooms) return segment_rooms(s.virtual_plan);
  std::vector<Room> rooms = *s.rooms;
  classify_rooms(rooms, V.free_area());
  return rooms;
}

// Capacity score per room from the map. A room without samples is scored at its centroid.
inline std::vector<std::string> assign_capacities(std::vector<Room>& rooms, const eni::ScoreMap& map,
                                                  const Environment& V, const Environment& P,
                                                  const eni::MetricConfig& cfg) {
  std::vector<std::string> warnings;
  std::vector<double> raws;
  for (const Room& r : rooms) {
    const auto pts = eni::points_in(map, r.polygon);
    if (!pts.empty()) {
      raws.push_back(eni::room_raw_score(map, pts, r.id));
      continue;
    }
    warnings.push_back(r.id + ": no score samples inside, scored at its centroid");
    raws.push_back(eni::point_score(r.polygon.centroid(), V, P, map.physical_points, cfg).score);
  }
  const auto scores = eni::normalize_room_scores(raws);
  for (std::size_t i = 0; i < rooms.size(); ++i) rooms[i].capacity = scores[i];
  return warnings;
}

inline std::vector<int> min_item_counts(const std::vector<Room>& rooms, const Environment& V, const Environment& P) {
  std::vector<int> out;
  for (const Room& r : rooms) out.push_back(layout::min_items(r.capacity.normalized, V.free_area(), P.free_area()));
  return out;
}

struct BuildResult {
  Layout layout;     // final
  Layout unrefined;  // after repair, before refinement
  std::vector<std::string> warnings;
  std::vector<placement::Rejection> rejections;  // objects dropped for good
  placement::RefineResult refine;
};

namespace pipeline_detail {

inline std::string fresh_id(const std::string& room_id, const std::string& name, const std::vector<PlacedObject>& used) {
  for (char c = 'a';; ++c) {
    const std::string id = layout::object_id(room_id, name + " " + std::string(1, c));
    if (std::none_of(used.begin(), used.end(), [&](const PlacedObject& o) { return o.id == id; })) return id;
    if (c == 'z') return layout::object_id(room_id, name + " " + std::to_string(used.size()));
  }
}

inline PlacedObject make_object(const std::string& id, const std::string& room_id, const Asset& a) {
  PlacedObject o;
  o.id = id;
  o.room = room_id;
  o.asset = a;
  return o;
}

inline std::vector<RelationSpec> to_object_ids(const std::string& room_id, std::vector<RelationSpec> rs) {
  for (RelationSpec& r : rs) {
    r.subject = layout::object_id(room_id, r.subject);
    if (auto* oa = std::get_if<ObjectAnchor>(&r.anchor)) oa->target = layout::object_id(room_id, oa->target);
  }
  return rs;
}

inline void note(std::vector<std::string>& w, const std::vector<placement::Rejection>& rs, const std::string& what) {
  for (const placement::Rejection& r : rs) w.push_back(r.object_id + ": " + what + " (" + r.reason + ")");
}

}  // namespace pipeline_detail

// Selection, relations, placement and repair for every room; objects rejected by the repair get
// one replacement request. With `map` the result is refined against it.
inline BuildResult build_layout(layout::Provider& provider, const Catalog& catalog, const Environment& V,
                                const std::vector<Room>& rooms, const std::vector<layout::RoomBrief>& briefs,
                                const PipelineOptions& opt, const eni::ScoreMap* map) {
  using namespace pipeline_detail;
  const placement::PlacementConfig& cfg = opt.placement;
  cfg.validate();
  BuildResult res;
  auto sels = layout::select_objects(provider, catalog, rooms, briefs, opt.generation);
  std::vector<placement::RoomSpace> spaces;
  std::vector<PlacedObject> all;
  std::vector<RelationSpec> relations;
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const Room& room = rooms[i];
    layout::RoomSelection& sel = sels[i];
    layout::request_relations(provider, room, briefs[i], sel, opt.generation);
    res.warnings.insert(res.warnings.end(), sel.warnings.begin(), sel.warnings.end());
    spaces.push_back(placement::RoomSpace::make(room, &V, cfg.door_clearance));
    const placement::RoomSpace& space = spaces.back();

    std::vector<PlacedObject> objs;
    for (std::size_t k = 0; k < sel.assets.size(); ++k)
      objs.push_back(make_object(layout::object_id(room.id, sel.instances[k]), room.id, sel.assets[k]));
    const std::vector<RelationSpec> rels = to_object_ids(room.id, sel.relations);
    objs = placement::initial_place(space, std::move(objs), rels, cfg);
    auto rejected = placement::repair_oob(space, objs, cfg);
    auto more = placement::repair_overlaps(space, objs, cfg);
    rejected.insert(rejected.end(), more.begin(), more.end());

    if (!rejected.empty()) {
      // One replacement round for what did not fit.
      std::vector<layout::SizedName> current;
      std::vector<std::string> change;
      for (const PlacedObject& o : objs) current.push_back({o.asset.name, o.asset.width, o.asset.length});
      for (const placement::Rejection& r : rejected)
        for (std::size_t k = 0; k < sel.assets.size(); ++k)
          if (layout::object_id(room.id, sel.instances[k]) == r.object_id) {
            current.push_back({sel.assets[k].name, sel.assets[k].width, sel.assets[k].length});
            change.push_back(sel.assets[k].name);
          }
      std::vector<PlacedObject> fresh;
      try {
        const std::string ask = layout::build_replacement_prompt(briefs[i], current,
                                                                 "some items did not fit beside the others", change, {});
        const auto reply = layout::ask_parsed<layout::ObjectLists>(
            provider, layout::kObjectSystem, ask, opt.generation.parse_retries, [&](const std::string& raw) {
              layout::ObjectLists l = layout::parse_object_lists(raw);
              layout::generate_detail::list_for(l, briefs[i].label, raw);
              return l;
            });
        const auto resolved =
            layout::generate_detail::resolve(catalog, layout::generate_detail::list_for(reply, briefs[i].label, ""));
        // Items beyond what is already standing are the replacements.
        std::map<std::string, int> standing;
        for (const PlacedObject& o : objs) ++standing[o.asset.name];
        for (const Asset& a : resolved.assets) {
          if (standing[a.name]-- > 0) continue;
          std::vector<PlacedObject> used = objs;
          used.insert(used.end(), fresh.begin(), fresh.end());
          fresh.push_back(make_object(fresh_id(room.id, a.name, used), room.id, a));
        }
      } catch (const Error& e) {
        res.warnings.push_back(briefs[i].label + ": replacement request failed (" + e.what() + ")");
      }
      note(res.warnings, rejected, "rejected by repair");
      if (!fresh.empty()) {
        fresh = placement::initial_place(space, std::move(fresh), {}, cfg);
        objs.insert(objs.end(), fresh.begin(), fresh.end());
        auto again = placement::repair_oob(space, objs, cfg);
        auto again2 = placement::repair_overlaps(space, objs, cfg);
        again.insert(again.end(), again2.begin(), again2.end());
        note(res.warnings, again, "dropped after replacement");
        res.rejections.insert(res.rejections.end(), again.begin(), again.end());
      } else {
        res.rejections.insert(res.rejections.end(), rejected.begin(), rejected.end());
      }
    }
    all.insert(all.end(), objs.begin(), objs.end());
    relations.insert(relations.end(), rels.begin(), rels.end());
  }

  // Relations survive only when both ends exist and the placement honours them.
  std::vector<RelationSpec> kept;
  for (const RelationSpec& r : relations) {
    auto has = [&](const std::string& id) {
      return std::any_of(all.begin(), all.end(), [&](const PlacedObject& o) { return o.id == id; });
    };
    const auto* oa = std::get_if<ObjectAnchor>(&r.anchor);
    if (!has(r.subject) || (oa && !has(oa->target))) continue;
    const PlacedObject* subj = nullptr;
    for (const PlacedObject& o : all)
      if (o.id == r.subject) subj = &o;
    const placement::RoomSpace* space = nullptr;
    for (const placement::RoomSpace& s : spaces)
      if (s.room.id == subj->room) space = &s;
    if (!placement::relation_satisfied(*space, all, r, cfg)) {
      res.warnings.push_back(r.subject + ": relation dropped, placement could not keep it");
      continue;
    }
    kept.push_back(r);
  }

  res.layout.rooms = rooms;
  res.layout.objects = std::move(all);
  res.layout.relations = std::move(kept);
  res.unrefined = res.layout;
  if (map != nullptr && opt.refine)
    res.refine = placement::eni_refine(res.layout.objects, spaces, res.layout.relations, *map, cfg);
  const auto issues = validate(res.layout, &V);
  if (!issues.empty()) throw Error("generated layout is invalid: " + issues.front());
  return res;
}

// Sum of scores over samples left uncovered by the layout's footprints.
inline double layout_total(const eni::ScoreMap& map, const std::vector<PlacedObject>& objects) {
  return eni::map_summary(map, placement::coverage(objects, map).covered).uncovered_total;
}

struct Totals {
  double floor_plan = 0.0;
  std::optional<double> llm;
  std::optional<double> refined;
};

inline Totals totals(const eni::ScoreMap& map, const SceneBundle& s) {
  Totals t;
  t.floor_plan = eni::map_summary(map).total;
  if (s.baseline_layout) t.llm = layout_total(map, s.baseline_layout->objects);
  if (s.layout) t.refined = layout_total(map, s.layout->objects);
  return t;
}

// Provider per stage: "baseline" for the metric-free layout, "enipp" for the directed one.
using ProviderFactory = std::function<std::unique_ptr<layout::Provider>(const std::string& stage)>;

struct PipelineResult {
  SceneBundle scene;  // input with rooms, baseline_layout and layout filled in
  eni::ScoreMap map;
  BuildResult baseline;
  BuildResult enipp;
  std::vector<std::string> warnings;
  std::vector<layout::Exchange> baseline_transcript;
  std::vector<layout::Exchange> enipp_transcript;
};

inline PipelineResult run_pipeline(const SceneBundle& scene, const Catalog& catalog, const ProviderFactory& providers,
                                   const PipelineOptions& opt = {}) {
  PipelineResult res;
  res.scene = scene;
  const Environment V = floorplan_to_environment(scene.virtual_plan);
  const Environment& P = scene.physical;
  std::vector<Room> rooms = scene_rooms(scene, V);
  if (rooms.empty()) throw ConfigError("scene '" + scene.name + "' has no rooms");
  res.map = eni::score_map(V, P, opt.metric, opt.samples, opt.threads);
  res.warnings = assign_capacities(rooms, res.map, V, P, opt.metric);
  res.scene.rooms = rooms;

  const auto plain = layout::make_briefs(rooms);
  auto base_provider = providers("baseline");
  res.baseline = build_layout(*base_provider, catalog, V, rooms, plain, opt, nullptr);
  res.baseline_transcript = base_provider->transcript();

  const std::vector<int> counts = min_item_counts(rooms, V, P);
  const auto directed = layout::make_briefs(rooms, &counts);
  auto eni_provider = providers("enipp");
  res.enipp = build_layout(*eni_provider, catalog, V, rooms, directed, opt, &res.map);
  res.enipp_transcript = eni_provider->transcript();

  res.scene.baseline_layout = res.baseline.layout;
  res.scene.layout = res.enipp.layout;
  return res;
}

}  // namespace walkfit::pipeline
