#pragma once

// Scene bundle JSON. Lengths in meters, angles in degrees, polygons as
// {"vertices": [[x, y], ...]} in counter-clockwise order.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "walkfit/scene/catalog.hpp"
#include "walkfit/scene/layout.hpp"

namespace walkfit {

using Json = nlohmann::json;

struct SceneBundle {
  std::string name;
  Environment physical;
  FloorPlan virtual_plan;
  std::optional<std::vector<Room>> rooms;  // explicit rooms bypass segmentation
  std::string catalog_path;
  std::optional<Layout> layout;           // refined layout
  std::optional<Layout> baseline_layout;  // layout generated without the metric
};

namespace json_detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at + "/" + key, "missing required key '" + key + "'");
  return *it;
}

inline double number(const Json& j, const std::string& at) {
  if (!j.is_number()) throw SchemaError(at, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(at, "expected a finite number");
  return v;
}

inline std::string text(const Json& j, const std::string& at) {
  if (!j.is_string()) throw SchemaError(at, "expected a string");
  return j.get<std::string>();
}

inline const Json& array(const Json& j, const std::string& at) {
  if (!j.is_array()) throw SchemaError(at, "expected an array");
  return j;
}

inline Point2 point(const Json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(at, "expected [x, y]");
  return {number(j[0], at + "/0"), number(j[1], at + "/1")};
}

}  // namespace json_detail

inline Json to_json(Point2 p) { return Json::array({p.x, p.y}); }

inline Json to_json(const SimplePolygon& p) {
  Json v = Json::array();
  for (const Point2& q : p.vertices()) v.push_back(to_json(q));
  return Json{{"vertices", v}};
}

inline SimplePolygon polygon_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  const Json& v = array(require(j, "vertices", at), at + "/vertices");
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < v.size(); ++i)
    pts.push_back(point(v[i], at + "/vertices/" + std::to_string(i)));
  try {
    return SimplePolygon::from(pts);
  } catch (const InvalidGeometry& e) {
    throw SchemaError(at, e.what());
  }
}

inline Json to_json(const Environment& env) {
  Json obs = Json::array();
  for (const SimplePolygon& o : env.obstacles()) obs.push_back(to_json(o));
  return Json{{"boundary", to_json(env.boundary())}, {"obstacles", obs}};
}

inline Environment environment_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  const SimplePolygon boundary = polygon_from_json(require(j, "boundary", at), at + "/boundary");
  std::vector<SimplePolygon> obstacles;
  if (j.contains("obstacles")) {
    const Json& o = array(j["obstacles"], at + "/obstacles");
    for (std::size_t i = 0; i < o.size(); ++i)
      obstacles.push_back(polygon_from_json(o[i], at + "/obstacles/" + std::to_string(i)));
  }
  try {
    return Environment::make(boundary, obstacles);
  } catch (const InvalidGeometry& e) {
    throw SchemaError(at, e.what());
  }
}

inline Json to_json(const FloorPlan& fp) {
  Json walls = Json::array();
  for (const SimplePolygon& w : fp.walls) walls.push_back(to_json(w));
  return Json{{"outline", to_json(fp.outline)}, {"walls", walls}, {"door_gap_width", fp.door_gap_width}};
}

inline FloorPlan floorplan_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  FloorPlan fp;
  fp.outline = polygon_from_json(require(j, "outline", at), at + "/outline");
  if (j.contains("walls")) {
    const Json& w = array(j["walls"], at + "/walls");
    for (std::size_t i = 0; i < w.size(); ++i)
      fp.walls.push_back(polygon_from_json(w[i], at + "/walls/" + std::to_string(i)));
  }
  if (j.contains("door_gap_width")) {
    fp.door_gap_width = number(j["door_gap_width"], at + "/door_gap_width");
    if (!(fp.door_gap_width > 0)) throw SchemaError(at + "/door_gap_width", "must be positive");
  }
  try {
    floorplan_to_environment(fp);
  } catch (const InvalidGeometry& e) {
    throw SchemaError(at, e.what());
  }
  return fp;
}

inline Json to_json(const Room& r) {
  return Json{{"id", r.id},
              {"polygon", to_json(r.polygon)},
              {"function", r.function_label},
              {"size_fraction", r.size_fraction},
              {"size_class", std::string(to_string(r.size_class))},
              {"capacity", {{"raw", r.capacity.raw}, {"normalized", r.capacity.normalized}}}};
}

inline Room room_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  Room r;
  r.id = text(require(j, "id", at), at + "/id");
  r.polygon = polygon_from_json(require(j, "polygon", at), at + "/polygon");
  r.function_label = j.contains("function") ? text(j["function"], at + "/function") : "room";
  if (j.contains("size_fraction")) {
    r.size_fraction = number(j["size_fraction"], at + "/size_fraction");
    r.size_class = size_class(std::clamp(r.size_fraction, 1e-12, 1.0));
  }
  if (j.contains("capacity")) {
    const Json& c = j["capacity"];
    r.capacity.raw = number(require(c, "raw", at + "/capacity"), at + "/capacity/raw");
    r.capacity.normalized = static_cast<int>(
        number(require(c, "normalized", at + "/capacity"), at + "/capacity/normalized"));
  }
  return r;
}

inline Json to_json(const PlacedObject& o) {
  return Json{{"id", o.id},
              {"room", o.room},
              {"asset", o.asset.name},
              {"category", o.asset.category},
              {"footprint", Json::array({o.asset.width, o.asset.length})},
              {"height", o.asset.height},
              {"center", to_json(o.center)},
              {"yaw", o.yaw},
              {"scale", Json::array({o.scale_x, o.scale_y})}};
}

inline PlacedObject object_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  PlacedObject o;
  o.id = text(require(j, "id", at), at + "/id");
  o.room = text(require(j, "room", at), at + "/room");
  o.asset.name = text(require(j, "asset", at), at + "/asset");
  if (j.contains("category")) o.asset.category = text(j["category"], at + "/category");
  const Point2 fp = point(require(j, "footprint", at), at + "/footprint");
  o.asset.width = fp.x;
  o.asset.length = fp.y;
  if (!(fp.x > 0 && fp.y > 0)) throw SchemaError(at + "/footprint", "dimensions must be positive");
  o.asset.height = number(require(j, "height", at), at + "/height");
  o.center = point(require(j, "center", at), at + "/center");
  const double yaw = number(require(j, "yaw", at), at + "/yaw");
  if (std::fmod(yaw, 90.0) != 0.0) throw SchemaError(at + "/yaw", "yaw must be a multiple of 90");
  o.yaw = static_cast<int>(std::fmod(std::fmod(yaw, 360.0) + 360.0, 360.0));
  const Point2 s = point(require(j, "scale", at), at + "/scale");
  for (int k = 0; k < 2; ++k) {
    const double v = k == 0 ? s.x : s.y;
    if (v < kScaleMin || v > kScaleMax)
      throw SchemaError(at + "/scale/" + std::to_string(k), "scale must lie in [0.8, 1.2]");
  }
  o.scale_x = s.x;
  o.scale_y = s.y;
  return o;
}

inline Json to_json(const RelationSpec& r) {
  if (const auto* ra = std::get_if<RoomAnchor>(&r.anchor)) {
    Json walls = Json::array();
    if (ra->wall >= 0) walls.push_back(ra->wall);
    if (ra->wall2 >= 0) walls.push_back(ra->wall2);
    return Json{{"subject", r.subject}, {"anchor", "room"}, {"kind", std::string(to_string(ra->kind))},
                {"walls", walls}};
  }
  const auto& oa = std::get<ObjectAnchor>(r.anchor);
  return Json{{"subject", r.subject}, {"anchor", "object"}, {"kind", std::string(to_string(oa.kind))},
              {"target", oa.target}};
}

inline RelationSpec relation_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  RelationSpec r;
  r.subject = text(require(j, "subject", at), at + "/subject");
  const std::string anchor = text(require(j, "anchor", at), at + "/anchor");
  const std::string kind = text(require(j, "kind", at), at + "/kind");
  if (anchor == "room") {
    RoomAnchor ra;
    const auto k = room_anchor_from(kind);
    if (!k) throw SchemaError(at + "/kind", "unknown room relation '" + kind + "'");
    ra.kind = *k;
    if (j.contains("walls")) {
      const Json& w = array(j["walls"], at + "/walls");
      if (w.size() > 0) ra.wall = static_cast<int>(number(w[0], at + "/walls/0"));
      if (w.size() > 1) ra.wall2 = static_cast<int>(number(w[1], at + "/walls/1"));
    }
    r.anchor = ra;
  } else if (anchor == "object") {
    const auto k = object_anchor_from(kind);
    if (!k) throw SchemaError(at + "/kind", "unknown object relation '" + kind + "'");
    r.anchor = ObjectAnchor{*k, text(require(j, "target", at), at + "/target")};
  } else {
    throw SchemaError(at + "/anchor", "anchor must be 'room' or 'object'");
  }
  return r;
}

inline Json to_json(const Layout& l) {
  Json rooms = Json::array(), objects = Json::array(), relations = Json::array();
  for (const Room& r : l.rooms) rooms.push_back(to_json(r));
  for (const PlacedObject& o : l.objects) objects.push_back(to_json(o));
  for (const RelationSpec& r : l.relations) relations.push_back(to_json(r));
  return Json{{"rooms", rooms}, {"objects", objects}, {"relations", relations}};
}

inline Layout layout_from_json(const Json& j, const std::string& at) {
  using namespace json_detail;
  Layout l;
  const Json& rooms = array(require(j, "rooms", at), at + "/rooms");
  for (std::size_t i = 0; i < rooms.size(); ++i)
    l.rooms.push_back(room_from_json(rooms[i], at + "/rooms/" + std::to_string(i)));
  if (j.contains("objects")) {
    const Json& objs = array(j["objects"], at + "/objects");
    for (std::size_t i = 0; i < objs.size(); ++i)
      l.objects.push_back(object_from_json(objs[i], at + "/objects/" + std::to_string(i)));
  }
  if (j.contains("relations")) {
    const Json& rels = array(j["relations"], at + "/relations");
    for (std::size_t i = 0; i < rels.size(); ++i)
      l.relations.push_back(relation_from_json(rels[i], at + "/relations/" + std::to_string(i)));
  }
  return l;
}

inline Json to_json(const SceneBundle& s) {
  Json j{{"physical", to_json(s.physical)},
         {"virtual", to_json(s.virtual_plan)},
         {"catalog_path", s.catalog_path}};
  if (!s.name.empty()) j["name"] = s.name;
  if (s.rooms) {
    Json rooms = Json::array();
    for (const Room& r : *s.rooms) rooms.push_back(to_json(r));
    j["rooms"] = rooms;
  }
  if (s.layout) j["layout"] = to_json(*s.layout);
  if (s.baseline_layout) j["baseline_layout"] = to_json(*s.baseline_layout);
  return j;
}

inline SceneBundle scene_from_json(const Json& j) {
  using namespace json_detail;
  if (!j.is_object()) throw SchemaError("", "scene bundle must be a JSON object");
  SceneBundle s;
  if (j.contains("name")) s.name = text(j["name"], "/name");
  s.physical = environment_from_json(require(j, "physical", ""), "/physical");
  s.virtual_plan = floorplan_from_json(require(j, "virtual", ""), "/virtual");
  if (j.contains("catalog_path")) s.catalog_path = text(j["catalog_path"], "/catalog_path");
  if (j.contains("rooms")) {
    const Json& rooms = array(j["rooms"], "/rooms");
    s.rooms.emplace();
    for (std::size_t i = 0; i < rooms.size(); ++i)
      s.rooms->push_back(room_from_json(rooms[i], "/rooms/" + std::to_string(i)));
  }
  if (j.contains("layout")) s.layout = layout_from_json(j["layout"], "/layout");
  if (j.contains("baseline_layout"))
    s.baseline_layout = layout_from_json(j["baseline_layout"], "/baseline_layout");
  return s;
}

// Canonical text: sorted keys, two-space indent, shortest round-trip numbers.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", path + " is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

inline SceneBundle load_scene(const std::string& path) {
  return scene_from_json(read_json_file(path));
}

inline void save_scene(const std::string& path, const SceneBundle& s) {
  write_text_file(path, dump_canonical(to_json(s)));
}

// Catalog path relative to the scene file unless absolute.
inline std::string resolve_catalog_path(const std::string& scene_path, const SceneBundle& s) {
  if (s.catalog_path.empty()) throw ConfigError("scene has no catalog_path");
  const std::filesystem::path c(s.catalog_path);
  if (c.is_absolute()) return c.string();
  return (std::filesystem::path(scene_path).parent_path() / c).lexically_normal().string();
}

}  // namespace walkfit
