#pragma once

// Strict readers for the two reply grammars. Anything outside "label (item, item, ...)" groups
// is rejected with the raw reply attached, so the caller can re-ask.

#include <string>
#include <utility>
#include <vector>

#include "walkfit/scene/catalog.hpp"
#include "walkfit/scene/relation.hpp"

namespace walkfit::layout {

using ObjectLists = std::vector<std::pair<std::string, std::vector<std::string>>>;

namespace parse_detail {

inline bool label_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ' || c == '-' || c == '_' ||
         c == '\'';
}

inline bool separator(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '.' || c == ',' || c == ';';
}

// Splits a reply into (label, body) groups; the body is the text between the parentheses.
inline std::vector<std::pair<std::string, std::string>> groups(const std::string& raw) {
  const std::string s = lowercase(raw);
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  for (;;) {
    while (i < s.size() && separator(s[i])) ++i;
    if (i == s.size()) break;
    const std::size_t open = s.find('(', i);
    if (open == std::string::npos) throw ParseError("text outside any room group", raw);
    std::string label = trim(s.substr(i, open - i));
    if (label.empty()) throw ParseError("group without a room label", raw);
    for (char c : label)
      if (!label_char(c)) throw ParseError("unexpected text before '" + label + "'", raw);
    // Bodies may nest one level, e.g. dimensions echoed back.
    int depth = 0;
    std::size_t close = open;
    for (; close < s.size(); ++close) {
      if (s[close] == '(') ++depth;
      if (s[close] == ')' && --depth == 0) break;
    }
    if (close == s.size()) throw ParseError("unbalanced parentheses", raw);
    out.emplace_back(label, s.substr(open + 1, close - open - 1));
    i = close + 1;
  }
  if (out.empty()) throw ParseError("reply is empty", raw);
  return out;
}

// Top-level comma split, ignoring commas inside parentheses.
inline std::vector<std::string> items(const std::string& body, const std::string& raw) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    if (t.empty()) throw ParseError("empty entry in list", raw);
    out.push_back(std::move(t));
    cur.clear();
  };
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0)
      flush();
    else
      cur += c;
  }
  if (!trim(cur).empty() || !out.empty()) flush();
  return out;
}

inline std::string strip_dims(std::string item) {
  const auto p = item.find('(');
  if (p != std::string::npos) item = trim(item.substr(0, p));
  return item;
}

inline bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace parse_detail

// "living room (sofa, tv stand)\nbathroom (toilet)" -> two lists keyed by label.
inline ObjectLists parse_object_lists(const std::string& raw) {
  ObjectLists out;
  for (auto& [label, body] : parse_detail::groups(raw)) {
    std::vector<std::string> names;
    for (std::string& it : parse_detail::items(body, raw)) {
      std::string name = parse_detail::strip_dims(it);
      for (char c : name)
        if (!parse_detail::label_char(c)) throw ParseError("bad object name '" + it + "'", raw);
      if (name.empty()) throw ParseError("bad object name '" + it + "'", raw);
      names.push_back(std::move(name));
    }
    for (const auto& [l, _] : out)
      if (l == label) throw ParseError("room '" + label + "' listed twice", raw);
    out.emplace_back(label, std::move(names));
  }
  return out;
}

// One clause, e.g. "coffee table front of sofa". `objects` are the instance names of the room;
// the subject is the longest one the clause starts with.
inline RelationSpec parse_relation_clause(const std::string& clause, const SimplePolygon& room,
                                          const std::vector<std::string>& objects,
                                          const std::string& raw) {
  using parse_detail::starts_with;
  const std::string c = lowercase(trim(clause));
  std::string subject;
  for (const std::string& o : objects) {
    const std::string lo = lowercase(o);
    if (lo.size() > subject.size() && starts_with(c, lo + " ")) subject = lo;
  }
  if (subject.empty()) throw ParseError("clause names no known object: '" + clause + "'", raw);
  std::string rest = trim(c.substr(subject.size()));
  RelationSpec r;
  for (const std::string& o : objects)
    if (lowercase(o) == subject) r.subject = o;

  auto drop = [&](const std::string& p) {
    if (!starts_with(rest, p)) return false;
    rest = trim(rest.substr(p.size()));
    return true;
  };
  auto wall = [&](std::string w) -> int {
    w = trim(w);
    if (auto k = wall_index(room, w)) return *k;
    if (w.size() > 5 && w.compare(w.size() - 5, 5, " wall") == 0)
      if (auto k = wall_index(room, trim(w.substr(0, w.size() - 5)))) return *k;
    throw ParseError("unknown wall '" + w + "' in '" + clause + "'", raw);
  };

  drop("is ");
  drop("placed ");
  drop("in the ");
  drop("at the ");
  if (drop("near to ") || drop("near the ") || drop("near ") || drop("close to ")) {
    drop("the ");
    r.anchor = RoomAnchor{RoomAnchorKind::near_wall, wall(rest), -1};
    return r;
  }
  if (drop("far from ") || drop("far to ") || drop("far ")) {
    drop("the ");
    r.anchor = RoomAnchor{RoomAnchorKind::far_wall, wall(rest), -1};
    return r;
  }
  if (rest == "middle of the room" || rest == "middle of room" || rest == "center of the room") {
    r.anchor = RoomAnchor{RoomAnchorKind::middle, -1, -1};
    return r;
  }
  if (drop("corner of ") || drop("corner between ")) {
    drop("the ");
    const auto sep = rest.find(" and ");
    if (sep == std::string::npos) throw ParseError("corner needs two walls: '" + clause + "'", raw);
    std::string second = trim(rest.substr(sep + 5));
    if (starts_with(second, "the ")) second = second.substr(4);
    const int a = wall(rest.substr(0, sep));
    const int b = wall(second);
    if (a == b) throw ParseError("corner of a wall with itself: '" + clause + "'", raw);
    r.anchor = RoomAnchor{RoomAnchorKind::corner, a, b};
    return r;
  }
  drop("to the ");
  drop("on the ");
  drop("in ");
  for (const auto& [kind, name] : kObjectAnchorNames) {
    const std::string n(name);
    if (!starts_with(rest, n + " ")) continue;
    std::string target = trim(rest.substr(n.size()));
    if (starts_with(target, "of ")) target = trim(target.substr(3));
    if (starts_with(target, "the ")) target = trim(target.substr(4));
    for (const std::string& o : objects)
      if (lowercase(o) == target) {
        if (o == r.subject) throw ParseError("object related to itself: '" + clause + "'", raw);
        r.anchor = ObjectAnchor{kind, o};
        return r;
      }
    throw ParseError("unknown target object in '" + clause + "'", raw);
  }
  throw ParseError("unknown relation in '" + clause + "'", raw);
}

// Reply for one room: "living room (sofa near upper wall, coffee table front of sofa)".
inline std::vector<RelationSpec> parse_relations(const std::string& raw, const std::string& label,
                                                 const SimplePolygon& room,
                                                 const std::vector<std::string>& objects) {
  const auto gs = parse_detail::groups(raw);
  if (gs.size() != 1) throw ParseError("expected exactly one room group", raw);
  if (gs[0].first != lowercase(label))
    throw ParseError("reply is for '" + gs[0].first + "', expected '" + label + "'", raw);
  std::vector<RelationSpec> out;
  for (const std::string& clause : parse_detail::items(gs[0].second, raw))
    out.push_back(parse_relation_clause(clause, room, objects, raw));
  return out;
}

}  // namespace walkfit::layout
