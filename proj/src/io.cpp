#include "flimit/io.hpp"

namespace flimit {

using nlohmann::json;

namespace {

void check_header(const json& j, const std::string& type) {
  if (!j.is_object() || j.value("format", "") != kFormatTag)
    fail(Errc::BadInput, "missing or unsupported format header");
  if (j.value("type", "") != type)
    fail(Errc::BadInput, "expected a '" + type + "' object");
}

}  // namespace

json element_to_json(const PLHomeo& f) {
  json pts = json::array();
  for (const auto& [x, y] : f.breakpoints()) pts.push_back({x.str(), y.str()});
  return json{{"format", kFormatTag}, {"type", "element"}, {"breakpoints", pts}};
}

PLHomeo element_from_json(const json& j) {
  check_header(j, "element");
  std::vector<PLHomeo::Point> pts;
  for (const auto& p : j.at("breakpoints"))
    pts.emplace_back(parse_dyadic(p.at(0).get<std::string>()),
                     parse_dyadic(p.at(1).get<std::string>()));
  return PLHomeo::from_breakpoints(std::move(pts));
}

json interval_set_to_json(const IntervalSet& s) {
  json parts = json::array();
  for (const Interval& iv : s.parts())
    parts.push_back({{"lo", iv.lo.str()},
                     {"hi", iv.hi.str()},
                     {"lo_closed", iv.lo_closed},
                     {"hi_closed", iv.hi_closed}});
  return json{{"format", kFormatTag}, {"type", "interval_set"}, {"parts", parts}};
}

json marked_to_json(const MarkedTuple<PLHomeo>& m) {
  json markers = json::array();
  for (const PLHomeo& g : m.markers) markers.push_back(element_to_json(g));
  return json{{"format", kFormatTag}, {"type", "marked"}, {"backend", "f"}, {"markers", markers}};
}

json marked_to_json(const MarkedTuple<GrigWord>& m) {
  json markers = json::array();
  for (const GrigWord& g : m.markers) markers.push_back(g.letters());
  return json{
      {"format", kFormatTag}, {"type", "marked"}, {"backend", "grig"}, {"markers", markers}};
}

std::string marked_backend(const json& j) {
  check_header(j, "marked");
  return j.value("backend", "");
}

MarkedTuple<PLHomeo> marked_f_from_json(const json& j) {
  if (marked_backend(j) != "f") fail(Errc::BadInput, "expected an F-backend marked tuple");
  MarkedTuple<PLHomeo> m;
  for (const auto& g : j.at("markers")) m.markers.push_back(element_from_json(g));
  if (m.markers.empty()) fail(Errc::BadInput, "marked tuple needs at least one marker");
  return m;
}

MarkedTuple<GrigWord> marked_grig_from_json(const json& j) {
  if (marked_backend(j) != "grig") fail(Errc::BadInput, "expected a grig-backend marked tuple");
  MarkedTuple<GrigWord> m;
  for (const auto& g : j.at("markers")) m.markers.push_back(GrigWord(g.get<std::string>()));
  if (m.markers.empty()) fail(Errc::BadInput, "marked tuple needs at least one marker");
  return m;
}

void load_symbols(SymbolTable& table, const json& j) {
  check_header(j, "symbols");
  for (const auto& [name, value] : j.at("symbols").items()) {
    if (value.is_string()) {
      FWord w = parse_word(value.get<std::string>(), table);
      if (w.has_variable()) fail(Errc::BadInput, "symbol '" + name + "' uses variables");
      table.bind(name, evaluate_word(w, {}));
    } else {
      table.bind(name, element_from_json(value));
    }
  }
}

json hnn_to_json(const HnnWord& w) {
  json tail = json::array();
  for (const auto& [e, f] : w.tail) tail.push_back({{"t", e}, {"then", element_to_json(f)}});
  return json{{"format", kFormatTag},
              {"type", "hnn_word"},
              {"head", element_to_json(w.head)},
              {"tail", tail}};
}

}  // namespace flimit
