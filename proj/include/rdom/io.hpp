#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rdom/graph.hpp"

namespace rdom {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

namespace detail {

inline Weight parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  long exponent = 0;
  bool after_point = false;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      after_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (after_point) --exponent;
    } else {
      break;
    }
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    long e = 0;
    std::string_view rest = text.substr(i + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    std::from_chars(rest.data(), rest.data() + rest.size(), e);
    exponent += e;
  }
  boost::multiprecision::cpp_int numerator(digits.empty() ? std::string("0") : digits);
  boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                    static_cast<unsigned>(std::abs(exponent)));
  Weight value = exponent >= 0 ? Weight(numerator * scale) : Weight(numerator, scale);
  return negative ? Weight(-value) : value;
}

}  // namespace detail

// JSON numbers become exact rationals via their shortest decimal spelling.
inline Weight weight_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Weight(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Weight(j.get<std::uint64_t>());
  if (j.is_number_float()) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    return detail::parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  throw ParseError(where, "expected a number");
}

inline Json weight_to_json(const Weight& w) {
  if (boost::multiprecision::denominator(w) == 1) {
    const auto& n = boost::multiprecision::numerator(w);
    if (n <= std::numeric_limits<std::int64_t>::max() && n >= std::numeric_limits<std::int64_t>::min()) {
      return Json(static_cast<std::int64_t>(n));
    }
  }
  return Json(w.convert_to<double>());
}

namespace detail {

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::int64_t integer_field(const Json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

inline Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

}  // namespace detail

/// Parses the graph document: {"directed", "vertices": [{"id","weight"}], "edges": [{"u","v","len"}]}.
inline Graph graph_from_json(const Json& doc) {
  const std::string root = "graph";
  const auto& directed = detail::field(doc, "directed", root);
  if (!directed.is_boolean()) throw ParseError(root + ".directed", "expected a boolean");
  const auto& vs = detail::field(doc, "vertices", root);
  const auto& es = detail::field(doc, "edges", root);
  if (!vs.is_array()) throw ParseError(root + ".vertices", "expected an array");
  if (!es.is_array()) throw ParseError(root + ".edges", "expected an array");

  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string where = root + ".vertices[" + std::to_string(i) + "]";
    Vertex v;
    v.id = detail::integer_field(vs[i], "id", where);
    v.weight = weight_from_json(detail::field(vs[i], "weight", where), where + ".weight");
    if (v.weight < 0) throw ParseError(where + ".weight", "negative weight");
    vertices.push_back(std::move(v));
  }
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string where = root + ".edges[" + std::to_string(i) + "]";
    EdgeSpec e;
    e.u = detail::integer_field(es[i], "u", where);
    e.v = detail::integer_field(es[i], "v", where);
    e.length = detail::integer_field(es[i], "len", where);
    if (e.length < 0) throw ParseError(where + ".len", "negative length");
    edges.push_back(e);
  }
  try {
    return Graph(directed.get<bool>(), std::move(vertices), edges);
  } catch (const GraphError& e) {
    throw ParseError(root, e.what());
  }
}

inline Graph parse_graph(std::string_view text) { return graph_from_json(detail::parse_text(text)); }

inline Json graph_to_json(const Graph& g) {
  Json doc;
  doc["directed"] = g.directed();
  Json vs = Json::array();
  for (const auto& v : g.vertices()) {
    vs.push_back(Json{{"id", v.id}, {"weight", weight_to_json(v.weight)}});
  }
  doc["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : g.edge_records()) es.push_back(Json{{"u", e.u}, {"v", e.v}, {"len", e.length}});
  doc["edges"] = std::move(es);
  return doc;
}

}  // namespace rdom
