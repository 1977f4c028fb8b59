#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"
#include "locwheel/decomposer.hpp"

namespace locwheel {

using Json = nlohmann::ordered_json;

inline constexpr int kCertificateSchema = 1;

/// SHA-256 over a canonical listing: sorted vertex ids, then sorted edges with lengths.
inline std::string graph_sha(const WeightedGraph& g) {
  std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
  std::sort(vs.begin(), vs.end());
  std::vector<std::tuple<VertexId, VertexId, Length>> es;
  for (const auto& e : g.edges()) es.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), e.length);
  std::sort(es.begin(), es.end());
  std::ostringstream text;
  text << "v";
  for (VertexId v : vs) text << ' ' << v;
  text << "\n";
  for (auto [u, v, len] : es) text << u << ' ' << v << ' ' << len << "\n";
  const std::string data = text.str();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    throw LogicError("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < size; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// ---------------------------------------------------------------------------
// JSON encoding.

inline Json edges_json(const WeightedGraph& g) {
  Json out = Json::array();
  for (const auto& e : g.edges()) out.push_back({e.u, e.v, e.length});
  return out;
}

inline Json to_json(const WheelSubdivision& w) {
  Json spokes = Json::array();
  for (const auto& s : w.spokes) spokes.push_back(s.vertices);
  return {{"center", w.center}, {"rim", w.rim.vertices}, {"spokes", spokes}};
}

inline Json to_json(const CutOp& op) {
  Json groups = Json::array();
  for (const auto& g : op.groups) {
    Json j;
    j["x_slice"] = g.x_slice ? Json(*g.x_slice) : Json(nullptr);
    j["y_slice"] = g.y_slice ? Json(*g.y_slice) : Json(nullptr);
    j["x_neighbours"] = g.x_neighbours;
    j["y_neighbours"] = g.y_neighbours;
    j["component"] = g.component;
    j["carries_xy"] = g.carries_xy;
    if (g.link_length) {
      j["link_length"] = *g.link_length;
      j["link_path"] = g.link_path.vertices;
    }
    groups.push_back(std::move(j));
  }
  Json out;
  out["kind"] = op.kind == CutOp::Kind::kVertex ? "vertex" : "pair";
  out["x"] = op.x;
  if (op.kind == CutOp::Kind::kPair) out["y"] = op.y;
  out["groups"] = std::move(groups);
  return out;
}

inline Json to_json(const GraphDecomposition& d) {
  Json cuts = Json::array();
  for (const auto& op : d.cuts) cuts.push_back(to_json(op));
  Json torsos = Json::array();
  for (const auto& t : d.torsos) {
    Json links = Json::array();
    for (auto [a, b] : t.links) links.push_back({a, b});
    torsos.push_back({{"kind", torso_kind_name(t.kind)},
                      {"vertices", std::vector<VertexId>(t.graph.vertices().begin(), t.graph.vertices().end())},
                      {"edges", edges_json(t.graph)},
                      {"links", links}});
  }
  Json edges = Json::array();
  for (const auto& e : d.edges) edges.push_back({e.a, e.b, e.adhesion});
  return {{"cuts", cuts}, {"torsos", torsos}, {"decomp_edges", edges}};
}

inline Json to_json(const Certificate& c) {
  Json out;
  out["schema"] = kCertificateSchema;
  out["r"] = c.r.str();
  out["graph_sha"] = c.graph_sha;
  if (const auto* w = std::get_if<WheelSubdivision>(&c.payload)) {
    out["type"] = "wheel";
    out["payload"] = to_json(*w);
  } else {
    out["type"] = "decomposition";
    out["payload"] = to_json(std::get<GraphDecomposition>(c.payload));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON decoding. Malformed input raises InputError.

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("bad value for ") + what);
  }
}

inline WeightedGraph graph_from_json(const Json& vertices, const Json& edges) {
  std::vector<Edge> list;
  for (const auto& e : edges) {
    auto t = get_as<std::vector<Length>>(e, "edge");
    if (t.size() != 3) throw InputError("edge needs [u, v, length]");
    list.push_back({static_cast<VertexId>(t[0]), static_cast<VertexId>(t[1]), t[2]});
  }
  return WeightedGraph(std::move(list), get_as<std::vector<VertexId>>(vertices, "vertices"));
}

}  // namespace detail

inline WheelSubdivision wheel_from_json(const Json& j) {
  WheelSubdivision w;
  w.center = detail::get_as<VertexId>(detail::field(j, "center"), "center");
  w.rim.vertices = detail::get_as<std::vector<VertexId>>(detail::field(j, "rim"), "rim");
  for (const auto& s : detail::field(j, "spokes")) {
    w.spokes.push_back(Path{detail::get_as<std::vector<VertexId>>(s, "spoke")});
  }
  return w;
}

inline CutOp cut_from_json(const Json& j) {
  CutOp op;
  auto kind = detail::get_as<std::string>(detail::field(j, "kind"), "kind");
  if (kind != "vertex" && kind != "pair") throw InputError("unknown cut kind " + kind);
  op.kind = kind == "vertex" ? CutOp::Kind::kVertex : CutOp::Kind::kPair;
  op.x = detail::get_as<VertexId>(detail::field(j, "x"), "x");
  if (op.kind == CutOp::Kind::kPair) op.y = detail::get_as<VertexId>(detail::field(j, "y"), "y");
  for (const auto& gj : detail::field(j, "groups")) {
    SliceGroup g;
    auto slice = [&](const char* name) -> std::optional<VertexId> {
      const Json& v = detail::field(gj, name);
      if (v.is_null()) return std::nullopt;
      return detail::get_as<VertexId>(v, name);
    };
    g.x_slice = slice("x_slice");
    g.y_slice = slice("y_slice");
    g.x_neighbours = detail::get_as<std::vector<VertexId>>(detail::field(gj, "x_neighbours"), "x_neighbours");
    g.y_neighbours = detail::get_as<std::vector<VertexId>>(detail::field(gj, "y_neighbours"), "y_neighbours");
    g.component = detail::get_as<std::vector<VertexId>>(detail::field(gj, "component"), "component");
    g.carries_xy = detail::get_as<bool>(detail::field(gj, "carries_xy"), "carries_xy");
    if (gj.contains("link_length")) {
      g.link_length = detail::get_as<Length>(gj.at("link_length"), "link_length");
      g.link_path.vertices = detail::get_as<std::vector<VertexId>>(detail::field(gj, "link_path"), "link_path");
    }
    op.groups.push_back(std::move(g));
  }
  return op;
}

inline GraphDecomposition decomposition_from_json(const Json& j) {
  GraphDecomposition d;
  for (const auto& c : detail::field(j, "cuts")) d.cuts.push_back(cut_from_json(c));
  for (const auto& t : detail::field(j, "torsos")) {
    DecompositionTorso dt;
    auto kind = detail::get_as<std::string>(detail::field(t, "kind"), "kind");
    if (kind == "cycle") {
      dt.kind = TorsoKind::kCycle;
    } else if (kind == "edge") {
      dt.kind = TorsoKind::kEdge;
    } else if (kind == "three_connected") {
      dt.kind = TorsoKind::kThreeConnected;
    } else {
      throw InputError("unknown torso kind " + kind);
    }
    dt.graph = detail::graph_from_json(detail::field(t, "vertices"), detail::field(t, "edges"));
    for (const auto& l : detail::field(t, "links")) {
      auto ab = detail::get_as<std::vector<VertexId>>(l, "link");
      if (ab.size() != 2) throw InputError("link needs two ends");
      dt.links.insert(CutHistory::key(ab[0], ab[1]));
    }
    d.torsos.push_back(std::move(dt));
  }
  for (const auto& e : detail::field(j, "decomp_edges")) {
    if (!e.is_array() || e.size() != 3) throw InputError("decomposition edge needs [a, b, adhesion]");
    d.edges.push_back({detail::get_as<std::size_t>(e[0], "torso index"),
                       detail::get_as<std::size_t>(e[1], "torso index"),
                       detail::get_as<std::vector<VertexId>>(e[2], "adhesion")});
  }
  return d;
}

inline Certificate certificate_from_json(const Json& j) {
  auto schema = detail::get_as<int>(detail::field(j, "schema"), "schema");
  if (schema != kCertificateSchema) throw InputError("unsupported schema " + std::to_string(schema));
  Certificate c;
  c.r = Radius::parse(detail::get_as<std::string>(detail::field(j, "r"), "r"));
  c.graph_sha = detail::get_as<std::string>(detail::field(j, "graph_sha"), "graph_sha");
  auto type = detail::get_as<std::string>(detail::field(j, "type"), "type");
  const Json& payload = detail::field(j, "payload");
  if (type == "wheel") {
    c.payload = wheel_from_json(payload);
  } else if (type == "decomposition") {
    c.payload = decomposition_from_json(payload);
  } else {
    throw InputError("unknown certificate type " + type);
  }
  return c;
}

inline Certificate certificate_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("certificate is not JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

/// Certificate with the input hash filled in.
inline Certificate decide_certificate(const WeightedGraph& g, Radius r) {
  Certificate c = decide(g, r);
  c.graph_sha = graph_sha(g);
  return c;
}

}  // namespace locwheel
