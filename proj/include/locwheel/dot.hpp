#pragma once

#include <ostream>
#include <sstream>

#include "locwheel/certificate.hpp"

namespace locwheel {

namespace detail {

inline const char* piece_colour(std::size_t i) {
  static const char* palette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628"};
  return palette[i % 6];
}

}  // namespace detail

/// The graph with the wheel drawn on top: rim in black, each spoke in the colour
/// of the piece it opens, everything else grey.
inline void write_wheel_dot(std::ostream& out, const WeightedGraph& g, const WheelSubdivision& w) {
  std::map<std::pair<VertexId, VertexId>, std::string> style;
  auto mark = [&](VertexId a, VertexId b, const std::string& s) {
    style[{std::min(a, b), std::max(a, b)}] = s;
  };
  for (std::size_t i = 0; i < w.rim.size(); ++i) mark(w.rim.at(i), w.rim.at(i + 1), "color=black, penwidth=2");
  for (std::size_t k = 0; k < w.spokes.size(); ++k) {
    const auto& s = w.spokes[k].vertices;
    for (std::size_t i = 1; i < s.size(); ++i) {
      mark(s[i - 1], s[i], std::string("color=\"") + detail::piece_colour(k) + "\", penwidth=2");
    }
  }
  auto lens = piece_lengths(g, w);
  out << "graph wheel {\n  node [shape=circle];\n";
  out << "  " << w.center << " [style=filled, fillcolor=\"#dddddd\"];\n";
  for (std::size_t k = 0; k < lens.size(); ++k) {
    out << "  // piece " << k << " length " << lens[k] << "\n";
  }
  for (const auto& e : g.edges()) {
    auto it = style.find({e.u, e.v});
    out << "  " << e.u << " -- " << e.v << " [label=\"" << e.length << "\", "
        << (it == style.end() ? "color=gray" : it->second) << "];\n";
  }
  out << "}\n";
}

/// One cluster per torso. Nodes are slices, labelled by the input vertex they
/// come from; link edges are dashed.
inline void write_decomposition_dot(std::ostream& out, const WeightedGraph& g,
                                    const GraphDecomposition& d) {
  CutHistory h = replay_cuts(g, d.cuts);
  out << "graph decomposition {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < d.torsos.size(); ++i) {
    const auto& t = d.torsos[i];
    out << "  subgraph cluster_" << i << " {\n";
    out << "    label=\"torso " << i << " (" << torso_kind_name(t.kind) << ")\";\n";
    for (VertexId v : t.graph.vertices()) {
      auto it = h.origin.find(v);
      out << "    s" << v << " [label=\"" << (it == h.origin.end() ? v : it->second) << "\"];\n";
    }
    for (const auto& e : t.graph.edges()) {
      bool link = t.links.count(CutHistory::key(e.u, e.v)) > 0;
      out << "    s" << e.u << " -- s" << e.v << " [label=\"" << e.length << "\""
          << (link ? ", style=dashed" : "") << "];\n";
    }
    out << "  }\n";
  }
  out << "}\n";
}

inline std::string certificate_dot(const WeightedGraph& g, const Certificate& c) {
  std::ostringstream out;
  if (const auto* w = std::get_if<WheelSubdivision>(&c.payload)) {
    write_wheel_dot(out, g, *w);
  } else {
    write_decomposition_dot(out, g, std::get<GraphDecomposition>(c.payload));
  }
  return out.str();
}

}  // namespace locwheel
