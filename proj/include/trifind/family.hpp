#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "trifind/errors.hpp"
#include "trifind/generators.hpp"
#include "trifind/graph.hpp"

namespace trifind {

// Instance distributions: "er:<p>", "bipartite", "planted", "edgeless", "complete".
struct Family {
  enum class Kind { kEr, kBipartite, kPlanted, kEdgeless, kComplete };
  Kind kind = Kind::kEr;
  double p = 0.5;

  static Family er(double p) { return {Kind::kEr, p}; }
  static Family bipartite() { return {Kind::kBipartite, 0.5}; }
  static Family planted() { return {Kind::kPlanted, 0.5}; }
  static Family edgeless() { return {Kind::kEdgeless, 0.0}; }
  static Family complete() { return {Kind::kComplete, 1.0}; }

  static Family parse(const std::string& text) {
    if (text == "bipartite") return bipartite();
    if (text == "planted") return planted();
    if (text == "edgeless") return edgeless();
    if (text == "complete") return complete();
    if (text.rfind("er:", 0) == 0) {
      std::istringstream in(text.substr(3));
      double p = -1.0;
      in >> p;
      require(in && in.eof() && p >= 0.0 && p <= 1.0, "family er:<p> needs p in [0, 1]");
      return er(p);
    }
    throw ContractViolation("unknown graph family '" + text + "'");
  }

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case Kind::kEr: {
        std::ostringstream out;
        out << "er:" << p;
        return out.str();
      }
      case Kind::kBipartite: return "bipartite";
      case Kind::kPlanted: return "planted";
      case Kind::kEdgeless: return "edgeless";
      case Kind::kComplete: return "complete";
    }
    return "unknown";
  }

  // Whether every instance contains a triangle (true), none does (false), or it varies.
  [[nodiscard]] std::optional<bool> has_triangle() const {
    switch (kind) {
      case Kind::kPlanted: return true;
      case Kind::kBipartite:
      case Kind::kEdgeless: return false;
      default: return std::nullopt;
    }
  }
};

inline Graph make_graph(const Family& f, std::size_t n, std::uint64_t seed) {
  switch (f.kind) {
    case Family::Kind::kEr: return gen_er(n, f.p, seed);
    case Family::Kind::kBipartite: return gen_triangle_free(n, seed);
    case Family::Kind::kPlanted: return gen_planted(n, seed);
    case Family::Kind::kEdgeless: return empty_graph(n);
    case Family::Kind::kComplete: return complete_graph(n);
  }
  throw ContractViolation("unknown family");
}

}  // namespace trifind
