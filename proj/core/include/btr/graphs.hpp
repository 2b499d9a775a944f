#ifndef BTR_GRAPHS_HPP
#define BTR_GRAPHS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "btr/local_form.hpp"

namespace btr {

// Polar vertices carry forms with poles at P; holomorphic vertices carry
// forms that are integrated along edges.
enum class VKind : std::uint8_t { Polar = 0, Holo = 1 };

struct GVertex {
  VKind kind = VKind::Polar;
  int h = 0;
  int d = 0;                // valency including leaves
  std::vector<int> leaves;  // leaf labels, sorted
};

// Connected bipartite multigraph with labeled leaves.
struct BipGraph {
  std::vector<GVertex> v;
  std::vector<std::vector<int>> mult;  // symmetric edge multiplicities
  Rational aut = 1;                    // |Aut|
  std::string canonical;

  int num_edges() const;
  int genus() const;  // b_1 + sum h
};

struct GraphRules {
  int g = 0;
  int n = 0;
  std::vector<std::pair<int, int>> polar_types;  // allowed (h, d)
  std::vector<std::pair<int, int>> holo_types;
  // Per leaf: bit 0 allows a polar vertex, bit 1 a holomorphic vertex.
  std::vector<std::uint8_t> leaf_kinds;
  bool polar_needs_leaf = false;
  bool holo_needs_leaf = false;
  // Leaves may sit on holomorphic vertices of Euler characteristic 0.
  bool leaves_on_unstable_holo = true;
  // Hard cap on the number of vertices (guards chains of Euler characteristic 0 vertices).
  int max_vertices = 12;
};

std::vector<BipGraph> enumerate_graphs(const GraphRules& rules);

using VertexFormFn = std::function<const LocalForm&(VKind, int h, int d)>;
// Product of vertex forms with every edge integrated out; result variables
// are the leaves in label order.
LocalForm graph_weight(const BipGraph& gr, int n, const VertexFormFn& form);
// Sum of weight / |Aut| over a list.
LocalForm graph_sum(const std::vector<BipGraph>& graphs, int n, const VertexFormFn& form);

// DOT-like text: "v3 OMEGA0 g=1 d=2", "e v0 v3 x2", "leaf 1 v0".
std::string graph_to_text(const BipGraph& gr, const std::string& polar_name, const std::string& holo_name);

}  // namespace btr

#endif
