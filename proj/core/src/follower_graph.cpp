#include "hetbaker/follower_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace hetbaker::dyck {

int FollowerGraph::vertex_id(const std::vector<int>& stack) const {
  auto it = index_.find(stack);
  return it == index_.end() ? -1 : it->second;
}

std::optional<int> FollowerGraph::edge_target(int from, int label) const {
  Edge probe{from, label, 0};
  auto it = std::lower_bound(edges.begin(), edges.end(), probe,
                             [](const Edge& a, const Edge& b) {
                               return a.from != b.from ? a.from < b.from : a.label < b.label;
                             });
  if (it == edges.end() || it->from != from || it->label != label) return std::nullopt;
  return it->to;
}

std::string FollowerGraph::vertex_name(int id) const {
  const auto& stack = stacks[static_cast<std::size_t>(id)];
  if (stack.empty()) return "e";
  std::string name;
  for (int s : stack) name += std::to_string(s);
  return name;
}

FollowerGraph build_follower_graph(const Alphabet& ab, int depth) {
  if (depth < 0) throw std::invalid_argument("follower graph depth must be >= 0");
  FollowerGraph g;
  g.alphabet = ab;
  g.depth = depth;

  // Stacks ordered by length, then lexicographically.
  std::vector<std::vector<int>> frontier{{}};
  g.stacks.push_back({});
  for (int d = 1; d <= depth; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& stack : frontier) {
      for (int i = 1; i <= ab.m; ++i) {
        auto child = stack;
        child.push_back(i);
        next.push_back(std::move(child));
      }
    }
    for (auto& stack : next) g.stacks.push_back(std::move(stack));
    frontier.assign(g.stacks.end() - static_cast<long>(next.size()), g.stacks.end());
  }
  for (int id = 0; id < g.vertex_count(); ++id) {
    g.index_[g.stacks[static_cast<std::size_t>(id)]] = id;
  }
  g.truncated.resize(g.stacks.size());
  for (int id = 0; id < g.vertex_count(); ++id) {
    g.truncated[static_cast<std::size_t>(id)] =
        static_cast<int>(g.stacks[static_cast<std::size_t>(id)].size()) == depth;
  }

  for (int id = 0; id < g.vertex_count(); ++id) {
    const auto& stack = g.stacks[static_cast<std::size_t>(id)];
    if (!g.truncated[static_cast<std::size_t>(id)]) {
      for (int i = 1; i <= ab.m; ++i) {
        auto child = stack;
        child.push_back(i);
        g.edges.push_back({id, i, g.vertex_id(child)});
      }
    }
    if (!stack.empty()) {
      auto parent = stack;
      int i = parent.back();
      parent.pop_back();
      g.edges.push_back({id, i + ab.m, g.vertex_id(parent)});
    } else {
      for (int i = ab.m + 1; i <= 2 * ab.m; ++i) g.edges.push_back({id, i, id});
    }
    for (int u = 2 * ab.m + 1; u <= ab.total(); ++u) g.edges.push_back({id, u, id});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const FollowerGraph::Edge& a, const FollowerGraph::Edge& b) {
    return a.from != b.from ? a.from < b.from : a.label < b.label;
  });
  return g;
}

std::string to_dot(const FollowerGraph& g) {
  std::string out = "digraph follower {\n  rankdir=LR;\n";
  for (int id = 0; id < g.vertex_count(); ++id) {
    out += "  \"" + g.vertex_name(id) + "\"";
    if (g.truncated[static_cast<std::size_t>(id)] && g.depth > 0) {
      out += " [style=dashed]";
    }
    out += ";\n";
  }
  for (const auto& e : g.edges) {
    out += "  \"" + g.vertex_name(e.from) + "\" -> \"" + g.vertex_name(e.to) +
           "\" [label=\"" + std::to_string(e.label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace hetbaker::dyck
