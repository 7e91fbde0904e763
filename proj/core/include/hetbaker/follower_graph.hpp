#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hetbaker/word.hpp"

namespace hetbaker::dyck {

// Truncated follower-set graph of the Dyck/Motzkin shift. Vertices are the
// unmatched-left stacks of length <= depth; edges push a left bracket, pop
// the matching right bracket, or loop at the empty stack on right brackets
// (and at every vertex on units). Vertices at the depth cutoff keep their
// pop edges but have push edges omitted and are flagged truncated.
struct FollowerGraph {
  struct Edge {
    int from = 0;
    int label = 0;
    int to = 0;
    bool operator==(const Edge&) const = default;
  };

  Alphabet alphabet;
  int depth = 0;
  std::vector<std::vector<int>> stacks;  // vertex id -> stack, id 0 = empty
  std::vector<bool> truncated;
  std::vector<Edge> edges;               // sorted by (from, label)

  int vertex_count() const { return static_cast<int>(stacks.size()); }
  int vertex_id(const std::vector<int>& stack) const;       // -1 if absent
  std::optional<int> edge_target(int from, int label) const;
  std::string vertex_name(int id) const;  // stack digits concatenated, "e" for empty

 private:
  friend FollowerGraph build_follower_graph(const Alphabet&, int);
  std::map<std::vector<int>, int> index_;
};

FollowerGraph build_follower_graph(const Alphabet& ab, int depth);

std::string to_dot(const FollowerGraph& g);

}  // namespace hetbaker::dyck
