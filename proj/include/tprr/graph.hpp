#ifndef TPRR_GRAPH_HPP
#define TPRR_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tprr {

using NodeId = std::int32_t;

// Directed link with an independent failure probability.
struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  double p_fail = 0.0;
};

// Ordered (source, destination) pair.
struct Flow {
  NodeId s = 0;
  NodeId t = 0;

  friend bool operator==(const Flow& a, const Flow& b) {
    return a.s == b.s && a.t == b.t;
  }
  friend bool operator<(const Flow& a, const Flow& b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  }
};

// Simple probabilistic digraph: no self-loops, at most one edge per ordered
// node pair, edge ids 0..m-1 in insertion order. Immutable once built; safe
// to share across threads.
class ProbGraph {
 public:
  // Validates and indexes `edges`. Throws std::invalid_argument on a
  // self-loop, a duplicate (tail, head) pair, a node index out of range,
  // a p_fail outside [0, 1], or node_count < 1.
  ProbGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge id of (u, v), if present.
  std::optional<int> find_edge(NodeId u, NodeId v) const;

  // Out-edge ids of u, sorted by head node id.
  const std::vector<int>& out_edges(NodeId u) const { return out_[u]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::unordered_map<std::int64_t, int> by_pair_;
};

ProbGraph build_graph(int node_count,
                      const std::vector<std::tuple<NodeId, NodeId, double>>& edge_list);

// True iff a directed s->t path exists using only edges whose id is set in
// `up_edges` (size must equal g.edge_count()).
bool is_connected(const ProbGraph& g, Flow f, const std::vector<bool>& up_edges);

// Mask variant for graphs with at most 64 edges: bit i set = edge i up.
bool is_connected(const ProbGraph& g, Flow f, std::uint64_t up_mask);

// Shortest directed s->t distance in hops; nullopt if t is unreachable.
std::optional<int> hop_distance(const ProbGraph& g, Flow f);

// Line-oriented text format:
//   nodes <n>
//   edge <tail> <head> <p_fail>
// '#' starts a comment. Probabilities are written in shortest round-trip
// decimal form, so read(write(g)) reproduces every p_fail bit-exactly.
ProbGraph read_graph(std::istream& in);
ProbGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const ProbGraph& g);
void write_graph_file(const std::string& path, const ProbGraph& g);

}  // namespace tprr

#endif
