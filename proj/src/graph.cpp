#include "tprr/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tprr/errors.hpp"
#include "text.hpp"

namespace tprr {

namespace {

std::int64_t pair_key(int n, NodeId u, NodeId v) {
  return static_cast<std::int64_t>(u) * n + v;
}

}  // namespace

ProbGraph::ProbGraph(int node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("graph needs at least one node");
  out_.resize(n_);
  by_pair_.reserve(edges_.size());
  for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
    const Edge& e = edges_[id];
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_)
      throw std::invalid_argument("edge " + std::to_string(id) +
                                  ": node index out of range");
    if (e.tail == e.head)
      throw std::invalid_argument("edge " + std::to_string(id) + ": self-loop at node " +
                                  std::to_string(e.tail));
    if (!(e.p_fail >= 0.0 && e.p_fail <= 1.0))
      throw std::invalid_argument("edge " + std::to_string(id) +
                                  ": p_fail outside [0,1]");
    if (!by_pair_.emplace(pair_key(n_, e.tail, e.head), id).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.tail) + "," +
                                  std::to_string(e.head) + ")");
    out_[e.tail].push_back(id);
  }
  for (auto& lst : out_)
    std::sort(lst.begin(), lst.end(),
              [this](int a, int b) { return edges_[a].head < edges_[b].head; });
}

std::optional<int> ProbGraph::find_edge(NodeId u, NodeId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return std::nullopt;
  auto it = by_pair_.find(pair_key(n_, u, v));
  if (it == by_pair_.end()) return std::nullopt;
  return it->second;
}

ProbGraph build_graph(int node_count,
                      const std::vector<std::tuple<NodeId, NodeId, double>>& edge_list) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (const auto& [tail, head, p] : edge_list) edges.push_back({tail, head, p});
  return ProbGraph(node_count, std::move(edges));
}

namespace {

void check_flow(const ProbGraph& g, Flow f) {
  if (f.s < 0 || f.s >= g.node_count() || f.t < 0 || f.t >= g.node_count())
    throw std::invalid_argument("flow endpoint out of range");
  if (f.s == f.t) throw std::invalid_argument("flow source equals destination");
}

template <typename UpPred>
bool bfs_connected(const ProbGraph& g, Flow f, UpPred up) {
  std::vector<char> seen(g.node_count(), 0);
  std::deque<NodeId> queue{f.s};
  seen[f.s] = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (int id : g.out_edges(u)) {
      if (!up(id)) continue;
      NodeId v = g.edge(id).head;
      if (v == f.t) return true;
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

bool is_connected(const ProbGraph& g, Flow f, const std::vector<bool>& up_edges) {
  check_flow(g, f);
  if (static_cast<int>(up_edges.size()) != g.edge_count())
    throw std::invalid_argument("up_edges size must equal edge count");
  return bfs_connected(g, f, [&](int id) { return up_edges[id]; });
}

bool is_connected(const ProbGraph& g, Flow f, std::uint64_t up_mask) {
  check_flow(g, f);
  if (g.edge_count() > 64)
    throw std::invalid_argument("mask overload limited to 64 edges");
  return bfs_connected(g, f, [&](int id) { return (up_mask >> id) & 1u; });
}

std::optional<int> hop_distance(const ProbGraph& g, Flow f) {
  check_flow(g, f);
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> queue{f.s};
  dist[f.s] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (int id : g.out_edges(u)) {
      NodeId v = g.edge(id).head;
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        if (v == f.t) return dist[v];
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

ProbGraph read_graph(std::istream& in) {
  std::optional<int> n;
  std::vector<Edge> edges;
  text::for_each_line(in, [&](int lineno, std::string_view body) {
    auto where = [&] { return "graph line " + std::to_string(lineno); };
    auto toks = text::split_ws(body);
    if (toks[0] == "nodes") {
      if (n) throw ParseError(where() + ": duplicate nodes header");
      if (toks.size() != 2) throw ParseError(where() + ": expected 'nodes <n>'");
      n = text::parse_int<int>(toks[1], where());
    } else if (toks[0] == "edge") {
      if (!n) throw ParseError(where() + ": edge before nodes header");
      if (toks.size() != 4)
        throw ParseError(where() + ": expected 'edge <tail> <head> <p_fail>'");
      edges.push_back({text::parse_int<NodeId>(toks[1], where()),
                       text::parse_int<NodeId>(toks[2], where()),
                       text::parse_double(toks[3], where())});
    } else {
      throw ParseError(where() + ": unknown directive '" + std::string(toks[0]) + "'");
    }
  });
  if (!n) throw ParseError("graph: missing 'nodes <n>' header");
  try {
    return ProbGraph(*n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

ProbGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const ProbGraph& g) {
  out << "nodes " << g.node_count() << "\n";
  for (const Edge& e : g.edges())
    out << "edge " << e.tail << " " << e.head << " " << text::format_double(e.p_fail)
        << "\n";
}

void write_graph_file(const std::string& path, const ProbGraph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_graph(out, g);
}

}  // namespace tprr
