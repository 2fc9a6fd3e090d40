#include "tprr/overlay.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tprr/errors.hpp"
#include "text.hpp"

namespace tprr {

namespace {

void check_flow(const ProbGraph& g, Flow f) {
  if (f.s < 0 || f.s >= g.node_count() || f.t < 0 || f.t >= g.node_count())
    throw std::invalid_argument("flow endpoint out of range");
  if (f.s == f.t) throw std::invalid_argument("flow source equals destination");
}

// Forward reachability from `start` over the given edge ids.
std::vector<char> reach_from(const ProbGraph& g, const std::vector<int>& edge_ids,
                             NodeId start, bool reversed) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (int id : edge_ids) {
    const Edge& e = g.edge(id);
    if (reversed)
      adj[e.head].push_back(e.tail);
    else
      adj[e.tail].push_back(e.head);
  }
  std::vector<char> seen(g.node_count(), 0);
  std::deque<NodeId> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  }
  return seen;
}

}  // namespace

OverlayGraph::OverlayGraph(const ProbGraph& base, Flow flow, std::vector<int> edge_ids)
    : base_(&base), flow_(flow) {
  check_flow(base, flow);
  std::sort(edge_ids.begin(), edge_ids.end());
  edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());
  for (int id : edge_ids)
    if (id < 0 || id >= base.edge_count())
      throw std::invalid_argument("overlay edge id out of range");

  // Keep only edges on some s->t walk. Any kept edge lies on a walk made
  // entirely of kept edges, so one pass reaches the fixpoint.
  auto from_s = reach_from(base, edge_ids, flow.s, false);
  auto to_t = reach_from(base, edge_ids, flow.t, true);
  edge_ids_.reserve(edge_ids.size());
  for (int id : edge_ids) {
    const Edge& e = base.edge(id);
    if (from_s[e.tail] && to_t[e.head]) edge_ids_.push_back(id);
  }
}

bool OverlayGraph::contains_edge(int base_edge_id) const {
  return std::binary_search(edge_ids_.begin(), edge_ids_.end(), base_edge_id);
}

RdpStrategy RdpStrategy::k_disjoint(int k) {
  if (k < 1) throw std::invalid_argument("kdisjoint requires k >= 1");
  return {Kind::KDisjoint, k};
}

RdpStrategy RdpStrategy::k_limited(int k) {
  if (k < 1) throw std::invalid_argument("klimited requires k >= 1");
  return {Kind::KLimited, k};
}

RdpStrategy RdpStrategy::parse(std::string_view token) {
  token = text::trim(token);
  if (token == "shortest") return shortest();
  if (token == "full") return full();
  auto colon = token.find(':');
  if (colon != std::string_view::npos) {
    auto name = token.substr(0, colon);
    int k = text::parse_int<int>(token.substr(colon + 1),
                                 "strategy '" + std::string(token) + "'");
    if (k < 1)
      throw ParseError("strategy '" + std::string(token) + "': k must be >= 1");
    if (name == "kdisjoint") return k_disjoint(k);
    if (name == "klimited") return k_limited(k);
  }
  throw ParseError("unknown strategy '" + std::string(token) +
                   "' (expected shortest, kdisjoint:<k>, klimited:<k>, full)");
}

std::string RdpStrategy::name() const {
  switch (kind) {
    case Kind::SingleShortestPath:
      return "shortest";
    case Kind::KDisjoint:
      return "kdisjoint:" + std::to_string(k);
    case Kind::KLimited:
      return "klimited:" + std::to_string(k);
    case Kind::FullMultipath:
      return "full";
  }
  return "?";
}

namespace {

using Path = std::vector<NodeId>;

// View of the physical graph with some edges/nodes masked out.
struct Subview {
  const ProbGraph& g;
  std::vector<char> edge_dead;
  std::vector<char> node_dead;

  explicit Subview(const ProbGraph& graph)
      : g(graph), edge_dead(graph.edge_count(), 0), node_dead(graph.node_count(), 0) {}
};

// Lexicographically smallest shortest s->t path: backward BFS gives exact
// distances to t, then a forward greedy walk picks the smallest usable head
// at each step. Returns nullopt when t is unreachable.
std::optional<Path> lex_shortest_path(const Subview& view, NodeId s, NodeId t) {
  const ProbGraph& g = view.g;
  if (view.node_dead[s] || view.node_dead[t]) return std::nullopt;

  std::vector<std::vector<NodeId>> radj(g.node_count());
  for (int id = 0; id < g.edge_count(); ++id) {
    if (view.edge_dead[id]) continue;
    const Edge& e = g.edge(id);
    if (view.node_dead[e.tail] || view.node_dead[e.head]) continue;
    radj[e.head].push_back(e.tail);
  }
  std::vector<int> dist_t(g.node_count(), -1);
  std::deque<NodeId> queue{t};
  dist_t[t] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : radj[u])
      if (dist_t[v] < 0) {
        dist_t[v] = dist_t[u] + 1;
        queue.push_back(v);
      }
  }
  if (dist_t[s] < 0) return std::nullopt;

  Path path{s};
  NodeId u = s;
  while (u != t) {
    NodeId next = -1;
    for (int id : g.out_edges(u)) {  // heads ascending
      if (view.edge_dead[id]) continue;
      NodeId v = g.edge(id).head;
      if (view.node_dead[v]) continue;
      if (dist_t[v] == dist_t[u] - 1) {
        next = v;
        break;
      }
    }
    path.push_back(next);
    u = next;
  }
  return path;
}

std::vector<int> path_edge_ids(const ProbGraph& g, const Path& p) {
  std::vector<int> ids;
  ids.reserve(p.size());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) ids.push_back(*g.find_edge(p[i], p[i + 1]));
  return ids;
}

// (hop length, node sequence) total order used for path enumeration.
struct PathOrder {
  bool operator()(const Path& a, const Path& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Yen's algorithm over the unit-cost digraph; emits simple paths in
// (length, lexicographic) order, at most k of them.
std::vector<Path> k_shortest_paths(const ProbGraph& g, Flow f, int k) {
  std::vector<Path> chosen;
  std::set<Path, PathOrder> candidates;
  Subview base(g);
  auto first = lex_shortest_path(base, f.s, f.t);
  if (!first) return chosen;
  chosen.push_back(*first);

  while (static_cast<int>(chosen.size()) < k) {
    const Path& prev = chosen.back();
    for (std::size_t spur = 0; spur + 1 < prev.size(); ++spur) {
      Subview view(g);
      // Ban deviations already taken from this root, and the root itself.
      for (const Path& p : chosen) {
        if (p.size() <= spur) continue;
        if (!std::equal(prev.begin(), prev.begin() + spur + 1, p.begin()))
          continue;
        if (auto id = g.find_edge(p[spur], p[spur + 1])) view.edge_dead[*id] = 1;
      }
      for (std::size_t i = 0; i < spur; ++i) view.node_dead[prev[i]] = 1;

      auto tail = lex_shortest_path(view, prev[spur], f.t);
      if (!tail) continue;
      Path candidate(prev.begin(), prev.begin() + spur);
      candidate.insert(candidate.end(), tail->begin(), tail->end());
      if (std::find(chosen.begin(), chosen.end(), candidate) == chosen.end())
        candidates.insert(candidate);
    }
    if (candidates.empty()) break;
    chosen.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return chosen;
}

std::vector<int> shortest_path_edges(const ProbGraph& g, Flow f) {
  Subview view(g);
  auto p = lex_shortest_path(view, f.s, f.t);
  return p ? path_edge_ids(g, *p) : std::vector<int>{};
}

std::vector<int> k_disjoint_edges(const ProbGraph& g, Flow f, int k) {
  Subview view(g);
  std::vector<int> ids;
  for (int round = 0; round < k; ++round) {
    auto p = lex_shortest_path(view, f.s, f.t);
    if (!p) break;
    for (int id : path_edge_ids(g, *p)) {
      ids.push_back(id);
      view.edge_dead[id] = 1;
    }
  }
  return ids;
}

std::vector<int> k_limited_edges(const ProbGraph& g, Flow f, int k) {
  std::vector<int> ids;
  for (const Path& p : k_shortest_paths(g, f, k)) {
    auto edge_ids = path_edge_ids(g, p);
    ids.insert(ids.end(), edge_ids.begin(), edge_ids.end());
  }
  return ids;
}

std::vector<int> full_multipath_edges(const ProbGraph& g, Flow f) {
  std::vector<int> all(g.edge_count());
  for (int id = 0; id < g.edge_count(); ++id) all[id] = id;
  auto from_s = reach_from(g, all, f.s, false);
  auto to_t = reach_from(g, all, f.t, true);
  std::vector<int> ids;
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (from_s[e.tail] && to_t[e.head]) ids.push_back(id);
  }
  return ids;
}

}  // namespace

OverlayGraph build_overlay(const ProbGraph& g, Flow f, const RdpStrategy& strategy) {
  check_flow(g, f);
  std::vector<int> ids;
  switch (strategy.kind) {
    case RdpStrategy::Kind::SingleShortestPath:
      ids = shortest_path_edges(g, f);
      break;
    case RdpStrategy::Kind::KDisjoint:
      ids = k_disjoint_edges(g, f, strategy.k);
      break;
    case RdpStrategy::Kind::KLimited:
      ids = k_limited_edges(g, f, strategy.k);
      break;
    case RdpStrategy::Kind::FullMultipath:
      ids = full_multipath_edges(g, f);
      break;
  }
  return OverlayGraph(g, f, std::move(ids));
}

OverlayGraph overlay_from_tables(const ProbGraph& g, const RoutingTableDump& dump,
                                 Flow f) {
  check_flow(g, f);
  for (const auto& e : dump.entries)
    if (e.node < 0 || e.node >= g.node_count() || e.destination < 0 ||
        e.destination >= g.node_count() || e.next_hop < 0 ||
        e.next_hop >= g.node_count())
      throw ParseError("dump entry references a node outside the graph");

  std::vector<std::vector<NodeId>> hops(g.node_count());
  for (const auto& e : dump.entries)
    if (e.destination == f.t) hops[e.node].push_back(e.next_hop);

  std::vector<int> ids;
  std::vector<char> seen(g.node_count(), 0);
  std::deque<NodeId> queue{f.s};
  seen[f.s] = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId nh : hops[u]) {
      auto id = g.find_edge(u, nh);
      if (!id)
        throw ParseError("inconsistent dump: no physical edge (" + std::to_string(u) +
                         "," + std::to_string(nh) + ")");
      ids.push_back(*id);
      if (!seen[nh]) {
        seen[nh] = 1;
        queue.push_back(nh);
      }
    }
  }
  return OverlayGraph(g, f, std::move(ids));
}

int disjointness_degree(const OverlayGraph& o) {
  if (o.empty()) return 0;
  const ProbGraph& g = o.base();
  Flow f = o.flow();

  // Unit-capacity max flow (BFS augmentation); the value is the number of
  // edge-disjoint s->t paths by max-flow/min-cut duality.
  const auto& ids = o.edge_ids();
  int m = static_cast<int>(ids.size());
  std::vector<int> cap(2 * m);  // even = forward residual, odd = reverse
  std::vector<std::vector<int>> adj(g.node_count());
  std::vector<NodeId> to(2 * m);
  for (int i = 0; i < m; ++i) {
    const Edge& e = g.edge(ids[i]);
    cap[2 * i] = 1;
    to[2 * i] = e.head;
    to[2 * i + 1] = e.tail;
    adj[e.tail].push_back(2 * i);
    adj[e.head].push_back(2 * i + 1);
  }

  int flow_value = 0;
  while (true) {
    std::vector<int> via(g.node_count(), -1);
    std::vector<char> seen(g.node_count(), 0);
    std::deque<NodeId> queue{f.s};
    seen[f.s] = 1;
    while (!queue.empty() && !seen[f.t]) {
      NodeId u = queue.front();
      queue.pop_front();
      for (int a : adj[u]) {
        if (cap[a] <= 0 || seen[to[a]]) continue;
        seen[to[a]] = 1;
        via[to[a]] = a;
        queue.push_back(to[a]);
      }
    }
    if (!seen[f.t]) break;
    for (NodeId v = f.t; v != f.s;) {
      int a = via[v];
      cap[a] -= 1;
      cap[a ^ 1] += 1;
      v = to[a ^ 1];
    }
    ++flow_value;
  }
  return flow_value;
}

std::optional<int> overlay_distance(const OverlayGraph& o) {
  if (o.empty()) return std::nullopt;
  const ProbGraph& g = o.base();
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (int id : o.edge_ids()) adj[g.edge(id).tail].push_back(g.edge(id).head);
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> queue{o.flow().s};
  dist[o.flow().s] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        if (v == o.flow().t) return dist[v];
        queue.push_back(v);
      }
  }
  return std::nullopt;
}

RoutingTableDump read_dump(std::istream& in) {
  RoutingTableDump dump;
  text::for_each_line(in, [&](int lineno, std::string_view body) {
    auto where = "dump line " + std::to_string(lineno);
    auto toks = text::split_ws(body);
    if (toks[0] != "route" || toks.size() != 4)
      throw ParseError(where + ": expected 'route <node> <destination> <next_hop>'");
    dump.entries.push_back({text::parse_int<NodeId>(toks[1], where),
                            text::parse_int<NodeId>(toks[2], where),
                            text::parse_int<NodeId>(toks[3], where)});
  });
  return dump;
}

RoutingTableDump read_dump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dump file '" + path + "'");
  return read_dump(in);
}

void write_dump(std::ostream& out, const RoutingTableDump& dump) {
  for (const auto& e : dump.entries)
    out << "route " << e.node << " " << e.destination << " " << e.next_hop << "\n";
}

void write_overlay(std::ostream& out, const OverlayGraph& o) {
  out << "nodes " << o.base().node_count() << "\n";
  out << "flow " << o.flow().s << " " << o.flow().t << "\n";
  for (int id : o.edge_ids()) {
    const Edge& e = o.base().edge(id);
    out << "edge " << e.tail << " " << e.head << " " << text::format_double(e.p_fail)
        << "\n";
  }
}

void write_overlay_file(const std::string& path, const OverlayGraph& o) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_overlay(out, o);
}

OverlayFile read_overlay(std::istream& in) {
  std::optional<int> n;
  std::optional<Flow> flow;
  std::vector<Edge> edges;
  text::for_each_line(in, [&](int lineno, std::string_view body) {
    auto where = [&] { return "overlay line " + std::to_string(lineno); };
    auto toks = text::split_ws(body);
    if (toks[0] == "nodes" && toks.size() == 2) {
      n = text::parse_int<int>(toks[1], where());
    } else if (toks[0] == "flow" && toks.size() == 3) {
      flow = Flow{text::parse_int<NodeId>(toks[1], where()),
                  text::parse_int<NodeId>(toks[2], where())};
    } else if (toks[0] == "edge" && toks.size() == 4) {
      edges.push_back({text::parse_int<NodeId>(toks[1], where()),
                       text::parse_int<NodeId>(toks[2], where()),
                       text::parse_double(toks[3], where())});
    } else {
      throw ParseError(where() + ": unexpected line '" + std::string(body) + "'");
    }
  });
  if (!n || !flow) throw ParseError("overlay: missing nodes or flow header");
  try {
    return OverlayFile{ProbGraph(*n, std::move(edges)), *flow};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("overlay: ") + e.what());
  }
}

OverlayFile read_overlay_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open overlay file '" + path + "'");
  return read_overlay(in);
}

}  // namespace tprr
