#ifndef TPRR_OVERLAY_HPP
#define TPRR_OVERLAY_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tprr/graph.hpp"

namespace tprr {

// Per-flow subgraph discovered by a route-discovery process. Holds a subset
// of base edge ids; failure probabilities are the base graph's. Construction
// drops edges that lie on no s->t walk, so every retained edge (u,v) has u
// reachable from s and t reachable from v inside the overlay.
//
// Non-owning view: the base graph must outlive the overlay.
class OverlayGraph {
 public:
  OverlayGraph(const ProbGraph& base, Flow flow, std::vector<int> edge_ids);

  const ProbGraph& base() const { return *base_; }
  Flow flow() const { return flow_; }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }
  bool empty() const { return edge_ids_.empty(); }

  // Base edge ids, sorted ascending.
  const std::vector<int>& edge_ids() const { return edge_ids_; }
  bool contains_edge(int base_edge_id) const;

 private:
  const ProbGraph* base_;
  Flow flow_;
  std::vector<int> edge_ids_;
};

// Idealized route-discovery models, all hop-count based:
//   shortest      breadth-first shortest path, lexicographically smallest
//                 node sequence on ties
//   kdisjoint:k   successive shortest paths, edges removed after each pick,
//                 up to k edge-disjoint routes
//   klimited:k    union of the first k shortest loop-free paths
//                 (ties broken lexicographically)
//   full          every edge (u,v) with u reachable from s and t reachable
//                 from v in the physical graph
struct RdpStrategy {
  enum class Kind { SingleShortestPath, KDisjoint, KLimited, FullMultipath };

  Kind kind = Kind::SingleShortestPath;
  int k = 1;

  static RdpStrategy shortest() { return {Kind::SingleShortestPath, 1}; }
  static RdpStrategy k_disjoint(int k);
  static RdpStrategy k_limited(int k);
  static RdpStrategy full() { return {Kind::FullMultipath, 1}; }

  // Parses "shortest", "kdisjoint:<k>", "klimited:<k>", "full".
  static RdpStrategy parse(std::string_view token);
  std::string name() const;

  friend bool operator==(const RdpStrategy& a, const RdpStrategy& b) {
    return a.kind == b.kind && a.k == b.k;
  }
};

// Routing-table snapshot: node's next hop towards a destination. External
// simulators integrate by dumping one 'route <node> <destination> <next_hop>'
// line per table entry.
struct RoutingTableDump {
  struct Entry {
    NodeId node = 0;
    NodeId destination = 0;
    NodeId next_hop = 0;
  };
  std::vector<Entry> entries;
};

RoutingTableDump read_dump(std::istream& in);
RoutingTableDump read_dump_file(const std::string& path);
void write_dump(std::ostream& out, const RoutingTableDump& dump);

OverlayGraph build_overlay(const ProbGraph& g, Flow f, const RdpStrategy& strategy);

// Overlay from the entries with destination t: starting at s, repeatedly
// follow entries of already-reached nodes (breadth-first closure). A reached
// entry whose (node, next_hop) is not a physical edge is an inconsistent
// dump (ParseError); entries at nodes never reached are ignored.
OverlayGraph overlay_from_tables(const ProbGraph& g, const RoutingTableDump& dump,
                                 Flow f);

// Maximum number of pairwise edge-disjoint s->t paths (the minimum s-t edge
// cut); 0 when the overlay is disconnected.
int disjointness_degree(const OverlayGraph& o);

// Shortest s->t hop distance inside the overlay; nullopt if disconnected.
std::optional<int> overlay_distance(const OverlayGraph& o);

// Overlay file format: graph format plus one 'flow <s> <t>' line.
struct OverlayFile {
  ProbGraph graph;
  Flow flow;
};
void write_overlay(std::ostream& out, const OverlayGraph& o);
void write_overlay_file(const std::string& path, const OverlayGraph& o);
OverlayFile read_overlay(std::istream& in);
OverlayFile read_overlay_file(const std::string& path);

}  // namespace tprr

#endif
