#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hinrisk/schema.hpp"

namespace hinrisk {

using NodeIdx = std::uint32_t;
using EdgeIdx = std::uint32_t;
using Timestamp = std::int64_t;  // epoch days

struct Node {
  std::string id;
  TypeId otype = 0;
  std::map<std::string, std::string> attributes;  // categorical levels, sorted by name
  std::optional<Timestamp> timestamp;
  std::optional<bool> risk_label;  // for news: 1 = negative polarity
};

struct Edge {
  std::string id;
  NodeIdx src = 0;
  NodeIdx dst = 0;
  RelId rtype = 0;  // the stored direction; inverse traversal is implicit
  std::optional<Timestamp> timestamp;
};

// One adjacency step: following `rel` from some node over stored edge `edge`
// lands on `neighbor`. Stored edges are indexed from both endpoints, under the
// stored relation at the source and under its inverse at the target.
struct AdjEntry {
  RelId rel;
  NodeIdx neighbor;
  EdgeIdx edge;
};

// Immutable heterogeneous information network. Construct via Builder (or the
// CSV loader), then only read. Edges type-check against the schema at build
// time; each edge is stored once and traversable in both directions.
class Hin {
 public:
  class Builder {
   public:
    explicit Builder(Schema schema) : schema_(std::move(schema)) {}

    NodeIdx add_node(Node node);
    EdgeIdx add_edge(Edge edge);  // src/dst already resolved to indices
    EdgeIdx add_edge(const std::string& edge_id, const std::string& src_id,
                     const std::string& dst_id, RelId rtype,
                     std::optional<Timestamp> ts = std::nullopt);
    void set_label(const std::string& node_id, bool risky);
    bool has_node(const std::string& id) const { return index_.count(id) > 0; }
    NodeIdx node_index(const std::string& id) const;

    Hin build() &&;

   private:
    Schema schema_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, NodeIdx> index_;
  };

  const Schema& schema() const { return schema_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Node& node(NodeIdx i) const { return nodes_.at(i); }
  const Edge& edge(EdgeIdx i) const { return edges_.at(i); }

  std::optional<NodeIdx> find_node(const std::string& id) const;
  // Throws UnknownNode if absent.
  NodeIdx node_index(const std::string& id) const;

  // All adjacency entries of `node`, sorted by (rel, neighbor id, edge id).
  std::span<const AdjEntry> adjacency(NodeIdx node) const;
  // Entries for one relation (contiguous slice of adjacency()).
  std::span<const AdjEntry> adjacency(NodeIdx node, RelId rel) const;

  // Distinct neighbors of `node` under `rel` (stored and inverse edges),
  // sorted by node id. Throws UnknownNode for out-of-range indices.
  std::vector<NodeIdx> neighbors(NodeIdx node, RelId rel) const;
  std::vector<std::string> neighbor_ids(const std::string& node_id, RelId rel) const;

  // Number of distinct nodes adjacent to `node` under any relation.
  std::size_t distinct_neighbor_count(NodeIdx node) const;
  // Number of stored edges incident to `node` (self-loops count twice).
  std::size_t incident_edge_count(NodeIdx node) const;

  // Node indices of one object type, sorted by node id.
  const std::vector<NodeIdx>& nodes_of_type(TypeId t) const;

  // Sub-network restricted to [window_start, window_end]: keeps nodes/edges
  // whose timestamp is absent or inside the window, and drops edges whose
  // endpoint was dropped. Throws InvalidWindow if start > end.
  Hin as_of(Timestamp window_start, Timestamp window_end) const;

 private:
  friend class Builder;
  Hin() = default;
  void rebuild_indexes();

  Schema schema_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeIdx> id_index_;
  std::vector<std::vector<AdjEntry>> adjacency_;
  std::vector<std::vector<NodeIdx>> by_type_;
};

}  // namespace hinrisk
