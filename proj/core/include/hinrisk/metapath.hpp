#pragma once

#include <string>
#include <vector>

#include "hinrisk/hin.hpp"
#include "hinrisk/schema.hpp"

namespace hinrisk {

// Alternating type/relation sequence A_1 -R_1-> A_2 ... -R_n-> A_{n+1}.
// node_types has relation_types.size() + 1 entries; adjacent endpoints agree
// with the schema by construction.
struct MetaPath {
  std::vector<TypeId> node_types;
  std::vector<RelId> relation_types;

  std::size_t length() const { return relation_types.size(); }
  TypeId root() const { return node_types.front(); }
  TypeId terminal() const { return node_types.back(); }

  bool operator==(const MetaPath&) const = default;
};

// One concrete path v_1 e_1 v_2 ... e_n v_{n+1} conforming to `meta`.
struct PathInstance {
  std::vector<NodeIdx> nodes;
  std::vector<EdgeIdx> edges;
};

// DSL: TYPE ("-[" RELNAME "]->" TYPE)+ with TYPE in {E,P,C,N} standing for
// enterprise/person/commodity/news. Whitespace between tokens is ignored.
// Example: E-[parent]->E-[report]->N
MetaPath parse_metapath(const std::string& text, const Schema& schema);
std::string format_metapath(const MetaPath& mp, const Schema& schema);

// Reads a meta-paths file: one DSL path per line, '#' starts a comment line.
std::vector<MetaPath> read_metapath_file(const std::string& path, const Schema& schema);

// All schema-valid meta paths rooted at `root` with 1..max_relations
// relations, lexicographic by the interleaved relation/type name sequence.
// Immediate backtracking (following a relation with its own inverse) is
// excluded; path instances of such candidates are dominated by self-returns.
std::vector<MetaPath> enumerate_metapaths(const Schema& schema, TypeId root,
                                          std::size_t max_relations);

// Every path instance starting at `start` that follows `mp`. Interior node
// revisits are allowed; instances whose terminal equals the start node are
// excluded. Deterministic order (neighbors by node id, then edge id).
std::vector<PathInstance> match_instances(const Hin& hin, NodeIdx start, const MetaPath& mp);

// Distinct terminal objects over all instances, sorted by node id.
// Layered set reachability; equals the terminal projection of match_instances.
std::vector<NodeIdx> reachable_targets(const Hin& hin, NodeIdx start, const MetaPath& mp);

// Reversed path: types reversed, each relation replaced by its inverse.
MetaPath inverse_metapath(const MetaPath& mp, const Schema& schema);

}  // namespace hinrisk
