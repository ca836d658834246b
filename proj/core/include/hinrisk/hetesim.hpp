#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "hinrisk/hin.hpp"
#include "hinrisk/metapath.hpp"

namespace hinrisk {

// Pairwise-random-walk relevance under a meta path. The path is split at
// relation ceil(n/2); when n is odd the middle relation is decomposed into
// out/in halves over its edge instances (each stored edge acts as a virtual
// middle node). The score is the cosine of the two reachable-probability
// vectors meeting at the midpoint:
//
//   relevance(s,t) = <u, w> / (|u| |w|)
//
// where u is s's distribution after the left half and w is t's distribution
// walking the reversed right half. Zero when either vector is zero. Values
// lie in [0,1] since all entries are nonnegative.
class HeteSimEngine {
 public:
  using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  struct PathOperators {
    SpMat left;   // rows: nodes of the root type, cols: midpoint space
    SpMat right;  // rows: nodes of the terminal type, cols: midpoint space
    std::vector<double> left_norm;
    std::vector<double> right_norm;
  };

  explicit HeteSimEngine(const Hin& hin);

  double relevance(NodeIdx s, NodeIdx t, const MetaPath& mp) const;

  // Midpoint operators for a path, built on first use and cached. Safe for
  // concurrent callers; each entry is constructed exactly once.
  std::shared_ptr<const PathOperators> operators(const MetaPath& mp) const;

  // Dense index of a node within its object type (row index into operators).
  std::size_t type_index(NodeIdx v) const { return type_index_.at(v); }

  // Row-normalized transition operator of one relation: rows are nodes of the
  // relation's source type, columns nodes of its target type.
  const SpMat& transition(RelId rel) const { return transitions_.at(rel); }

 private:
  SpMat edge_half(RelId rel, bool arriving) const;
  std::shared_ptr<const PathOperators> build_operators(const MetaPath& mp) const;

  const Hin* hin_;
  std::vector<std::size_t> type_index_;     // node -> index within its type
  std::vector<SpMat> transitions_;          // per relation id
  std::vector<std::vector<EdgeIdx>> relation_edges_;  // stored edges per relation pair, sorted by edge id

  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::string, std::shared_ptr<const PathOperators>> cache_;
};

}  // namespace hinrisk
