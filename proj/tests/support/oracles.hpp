#pragma once

// Independent brute-force references for the traversal, relevance, inference
// and evaluation operations. These deliberately share no traversal or numeric
// code with the library: they work from the raw edge list and elementary
// formulas only, so equality against them is a genuine cross-check.

#include <cstdint>
#include <string>
#include <vector>

#include "hinrisk/hin.hpp"
#include "hinrisk/metapath.hpp"
#include "hinrisk/risk_bayes.hpp"

namespace hinrisk::oracle {

// Path instance rendered as alternating node/edge ids: "v1.e1.v2.e9.v10".
using InstanceKey = std::string;

// Exhaustive typed DFS over the raw edge list (no adjacency index): every
// instance of mp starting at `start`, with the terminal != start rule.
std::vector<InstanceKey> match(const Hin& hin, NodeIdx start, const MetaPath& mp);

// Distinct terminal node ids of the oracle instances, sorted.
std::vector<std::string> targets(const Hin& hin, NodeIdx start, const MetaPath& mp);

// Normalized HeteSim via per-instance probability accumulation: enumerate all
// left-half walks from s (probability = product of uniform step choices),
// all reversed right-half walks from t, meet at the midpoint (node, or edge
// instance for odd-length paths), then cosine of the two accumulated vectors.
double hetesim(const Hin& hin, NodeIdx s, NodeIdx t, const MetaPath& mp);

// Eq.-style direct product posterior (no log space): product of likelihoods
// times prior over the sum for both classes.
double nb_posterior(const NaiveBayesModel& model, const Node& x);

// Pairwise concordance AUC: (wins + ties/2) / (pos*neg).
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Upper-tail chi-square(1) via the regularized incomplete gamma Q(1/2, w/2),
// series + continued fraction evaluation.
double chi_square1_tail(double w);

// Recursive schema enumeration (own stack, no shared code): formatted DSL
// strings of every enterprise-rooted path with 1..max_relations relations and
// no immediate inverse backtracking, sorted.
std::vector<std::string> enumerate_paths(const Schema& schema, TypeId root,
                                         std::size_t max_relations);

}  // namespace hinrisk::oracle
