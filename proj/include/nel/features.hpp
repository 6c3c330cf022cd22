#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nel/filtering.hpp"
#include "nel/gow.hpp"
#include "nel/kb.hpp"
#include "nel/phi.hpp"
#include "nel/text.hpp"

// Re-ranking features. A candidate is described by its filter score plus one
// slot per other entity type summarizing how well the candidate's graph
// neighbors of that type match the query context — either by TF-IDF cosine
// (selective graph mining) or by a normalized graph kernel between
// graph-of-words representations.

namespace nel {

using FeatureVector = std::vector<double>;

enum class FeatureMethod { Sgm, GowGk };
enum class NeighborAggregate { Mean, Max };

struct FeatureConfig {
  FeatureMethod method = FeatureMethod::Sgm;
  NeighborAggregate aggregate = NeighborAggregate::Mean;
  KernelConfig kernel;  // used when method == GowGk
};

// Slot layout: a vector of length |T|. Slot 0 carries the filter score;
// slots 1..|T|-1 carry the ontology types in their fixed order with the
// query's own type left out. slot_types lists, for each feature slot >= 1,
// the ontology position it represents.
std::vector<std::uint32_t> slot_types(std::uint32_t query_type, std::size_t type_count);

// Per-type aggregates before the type-mapping gates are applied. Keeping
// this intermediate lets hyperparameter search re-gate cached vectors
// instead of re-walking the graph.
struct UngatedFeatures {
  FeatureVector full;          // layout as above, no gating
  std::uint32_t query_type = 0;
};

class FeatureExtractor {
 public:
  FeatureExtractor(const KnowledgeBase& kb, const KnowledgeGraph& graph, const TfidfIndex& index,
                   FeatureConfig config = {});

  UngatedFeatures ungated(const Query& query, const Candidate& candidate) const;
  std::vector<UngatedFeatures> ungated_batch(const Query& query,
                                             std::span<const Candidate> candidates) const;

  // Zero every slot whose type is gated off for the query's type.
  FeatureVector gated(const UngatedFeatures& features, const TypeMapping& phi) const;

  FeatureVector features(const Query& query, const Candidate& candidate,
                         const TypeMapping& phi) const;

  const FeatureConfig& config() const { return config_; }

 private:
  struct QueryState;  // context vector or prepared context graph

  QueryState query_state(const Query& query) const;
  UngatedFeatures extract(const QueryState& state, const Query& query,
                          const Candidate& candidate) const;
  double neighbor_score(const QueryState& state, std::uint32_t neighbor) const;

  const KnowledgeBase& kb_;
  const KnowledgeGraph& graph_;
  const TfidfIndex& index_;
  FeatureConfig config_;
  KernelEvaluator kernel_;
};

// TF-IDF variant of the feature map (filter score + gated per-type mean of
// neighbor description cosines).
FeatureVector sgm_features(const Query& query, const Candidate& candidate,
                           const KnowledgeBase& kb, const KnowledgeGraph& graph,
                           const TfidfIndex& index, const TypeMapping& phi,
                           NeighborAggregate aggregate = NeighborAggregate::Mean);

// Graph-kernel variant: neighbor descriptions are compared to the query
// context as graphs-of-words under the configured normalized kernel.
FeatureVector gowgk_features(const Query& query, const Candidate& candidate,
                             const KnowledgeBase& kb, const KnowledgeGraph& graph,
                             const TfidfIndex& index, const KernelConfig& kernel,
                             const TypeMapping& phi,
                             NeighborAggregate aggregate = NeighborAggregate::Mean);

struct LabeledSample {
  FeatureVector x;
  int label = 0;  // 1 iff the candidate is the query's gold entity
  std::string query_id;
  std::string entity_id;
};

// Filter each query to top-K and emit one labeled sample per candidate.
// Queries whose gold entity misses the top-K still contribute their
// negatives. Every query must carry a gold id (ConfigError otherwise).
std::vector<LabeledSample> build_training_set(std::span<const Query> queries, const Filter& filter,
                                              const FeatureExtractor& extractor,
                                              const TypeMapping& phi, int k);

}  // namespace nel
