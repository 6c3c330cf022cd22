#include "nel/features.hpp"

#include <algorithm>

#include "nel/error.hpp"

namespace nel {

std::vector<std::uint32_t> slot_types(std::uint32_t query_type, std::size_t type_count) {
  std::vector<std::uint32_t> slots;
  slots.reserve(type_count > 0 ? type_count - 1 : 0);
  for (std::uint32_t t = 0; t < type_count; ++t)
    if (t != query_type) slots.push_back(t);
  return slots;
}

// Query-side state prepared once per query: the vectorized context for the
// TF-IDF method, or the prepared context graph for the kernel method.
struct FeatureExtractor::QueryState {
  SparseVector context_vec;
  KernelEvaluator::Prepared context_graph;
};

FeatureExtractor::FeatureExtractor(const KnowledgeBase& kb, const KnowledgeGraph& graph,
                                   const TfidfIndex& index, FeatureConfig config)
    : kb_(kb), graph_(graph), index_(index), config_(config), kernel_(config.kernel) {
  if (graph.node_count() != kb.size())
    throw ConfigError("graph and knowledge base disagree on entity count");
}

FeatureExtractor::QueryState FeatureExtractor::query_state(const Query& query) const {
  QueryState state;
  if (config_.method == FeatureMethod::Sgm) {
    state.context_vec = index_.vectorize(query.context);
  } else {
    state.context_graph = kernel_.prepare(build_gow(query.context, config_.kernel.window_size));
  }
  return state;
}

double FeatureExtractor::neighbor_score(const QueryState& state, std::uint32_t neighbor) const {
  if (config_.method == FeatureMethod::Sgm) return index_.score(state.context_vec, neighbor);
  KernelEvaluator::Prepared prepared =
      kernel_.prepare(build_gow(kb_.entity(neighbor).description, config_.kernel.window_size));
  return kernel_.normalized(state.context_graph, prepared);
}

UngatedFeatures FeatureExtractor::extract(const QueryState& state, const Query& query,
                                          const Candidate& candidate) const {
  std::size_t type_count = kb_.ontology().size();
  auto query_type = kb_.ontology().position(query.expected_type);
  if (!query_type) throw ConfigError("query type not in the ontology: " + query.expected_type);

  UngatedFeatures out;
  out.query_type = *query_type;
  out.full.assign(type_count, 0.0);
  out.full[0] = candidate.score;

  std::uint32_t entity = kb_.require(candidate.entity_id);
  std::vector<double> sum(type_count, 0.0), best(type_count, 0.0);
  std::vector<std::uint32_t> count(type_count, 0);
  for (std::uint32_t neighbor : graph_.neighbors(entity)) {
    std::uint32_t t = kb_.type_of(neighbor);
    if (t == *query_type) continue;  // the query's own type has no slot
    double s = neighbor_score(state, neighbor);
    sum[t] += s;
    best[t] = std::max(best[t], s);
    ++count[t];
  }

  std::vector<std::uint32_t> slots = slot_types(*query_type, type_count);
  for (std::size_t j = 0; j < slots.size(); ++j) {
    std::uint32_t t = slots[j];
    if (count[t] == 0) continue;
    out.full[j + 1] = config_.aggregate == NeighborAggregate::Mean
                          ? sum[t] / static_cast<double>(count[t])
                          : best[t];
  }
  return out;
}

UngatedFeatures FeatureExtractor::ungated(const Query& query, const Candidate& candidate) const {
  return extract(query_state(query), query, candidate);
}

std::vector<UngatedFeatures> FeatureExtractor::ungated_batch(
    const Query& query, std::span<const Candidate> candidates) const {
  QueryState state = query_state(query);
  std::vector<UngatedFeatures> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) out.push_back(extract(state, query, c));
  return out;
}

FeatureVector FeatureExtractor::gated(const UngatedFeatures& features,
                                      const TypeMapping& phi) const {
  phi.validate_against(kb_.ontology());
  FeatureVector x = features.full;
  std::vector<std::uint32_t> slots = slot_types(features.query_type, x.size());
  for (std::size_t j = 0; j < slots.size(); ++j)
    if (!phi.gate(features.query_type, slots[j])) x[j + 1] = 0.0;
  return x;
}

FeatureVector FeatureExtractor::features(const Query& query, const Candidate& candidate,
                                         const TypeMapping& phi) const {
  return gated(ungated(query, candidate), phi);
}

FeatureVector sgm_features(const Query& query, const Candidate& candidate,
                           const KnowledgeBase& kb, const KnowledgeGraph& graph,
                           const TfidfIndex& index, const TypeMapping& phi,
                           NeighborAggregate aggregate) {
  FeatureConfig config;
  config.method = FeatureMethod::Sgm;
  config.aggregate = aggregate;
  return FeatureExtractor(kb, graph, index, config).features(query, candidate, phi);
}

FeatureVector gowgk_features(const Query& query, const Candidate& candidate,
                             const KnowledgeBase& kb, const KnowledgeGraph& graph,
                             const TfidfIndex& index, const KernelConfig& kernel,
                             const TypeMapping& phi, NeighborAggregate aggregate) {
  FeatureConfig config;
  config.method = FeatureMethod::GowGk;
  config.aggregate = aggregate;
  config.kernel = kernel;
  return FeatureExtractor(kb, graph, index, config).features(query, candidate, phi);
}

std::vector<LabeledSample> build_training_set(std::span<const Query> queries, const Filter& filter,
                                              const FeatureExtractor& extractor,
                                              const TypeMapping& phi, int k) {
  std::vector<LabeledSample> samples;
  for (const Query& query : queries) {
    if (!query.gold_entity)
      throw ConfigError("training query " + query.id + " lacks a gold entity id");
    FilterResult filtered = filter.candidates(query, k);
    std::vector<UngatedFeatures> features =
        extractor.ungated_batch(query, filtered.candidates);
    for (std::size_t i = 0; i < filtered.candidates.size(); ++i) {
      LabeledSample s;
      s.x = extractor.gated(features[i], phi);
      s.label = filtered.candidates[i].entity_id == *query.gold_entity ? 1 : 0;
      s.query_id = query.id;
      s.entity_id = filtered.candidates[i].entity_id;
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

}  // namespace nel
