#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "nel/error.hpp"
#include "nel/features.hpp"
#include "nel/filtering.hpp"
#include "nel/gow.hpp"
#include "nel/kb.hpp"
#include "nel/phi.hpp"
#include "nel/synth.hpp"
#include "nel/text.hpp"

using namespace nel;

namespace {

// Fixture: query type Q, neighbor types A/B/C. b1 and a1 share the query
// context verbatim, b2 is disjoint, C has no neighbors.
struct HandSetup {
  KnowledgeBase kb;
  KnowledgeGraph graph;
  TfidfIndex index;
  Query query;
  Candidate candidate{"cand", 0.42};

  HandSetup() {
    std::vector<EntityRecord> records{
        {"cand", "Cand", "Q", "its own words"},
        {"other", "Other", "Q", "alpha beta gamma"},  // same type: never a feature
        {"a1", "A One", "A", "alpha beta gamma"},
        {"b1", "B One", "B", "alpha beta gamma"},
        {"b2", "B Two", "B", "delta epsilon"},
        {"c_far", "C Far", "C", "zeta eta"},  // keeps type C in the ontology
    };
    kb = KnowledgeBase::from_records(std::move(records));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{
        {*kb.find("cand"), *kb.find("a1")},
        {*kb.find("cand"), *kb.find("b1")},
        {*kb.find("cand"), *kb.find("b2")},
        {*kb.find("cand"), *kb.find("other")},
    };
    graph = KnowledgeGraph::from_pairs(kb.size(), pairs);
    index = TfidfIndex::build(kb);
    query = {"q", "cand", "alpha beta gamma", "Q", std::nullopt};
  }
};

// Naive reference: walk an explicit pair list instead of the graph, group
// neighbor scores per type, aggregate, gate.
FeatureVector oracle_features(const Query& query, const Candidate& candidate,
                              const KnowledgeBase& kb,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                              const TfidfIndex& index, const FeatureConfig& config,
                              const TypeMapping& phi) {
  const std::size_t types = kb.ontology().size();
  FeatureVector x(types, 0.0);
  x[0] = candidate.score;
  std::uint32_t qt = *kb.ontology().position(query.expected_type);
  std::uint32_t cand_index = kb.require(candidate.entity_id);

  std::vector<std::uint32_t> neighbors;
  for (auto [a, b] : pairs) {
    if (a == b) continue;
    if (a == cand_index) neighbors.push_back(b);
    if (b == cand_index) neighbors.push_back(a);
  }
  std::sort(neighbors.begin(), neighbors.end());
  neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());

  GraphOfWords context_gow;
  if (config.method == FeatureMethod::GowGk)
    context_gow = build_gow(query.context, config.kernel.window_size);

  std::vector<std::uint32_t> slots = slot_types(qt, types);
  for (std::size_t slot = 1; slot < types; ++slot) {
    std::uint32_t t = slots[slot - 1];
    if (!phi.gate(qt, t)) continue;
    double sum = 0, best = 0;
    int count = 0;
    for (std::uint32_t n : neighbors) {
      if (kb.type_of(n) != t) continue;
      double s = config.method == FeatureMethod::Sgm
                     ? index.score(query.context, kb.entity(n).id)
                     : normalized_kernel(config.kernel, context_gow,
                                         build_gow(kb.entity(n).description,
                                                   config.kernel.window_size));
      sum += s;
      best = std::max(best, s);
      ++count;
    }
    if (count > 0)
      x[slot] = config.aggregate == NeighborAggregate::Mean ? sum / count : best;
  }
  return x;
}

}  // namespace

TEST_CASE("slot layout removes the query's own type") {
  CHECK(slot_types(3, 4) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(slot_types(0, 4) == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(slot_types(1, 4) == std::vector<std::uint32_t>{0, 2, 3});
  CHECK(slot_types(0, 1).empty());
}

TEST_CASE("hand-checked feature vector") {
  HandSetup s;
  TypeMapping phi = TypeMapping::all_ones(s.kb.ontology());
  // ontology sorted: A B C Q -> query type Q, slots [score, A, B, C]
  FeatureConfig config{FeatureMethod::Sgm, NeighborAggregate::Mean, {}};
  FeatureExtractor extractor(s.kb, s.graph, s.index, config);

  FeatureVector x = extractor.features(s.query, s.candidate, phi);
  REQUIRE(x.size() == 4);
  CHECK(x[0] == 0.42);
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));  // a1 matches the context
  CHECK(x[2] == doctest::Approx(0.5).epsilon(1e-12));  // mean of b1=1, b2=0
  CHECK(x[3] == 0.0);                                  // no C neighbors

  SUBCASE("max aggregation keeps the best neighbor") {
    config.aggregate = NeighborAggregate::Max;
    FeatureExtractor best(s.kb, s.graph, s.index, config);
    FeatureVector m = best.features(s.query, s.candidate, phi);
    CHECK(m[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(x[1]).epsilon(1e-12));
  }

  SUBCASE("closing a gate zeroes exactly that slot") {
    TypeMapping gated = phi;
    gated.set_gate(*s.kb.ontology().position("Q"), *s.kb.ontology().position("B"), false);
    FeatureVector g = extractor.features(s.query, s.candidate, gated);
    CHECK(g[0] == x[0]);
    CHECK(g[1] == x[1]);
    CHECK(g[2] == 0.0);
    CHECK(g[3] == x[3]);
  }

  SUBCASE("all gates closed leaves only the filter score") {
    FeatureVector g = extractor.features(s.query, s.candidate,
                                         TypeMapping::all_zeros(s.kb.ontology()));
    CHECK(g == FeatureVector{0.42, 0.0, 0.0, 0.0});
  }

  SUBCASE("graph-kernel flavor: identical description scores 1") {
    // a1 and b1 share the context text, so their gows equal the context gow
    FeatureConfig gk{FeatureMethod::GowGk, NeighborAggregate::Max, {}};
    FeatureExtractor kernel_extractor(s.kb, s.graph, s.index, gk);
    FeatureVector g = kernel_extractor.features(s.query, s.candidate, phi);
    CHECK(g[0] == 0.42);
    CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-12));  // max picks b1
  }
}

TEST_CASE("ungated vectors re-gate consistently") {
  HandSetup s;
  FeatureExtractor extractor(s.kb, s.graph, s.index);
  UngatedFeatures u = extractor.ungated(s.query, s.candidate);
  CHECK(u.query_type == *s.kb.ontology().position("Q"));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::uint8_t> genome(TypeMapping::upper_size(4));
    for (auto& bit : genome) bit = rng() & 1;
    TypeMapping phi = TypeMapping::from_upper(s.kb.ontology().labels(), genome);
    CHECK(extractor.gated(u, phi) == extractor.features(s.query, s.candidate, phi));
  }
}

TEST_CASE("batch extraction equals one-at-a-time extraction") {
  HandSetup s;
  FeatureExtractor extractor(s.kb, s.graph, s.index);
  std::vector<Candidate> candidates{{"cand", 0.42}, {"other", 0.17}};
  auto batch = extractor.ungated_batch(s.query, candidates);
  REQUIRE(batch.size() == 2);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    CHECK(batch[i].full == extractor.ungated(s.query, candidates[i]).full);
}

TEST_CASE("feature extraction matches the pair-list oracle on random data") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    RandomKbConfig kb_config;
    kb_config.entities = 8 + static_cast<int>(rng() % 18);
    kb_config.types = 2 + static_cast<int>(rng() % 3);
    kb_config.seed = rng();
    SynthDataset data = make_random_dataset(kb_config, 3);

    // independent random edges so the oracle owns the adjacency
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(data.kb.size() - 1));
    for (std::size_t i = 0; i < data.kb.size() * 2; ++i) pairs.emplace_back(node(rng), node(rng));
    KnowledgeGraph graph = KnowledgeGraph::from_pairs(data.kb.size(), pairs);
    TfidfIndex index = TfidfIndex::build(data.kb);

    std::vector<std::uint8_t> genome(TypeMapping::upper_size(data.kb.ontology().size()));
    for (auto& bit : genome) bit = rng() & 1;
    TypeMapping phi = TypeMapping::from_upper(data.kb.ontology().labels(), genome);

    FeatureConfig config;
    config.method = trial % 2 == 0 ? FeatureMethod::Sgm : FeatureMethod::GowGk;
    config.aggregate = trial % 4 < 2 ? NeighborAggregate::Mean : NeighborAggregate::Max;
    config.kernel.kind = trial % 3 == 0 ? KernelConfig::Kind::ShortestPath
                                        : KernelConfig::Kind::Pyramid;
    config.kernel.pyramid_dim = 2;
    config.kernel.pyramid_levels = 2;
    FeatureExtractor extractor(data.kb, graph, index, config);

    Filter filter(data.kb, index);
    for (const Query& q : data.queries) {
      for (const Candidate& c : filter.candidates(q, 4).candidates) {
        FeatureVector got = extractor.features(q, c, phi);
        FeatureVector want = oracle_features(q, c, data.kb, pairs, index, config, phi);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
          CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("opening gates never shrinks the nonzero slot set") {
  HandSetup s;
  FeatureExtractor extractor(s.kb, s.graph, s.index);
  UngatedFeatures u = extractor.ungated(s.query, s.candidate);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> narrow(TypeMapping::upper_size(4)), wide;
    for (auto& bit : narrow) bit = rng() & 1;
    wide = narrow;
    for (auto& bit : wide)
      if (rng() % 3 == 0) bit = 1;
    TypeMapping pn = TypeMapping::from_upper(s.kb.ontology().labels(), narrow);
    TypeMapping pw = TypeMapping::from_upper(s.kb.ontology().labels(), wide);
    auto nonzero = [](const FeatureVector& x) {
      return std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; });
    };
    CHECK(nonzero(extractor.gated(u, pn)) <= nonzero(extractor.gated(u, pw)));
  }
}

TEST_CASE("training set construction") {
  HandSetup s;
  TfidfIndex index = TfidfIndex::build(s.kb);
  Filter filter(s.kb, index);
  FeatureExtractor extractor(s.kb, s.graph, index);
  TypeMapping phi = TypeMapping::all_ones(s.kb.ontology());

  // "candor" is no entity's exact title, so both type-Q entities are scored
  Query gold_in{"g1", "candor", "its own words", "Q", std::string("cand")};
  Query gold_out{"g2", "candor", "its own words", "Q", std::string("a1")};  // a1 is not type Q
  std::vector<Query> queries{gold_in, gold_out};
  auto samples = build_training_set(queries, filter, extractor, phi, 2);
  REQUIRE(samples.size() == 4);  // two type-Q candidates per query

  int positives = 0;
  for (const auto& sample : samples) {
    positives += sample.label;
    if (sample.label == 1) {
      CHECK(sample.query_id == "g1");
      CHECK(sample.entity_id == "cand");
    }
    CHECK(sample.x.size() == 4);
  }
  CHECK(positives == 1);  // g2's gold has the wrong type, so all negatives

  Query no_gold{"g3", "Cand", "", "Q", std::nullopt};
  std::vector<Query> bad{no_gold};
  CHECK_THROWS_AS(build_training_set(bad, filter, extractor, phi, 2), ConfigError);
}

TEST_CASE("extractor validates graph size and query type") {
  HandSetup s;
  KnowledgeGraph wrong(s.kb.size() + 3);
  CHECK_THROWS_AS(FeatureExtractor(s.kb, wrong, s.index), ConfigError);

  FeatureExtractor extractor(s.kb, s.graph, s.index);
  Query bad{"q", "cand", "ctx", "NotAType", std::nullopt};
  CHECK_THROWS_AS(extractor.ungated(bad, s.candidate), ConfigError);
}

TEST_CASE("standalone feature helpers agree with the extractor") {
  HandSetup s;
  TypeMapping phi = TypeMapping::all_ones(s.kb.ontology());
  FeatureConfig sgm_config{FeatureMethod::Sgm, NeighborAggregate::Mean, {}};
  FeatureExtractor extractor(s.kb, s.graph, s.index, sgm_config);
  CHECK(sgm_features(s.query, s.candidate, s.kb, s.graph, s.index, phi) ==
        extractor.features(s.query, s.candidate, phi));

  KernelConfig kernel;
  kernel.pyramid_dim = 2;
  kernel.pyramid_levels = 2;
  FeatureConfig gk_config{FeatureMethod::GowGk, NeighborAggregate::Mean, kernel};
  FeatureExtractor gk(s.kb, s.graph, s.index, gk_config);
  CHECK(gowgk_features(s.query, s.candidate, s.kb, s.graph, s.index, kernel, phi) ==
        gk.features(s.query, s.candidate, phi));
}
