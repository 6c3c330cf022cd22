#pragma once

#include <cstdint>
#include <vector>

#include "nel/kb.hpp"

// Synthetic datasets: a generic randomized knowledge base for benchmarks
// and property tests, and a planted-noise linking task where one neighbor
// type carries a spurious signal that holds on the training queries but
// flips on the validation queries, so only a type mapping that closes that
// gate can link every query correctly.

namespace nel {

struct RandomKbConfig {
  int entities = 100;
  int types = 4;
  int vocabulary = 400;       // size of the word pool
  int description_words = 25;
  int title_words = 2;
  int edges_per_entity = 3;
  std::uint64_t seed = 42;
};

struct SynthDataset {
  KnowledgeBase kb;
  KnowledgeGraph graph;
  std::vector<Query> queries;
};

// Random entities with titles/descriptions drawn from a word pool, random
// edges, and queries whose mention and context are noisy versions of a
// chosen gold entity's title and description.
SynthDataset make_random_dataset(const RandomKbConfig& config, int query_count);

struct PlantedConfig {
  int queries = 100;          // total; the first train_queries form the training split
  int train_queries = 60;
  int filler_entities = 400;  // pad the KB up to the desired size
  std::uint64_t seed = 42;
};

struct PlantedDataset {
  KnowledgeBase kb;
  KnowledgeGraph graph;
  std::vector<Query> train;
  std::vector<Query> val;

  std::vector<Query> all() const;
};

// Four types: Topic (queried), Signal, Noise, Pad. Every query has a gold
// and a decoy entity that tie exactly at the filter (same title, same
// description), so the link decision rests on the neighbor slots. Signal
// neighbors always side with the gold; Noise neighbors side with the gold
// on training queries but with the decoy on validation queries. The decoy
// id sorts before the gold id, so a ranker that cannot tell them apart
// loses the tie-break.
PlantedDataset make_planted_dataset(const PlantedConfig& config);

}  // namespace nel
