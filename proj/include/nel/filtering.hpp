#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "nel/kb.hpp"
#include "nel/text.hpp"

// Candidate filtering: reduce the whole knowledge base to the K entities of
// the expected type whose name and context scores best match the query.

namespace nel {

struct Candidate {
  std::string entity_id;
  double score = 0;  // s_t in [0, 1]
};

// Sorted by score descending, ties by entity id ascending; ids distinct.
using CandidateList = std::vector<Candidate>;

struct FilterResult {
  CandidateList candidates;
  bool unknown_type = false;  // expected type absent from the ontology
};

// Case-folded title -> indices of entities carrying that exact title,
// sorted by entity id. Basis of the exact-name shortcut.
using ExactNameMap = std::unordered_map<std::string, std::vector<std::uint32_t>>;
ExactNameMap build_exact_name_map(const KnowledgeBase& kb);

struct FilterOptions {
  // Restrict scoring to entities that can score above zero (shared context
  // term, shared title bigram, or shared capital letter for acronyms). The
  // result is identical to the full scan; this only skips certain zeros.
  bool prune = false;
};

class Filter {
 public:
  Filter(const KnowledgeBase& kb, const TfidfIndex& index, FilterOptions options = {});

  // Top-K candidates for the query. If the case-folded mention equals the
  // title of exactly one entity of the expected type, that entity is
  // returned alone with score 1. Otherwise every entity of the expected
  // type is scored with s_t = (name_score + context_score) / 2, where the
  // name score is the acronym match for acronym-like mentions and the
  // n-gram Jaccard mean otherwise. K < 1 throws ConfigError; an expected
  // type outside the ontology yields an empty list with a warning flag.
  FilterResult candidates(const Query& query, int k) const;

  const KnowledgeBase& kb() const { return kb_; }
  const TfidfIndex& index() const { return index_; }

 private:
  struct PruneIndex {
    std::unordered_map<std::string, std::vector<std::uint32_t>> title_bigrams;
    std::array<std::vector<std::uint32_t>, 26> capitals;  // 'A'..'Z'
    std::unordered_map<std::string, std::vector<std::uint32_t>> description_terms;
  };

  std::vector<std::uint32_t> prune_candidates(const Query& query, bool acronym) const;

  const KnowledgeBase& kb_;
  const TfidfIndex& index_;
  FilterOptions options_;
  ExactNameMap exact_names_;
  PruneIndex prune_;
};

}  // namespace nel
