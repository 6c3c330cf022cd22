#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nel/kb.hpp"

// Text similarity primitives used by candidate filtering and feature
// extraction: character n-gram name similarity, acronym handling, and a
// TF-IDF vector space over entity descriptions. All case handling is ASCII;
// other bytes pass through untouched.

namespace nel {

// Lowercase and split on any non-alphanumeric byte. Keeps single characters.
std::vector<std::string> tokenize(std::string_view text);

// Tokenizer variant for the TF-IDF vocabulary: additionally drops tokens of
// length 1. No stemming, no stopword list.
std::vector<std::string> index_tokens(std::string_view text);

// Distinct character n-grams of the lowercased string with runs of
// whitespace collapsed to a single space and ends trimmed. Strings shorter
// than n yield the empty set.
std::set<std::string> char_ngrams(std::string_view s, int n);

// |A ∩ B| / |A ∪ B|; defined as 0 when both sets are empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Mean of the n-gram Jaccard similarities for n in {2, 3, 4}.
double name_score_jn(std::string_view mention, std::string_view title);

// True iff the trimmed mention looks like an acronym: a single token that,
// after removing periods, is 2..6 alphabetic characters and is either all
// uppercase or all lowercase with vowels in the strict minority ("gsu",
// "ccp"); mixed case and ordinary short words ("utah") do not qualify.
bool detect_acronym(std::string_view mention);

// Length of the longest common contiguous substring, case-insensitive.
int longest_common_substring(std::string_view a, std::string_view b);

// The uppercase characters of s, in order ("Communist Party of China" -> "CPC").
std::string capital_letters(std::string_view s);

// Match the mention (uppercased, periods removed) against the title's
// capital-letter string: longest common substring length divided by the
// longer of the two. 0 when the title has no capitals.
double acronym_score(std::string_view mention, std::string_view title);

// Sparse vector with strictly ascending dimensions.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double norm() const;
};

double dot(const SparseVector& a, const SparseVector& b);

// TF-IDF index over the descriptions of a knowledge base. Raw term counts,
// idf = ln((1 + N) / (1 + df)) + 1, vectors L2-normalized. Entities with an
// empty description get the zero vector. The index is self-contained (it
// keeps the entity ids) so it can be serialized and reloaded on its own.
class TfidfIndex {
 public:
  TfidfIndex() = default;

  static TfidfIndex build(const KnowledgeBase& kb);

  // Vectorize arbitrary text against the stored vocabulary. Unknown terms
  // are dropped; the result is unit length or empty.
  SparseVector vectorize(std::string_view text) const;

  // Cosine similarity between the vectorized text and the entity's stored
  // description vector. In [0, 1]; 0 when either side is empty.
  double score(std::string_view text, std::string_view entity_id) const;
  double score(const SparseVector& text_vec, std::uint32_t entity_index) const;

  const SparseVector& document_vector(std::uint32_t entity_index) const;
  std::size_t document_count() const { return doc_vectors_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  std::optional<std::uint32_t> term_dimension(std::string_view term) const;
  std::uint32_t document_frequency(std::uint32_t dim) const { return df_[dim]; }
  double idf(std::uint32_t dim) const;

  // JSON round trip; weights survive exactly.
  void save(const std::filesystem::path& path) const;
  static TfidfIndex load(const std::filesystem::path& path);

 private:
  std::vector<std::string> terms_;  // dimension -> term
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  std::vector<std::uint32_t> df_;
  std::vector<std::string> doc_ids_;  // entity ids, index-aligned with the KB
  std::unordered_map<std::string, std::uint32_t> doc_index_;
  std::vector<SparseVector> doc_vectors_;
};

}  // namespace nel
