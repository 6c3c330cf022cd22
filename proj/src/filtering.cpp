#include "nel/filtering.hpp"

#include <algorithm>

#include "nel/error.hpp"

namespace nel {
namespace {

std::string casefold(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

struct Scored {
  std::uint32_t index;
  double score;
};

// score descending, entity id ascending on ties
void sort_candidates(std::vector<Scored>& scored, const KnowledgeBase& kb) {
  std::sort(scored.begin(), scored.end(), [&kb](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return kb.entity(a.index).id < kb.entity(b.index).id;
  });
}

}  // namespace

ExactNameMap build_exact_name_map(const KnowledgeBase& kb) {
  ExactNameMap map;
  for (std::uint32_t i = 0; i < kb.size(); ++i) map[casefold(kb.entity(i).title)].push_back(i);
  for (auto& [title, bucket] : map)
    std::sort(bucket.begin(), bucket.end(), [&kb](std::uint32_t a, std::uint32_t b) {
      return kb.entity(a).id < kb.entity(b).id;
    });
  return map;
}

Filter::Filter(const KnowledgeBase& kb, const TfidfIndex& index, FilterOptions options)
    : kb_(kb), index_(index), options_(options), exact_names_(build_exact_name_map(kb)) {
  if (!options_.prune) return;
  for (std::uint32_t i = 0; i < kb.size(); ++i) {
    const EntityRecord& e = kb.entity(i);
    for (const std::string& gram : char_ngrams(e.title, 2)) prune_.title_bigrams[gram].push_back(i);
    for (char c : capital_letters(e.title)) prune_.capitals[c - 'A'].push_back(i);
    std::vector<std::string> terms = index_tokens(e.description);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (const std::string& term : terms) prune_.description_terms[term].push_back(i);
  }
}

// Entities that can score strictly above zero for this query: a shared
// description term, plus a shared title bigram (non-acronym mentions) or a
// shared capital letter (acronym mentions). Everything else scores exactly 0.
std::vector<std::uint32_t> Filter::prune_candidates(const Query& query, bool acronym) const {
  std::vector<std::uint8_t> seen(kb_.size(), 0);
  std::vector<std::uint32_t> found;
  auto add_all = [&](const std::vector<std::uint32_t>& posting) {
    for (std::uint32_t i : posting)
      if (!seen[i]) {
        seen[i] = 1;
        found.push_back(i);
      }
  };
  for (const std::string& term : index_tokens(query.context)) {
    auto it = prune_.description_terms.find(term);
    if (it != prune_.description_terms.end()) add_all(it->second);
  }
  if (acronym) {
    for (char c : query.mention) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      if (c >= 'A' && c <= 'Z') add_all(prune_.capitals[c - 'A']);
    }
  } else {
    for (const std::string& gram : char_ngrams(query.mention, 2)) {
      auto it = prune_.title_bigrams.find(gram);
      if (it != prune_.title_bigrams.end()) add_all(it->second);
    }
  }
  return found;
}

FilterResult Filter::candidates(const Query& query, int k) const {
  if (k < 1) throw ConfigError("k must be >= 1");
  FilterResult result;
  auto type_pos = kb_.ontology().position(query.expected_type);
  if (!type_pos) {
    result.unknown_type = true;
    return result;
  }

  // Unambiguous exact title match of the right type wins outright.
  if (auto it = exact_names_.find(casefold(query.mention)); it != exact_names_.end()) {
    std::uint32_t match = 0;
    int matches = 0;
    for (std::uint32_t i : it->second)
      if (kb_.type_of(i) == *type_pos) {
        match = i;
        if (++matches > 1) break;
      }
    if (matches == 1) {
      result.candidates.push_back({kb_.entity(match).id, 1.0});
      return result;
    }
  }

  bool acronym = detect_acronym(query.mention);
  std::set<std::string> mention_grams[3];
  if (!acronym)
    for (int n = 2; n <= 4; ++n) mention_grams[n - 2] = char_ngrams(query.mention, n);
  SparseVector context_vec = index_.vectorize(query.context);

  auto name_score = [&](const EntityRecord& e) {
    if (acronym) return acronym_score(query.mention, e.title);
    double sum = 0;
    for (int n = 2; n <= 4; ++n) sum += jaccard(mention_grams[n - 2], char_ngrams(e.title, n));
    return sum / 3.0;
  };

  std::span<const std::uint32_t> bucket = kb_.entities_of_type(*type_pos);
  std::vector<Scored> scored;
  if (options_.prune) {
    for (std::uint32_t i : prune_candidates(query, acronym)) {
      if (kb_.type_of(i) != *type_pos) continue;
      double s_t = 0.5 * (name_score(kb_.entity(i)) + index_.score(context_vec, i));
      scored.push_back({i, s_t});
    }
    sort_candidates(scored, kb_);
    if (scored.size() < static_cast<std::size_t>(k)) {
      // Back-fill with the zero-score entities of the type, id ascending.
      std::vector<std::uint8_t> taken(kb_.size(), 0);
      for (const Scored& s : scored) taken[s.index] = 1;
      for (std::uint32_t i : bucket) {
        if (scored.size() >= static_cast<std::size_t>(k)) break;
        if (!taken[i]) scored.push_back({i, 0.0});
      }
    }
  } else {
    scored.reserve(bucket.size());
    for (std::uint32_t i : bucket) {
      double s_t = 0.5 * (name_score(kb_.entity(i)) + index_.score(context_vec, i));
      scored.push_back({i, s_t});
    }
    sort_candidates(scored, kb_);
  }

  std::size_t keep = std::min<std::size_t>(k, scored.size());
  result.candidates.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i)
    result.candidates.push_back({kb_.entity(scored[i].index).id, scored[i].score});
  return result;
}

}  // namespace nel
