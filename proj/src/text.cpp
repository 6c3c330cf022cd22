#include "nel/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "nel/error.hpp"

namespace nel {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return is_lower(c) || is_upper(c); }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }
bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Lowercase, trim, and collapse internal whitespace runs to single spaces.
std::string normalize_for_ngrams(std::string_view s) {
  s = trim(s);
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(to_lower(c));
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_alnum(c)) {
      current.push_back(to_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> index_tokens(std::string_view text) {
  std::vector<std::string> tokens = tokenize(text);
  std::erase_if(tokens, [](const std::string& t) { return t.size() < 2; });
  return tokens;
}

std::set<std::string> char_ngrams(std::string_view s, int n) {
  if (n < 1) throw ConfigError("n-gram size must be >= 1");
  std::set<std::string> grams;
  std::string norm = normalize_for_ngrams(s);
  if (norm.size() < static_cast<std::size_t>(n)) return grams;
  for (std::size_t i = 0; i + n <= norm.size(); ++i) grams.insert(norm.substr(i, n));
  return grams;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

double name_score_jn(std::string_view mention, std::string_view title) {
  double sum = 0;
  for (int n = 2; n <= 4; ++n) sum += jaccard(char_ngrams(mention, n), char_ngrams(title, n));
  return sum / 3.0;
}

bool detect_acronym(std::string_view mention) {
  std::string_view t = trim(mention);
  if (t.empty()) return false;
  for (char c : t)
    if (is_space(c)) return false;  // must be a single token
  std::string letters;
  for (char c : t) {
    if (c == '.') continue;
    if (!is_alpha(c)) return false;
    letters.push_back(c);
  }
  if (letters.size() < 2 || letters.size() > 6) return false;
  bool all_upper = std::all_of(letters.begin(), letters.end(), is_upper);
  if (all_upper) return true;
  bool all_lower = std::all_of(letters.begin(), letters.end(), is_lower);
  if (!all_lower) return false;
  std::size_t vowels = std::count_if(letters.begin(), letters.end(), is_vowel);
  return 2 * vowels < letters.size();  // consonant-heavy short words read as acronyms
}

int longest_common_substring(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  int best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (to_lower(a[i - 1]) == to_lower(b[j - 1])) {
        cur[j] = prev[j - 1] + 1;
        best = std::max(best, cur[j]);
      } else {
        cur[j] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

std::string capital_letters(std::string_view s) {
  std::string caps;
  for (char c : s)
    if (is_upper(c)) caps.push_back(c);
  return caps;
}

double acronym_score(std::string_view mention, std::string_view title) {
  std::string acronym;
  for (char c : trim(mention)) {
    if (c == '.') continue;
    acronym.push_back(static_cast<char>(is_lower(c) ? c - 'a' + 'A' : c));
  }
  std::string caps = capital_letters(title);
  if (acronym.empty() || caps.empty()) return 0.0;
  int lcs = longest_common_substring(acronym, caps);
  return static_cast<double>(lcs) / static_cast<double>(std::max(acronym.size(), caps.size()));
}

double SparseVector::norm() const {
  double sum = 0;
  for (const auto& [dim, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

namespace {

void l2_normalize(SparseVector& v) {
  double n = v.norm();
  if (n == 0) return;
  for (auto& [dim, w] : v.entries) w /= n;
}

}  // namespace

TfidfIndex TfidfIndex::build(const KnowledgeBase& kb) {
  TfidfIndex index;
  index.doc_ids_.reserve(kb.size());
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> counts(kb.size());

  for (std::uint32_t doc = 0; doc < kb.size(); ++doc) {
    const EntityRecord& e = kb.entity(doc);
    index.doc_ids_.push_back(e.id);
    index.doc_index_.emplace(e.id, doc);

    std::unordered_map<std::uint32_t, std::uint32_t> tf;
    for (const std::string& term : index_tokens(e.description)) {
      auto [it, inserted] = index.term_ids_.try_emplace(
          term, static_cast<std::uint32_t>(index.terms_.size()));
      if (inserted) {
        index.terms_.push_back(term);
        index.df_.push_back(0);
      }
      ++tf[it->second];
    }
    auto& doc_counts = counts[doc];
    doc_counts.assign(tf.begin(), tf.end());
    std::sort(doc_counts.begin(), doc_counts.end());
    for (const auto& [dim, count] : doc_counts) ++index.df_[dim];
  }

  index.doc_vectors_.resize(kb.size());
  for (std::uint32_t doc = 0; doc < kb.size(); ++doc) {
    SparseVector& v = index.doc_vectors_[doc];
    v.entries.reserve(counts[doc].size());
    for (const auto& [dim, count] : counts[doc])
      v.entries.emplace_back(dim, static_cast<double>(count) * index.idf(dim));
    l2_normalize(v);
  }
  return index;
}

double TfidfIndex::idf(std::uint32_t dim) const {
  double n = static_cast<double>(document_count());
  return std::log((1.0 + n) / (1.0 + static_cast<double>(df_[dim]))) + 1.0;
}

std::optional<std::uint32_t> TfidfIndex::term_dimension(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

SparseVector TfidfIndex::vectorize(std::string_view text) const {
  std::unordered_map<std::uint32_t, std::uint32_t> tf;
  for (const std::string& term : index_tokens(text)) {
    auto it = term_ids_.find(term);
    if (it != term_ids_.end()) ++tf[it->second];
  }
  SparseVector v;
  v.entries.assign(tf.begin(), tf.end());
  std::sort(v.entries.begin(), v.entries.end());
  for (auto& [dim, w] : v.entries) w *= idf(dim);
  l2_normalize(v);
  return v;
}

double TfidfIndex::score(const SparseVector& text_vec, std::uint32_t entity_index) const {
  double s = dot(text_vec, doc_vectors_[entity_index]);
  return std::clamp(s, 0.0, 1.0);
}

double TfidfIndex::score(std::string_view text, std::string_view entity_id) const {
  auto it = doc_index_.find(std::string(entity_id));
  if (it == doc_index_.end()) throw UnknownIdError(std::string(entity_id));
  return score(vectorize(text), it->second);
}

const SparseVector& TfidfIndex::document_vector(std::uint32_t entity_index) const {
  return doc_vectors_[entity_index];
}

void TfidfIndex::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["terms"] = terms_;
  j["df"] = df_;
  j["doc_ids"] = doc_ids_;
  auto& vectors = j["vectors"] = nlohmann::json::array();
  for (const SparseVector& v : doc_vectors_) {
    nlohmann::json jv = nlohmann::json::array();
    for (const auto& [dim, w] : v.entries) jv.push_back({dim, w});
    vectors.push_back(std::move(jv));
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

TfidfIndex TfidfIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  TfidfIndex index;
  try {
    index.terms_ = j.at("terms").get<std::vector<std::string>>();
    index.df_ = j.at("df").get<std::vector<std::uint32_t>>();
    index.doc_ids_ = j.at("doc_ids").get<std::vector<std::string>>();
    for (const auto& jv : j.at("vectors")) {
      SparseVector v;
      for (const auto& entry : jv)
        v.entries.emplace_back(entry.at(0).get<std::uint32_t>(), entry.at(1).get<double>());
      index.doc_vectors_.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  if (index.df_.size() != index.terms_.size() ||
      index.doc_vectors_.size() != index.doc_ids_.size())
    throw ParseError(path.string(), 0, "inconsistent index sections");
  for (std::uint32_t i = 0; i < index.terms_.size(); ++i) index.term_ids_[index.terms_[i]] = i;
  for (std::uint32_t i = 0; i < index.doc_ids_.size(); ++i) index.doc_index_[index.doc_ids_[i]] = i;
  return index;
}

}  // namespace nel
