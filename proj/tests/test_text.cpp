#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nel/error.hpp"
#include "nel/kb.hpp"
#include "nel/text.hpp"

using namespace nel;

namespace {

// Independent gram oracle: normalize whitespace by hand, then enumerate
// every contiguous substring. Kept deliberately naive.
std::set<std::string> naive_ngrams(const std::string& s, int n) {
  std::string norm;
  bool in_space = true;  // leading spaces drop
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) norm.push_back(' ');
      in_space = true;
    } else {
      norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      in_space = false;
    }
  }
  while (!norm.empty() && norm.back() == ' ') norm.pop_back();
  std::set<std::string> grams;
  if (static_cast<int>(norm.size()) < n) return grams;
  for (std::size_t i = 0; i + n <= norm.size(); ++i) grams.insert(norm.substr(i, n));
  return grams;
}

double naive_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0;
  std::size_t common = 0;
  for (const std::string& g : a) common += b.count(g);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

// Quadratic LCS oracle: try every starting pair.
int naive_lcs(std::string a, std::string b) {
  auto lower = [](std::string& s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  };
  lower(a);
  lower(b);
  int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      int len = 0;
      while (i + len < a.size() && j + len < b.size() && a[i + len] == b[j + len]) ++len;
      best = std::max(best, len);
    }
  return best;
}

std::string random_text(std::mt19937_64& rng, int max_len) {
  static const std::string alphabet = "abcABC x.\t";
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  int n = len(rng);
  for (int i = 0; i < n; ++i) s.push_back(alphabet[pick(rng)]);
  return s;
}

KnowledgeBase toy_kb() {
  std::vector<EntityRecord> records{
      {"d1", "One", "T", "apple banana apple"},
      {"d2", "Two", "T", "banana cherry"},
      {"d3", "Three", "T", "date"},
      {"d4", "Four", "T", ""},
  };
  return KnowledgeBase::from_records(std::move(records));
}

}  // namespace

TEST_CASE("tokenize splits on non-alphanumerics and lowercases") {
  CHECK(tokenize("Hello, world!A1 b") == std::vector<std::string>{"hello", "world", "a1", "b"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("--- ---") == std::vector<std::string>{});
  // the index variant additionally drops single characters
  CHECK(index_tokens("Hello, world!A1 b") == std::vector<std::string>{"hello", "world", "a1"});
}

TEST_CASE("char_ngrams basics") {
  CHECK(char_ngrams("abc", 2) == std::set<std::string>{"ab", "bc"});
  CHECK(char_ngrams("a", 3).empty());
  CHECK(char_ngrams("AbAb", 2) == std::set<std::string>{"ab", "ba"});
  // whitespace collapses before gram extraction
  CHECK(char_ngrams("a  b", 2) == std::set<std::string>{"a ", " b"});
  CHECK(char_ngrams("  ab  ", 2) == std::set<std::string>{"ab"});
  CHECK_THROWS_AS(char_ngrams("abc", 0), ConfigError);
}

TEST_CASE("char_ngrams matches the naive substring oracle") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s = random_text(rng, 18);
    for (int n = 1; n <= 4; ++n) CHECK(char_ngrams(s, n) == naive_ngrams(s, n));
  }
}

TEST_CASE("jaccard") {
  std::set<std::string> ab{"ab", "bc"}, bc{"bc", "cd"};
  CHECK(jaccard(ab, bc) == doctest::Approx(1.0 / 3.0));
  CHECK(jaccard(ab, ab) == 1.0);
  CHECK(jaccard({}, {}) == 0.0);
  CHECK(jaccard(ab, {}) == 0.0);
  CHECK(jaccard({"x"}, {"y"}) == 0.0);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::string> a = naive_ngrams(random_text(rng, 14), 2);
    std::set<std::string> b = naive_ngrams(random_text(rng, 14), 2);
    double j = jaccard(a, b);
    CHECK(j == doctest::Approx(naive_jaccard(a, b)).epsilon(1e-12));
    CHECK(j == jaccard(b, a));
    CHECK(j >= 0.0);
    CHECK(j <= 1.0);
    CHECK((j == 1.0) == (!a.empty() && a == b));
  }
}

TEST_CASE("name similarity averages the 2,3,4-gram jaccards") {
  CHECK(name_score_jn("same name", "same name") == 1.0);
  CHECK(name_score_jn("ab", "cd") == 0.0);
  CHECK(name_score_jn("", "anything") == 0.0);
  // hand enumeration: J2 = 3/8, J3 = 2/8, J4 = 1/7 -> mean 43/168
  CHECK(name_score_jn("utah", "utah state") == doctest::Approx(43.0 / 168.0).epsilon(1e-12));
  CHECK(name_score_jn("Utah", "UTAH STATE") ==
        doctest::Approx(name_score_jn("utah", "utah state")).epsilon(1e-15));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::string a = random_text(rng, 12), b = random_text(rng, 12);
    double expected = (naive_jaccard(naive_ngrams(a, 2), naive_ngrams(b, 2)) +
                       naive_jaccard(naive_ngrams(a, 3), naive_ngrams(b, 3)) +
                       naive_jaccard(naive_ngrams(a, 4), naive_ngrams(b, 4))) /
                      3.0;
    CHECK(name_score_jn(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(name_score_jn(a, b) == name_score_jn(b, a));
  }
}

TEST_CASE("acronym detection") {
  for (const char* yes : {"gsu", "ccp", "abc", "cdu", "mit", "U.S.A", "USA", "NASA", "AB"})
    CHECK_MESSAGE(detect_acronym(yes), yes);
  for (const char* no : {"utah", "John Kennedy", "", "a", "ab", "abcdefg", "Usa", "r2d2",
                         "AB CD", "  ", "..", "idea"})
    CHECK_MESSAGE(!detect_acronym(no), no);
  // surrounding whitespace is trimmed, inner whitespace disqualifies
  CHECK(detect_acronym("  ccp  "));
  CHECK(!detect_acronym("c cp"));
}

TEST_CASE("longest common substring") {
  CHECK(longest_common_substring("abab", "babc") == 3);
  CHECK(longest_common_substring("same", "same") == 4);
  CHECK(longest_common_substring("xyz", "abc") == 0);
  CHECK(longest_common_substring("", "abc") == 0);
  CHECK(longest_common_substring("ABab", "baBC") == 3);  // case-insensitive

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 300; ++trial) {
    std::string a = random_text(rng, 10), b = random_text(rng, 10);
    int got = longest_common_substring(a, b);
    CHECK(got == naive_lcs(a, b));
    CHECK(got <= static_cast<int>(std::min(a.size(), b.size())));
  }
}

TEST_CASE("capital letters and acronym score") {
  CHECK(capital_letters("Communist Party of China") == "CPC");
  CHECK(capital_letters("lowercase") == "");
  CHECK(acronym_score("ccp", "Communist Party of China") == doctest::Approx(2.0 / 3.0));
  CHECK(acronym_score("abc", "Australian Broadcasting Corporation") == 1.0);
  CHECK(acronym_score("gsu", "lowercase title") == 0.0);
  CHECK(acronym_score("usa", "U.S.A. Inc") == doctest::Approx(3.0 / 4.0));  // capitals USAI
  CHECK(acronym_score("u.s.a", "United States of America") == 1.0);
}

TEST_CASE("sparse vector dot agrees with a map-based oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint32_t> dim(0, 15);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::uint32_t, double> ma, mb;
    for (int i = 0; i < 8; ++i) ma[dim(rng)] = weight(rng);
    for (int i = 0; i < 8; ++i) mb[dim(rng)] = weight(rng);
    SparseVector a, b;
    for (auto& [d, w] : ma) a.entries.emplace_back(d, w);
    for (auto& [d, w] : mb) b.entries.emplace_back(d, w);
    double expected = 0;
    for (auto& [d, w] : ma)
      if (auto it = mb.find(d); it != mb.end()) expected += w * it->second;
    CHECK(dot(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(dot(a, b) == dot(b, a));
    double norm_sq = 0;
    for (auto& [d, w] : ma) norm_sq += w * w;
    CHECK(a.norm() == doctest::Approx(std::sqrt(norm_sq)).epsilon(1e-12));
  }
}

TEST_CASE("tfidf weights follow the stated formulas on a toy corpus") {
  KnowledgeBase kb = toy_kb();
  TfidfIndex index = TfidfIndex::build(kb);
  CHECK(index.document_count() == 4);
  CHECK(index.vocabulary_size() == 4);  // apple banana cherry date

  // idf = ln((1+N)/(1+df)) + 1 with N = 4 documents
  auto idf_of = [&](const std::string& term, int df) {
    auto dim = index.term_dimension(term);
    REQUIRE(dim.has_value());
    CHECK(index.document_frequency(*dim) == static_cast<std::uint32_t>(df));
    double expected = std::log(5.0 / (1.0 + df)) + 1.0;
    CHECK(index.idf(*dim) == doctest::Approx(expected).epsilon(1e-12));
    return *dim;
  };
  std::uint32_t apple = idf_of("apple", 1);
  std::uint32_t banana = idf_of("banana", 2);
  idf_of("cherry", 1);
  idf_of("date", 1);

  // d1 = "apple banana apple": weights (2 idf_a, 1 idf_b), L2-normalized
  double wa = 2.0 * (std::log(5.0 / 2.0) + 1.0);
  double wb = 1.0 * (std::log(5.0 / 3.0) + 1.0);
  double norm = std::sqrt(wa * wa + wb * wb);
  const SparseVector& d1 = index.document_vector(0);
  REQUIRE(d1.entries.size() == 2);
  CHECK(d1.entries[0].first == apple);
  CHECK(d1.entries[0].second == doctest::Approx(wa / norm).epsilon(1e-12));
  CHECK(d1.entries[1].first == banana);
  CHECK(d1.entries[1].second == doctest::Approx(wb / norm).epsilon(1e-12));
  CHECK(d1.norm() == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("scores") {
    CHECK(index.score("apple banana apple", "d1") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(index.score("unseen words only", "d1") == 0.0);
    CHECK(index.score("apple banana apple", "d4") == 0.0);  // empty description
    CHECK(index.score("date", "d3") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(index.score("apple", "missing"), UnknownIdError);

    // cosine is symmetric across the two descriptions
    CHECK(index.score("apple banana apple", "d2") ==
          doctest::Approx(index.score("banana cherry", "d1")).epsilon(1e-12));
    // and case-insensitive
    CHECK(index.score("APPLE Banana APPLE", "d2") ==
          doctest::Approx(index.score("apple banana apple", "d2")).epsilon(1e-15));
  }

  SUBCASE("round trip preserves every weight exactly") {
    std::filesystem::path path = std::filesystem::temp_directory_path() / "nel_tfidf_rt.json";
    index.save(path);
    TfidfIndex back = TfidfIndex::load(path);
    CHECK(back.document_count() == index.document_count());
    CHECK(back.vocabulary_size() == index.vocabulary_size());
    for (std::uint32_t d = 0; d < index.document_count(); ++d) {
      const SparseVector& a = index.document_vector(d);
      const SparseVector& b = back.document_vector(d);
      REQUIRE(a.entries.size() == b.entries.size());
      for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].first == b.entries[i].first);
        CHECK(a.entries[i].second == b.entries[i].second);  // bitwise
      }
    }
    CHECK(back.score("banana cherry", "d2") == index.score("banana cherry", "d2"));
    std::filesystem::remove(path);
  }
}

TEST_CASE("tfidf vectorize drops unknown terms and normalizes") {
  KnowledgeBase kb = toy_kb();
  TfidfIndex index = TfidfIndex::build(kb);
  SparseVector v = index.vectorize("apple unseen banana");
  CHECK(v.entries.size() == 2);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(index.vectorize("nothing known here").empty());
  // single-character tokens never enter the vocabulary
  CHECK(index.vectorize("a b c").empty());
}
