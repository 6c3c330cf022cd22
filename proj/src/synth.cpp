#include "nel/synth.hpp"

#include <algorithm>
#include <random>

#include "nel/error.hpp"
#include "nel/text.hpp"

namespace nel {
namespace {

std::string pad_number(int value, int width) {
  std::string digits = std::to_string(value);
  return std::string(width > static_cast<int>(digits.size()) ? width - digits.size() : 0, '0') +
         digits;
}

std::string random_word(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> length(3, 7);
  std::uniform_int_distribution<int> letter(0, 25);
  std::string word;
  int n = length(rng);
  for (int i = 0; i < n; ++i) word.push_back(static_cast<char>('a' + letter(rng)));
  return word;
}

std::string capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z')
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

}  // namespace

SynthDataset make_random_dataset(const RandomKbConfig& config, int query_count) {
  if (config.entities < 1 || config.types < 1 || config.vocabulary < 1)
    throw ConfigError("synthetic dataset needs at least one entity, type and word");
  std::mt19937_64 rng(config.seed);

  std::vector<std::string> pool(config.vocabulary);
  for (std::string& word : pool) word = random_word(rng);
  std::vector<std::string> type_labels(config.types);
  for (int t = 0; t < config.types; ++t) type_labels[t] = "Kind" + pad_number(t, 2);

  std::uniform_int_distribution<int> pick_word(0, config.vocabulary - 1);
  std::uniform_int_distribution<int> pick_type(0, config.types - 1);
  std::uniform_int_distribution<int> pick_entity(0, config.entities - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<EntityRecord> records(config.entities);
  int id_width = static_cast<int>(std::to_string(config.entities).size());
  for (int i = 0; i < config.entities; ++i) {
    EntityRecord& e = records[i];
    e.id = "e" + pad_number(i, id_width);
    std::uniform_int_distribution<int> title_len(1, std::max(1, config.title_words));
    std::vector<std::string> title;
    for (int w = title_len(rng); w > 0; --w) title.push_back(capitalize(pool[pick_word(rng)]));
    e.title = join(title);
    e.fine_type = type_labels[pick_type(rng)];
    if (coin(rng) >= 0.02) {  // a few entities keep an empty description
      std::vector<std::string> words(config.description_words);
      for (std::string& w : words) w = pool[pick_word(rng)];
      e.description = join(words);
    }
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (int i = 0; i < config.entities; ++i)
    for (int d = 0; d < config.edges_per_entity; ++d)
      pairs.emplace_back(static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(pick_entity(rng)));

  SynthDataset data;
  data.kb = KnowledgeBase::from_records(std::move(records));
  data.graph = KnowledgeGraph::from_pairs(data.kb.size(), pairs);

  for (int q = 0; q < query_count; ++q) {
    std::uint32_t gold = static_cast<std::uint32_t>(pick_entity(rng));
    const EntityRecord& e = data.kb.entity(gold);
    Query query;
    query.id = "q" + pad_number(q, 4);
    std::vector<std::string> title_words;
    for (const std::string& w : tokenize(e.title)) title_words.push_back(w);
    if (coin(rng) < 0.15 && title_words.size() >= 2 && title_words.size() <= 6) {
      // acronym-style mention from the title initials
      std::string acronym;
      for (const std::string& w : title_words)
        acronym.push_back(static_cast<char>(w[0] - 'a' + 'A'));
      query.mention = acronym;
    } else if (coin(rng) < 0.5 && title_words.size() > 1) {
      title_words.pop_back();  // partial name
      for (std::string& w : title_words) w = capitalize(w);
      query.mention = join(title_words);
    } else {
      query.mention = e.title;
    }
    std::vector<std::string> context;
    for (const std::string& w : tokenize(e.description))
      if (coin(rng) < 0.6) context.push_back(w);
    for (int noise = 0; noise < 4; ++noise) context.push_back(pool[pick_word(rng)]);
    query.context = join(context);
    query.expected_type = e.fine_type;
    query.gold_entity = e.id;
    data.queries.push_back(std::move(query));
  }
  return data;
}

std::vector<Query> PlantedDataset::all() const {
  std::vector<Query> queries = train;
  queries.insert(queries.end(), val.begin(), val.end());
  return queries;
}

PlantedDataset make_planted_dataset(const PlantedConfig& config) {
  if (config.queries < 2 || config.train_queries < 1 || config.train_queries >= config.queries)
    throw ConfigError("planted task needs at least one training and one validation query");
  std::mt19937_64 rng(config.seed);

  // Deterministically split query indices into train and validation.
  std::vector<int> order(config.queries);
  for (int i = 0; i < config.queries; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint8_t> in_train(config.queries, 0);
  for (int i = 0; i < config.train_queries; ++i) in_train[order[i]] = 1;

  std::vector<EntityRecord> records;
  std::vector<std::pair<std::string, std::string>> edges;  // by id, resolved later
  int junk_counter = 0;
  auto junk_phrase = [&]() {
    std::vector<std::string> words(5);
    for (std::string& w : words) w = "junk" + pad_number(junk_counter++, 5);
    return join(words);
  };

  PlantedDataset data;
  for (int i = 0; i < config.queries; ++i) {
    std::string tag = pad_number(i, 3);
    std::vector<std::string> topic_words(5);
    for (int w = 0; w < 5; ++w)
      topic_words[w] = "topic" + tag + static_cast<char>('a' + w);
    std::string topic = join(topic_words);
    std::string title = "Widget " + tag;

    // The decoy id sorts before the gold id, so a filter-score tie between
    // the two resolves to the decoy.
    std::string gold_id = "e" + tag + "g";
    std::string decoy_id = "e" + tag + "d";
    records.push_back({gold_id, title, "Topic", topic});
    records.push_back({decoy_id, title, "Topic", topic});

    bool train = in_train[i] != 0;
    records.push_back({gold_id + "s", "Signal " + tag + " g", "Signal", topic});
    records.push_back({decoy_id + "s", "Signal " + tag + " d", "Signal", junk_phrase()});
    records.push_back({gold_id + "n", "Noise " + tag + " g", "Noise",
                       train ? topic : junk_phrase()});
    records.push_back({decoy_id + "n", "Noise " + tag + " d", "Noise",
                       train ? junk_phrase() : topic});
    edges.emplace_back(gold_id, gold_id + "s");
    edges.emplace_back(gold_id, gold_id + "n");
    edges.emplace_back(decoy_id, decoy_id + "s");
    edges.emplace_back(decoy_id, decoy_id + "n");

    Query query;
    query.id = "q" + tag;
    query.mention = title;
    query.context = topic;
    query.expected_type = "Topic";
    query.gold_entity = gold_id;
    (train ? data.train : data.val).push_back(std::move(query));
  }

  for (int f = 0; f < config.filler_entities; ++f) {
    std::string tag = pad_number(f, 4);
    bool topic_type = f % 2 == 0;
    records.push_back({std::string(topic_type ? "ft" : "fp") + tag, "Gadget " + tag,
                       topic_type ? "Topic" : "Pad", junk_phrase()});
  }

  data.kb = KnowledgeBase::from_records(std::move(records));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges.size());
  for (const auto& [a, b] : edges) pairs.emplace_back(data.kb.require(a), data.kb.require(b));
  data.graph = KnowledgeGraph::from_pairs(data.kb.size(), pairs);
  return data;
}

}  // namespace nel
