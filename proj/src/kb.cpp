#include "nel/kb.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nel {
namespace {

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

// Strip a trailing carriage return so CRLF files parse like LF files.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void check_field(const std::string& value, const char* name, bool allow_tabs) {
  if (value.find('\n') != std::string::npos ||
      (!allow_tabs && value.find('\t') != std::string::npos))
    throw ConfigError(std::string(name) + " may not contain tabs or newlines: " + value);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// Split off `count` tab-separated fields; the remainder of the line stays in
// the last+1'th position. Returns false if the line has too few tabs.
bool split_tabs(const std::string& line, std::size_t count, std::vector<std::string>& out) {
  out.clear();
  std::size_t start = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) return false;
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  out.push_back(line.substr(start));
  return true;
}

}  // namespace

TypeOntology::TypeOntology(std::vector<std::string> sorted_labels)
    : labels_(std::move(sorted_labels)) {
  for (std::uint32_t i = 0; i < labels_.size(); ++i) positions_.emplace(labels_[i], i);
}

std::optional<std::uint32_t> TypeOntology::position(std::string_view label) const {
  auto it = positions_.find(std::string(label));
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

KnowledgeBase KnowledgeBase::from_records(std::vector<EntityRecord> records) {
  KnowledgeBase kb;
  kb.entities_ = std::move(records);
  kb.index_.reserve(kb.entities_.size());

  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < kb.entities_.size(); ++i) {
    const EntityRecord& e = kb.entities_[i];
    if (e.id.empty()) throw ConfigError("entity record " + std::to_string(i) + " has an empty id");
    if (e.title.empty()) throw ConfigError("entity " + e.id + " has an empty title");
    if (e.fine_type.empty()) throw ConfigError("entity " + e.id + " has an empty type");
    check_field(e.id, "entity id", false);
    check_field(e.title, "title", false);
    check_field(e.fine_type, "type", false);
    check_field(e.description, "description", true);
    if (!kb.index_.emplace(e.id, i).second) throw DuplicateIdError(e.id);
    labels.push_back(e.fine_type);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  kb.ontology_ = TypeOntology(std::move(labels));

  kb.type_pos_.resize(kb.entities_.size());
  kb.by_type_.resize(kb.ontology_.size());
  for (std::uint32_t i = 0; i < kb.entities_.size(); ++i) {
    kb.type_pos_[i] = *kb.ontology_.position(kb.entities_[i].fine_type);
    kb.by_type_[kb.type_pos_[i]].push_back(i);
  }
  for (auto& bucket : kb.by_type_)
    std::sort(bucket.begin(), bucket.end(), [&kb](std::uint32_t a, std::uint32_t b) {
      return kb.entities_[a].id < kb.entities_[b].id;
    });
  return kb;
}

KnowledgeBase KnowledgeBase::load_entities(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<EntityRecord> records;
  std::string line;
  std::vector<std::string> fields;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    chomp(line);
    if (blank(line)) continue;
    if (!split_tabs(line, 3, fields))
      throw ParseError(path.string(), lineno, "expected id, title, type, description");
    if (fields[0].empty()) throw ParseError(path.string(), lineno, "empty entity id");
    if (fields[1].empty()) throw ParseError(path.string(), lineno, "empty title");
    if (fields[2].empty()) throw ParseError(path.string(), lineno, "empty type");
    records.push_back({std::move(fields[0]), std::move(fields[1]), std::move(fields[2]),
                       std::move(fields[3])});
  }
  return from_records(std::move(records));
}

void KnowledgeBase::save_entities(const std::filesystem::path& path) const {
  std::ofstream out = open_output(path);
  for (const EntityRecord& e : entities_)
    out << e.id << '\t' << e.title << '\t' << e.fine_type << '\t' << e.description << '\n';
}

std::optional<std::uint32_t> KnowledgeBase::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t KnowledgeBase::require(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw UnknownIdError(std::string(id));
  return *idx;
}

std::span<const std::uint32_t> KnowledgeBase::entities_of_type(std::uint32_t type_pos) const {
  return by_type_[type_pos];
}

KnowledgeGraph KnowledgeGraph::from_pairs(
    std::size_t node_count, std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs) {
  KnowledgeGraph g(node_count);
  for (const auto& [a, b] : pairs) {
    if (a >= node_count || b >= node_count)
      throw ConfigError("edge endpoint out of range: " + std::to_string(std::max(a, b)));
    if (a == b) continue;
    g.adj_[a].push_back(b);
    g.adj_[b].push_back(a);
  }
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    g.edges_ += nbrs.size();
  }
  g.edges_ /= 2;
  return g;
}

KnowledgeGraph KnowledgeGraph::load_edges(const std::filesystem::path& path,
                                          const KnowledgeBase& kb) {
  std::ifstream in = open_input(path);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    chomp(line);
    if (blank(line)) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra))
      throw ParseError(path.string(), lineno, "expected exactly two entity ids");
    pairs.emplace_back(kb.require(a), kb.require(b));
  }
  return from_pairs(kb.size(), pairs);
}

void KnowledgeGraph::save_edges(const std::filesystem::path& path, const KnowledgeBase& kb) const {
  std::vector<std::pair<std::string, std::string>> lines;
  for (std::uint32_t u = 0; u < adj_.size(); ++u)
    for (std::uint32_t v : adj_[u]) {
      const std::string& a = kb.entity(u).id;
      const std::string& b = kb.entity(v).id;
      if (a < b) lines.emplace_back(a, b);
    }
  std::sort(lines.begin(), lines.end());
  std::ofstream out = open_output(path);
  for (const auto& [a, b] : lines) out << a << ' ' << b << '\n';
}

std::span<const std::uint32_t> KnowledgeGraph::neighbors(std::uint32_t index) const {
  return adj_[index];
}

bool KnowledgeGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<std::string> neighbors_by_type(const KnowledgeGraph& graph, const KnowledgeBase& kb,
                                           std::string_view entity_id,
                                           std::string_view type_label) {
  std::uint32_t index = kb.require(entity_id);
  std::vector<std::string> ids;
  for (std::uint32_t n : graph.neighbors(index))
    if (kb.entity(n).fine_type == type_label) ids.push_back(kb.entity(n).id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<Query> load_queries(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<Query> queries;
  std::string line;
  std::vector<std::string> fields;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    chomp(line);
    if (blank(line)) continue;
    if (!split_tabs(line, 4, fields))
      throw ParseError(path.string(), lineno, "expected id, mention, type, gold, context");
    if (fields[0].empty()) throw ParseError(path.string(), lineno, "empty query id");
    if (fields[1].empty()) throw ParseError(path.string(), lineno, "empty mention");
    Query q;
    q.id = std::move(fields[0]);
    q.mention = std::move(fields[1]);
    q.expected_type = std::move(fields[2]);
    if (!fields[3].empty()) q.gold_entity = std::move(fields[3]);
    q.context = std::move(fields[4]);
    queries.push_back(std::move(q));
  }
  return queries;
}

void save_queries(const std::filesystem::path& path, std::span<const Query> queries) {
  std::ofstream out = open_output(path);
  for (const Query& q : queries) {
    check_field(q.id, "query id", false);
    check_field(q.mention, "mention", false);
    check_field(q.expected_type, "type", false);
    if (q.gold_entity) check_field(*q.gold_entity, "gold id", false);
    check_field(q.context, "context", true);
    out << q.id << '\t' << q.mention << '\t' << q.expected_type << '\t'
        << (q.gold_entity ? *q.gold_entity : "") << '\t' << q.context << '\n';
  }
}

}  // namespace nel
