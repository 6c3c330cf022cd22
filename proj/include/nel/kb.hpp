#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nel/error.hpp"

// Knowledge base: entity records keyed by opaque string ids, a fixed type
// ontology derived from the records, and an undirected relation graph over
// entity indices. File formats are line-oriented TSV (see README).

namespace nel {

struct EntityRecord {
  std::string id;           // unique, non-empty
  std::string title;        // surface name, non-empty
  std::string fine_type;    // single type label
  std::string description;  // free text, may be empty
};

// The sorted set of distinct entity type labels. Positions are stable and
// shared by feature layouts, type mappings and model files.
class TypeOntology {
 public:
  TypeOntology() = default;
  explicit TypeOntology(std::vector<std::string> sorted_labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::uint32_t pos) const { return labels_[pos]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::uint32_t> position(std::string_view label) const;

  bool operator==(const TypeOntology& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> positions_;
};

struct Query {
  std::string id;
  std::string mention;        // non-empty surface form
  std::string context;        // surrounding text, may be empty
  std::string expected_type;  // type the linked entity must carry
  std::optional<std::string> gold_entity;  // reference answer when known
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Validates ids (distinct, non-empty) and titles (non-empty), then builds
  // the ontology and per-type buckets. Throws DuplicateIdError / ConfigError.
  static KnowledgeBase from_records(std::vector<EntityRecord> records);

  // TSV: id <TAB> title <TAB> type <TAB> description. The description is the
  // remainder of the line, so it may itself contain tabs. Blank lines skipped.
  static KnowledgeBase load_entities(const std::filesystem::path& path);
  void save_entities(const std::filesystem::path& path) const;

  std::size_t size() const { return entities_.size(); }
  const EntityRecord& entity(std::uint32_t index) const { return entities_[index]; }
  const std::vector<EntityRecord>& entities() const { return entities_; }

  std::optional<std::uint32_t> find(std::string_view id) const;
  std::uint32_t require(std::string_view id) const;  // throws UnknownIdError

  // Ontology position of an entity's type.
  std::uint32_t type_of(std::uint32_t index) const { return type_pos_[index]; }
  const TypeOntology& ontology() const { return ontology_; }

  // Indices of all entities carrying the given type, sorted by entity id.
  std::span<const std::uint32_t> entities_of_type(std::uint32_t type_pos) const;

 private:
  std::vector<EntityRecord> entities_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> type_pos_;  // entity index -> ontology position
  TypeOntology ontology_;
  std::vector<std::vector<std::uint32_t>> by_type_;  // ontology position -> entity indices
};

// Undirected graph over entity indices. Input pairs are symmetrized, self
// loops dropped and duplicates collapsed.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(std::size_t node_count) : adj_(node_count) {}

  static KnowledgeGraph from_pairs(std::size_t node_count,
                                   std::span<const std::pair<std::uint32_t, std::uint32_t>> pairs);

  // Each non-blank line holds two whitespace-separated entity ids. Unknown
  // ids raise UnknownIdError with the offending id.
  static KnowledgeGraph load_edges(const std::filesystem::path& path, const KnowledgeBase& kb);
  void save_edges(const std::filesystem::path& path, const KnowledgeBase& kb) const;

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }  // unordered pairs
  std::span<const std::uint32_t> neighbors(std::uint32_t index) const;
  bool has_edge(std::uint32_t a, std::uint32_t b) const;

 private:
  std::vector<std::vector<std::uint32_t>> adj_;  // sorted, unique, no self loops
  std::size_t edges_ = 0;
};

// Ids of the entity's neighbors that carry the given type, sorted by id.
// Unknown entity_id raises UnknownIdError; a label outside the ontology
// simply has no members and yields an empty list.
std::vector<std::string> neighbors_by_type(const KnowledgeGraph& graph, const KnowledgeBase& kb,
                                           std::string_view entity_id, std::string_view type_label);

// TSV: id <TAB> mention <TAB> type <TAB> gold <TAB> context. The gold column
// may be empty; the context is the remainder of the line.
std::vector<Query> load_queries(const std::filesystem::path& path);
void save_queries(const std::filesystem::path& path, std::span<const Query> queries);

}  // namespace nel
