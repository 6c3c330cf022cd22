#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nel/kb.hpp"

namespace nel {

// Symmetric boolean matrix over the type ontology. A set bit at (t1, t2)
// means neighbors of type t2 may contribute to features of a query of type
// t1. Serialized as the label list plus the upper triangle (diagonal
// included) in row-major order; the loader restores symmetry.
class TypeMapping {
 public:
  TypeMapping() = default;

  static TypeMapping all_ones(const TypeOntology& ontology);
  static TypeMapping all_zeros(const TypeOntology& ontology);

  // Full matrix must be symmetric; throws ConfigError otherwise.
  static TypeMapping from_matrix(std::vector<std::string> labels,
                                 const std::vector<std::uint8_t>& matrix);

  // Upper triangle with diagonal, row-major: (0,0),(0,1)..(0,T-1),(1,1),...
  static TypeMapping from_upper(std::vector<std::string> labels,
                                const std::vector<std::uint8_t>& upper);

  bool gate(std::uint32_t t1, std::uint32_t t2) const { return bits_[t1 * size() + t2] != 0; }
  void set_gate(std::uint32_t t1, std::uint32_t t2, bool open);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<std::uint8_t> upper() const;  // genome view, diagonal included
  static std::size_t upper_size(std::size_t type_count) {
    return type_count * (type_count + 1) / 2;
  }

  // Throws ConfigError when the labels disagree with the ontology.
  void validate_against(const TypeOntology& ontology) const;

  void save(const std::filesystem::path& path) const;
  static TypeMapping load(const std::filesystem::path& path);

  bool operator==(const TypeMapping& other) const {
    return labels_ == other.labels_ && bits_ == other.bits_;
  }

 private:
  std::vector<std::string> labels_;   // ontology order
  std::vector<std::uint8_t> bits_;    // row-major |T|², kept symmetric
};

}  // namespace nel
