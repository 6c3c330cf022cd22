#include "nel/phi.hpp"

#include <fstream>

#include <json.hpp>

#include "nel/error.hpp"

namespace nel {

TypeMapping TypeMapping::all_ones(const TypeOntology& ontology) {
  TypeMapping phi;
  phi.labels_ = ontology.labels();
  phi.bits_.assign(phi.size() * phi.size(), 1);
  return phi;
}

TypeMapping TypeMapping::all_zeros(const TypeOntology& ontology) {
  TypeMapping phi;
  phi.labels_ = ontology.labels();
  phi.bits_.assign(phi.size() * phi.size(), 0);
  return phi;
}

TypeMapping TypeMapping::from_matrix(std::vector<std::string> labels,
                                     const std::vector<std::uint8_t>& matrix) {
  std::size_t t = labels.size();
  if (matrix.size() != t * t) throw ConfigError("type mapping matrix has the wrong size");
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      if ((matrix[i * t + j] != 0) != (matrix[j * t + i] != 0))
        throw ConfigError("type mapping must be symmetric (" + labels[i] + ", " + labels[j] + ")");
  TypeMapping phi;
  phi.labels_ = std::move(labels);
  phi.bits_.resize(t * t);
  for (std::size_t i = 0; i < t * t; ++i) phi.bits_[i] = matrix[i] ? 1 : 0;
  return phi;
}

TypeMapping TypeMapping::from_upper(std::vector<std::string> labels,
                                    const std::vector<std::uint8_t>& upper) {
  std::size_t t = labels.size();
  if (upper.size() != upper_size(t))
    throw ConfigError("expected " + std::to_string(upper_size(t)) +
                      " upper-triangle entries, got " + std::to_string(upper.size()));
  TypeMapping phi;
  phi.labels_ = std::move(labels);
  phi.bits_.assign(t * t, 0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j, ++pos) {
      std::uint8_t bit = upper[pos] ? 1 : 0;
      phi.bits_[i * t + j] = bit;
      phi.bits_[j * t + i] = bit;
    }
  return phi;
}

void TypeMapping::set_gate(std::uint32_t t1, std::uint32_t t2, bool open) {
  bits_[t1 * size() + t2] = open ? 1 : 0;
  bits_[t2 * size() + t1] = open ? 1 : 0;
}

std::vector<std::uint8_t> TypeMapping::upper() const {
  std::vector<std::uint8_t> genome;
  genome.reserve(upper_size(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i; j < size(); ++j) genome.push_back(bits_[i * size() + j]);
  return genome;
}

void TypeMapping::validate_against(const TypeOntology& ontology) const {
  if (labels_ != ontology.labels())
    throw ConfigError("type mapping labels do not match the knowledge base ontology");
}

void TypeMapping::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["labels"] = labels_;
  j["upper"] = upper();
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

TypeMapping TypeMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto upper = j.at("upper").get<std::vector<std::uint8_t>>();
    for (std::uint8_t bit : upper)
      if (bit > 1) throw ConfigError("type mapping entries must be 0 or 1");
    return from_upper(std::move(labels), upper);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

}  // namespace nel
