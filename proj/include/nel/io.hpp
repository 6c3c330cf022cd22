#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nel/filtering.hpp"

// Shared file formats for pipeline intermediates (TSV, one record per line)
// and deterministic number formatting: doubles are printed with the
// shortest representation that parses back to the same value, so repeated
// runs produce byte-identical artifacts.

namespace nel {

std::string format_double(double value);

// Candidates file: query_id <TAB> rank <TAB> entity_id <TAB> score.
void save_candidates(const std::filesystem::path& path,
                     std::span<const std::pair<std::string, CandidateList>> lists);
std::vector<std::pair<std::string, CandidateList>> load_candidates(
    const std::filesystem::path& path);

// Predictions file: query_id <TAB> entity_id-or-"-" <TAB> probability.
struct PredictionRow {
  std::string query_id;
  std::optional<std::string> entity_id;
  double probability = 0;
};

void save_predictions(const std::filesystem::path& path, std::span<const PredictionRow> rows);
std::vector<PredictionRow> load_predictions(const std::filesystem::path& path);

}  // namespace nel
