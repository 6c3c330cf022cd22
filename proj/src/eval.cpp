#include "nel/eval.hpp"

#include <json.hpp>

#include "nel/error.hpp"

namespace nel {

double recall_at_k(const std::vector<CandidateList>& lists, const std::vector<std::string>& golds,
                   int k) {
  if (lists.size() != golds.size())
    throw ConfigError("candidate list count (" + std::to_string(lists.size()) +
                      ") does not match gold count (" + std::to_string(golds.size()) + ")");
  if (lists.empty()) throw ConfigError("nothing to evaluate");
  if (k < 1) throw ConfigError("k must be >= 1");
  std::size_t hits = 0;
  for (std::size_t q = 0; q < lists.size(); ++q) {
    std::size_t depth = std::min<std::size_t>(k, lists[q].size());
    for (std::size_t i = 0; i < depth; ++i)
      if (lists[q][i].entity_id == golds[q]) {
        ++hits;
        break;
      }
  }
  return static_cast<double>(hits) / static_cast<double>(lists.size());
}

double precision_at_1(const std::vector<std::optional<std::string>>& predictions,
                      const std::vector<std::string>& golds) {
  if (predictions.size() != golds.size())
    throw ConfigError("prediction count (" + std::to_string(predictions.size()) +
                      ") does not match gold count (" + std::to_string(golds.size()) + ")");
  if (predictions.empty()) throw ConfigError("nothing to evaluate");
  std::size_t hits = 0;
  for (std::size_t q = 0; q < predictions.size(); ++q)
    if (predictions[q] && *predictions[q] == golds[q]) ++hits;  // no prediction counts as wrong
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["queries"] = query_count;
  if (p_at_1)
    j["p_at_1"] = *p_at_1;
  else
    j["p_at_1"] = nullptr;
  nlohmann::json recall = nlohmann::json::object();
  for (const auto& [k, value] : recall_at) recall[std::to_string(k)] = value;
  j["recall_at"] = recall;
  j["timings"] = {{"filter_s", timings.filter_s},
                  {"features_s", timings.features_s},
                  {"inference_s", timings.inference_s}};
  j["config"] = config;
  return j.dump(1);
}

void EvalReport::print(std::ostream& out) const {
  out << "queries:   " << query_count << '\n';
  if (p_at_1) out << "p@1:       " << *p_at_1 << '\n';
  for (const auto& [k, value] : recall_at) out << "recall@" << k << ":  " << value << '\n';
  if (timings.filter_s + timings.features_s + timings.inference_s > 0) {
    out << "stage s:   filter " << timings.filter_s << ", features " << timings.features_s
        << ", inference " << timings.inference_s << '\n';
  }
  if (!config.empty()) out << "config:    " << config << '\n';
}

}  // namespace nel
