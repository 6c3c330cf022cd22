#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nel/filtering.hpp"
#include "nel/ranker.hpp"

namespace nel {

// Fraction of queries whose gold id appears among the first min(k, size)
// candidates. Sizes must agree; k < 1 throws ConfigError.
double recall_at_k(const std::vector<CandidateList>& lists, const std::vector<std::string>& golds,
                   int k);

// Fraction of queries whose prediction equals the gold id; an absent
// prediction counts as wrong.
double precision_at_1(const std::vector<std::optional<std::string>>& predictions,
                      const std::vector<std::string>& golds);

struct EvalReport {
  std::size_t query_count = 0;
  std::optional<double> p_at_1;                       // when golds were available
  std::vector<std::pair<int, double>> recall_at;      // (k, recall)
  StageTimings timings;
  std::string config;  // echo of the run configuration

  std::string to_json() const;
  void print(std::ostream& out) const;
};

}  // namespace nel
