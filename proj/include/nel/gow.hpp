#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Graph-of-words construction and the two graph kernels used for
// re-ranking: a shortest-path distance-multiset kernel and a pyramid match
// kernel over spectral node embeddings.

namespace nel {

// Directed co-occurrence graph: one node per distinct term, an edge from an
// earlier to a later token whenever they are at most window-1 positions
// apart. Duplicate edges collapse; a term never links to itself.
struct GraphOfWords {
  std::vector<std::string> terms;                          // node -> term
  std::unordered_map<std::string, std::uint32_t> term_ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // directed, sorted, unique

  std::size_t node_count() const { return terms.size(); }
  std::size_t edge_count() const { return edges.size(); }

  // Undirected adjacency view (sorted, unique) used by both kernels.
  std::vector<std::vector<std::uint32_t>> undirected_adjacency() const;
};

// window_size < 2 throws ConfigError. Empty text yields the empty graph.
GraphOfWords build_gow(std::string_view text, int window_size);

struct KernelConfig {
  enum class Kind { ShortestPath, Pyramid };
  Kind kind = Kind::Pyramid;
  int window_size = 4;
  int pyramid_dim = 4;     // embedding dimensions d
  int pyramid_levels = 3;  // grid levels L
};

// Compare the multisets of finite shortest-path distances over unordered
// node pairs of the undirected views: the kernel value is the number of
// equal (d1, d2) pairs across the two multisets. Graphs with fewer than two
// nodes score 0.
double sp_kernel(const GraphOfWords& g1, const GraphOfWords& g2);

// Embed nodes into [0,1]^d with the d leading adjacency eigenvectors (sign
// fixed: first nonzero component positive; each column min-max rescaled;
// constant columns and missing dimensions become 0.5). Then match point
// multisets with an L-level histogram pyramid: value = I(L-1) +
// sum_{l<L-1} (I(l) - I(l+1)) / 2^(L-1-l), where I(l) is the summed
// cell-wise minimum of the two level-l histograms (2^l cells per axis).
double pyramid_kernel(const GraphOfWords& g1, const GraphOfWords& g2, int dim, int levels);

// k(g1,g2) / sqrt(k(g1,g1) k(g2,g2)) for the configured kernel; 0 whenever
// either self-similarity is 0.
double normalized_kernel(const KernelConfig& config, const GraphOfWords& g1,
                         const GraphOfWords& g2);

// Per-graph precomputation so one side of repeated comparisons (the query
// context) is prepared once. Values are identical to the free functions.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const KernelConfig& config);

  struct Prepared {
    // shortest-path kernel: distance value -> multiplicity
    std::unordered_map<std::uint32_t, std::uint64_t> distance_counts;
    // pyramid kernel: per level, cell key -> point count
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> histograms;
    double self_value = 0;
  };

  Prepared prepare(const GraphOfWords& g) const;
  double value(const Prepared& a, const Prepared& b) const;
  double normalized(const Prepared& a, const Prepared& b) const;

  const KernelConfig& config() const { return config_; }

 private:
  KernelConfig config_;
};

}  // namespace nel
