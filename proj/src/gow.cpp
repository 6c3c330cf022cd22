#include "nel/gow.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nel/error.hpp"
#include "nel/text.hpp"

namespace nel {
namespace {

constexpr double kDegenerate = 1e-12;  // spread below this counts as a constant column

void validate(const KernelConfig& config) {
  if (config.window_size < 2) throw ConfigError("graph-of-words window must be >= 2");
  if (config.pyramid_dim < 1) throw ConfigError("pyramid dimension must be >= 1");
  if (config.pyramid_levels < 1) throw ConfigError("pyramid levels must be >= 1");
  if (config.pyramid_dim * (config.pyramid_levels - 1) > 60)
    throw ConfigError("pyramid grid too fine to address: dim * (levels - 1) must be <= 60");
}

// Multiset of finite shortest-path distances over unordered node pairs of
// the undirected view, as value -> multiplicity.
std::unordered_map<std::uint32_t, std::uint64_t> distance_counts(const GraphOfWords& g) {
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  std::size_t n = g.node_count();
  if (n < 2) return counts;
  std::vector<std::vector<std::uint32_t>> adj = g.undirected_adjacency();
  std::vector<std::int64_t> dist(n);
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t start = 0; start < n; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[start] = 0;
    frontier.assign(1, start);
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t u : frontier)
        for (std::uint32_t v : adj[u])
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            next.push_back(v);
          }
      frontier = std::move(next);
    }
    for (std::uint32_t v = start + 1; v < n; ++v)
      if (dist[v] > 0) ++counts[static_cast<std::uint32_t>(dist[v])];
  }
  return counts;
}

// Node embeddings from the d leading adjacency eigenvectors, min-max
// rescaled to [0,1] per column. Missing or constant columns sit at 0.5.
Eigen::MatrixXd embed_nodes(const GraphOfWords& g, int d) {
  std::size_t n = g.node_count();
  Eigen::MatrixXd coords = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), d, 0.5);
  if (n == 0) return coords;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  std::vector<std::vector<std::uint32_t>> adj = g.undirected_adjacency();
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v : adj[u]) a(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  // eigenvalues come back ascending; walk the leading ones
  for (int j = 0; j < d && j < static_cast<int>(n); ++j) {
    Eigen::VectorXd v = solver.eigenvectors().col(static_cast<Eigen::Index>(n) - 1 - j);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) <= kDegenerate) continue;
      if (v[i] < 0) v = -v;  // fix sign: first nonzero component positive
      break;
    }
    double lo = v.minCoeff(), hi = v.maxCoeff();
    if (hi - lo <= kDegenerate * std::max(1.0, std::abs(hi))) continue;  // stays at 0.5
    coords.col(j) = (v.array() - lo) / (hi - lo);
  }
  return coords;
}

std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> build_histograms(
    const GraphOfWords& g, int d, int levels) {
  Eigen::MatrixXd coords = embed_nodes(g, d);
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> histograms(levels);
  for (int l = 0; l < levels; ++l) {
    std::uint64_t cells = 1ull << l;
    auto& hist = histograms[l];
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      std::uint64_t key = 0;
      for (int j = d - 1; j >= 0; --j) {
        auto cell = static_cast<std::uint64_t>(coords(i, j) * static_cast<double>(cells));
        key = key * cells + std::min(cell, cells - 1);  // 1.0 lands in the last cell
      }
      ++hist[key];
    }
  }
  return histograms;
}

double intersect(const std::unordered_map<std::uint64_t, std::uint32_t>& a,
                 const std::unordered_map<std::uint64_t, std::uint32_t>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  double sum = 0;
  for (const auto& [cell, count] : small) {
    auto it = large.find(cell);
    if (it != large.end()) sum += std::min(count, it->second);
  }
  return sum;
}

double pyramid_value(const std::vector<std::unordered_map<std::uint64_t, std::uint32_t>>& a,
                     const std::vector<std::unordered_map<std::uint64_t, std::uint32_t>>& b) {
  int levels = static_cast<int>(a.size());
  std::vector<double> matched(levels);
  for (int l = 0; l < levels; ++l) matched[l] = intersect(a[l], b[l]);
  // new matches at coarser levels are discounted by half per level
  double value = matched[levels - 1];
  for (int l = 0; l < levels - 1; ++l)
    value += (matched[l] - matched[l + 1]) / static_cast<double>(1ull << (levels - 1 - l));
  return value;
}

double sp_value(const std::unordered_map<std::uint32_t, std::uint64_t>& a,
                const std::unordered_map<std::uint32_t, std::uint64_t>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  double sum = 0;
  for (const auto& [d, count] : small) {
    auto it = large.find(d);
    if (it != large.end()) sum += static_cast<double>(count) * static_cast<double>(it->second);
  }
  return sum;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> GraphOfWords::undirected_adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(node_count());
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

GraphOfWords build_gow(std::string_view text, int window_size) {
  if (window_size < 2) throw ConfigError("graph-of-words window must be >= 2");
  GraphOfWords g;
  std::vector<std::uint32_t> sequence;
  for (const std::string& term : tokenize(text)) {
    auto [it, inserted] =
        g.term_ids.try_emplace(term, static_cast<std::uint32_t>(g.terms.size()));
    if (inserted) g.terms.push_back(term);
    sequence.push_back(it->second);
  }
  for (std::size_t i = 0; i < sequence.size(); ++i)
    for (std::size_t j = i + 1; j < sequence.size() && j - i < static_cast<std::size_t>(window_size);
         ++j)
      if (sequence[i] != sequence[j]) g.edges.emplace_back(sequence[i], sequence[j]);
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

double sp_kernel(const GraphOfWords& g1, const GraphOfWords& g2) {
  return sp_value(distance_counts(g1), distance_counts(g2));
}

double pyramid_kernel(const GraphOfWords& g1, const GraphOfWords& g2, int dim, int levels) {
  KernelConfig config;
  config.kind = KernelConfig::Kind::Pyramid;
  config.pyramid_dim = dim;
  config.pyramid_levels = levels;
  validate(config);
  return pyramid_value(build_histograms(g1, dim, levels), build_histograms(g2, dim, levels));
}

double normalized_kernel(const KernelConfig& config, const GraphOfWords& g1,
                         const GraphOfWords& g2) {
  KernelEvaluator eval(config);
  return eval.normalized(eval.prepare(g1), eval.prepare(g2));
}

KernelEvaluator::KernelEvaluator(const KernelConfig& config) : config_(config) {
  validate(config_);
}

KernelEvaluator::Prepared KernelEvaluator::prepare(const GraphOfWords& g) const {
  Prepared p;
  if (config_.kind == KernelConfig::Kind::ShortestPath) {
    p.distance_counts = distance_counts(g);
    p.self_value = sp_value(p.distance_counts, p.distance_counts);
  } else {
    p.histograms = build_histograms(g, config_.pyramid_dim, config_.pyramid_levels);
    p.self_value = pyramid_value(p.histograms, p.histograms);
  }
  return p;
}

double KernelEvaluator::value(const Prepared& a, const Prepared& b) const {
  if (config_.kind == KernelConfig::Kind::ShortestPath)
    return sp_value(a.distance_counts, b.distance_counts);
  return pyramid_value(a.histograms, b.histograms);
}

double KernelEvaluator::normalized(const Prepared& a, const Prepared& b) const {
  if (a.self_value <= 0 || b.self_value <= 0) return 0.0;
  double v = value(a, b) / std::sqrt(a.self_value * b.self_value);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace nel
