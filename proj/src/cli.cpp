#include "nel/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nel/error.hpp"
#include "nel/eval.hpp"
#include "nel/features.hpp"
#include "nel/filtering.hpp"
#include "nel/io.hpp"
#include "nel/kb.hpp"
#include "nel/phi.hpp"
#include "nel/ranker.hpp"
#include "nel/synth.hpp"
#include "nel/text.hpp"

namespace nel::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Args {
  std::string kb, edges, queries, val, phi, model, out, pred, candidates, model_out, report;
  int k = 7;
  std::string method = "sgm";
  std::string kernel = "pyramid";
  int window = 4;
  int pyramid_dim = 4;
  int pyramid_levels = 3;
  std::string aggregate = "mean";
  bool prune = false;
  std::uint64_t seed = 42;
  std::vector<std::uint64_t> seeds;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  int epochs = 500;
  int population = 20;
  int generations = 15;
  int elitism = 2;
  double crossover = 0.7;
  double mutation = -1;
  int entities = 10000;
  int types = 6;
  int bench_queries = 20;
  int scale = 2;
  std::vector<int> ks{1, 5, 7, 10, 20};
};

FeatureConfig feature_config(const Args& args) {
  FeatureConfig config;
  if (args.method == "sgm")
    config.method = FeatureMethod::Sgm;
  else if (args.method == "gowgk")
    config.method = FeatureMethod::GowGk;
  else
    throw ConfigError("unknown method: " + args.method + " (expected sgm or gowgk)");
  if (args.aggregate == "mean")
    config.aggregate = NeighborAggregate::Mean;
  else if (args.aggregate == "max")
    config.aggregate = NeighborAggregate::Max;
  else
    throw ConfigError("unknown aggregate: " + args.aggregate + " (expected mean or max)");
  if (args.kernel == "sp")
    config.kernel.kind = KernelConfig::Kind::ShortestPath;
  else if (args.kernel == "pyramid")
    config.kernel.kind = KernelConfig::Kind::Pyramid;
  else
    throw ConfigError("unknown kernel: " + args.kernel + " (expected sp or pyramid)");
  config.kernel.window_size = args.window;
  config.kernel.pyramid_dim = args.pyramid_dim;
  config.kernel.pyramid_levels = args.pyramid_levels;
  return config;
}

TrainConfig train_config(const Args& args) {
  TrainConfig config;
  config.learning_rate = args.learning_rate;
  config.l2 = args.l2;
  config.epochs = args.epochs;
  config.seed = args.seed;
  return config;
}

GeneticConfig genetic_config(const Args& args) {
  GeneticConfig config;
  config.population = args.population;
  config.generations = args.generations;
  config.elitism = args.elitism;
  config.crossover_rate = args.crossover;
  config.mutation_rate = args.mutation;
  config.seed = args.seed;
  return config;
}

KnowledgeBase load_kb(const Args& args) { return KnowledgeBase::load_entities(args.kb); }

KnowledgeGraph load_graph(const Args& args, const KnowledgeBase& kb) {
  if (args.edges.empty()) return KnowledgeGraph(kb.size());
  return KnowledgeGraph::load_edges(args.edges, kb);
}

TypeMapping load_phi(const Args& args, const KnowledgeBase& kb) {
  if (args.phi.empty()) return TypeMapping::all_ones(kb.ontology());
  TypeMapping phi = TypeMapping::load(args.phi);
  phi.validate_against(kb.ontology());
  return phi;
}

std::string describe(const Args& args) {
  std::ostringstream s;
  s << "method=" << args.method << " k=" << args.k << " seed=" << args.seed;
  if (args.method == "gowgk")
    s << " kernel=" << args.kernel << " window=" << args.window;
  return s.str();
}

void write_report(const Args& args, const EvalReport& report, std::ostream& out) {
  report.print(out);
  if (!args.report.empty()) {
    std::ofstream file(args.report);
    if (!file) throw Error("cannot write " + args.report);
    file << report.to_json() << '\n';
  }
}

int cmd_ingest(const Args& args, std::ostream& out) {
  KnowledgeBase kb = load_kb(args);
  out << "entities:  " << kb.size() << '\n';
  out << "types:     " << kb.ontology().size() << '\n';
  std::size_t empty_descriptions = 0;
  for (const EntityRecord& e : kb.entities())
    if (e.description.empty()) ++empty_descriptions;
  out << "empty descriptions: " << empty_descriptions << '\n';
  std::optional<KnowledgeGraph> graph;
  if (!args.edges.empty()) {
    graph = KnowledgeGraph::load_edges(args.edges, kb);
    out << "edges:     " << graph->edge_count() << '\n';
  }
  if (!args.out.empty()) {
    kb.save_entities(args.out + ".entities.tsv");
    if (graph) graph->save_edges(args.out + ".edges.tsv", kb);
    out << "wrote " << args.out << ".entities.tsv";
    if (graph) out << " and " << args.out << ".edges.tsv";
    out << '\n';
  }
  return 0;
}

int cmd_filter(const Args& args, std::ostream& out, std::ostream& err) {
  KnowledgeBase kb = load_kb(args);
  TfidfIndex index = TfidfIndex::build(kb);
  Filter filter(kb, index, {args.prune});
  std::vector<Query> queries = load_queries(args.queries);
  if (queries.empty()) throw ConfigError("no queries in " + args.queries);

  std::vector<std::pair<std::string, CandidateList>> lists;
  std::vector<std::string> golds;
  bool all_gold = true;
  std::size_t unknown_types = 0;
  auto start = Clock::now();
  for (const Query& q : queries) {
    FilterResult result = filter.candidates(q, args.k);
    if (result.unknown_type) {
      ++unknown_types;
      err << "warning: query " << q.id << " has unknown type " << q.expected_type << '\n';
    }
    lists.emplace_back(q.id, std::move(result.candidates));
    if (q.gold_entity)
      golds.push_back(*q.gold_entity);
    else
      all_gold = false;
  }
  double elapsed = seconds_since(start);

  if (!args.out.empty()) save_candidates(args.out, lists);
  EvalReport report;
  report.query_count = queries.size();
  report.timings.filter_s = elapsed;
  report.config = describe(args);
  if (all_gold) {
    std::vector<CandidateList> bare;
    bare.reserve(lists.size());
    for (auto& [id, list] : lists) bare.push_back(list);
    report.recall_at.emplace_back(args.k, recall_at_k(bare, golds, args.k));
  }
  if (unknown_types > 0) err << unknown_types << " queries had types outside the ontology\n";
  write_report(args, report, out);
  return 0;
}

int cmd_features(const Args& args, std::ostream& out) {
  KnowledgeBase kb = load_kb(args);
  KnowledgeGraph graph = load_graph(args, kb);
  TfidfIndex index = TfidfIndex::build(kb);
  TypeMapping phi = load_phi(args, kb);
  Filter filter(kb, index, {args.prune});
  FeatureExtractor extractor(kb, graph, index, feature_config(args));
  std::vector<Query> queries = load_queries(args.queries);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw Error("cannot write " + args.out);
    sink = &file;
  }
  for (const Query& q : queries) {
    FilterResult filtered = filter.candidates(q, args.k);
    std::vector<UngatedFeatures> features = extractor.ungated_batch(q, filtered.candidates);
    for (std::size_t i = 0; i < filtered.candidates.size(); ++i) {
      FeatureVector x = extractor.gated(features[i], phi);
      *sink << q.id << '\t' << filtered.candidates[i].entity_id << '\t';
      if (q.gold_entity)
        *sink << (filtered.candidates[i].entity_id == *q.gold_entity ? 1 : 0);
      else
        *sink << '-';
      for (double v : x) *sink << '\t' << format_double(v);
      *sink << '\n';
    }
  }
  return 0;
}

int cmd_train(const Args& args, std::ostream& out) {
  if (args.out.empty()) throw ConfigError("train needs --out for the model file");
  KnowledgeBase kb = load_kb(args);
  KnowledgeGraph graph = load_graph(args, kb);
  TfidfIndex index = TfidfIndex::build(kb);
  TypeMapping phi = load_phi(args, kb);
  FeatureConfig config = feature_config(args);
  Filter filter(kb, index, {args.prune});
  FeatureExtractor extractor(kb, graph, index, config);
  std::vector<Query> queries = load_queries(args.queries);

  std::vector<LabeledSample> samples = build_training_set(queries, filter, extractor, phi, args.k);
  std::size_t positives = 0;
  for (const LabeledSample& s : samples) positives += s.label;

  ModelInfo info{config.method, config.aggregate, config.kernel, args.k, phi};
  LinearModel model = train(samples, train_config(args), std::move(info));
  model.save(args.out);
  out << "samples:   " << samples.size() << " (" << positives << " positive)\n";
  out << "weights:   ";
  for (double w : model.weights) out << format_double(w) << ' ';
  out << "bias " << format_double(model.bias) << '\n';
  out << "wrote " << args.out << '\n';
  return 0;
}

double evaluate_p_at_1(const Linker& linker, const std::vector<Query>& queries) {
  std::vector<std::optional<std::string>> predictions;
  std::vector<std::string> golds;
  for (const Query& q : queries) {
    predictions.push_back(linker.link(q).entity_id);
    golds.push_back(q.gold_entity.value());
  }
  return precision_at_1(predictions, golds);
}

int cmd_tune(const Args& args, std::ostream& out) {
  if (args.out.empty()) throw ConfigError("tune needs --out for the type mapping file");
  if (args.val.empty()) throw ConfigError("tune needs --val with validation queries");
  KnowledgeBase kb = load_kb(args);
  KnowledgeGraph graph = load_graph(args, kb);
  TfidfIndex index = TfidfIndex::build(kb);
  FeatureConfig config = feature_config(args);
  std::vector<Query> train_queries = load_queries(args.queries);
  std::vector<Query> val_queries = load_queries(args.val);

  std::vector<std::uint64_t> seeds = args.seeds.empty()
                                         ? std::vector<std::uint64_t>{args.seed}
                                         : args.seeds;
  std::vector<TuneResult> results;
  for (std::uint64_t seed : seeds) {
    GeneticConfig genetic = genetic_config(args);
    genetic.seed = seed;
    TrainConfig training = train_config(args);
    training.seed = seed;
    TuneResult result = tune_phi(train_queries, val_queries, kb, graph, index, args.k, config,
                                 genetic, training);
    out << "seed " << seed << ": validation p@1 " << format_double(result.best_fitness)
        << " (generations:";
    for (double g : result.generation_best) out << ' ' << format_double(g);
    out << ")\n";
    results.push_back(std::move(result));
  }
  if (seeds.size() > 1) {
    double mean = 0;
    for (const TuneResult& r : results) mean += r.best_fitness;
    mean /= static_cast<double>(results.size());
    double var = 0;
    for (const TuneResult& r : results)
      var += (r.best_fitness - mean) * (r.best_fitness - mean);
    var /= static_cast<double>(results.size());
    out << "fitness over seeds: mean " << format_double(mean) << ", std "
        << format_double(std::sqrt(var)) << '\n';
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].best_fitness > results[best].best_fitness) best = i;
  results[best].phi.save(args.out);
  out << "wrote " << args.out << '\n';

  if (!args.model_out.empty()) {
    Filter filter(kb, index, {args.prune});
    FeatureExtractor extractor(kb, graph, index, config);
    std::vector<LabeledSample> samples =
        build_training_set(train_queries, filter, extractor, results[best].phi, args.k);
    ModelInfo info{config.method, config.aggregate, config.kernel, args.k, results[best].phi};
    TrainConfig training = train_config(args);
    training.seed = seeds[best];
    LinearModel model = train(samples, training, std::move(info));
    model.save(args.model_out);
    out << "wrote " << args.model_out << '\n';
  }
  return 0;
}

int cmd_link(const Args& args, std::ostream& out, std::ostream& err) {
  if (args.model.empty()) throw ConfigError("link needs --model");
  KnowledgeBase kb = load_kb(args);
  KnowledgeGraph graph = load_graph(args, kb);
  TfidfIndex index = TfidfIndex::build(kb);
  LinearModel model = LinearModel::load(args.model);
  if (args.k > 0) model.info.k = args.k;
  Linker linker(kb, graph, index, model, {args.prune});
  std::vector<Query> queries = load_queries(args.queries);
  if (queries.empty()) throw ConfigError("no queries in " + args.queries);

  StageTimings timings;
  std::vector<PredictionRow> rows;
  std::vector<std::optional<std::string>> predictions;
  std::vector<std::string> golds;
  bool all_gold = true;
  for (const Query& q : queries) {
    Prediction p = linker.link(q, &timings);
    rows.push_back({q.id, p.entity_id, p.probability});
    predictions.push_back(p.entity_id);
    if (q.gold_entity)
      golds.push_back(*q.gold_entity);
    else
      all_gold = false;
  }
  if (!args.out.empty()) save_predictions(args.out, rows);

  EvalReport report;
  report.query_count = queries.size();
  report.timings = timings;
  std::ostringstream config;
  config << "method=" << (model.info.method == FeatureMethod::Sgm ? "sgm" : "gowgk")
         << " k=" << model.info.k << " model=" << args.model;
  if (model.info.method == FeatureMethod::GowGk)
    config << " kernel="
           << (model.info.kernel.kind == KernelConfig::Kind::ShortestPath ? "sp" : "pyramid")
           << " window=" << model.info.kernel.window_size;
  report.config = config.str();
  if (all_gold) report.p_at_1 = precision_at_1(predictions, golds);
  else if (!golds.empty())
    err << "note: only " << golds.size() << " of " << queries.size()
        << " queries carry gold ids; p@1 omitted\n";
  write_report(args, report, out);
  return 0;
}

int cmd_eval(const Args& args, std::ostream& out) {
  if (args.pred.empty() && args.candidates.empty())
    throw ConfigError("eval needs --pred and/or --candidates");
  std::vector<Query> queries = load_queries(args.queries);
  if (queries.empty()) throw ConfigError("no queries in " + args.queries);
  std::vector<std::string> golds;
  for (const Query& q : queries) {
    if (!q.gold_entity) throw ConfigError("query " + q.id + " lacks a gold id; cannot evaluate");
    golds.push_back(*q.gold_entity);
  }

  EvalReport report;
  report.query_count = queries.size();
  report.config = "eval";

  if (!args.pred.empty()) {
    std::vector<PredictionRow> rows = load_predictions(args.pred);
    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!row_of.emplace(rows[i].query_id, i).second)
        throw ConfigError("duplicate prediction for query " + rows[i].query_id);
    }
    std::vector<std::optional<std::string>> predictions;
    for (const Query& q : queries) {
      auto it = row_of.find(q.id);
      predictions.push_back(it == row_of.end() ? std::nullopt : rows[it->second].entity_id);
    }
    report.p_at_1 = precision_at_1(predictions, golds);
  }

  if (!args.candidates.empty()) {
    auto lists = load_candidates(args.candidates);
    std::unordered_map<std::string, std::size_t> list_of;
    for (std::size_t i = 0; i < lists.size(); ++i) list_of.emplace(lists[i].first, i);
    std::vector<CandidateList> aligned;
    for (const Query& q : queries) {
      auto it = list_of.find(q.id);
      aligned.push_back(it == list_of.end() ? CandidateList{} : lists[it->second].second);
    }
    for (int k : args.ks) report.recall_at.emplace_back(k, recall_at_k(aligned, golds, k));
  }
  write_report(args, report, out);
  return 0;
}

int cmd_bench(const Args& args, std::ostream& out) {
  nlohmann::json bench = nlohmann::json::array();
  for (int step = 0; step < 2; ++step) {
    RandomKbConfig config;
    config.entities = args.entities * (step == 0 ? 1 : args.scale);
    config.types = args.types;
    config.seed = args.seed + static_cast<std::uint64_t>(step);
    SynthDataset data = make_random_dataset(config, args.bench_queries);
    TfidfIndex index = TfidfIndex::build(data.kb);
    Filter filter(data.kb, index, {args.prune});

    auto t0 = Clock::now();
    std::vector<std::pair<Query, CandidateList>> filtered;
    for (const Query& q : data.queries)
      filtered.emplace_back(q, filter.candidates(q, args.k).candidates);
    double filter_s = seconds_since(t0);

    TypeMapping phi = TypeMapping::all_ones(data.kb.ontology());
    FeatureConfig sgm{FeatureMethod::Sgm, NeighborAggregate::Mean, {}};
    FeatureExtractor sgm_extractor(data.kb, data.graph, index, sgm);
    auto t1 = Clock::now();
    for (const auto& [q, candidates] : filtered) sgm_extractor.ungated_batch(q, candidates);
    double sgm_s = seconds_since(t1);

    Args gow_args = args;
    gow_args.method = "gowgk";
    FeatureExtractor gow_extractor(data.kb, data.graph, index, feature_config(gow_args));
    auto t2 = Clock::now();
    for (const auto& [q, candidates] : filtered) gow_extractor.ungated_batch(q, candidates);
    double gow_s = seconds_since(t2);

    out << "entities " << config.entities << ": filter " << filter_s << "s, sgm features "
        << sgm_s << "s, gowgk features " << gow_s << "s\n";
    bench.push_back({{"entities", config.entities},
                     {"filter_s", filter_s},
                     {"sgm_features_s", sgm_s},
                     {"gowgk_features_s", gow_s}});
  }
  double ratio = bench[1]["filter_s"].get<double>() /
                 std::max(1e-9, bench[0]["filter_s"].get<double>());
  out << "filter scaling ratio (x" << args.scale << " entities): " << ratio << '\n';
  if (!args.out.empty()) {
    std::ofstream file(args.out);
    if (!file) throw Error("cannot write " + args.out);
    file << nlohmann::json{{"runs", bench}, {"filter_ratio", ratio}}.dump(1) << '\n';
  }
  return 0;
}

void add_kernel_flags(CLI::App* cmd, Args& args) {
  cmd->add_option("--kernel", args.kernel, "graph kernel: sp or pyramid");
  cmd->add_option("--window", args.window, "graph-of-words window size");
  cmd->add_option("--pyramid-dim", args.pyramid_dim, "pyramid embedding dimensions");
  cmd->add_option("--pyramid-levels", args.pyramid_levels, "pyramid grid levels");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"two-step named entity linking over a typed knowledge graph"};
  app.require_subcommand(1);
  Args a;

  CLI::App* ingest = app.add_subcommand("ingest", "load and validate a knowledge base");
  ingest->add_option("--kb", a.kb, "entities TSV")->required();
  ingest->add_option("--edges", a.edges, "edges file");
  ingest->add_option("--out", a.out, "prefix for re-serialized KB files");

  CLI::App* filter = app.add_subcommand("filter", "produce top-K candidate lists");
  filter->add_option("--kb", a.kb)->required();
  filter->add_option("--queries", a.queries)->required();
  filter->add_option("--k", a.k, "candidate list size");
  filter->add_flag("--prune", a.prune, "skip entities that can only score zero");
  filter->add_option("--out", a.out, "candidates TSV");
  filter->add_option("--report", a.report, "JSON report path");

  CLI::App* features = app.add_subcommand("features", "emit re-ranking feature vectors");
  features->add_option("--kb", a.kb)->required();
  features->add_option("--edges", a.edges)->required();
  features->add_option("--queries", a.queries)->required();
  features->add_option("--k", a.k);
  features->add_option("--method", a.method, "sgm or gowgk");
  features->add_option("--aggregate", a.aggregate, "neighbor aggregation: mean or max");
  features->add_option("--phi", a.phi, "type mapping JSON (default: all ones)");
  features->add_flag("--prune", a.prune);
  features->add_option("--out", a.out, "features TSV (default: stdout)");
  add_kernel_flags(features, a);

  CLI::App* train_cmd = app.add_subcommand("train", "fit the logistic re-ranker");
  train_cmd->add_option("--kb", a.kb)->required();
  train_cmd->add_option("--edges", a.edges)->required();
  train_cmd->add_option("--queries", a.queries)->required();
  train_cmd->add_option("--k", a.k);
  train_cmd->add_option("--method", a.method);
  train_cmd->add_option("--aggregate", a.aggregate);
  train_cmd->add_option("--phi", a.phi);
  train_cmd->add_flag("--prune", a.prune);
  train_cmd->add_option("--seed", a.seed);
  train_cmd->add_option("--lr", a.learning_rate, "learning rate");
  train_cmd->add_option("--l2", a.l2, "L2 penalty");
  train_cmd->add_option("--epochs", a.epochs);
  train_cmd->add_option("--out", a.out, "model JSON")->required();
  add_kernel_flags(train_cmd, a);

  CLI::App* tune = app.add_subcommand("tune", "search for a type mapping genetically");
  tune->add_option("--kb", a.kb)->required();
  tune->add_option("--edges", a.edges)->required();
  tune->add_option("--queries", a.queries, "training queries")->required();
  tune->add_option("--val", a.val, "validation queries")->required();
  tune->add_option("--k", a.k);
  tune->add_option("--method", a.method);
  tune->add_option("--aggregate", a.aggregate);
  tune->add_flag("--prune", a.prune);
  tune->add_option("--seed", a.seed);
  tune->add_option("--seeds", a.seeds, "repeat per seed and report mean/std")->delimiter(',');
  tune->add_option("--population", a.population);
  tune->add_option("--generations", a.generations);
  tune->add_option("--elitism", a.elitism);
  tune->add_option("--crossover", a.crossover);
  tune->add_option("--mutation", a.mutation, "per-gene flip rate (default 1/genome)");
  tune->add_option("--lr", a.learning_rate);
  tune->add_option("--l2", a.l2);
  tune->add_option("--epochs", a.epochs);
  tune->add_option("--out", a.out, "type mapping JSON")->required();
  tune->add_option("--model-out", a.model_out, "also train and save a model with the result");
  add_kernel_flags(tune, a);

  CLI::App* link_cmd = app.add_subcommand("link", "link queries with a trained model");
  link_cmd->add_option("--kb", a.kb)->required();
  link_cmd->add_option("--edges", a.edges)->required();
  link_cmd->add_option("--queries", a.queries)->required();
  link_cmd->add_option("--model", a.model)->required();
  link_cmd->add_option("--k", a.k, "override the model's K")->default_val(0);
  link_cmd->add_flag("--prune", a.prune);
  link_cmd->add_option("--out", a.out, "predictions TSV");
  link_cmd->add_option("--report", a.report, "JSON report path");

  CLI::App* eval = app.add_subcommand("eval", "score predictions and candidate lists");
  eval->add_option("--queries", a.queries, "queries with gold ids")->required();
  eval->add_option("--pred", a.pred, "predictions TSV");
  eval->add_option("--candidates", a.candidates, "candidates TSV");
  eval->add_option("--ks", a.ks, "recall depths")->delimiter(',');
  eval->add_option("--report", a.report, "JSON report path");

  CLI::App* bench = app.add_subcommand("bench", "time pipeline stages on synthetic data");
  bench->add_option("--entities", a.entities);
  bench->add_option("--types", a.types);
  bench->add_option("--queries-count", a.bench_queries);
  bench->add_option("--k", a.k);
  bench->add_option("--scale", a.scale, "entity count multiplier for the second run");
  bench->add_flag("--prune", a.prune);
  bench->add_option("--seed", a.seed);
  bench->add_option("--out", a.out, "JSON results path");
  add_kernel_flags(bench, a);

  std::vector<const char*> argv;
  argv.push_back("nelkit");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (app.got_subcommand(ingest)) return cmd_ingest(a, out);
    if (app.got_subcommand(filter)) return cmd_filter(a, out, err);
    if (app.got_subcommand(features)) return cmd_features(a, out);
    if (app.got_subcommand(train_cmd)) return cmd_train(a, out);
    if (app.got_subcommand(tune)) return cmd_tune(a, out);
    if (app.got_subcommand(link_cmd)) return cmd_link(a, out, err);
    if (app.got_subcommand(eval)) return cmd_eval(a, out);
    if (app.got_subcommand(bench)) return cmd_bench(a, out);
    err << "no subcommand selected\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage;
    int code = app.exit(e, usage, usage);
    (code == 0 ? out : err) << usage.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nel::cli
