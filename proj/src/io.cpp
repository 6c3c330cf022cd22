#include "nel/io.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "nel/error.hpp"

namespace nel {
namespace {

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

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double parse_double(const std::string& text, const std::filesystem::path& path,
                    std::size_t lineno) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(path.string(), lineno, "not a number: " + text);
  return value;
}

long parse_long(const std::string& text, const std::filesystem::path& path, std::size_t lineno) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(path.string(), lineno, "not an integer: " + text);
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buffer;
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void save_candidates(const std::filesystem::path& path,
                     std::span<const std::pair<std::string, CandidateList>> lists) {
  std::ofstream out = open_output(path);
  for (const auto& [query_id, candidates] : lists)
    for (std::size_t rank = 0; rank < candidates.size(); ++rank)
      out << query_id << '\t' << rank + 1 << '\t' << candidates[rank].entity_id << '\t'
          << format_double(candidates[rank].score) << '\n';
}

std::vector<std::pair<std::string, CandidateList>> load_candidates(
    const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::pair<std::string, CandidateList>> lists;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_line(line);
    if (fields.size() != 4)
      throw ParseError(path.string(), lineno, "expected query id, rank, entity id, score");
    if (lists.empty() || lists.back().first != fields[0]) lists.emplace_back(fields[0], CandidateList{});
    CandidateList& current = lists.back().second;
    long rank = parse_long(fields[1], path, lineno);
    if (rank != static_cast<long>(current.size()) + 1)
      throw ParseError(path.string(), lineno, "rank " + fields[1] + " out of sequence");
    current.push_back({fields[2], parse_double(fields[3], path, lineno)});
  }
  return lists;
}

void save_predictions(const std::filesystem::path& path, std::span<const PredictionRow> rows) {
  std::ofstream out = open_output(path);
  for (const PredictionRow& row : rows)
    out << row.query_id << '\t' << (row.entity_id ? *row.entity_id : "-") << '\t'
        << format_double(row.probability) << '\n';
}

std::vector<PredictionRow> load_predictions(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<PredictionRow> rows;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_line(line);
    if (fields.size() != 3)
      throw ParseError(path.string(), lineno, "expected query id, entity id, probability");
    PredictionRow row;
    row.query_id = fields[0];
    if (fields[1] != "-") row.entity_id = fields[1];
    row.probability = parse_double(fields[2], path, lineno);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nel
