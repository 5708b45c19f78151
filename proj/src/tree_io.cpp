#include "seedtrace/tree_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "seedtrace/errors.hpp"

namespace seedtrace {

namespace {

// Splits on runs of spaces/tabs; a trailing '\r' is tolerated.
std::vector<std::string_view> fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw TreeError(TreeErrorKind::kParse,
                    "expected a non-negative integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

Tree read_tree(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw TreeError(TreeErrorKind::kEmpty, "missing vertex count", 1);
  const auto header = fields(line);
  if (header.size() != 1) throw TreeError(TreeErrorKind::kParse, "expected a single count `n`", 1);
  const std::uint64_t n = parse_uint(header[0], 1);
  if (n == 0) throw TreeError(TreeErrorKind::kEmpty, "vertex count must be at least 1", 1);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = fields(line);
    if (f.empty() && in.peek() == std::char_traits<char>::eof()) break;
    if (f.size() != 2) throw TreeError(TreeErrorKind::kParse, "expected `u v`", lineno);
    const auto u = parse_uint(f[0], lineno);
    const auto v = parse_uint(f[1], lineno);
    if (u >= n || v >= n) {
      throw TreeError(TreeErrorKind::kOutOfRange,
                      "id outside [0, " + std::to_string(n) + ")", lineno);
    }
    if (u == v) throw TreeError(TreeErrorKind::kSelfLoop, "self-loop", lineno);
    if (edges.size() == n - 1) {
      throw TreeError(TreeErrorKind::kCycle,
                      "more than n-1 = " + std::to_string(n - 1) + " edges", lineno);
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (edges.size() != n - 1) {
    throw TreeError(TreeErrorKind::kDisconnected,
                    "expected " + std::to_string(n - 1) + " edges, found " +
                        std::to_string(edges.size()),
                    lineno);
  }
  try {
    return Tree::from_edges(edges, n);
  } catch (const TreeError& e) {
    // Duplicates and cycles are only detectable globally; report the last line.
    throw TreeError(e.kind(), e.what(), lineno);
  }
}

Tree read_tree_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tree file " + path.string());
  return read_tree(in);
}

void write_tree(std::ostream& out, const Tree& t) {
  out << t.size() << '\n';
  for (const auto& [u, v] : t.edges()) out << u << ' ' << v << '\n';
}

void write_tree_file(const std::filesystem::path& path, const Tree& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write tree file " + path.string());
  write_tree(out, t);
}

LabeledTree read_labeled_edges(std::istream& in) {
  LabeledTree result;
  std::unordered_map<std::string, Vertex> ids;
  const auto id_of = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<Vertex>(ids.size()));
    if (inserted) result.labels.emplace_back(label);
    return it->second;
  };
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = fields(line);
    if (f.empty()) continue;
    if (f.size() != 2) throw TreeError(TreeErrorKind::kParse, "expected `a b`", lineno);
    const Vertex a = id_of(f[0]);
    const Vertex b = id_of(f[1]);
    edges.emplace_back(a, b);
  }
  result.tree = Tree::from_edges(edges, std::max<std::size_t>(ids.size(), 1));
  return result;
}

}  // namespace seedtrace
