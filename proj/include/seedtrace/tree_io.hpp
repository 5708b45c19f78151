#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seedtrace/tree.hpp"

namespace seedtrace {

/// Tree text format: first line `n`, then n-1 lines `u v` with 0-based ids.
/// Blank lines are not allowed. Errors are TreeError with the 1-based line.
Tree read_tree(std::istream& in);
Tree read_tree_file(const std::filesystem::path& path);

void write_tree(std::ostream& out, const Tree& t);
void write_tree_file(const std::filesystem::path& path, const Tree& t);

/// Edge list with arbitrary whitespace-free labels, one `a b` pair per line
/// and no header. Labels are mapped to dense ids in order of first
/// appearance; `labels[id]` recovers the original.
struct LabeledTree {
  Tree tree;
  std::vector<std::string> labels;
};

LabeledTree read_labeled_edges(std::istream& in);

}  // namespace seedtrace
