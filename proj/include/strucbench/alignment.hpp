#ifndef STRUCBENCH_ALIGNMENT_HPP
#define STRUCBENCH_ALIGNMENT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "strucbench/similarity.hpp"
#include "strucbench/table.hpp"

namespace strucbench {

// (pred index, gold index) pairs. Every row list has min(Rp, Rg) entries and
// every column list min(Cp, Cg).
struct TableMatching {
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::vector<std::pair<std::size_t, std::size_t>> cols;
  bool exact = false;  // true when found by exhaustive search
};

// Injections enumerated by the exact search are capped at this count, and
// the pairwise similarity tensor at kMaxExactTensor entries. Larger tables
// use greedy matching.
inline constexpr std::size_t kMaxExactInjections = 5040;
inline constexpr std::size_t kMaxExactTensor = 40000;

// Aligns rows and columns of `pred` to `gold`.
//
// Small tables: maximizes the summed cell similarity over all row and column
// matchings. The side with fewer injections is enumerated and the other is
// solved as an assignment problem.
//
// Large tables: columns are matched greedily by column-name similarity
// (highest first, ties to the lowest gold then pred index), rows likewise by
// row name; either falls back to positional order when a side has no names.
TableMatching match_tables(const NormalizedTable& pred, const NormalizedTable& gold);

// Mean string_similarity over the union of cell positions: matched cells
// contribute their similarity, unmatched cells 0. Matched values are summed in
// ascending order so the result does not depend on argument order.
// Two tables without cells score 1.
SimilarityScore matched_cell_similarity(const NormalizedTable& pred, const NormalizedTable& gold,
                                        const TableMatching& matching);

// Pairs tables with equal labels in source order. Slots follow gold order,
// followed by unpaired predictions.
struct TableSlot {
  std::optional<std::size_t> pred;
  std::optional<std::size_t> gold;
};
std::vector<TableSlot> pair_tables(std::span<const LabeledTable> pred,
                                   std::span<const LabeledTable> gold);

// Minimum-cost perfect assignment on a square cost matrix (row-major, n*n).
// Returns assignment[row] = column.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

}  // namespace strucbench

#endif  // STRUCBENCH_ALIGNMENT_HPP
