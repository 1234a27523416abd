#include "strucbench/alignment.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "strucbench/utf8.hpp"

namespace strucbench {

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

// n! / (n - k)!, saturating just above `cap`.
std::size_t injection_count(std::size_t n, std::size_t k, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= n - i;
    if (count > cap) return cap + 1;
  }
  return count;
}

// Calls visit(mapping) for every injective mapping of {0..k-1} into {0..n-1}.
template <typename Visit>
void for_each_injection(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> mapping(k);
  std::vector<bool> used(n, false);
  // Iterative DFS; position `depth` tries candidates from `next[depth]`.
  std::vector<std::size_t> next(k + 1, 0);
  std::size_t depth = 0;
  if (k == 0) {
    visit(mapping);
    return;
  }
  while (true) {
    if (depth == k) {
      visit(mapping);
      --depth;
      used[mapping[depth]] = false;
      continue;
    }
    std::size_t candidate = next[depth];
    while (candidate < n && used[candidate]) ++candidate;
    if (candidate >= n) {
      next[depth] = 0;
      if (depth == 0) return;
      --depth;
      used[mapping[depth]] = false;
      continue;
    }
    mapping[depth] = candidate;
    used[candidate] = true;
    next[depth] = candidate + 1;
    ++depth;
    next[depth] = 0;
  }
}

double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

class SimilarityTensor {
 public:
  SimilarityTensor(const NormalizedTable& pred, const NormalizedTable& gold)
      : rp_(pred.rows()), cp_(pred.cols()), rg_(gold.rows()), cg_(gold.cols()) {
    std::vector<std::u32string> gold_cells;
    gold_cells.reserve(rg_ * cg_);
    for (const Row& row : gold.cells()) {
      for (const std::string& cell : row) gold_cells.push_back(decode_utf8(cell));
    }
    values_.resize(rp_ * cp_ * rg_ * cg_);
    std::size_t k = 0;
    for (const Row& row : pred.cells()) {
      for (const std::string& cell : row) {
        const std::u32string p = decode_utf8(cell);
        for (const std::u32string& g : gold_cells) values_[k++] = string_similarity(p, g).value();
      }
    }
  }

  double at(std::size_t pr, std::size_t pc, std::size_t gr, std::size_t gc) const {
    return values_[((pr * cp_ + pc) * rg_ + gr) * cg_ + gc];
  }

 private:
  std::size_t rp_, cp_, rg_, cg_;
  std::vector<double> values_;
};

// Optimal assignment between `left_count` and `right_count` items for a
// weight function, as (left, right) pairs over min(left, right) items.
template <typename Weight>
Pairs best_assignment(std::size_t left_count, std::size_t right_count, Weight&& weight) {
  const std::size_t n = std::max(left_count, right_count);
  std::vector<double> cost(n * n, 0.0);
  for (std::size_t l = 0; l < left_count; ++l) {
    for (std::size_t r = 0; r < right_count; ++r) cost[l * n + r] = -weight(l, r);
  }
  const std::vector<std::size_t> assignment = solve_assignment(cost, n);
  Pairs pairs;
  for (std::size_t l = 0; l < left_count; ++l) {
    if (assignment[l] < right_count) pairs.emplace_back(l, assignment[l]);
  }
  return pairs;
}

double matched_value(const SimilarityTensor& sim, const Pairs& rows, const Pairs& cols,
                     std::vector<double>& scratch) {
  scratch.clear();
  for (const auto& [pr, gr] : rows) {
    for (const auto& [pc, gc] : cols) scratch.push_back(sim.at(pr, pc, gr, gc));
  }
  return sorted_sum(scratch);
}

TableMatching exact_matching(const NormalizedTable& pred, const NormalizedTable& gold,
                             bool enumerate_columns) {
  const SimilarityTensor sim(pred, gold);
  const std::size_t rp = pred.rows(), cp = pred.cols(), rg = gold.rows(), cg = gold.cols();

  // The enumerated dimension maps its smaller side into its larger side.
  const std::size_t ep = enumerate_columns ? cp : rp;
  const std::size_t eg = enumerate_columns ? cg : rg;
  const bool pred_small = ep <= eg;
  const std::size_t small = std::min(ep, eg);
  const std::size_t large = std::max(ep, eg);

  TableMatching best;
  best.exact = true;
  double best_value = -1.0;
  std::vector<double> scratch;
  Pairs enumerated;
  for_each_injection(large, small, [&](const std::vector<std::size_t>& mapping) {
    enumerated.clear();
    for (std::size_t i = 0; i < small; ++i) {
      enumerated.emplace_back(pred_small ? i : mapping[i], pred_small ? mapping[i] : i);
    }
    Pairs solved;
    if (enumerate_columns) {
      solved = best_assignment(rp, rg, [&](std::size_t pr, std::size_t gr) {
        double w = 0.0;
        for (const auto& [pc, gc] : enumerated) w += sim.at(pr, pc, gr, gc);
        return w;
      });
    } else {
      solved = best_assignment(cp, cg, [&](std::size_t pc, std::size_t gc) {
        double w = 0.0;
        for (const auto& [pr, gr] : enumerated) w += sim.at(pr, pc, gr, gc);
        return w;
      });
    }
    const Pairs& rows = enumerate_columns ? solved : enumerated;
    const Pairs& cols = enumerate_columns ? enumerated : solved;
    const double value = matched_value(sim, rows, cols, scratch);
    if (value > best_value) {
      best_value = value;
      best.rows = rows;
      best.cols = cols;
    }
  });
  return best;
}

Pairs greedy_by_names(const Row& pred_names, const Row& gold_names) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  candidates.reserve(pred_names.size() * gold_names.size());
  std::vector<std::u32string> gold_decoded;
  for (const std::string& g : gold_names) gold_decoded.push_back(decode_utf8(g));
  for (std::size_t p = 0; p < pred_names.size(); ++p) {
    const std::u32string pd = decode_utf8(pred_names[p]);
    for (std::size_t g = 0; g < gold_names.size(); ++g) {
      candidates.emplace_back(string_similarity(pd, gold_decoded[g]).value(), g, p);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  std::vector<bool> pred_used(pred_names.size(), false);
  std::vector<bool> gold_used(gold_names.size(), false);
  Pairs pairs;
  const std::size_t wanted = std::min(pred_names.size(), gold_names.size());
  for (const auto& [score, g, p] : candidates) {
    if (pairs.size() == wanted) break;
    if (pred_used[p] || gold_used[g]) continue;
    pred_used[p] = gold_used[g] = true;
    pairs.emplace_back(p, g);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return pairs;
}

Pairs positional(std::size_t pred_count, std::size_t gold_count) {
  Pairs pairs;
  for (std::size_t i = 0; i < std::min(pred_count, gold_count); ++i) pairs.emplace_back(i, i);
  return pairs;
}

TableMatching greedy_matching(const NormalizedTable& pred, const NormalizedTable& gold) {
  TableMatching m;
  const bool named_cols = !pred.column_names().empty() && !gold.column_names().empty();
  m.cols = named_cols ? greedy_by_names(pred.column_names(), gold.column_names())
                      : positional(pred.cols(), gold.cols());
  const bool named_rows = !pred.row_names().empty() && !gold.row_names().empty();
  m.rows = named_rows ? greedy_by_names(pred.row_names(), gold.row_names())
                      : positional(pred.rows(), gold.rows());
  return m;
}

}  // namespace

std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
  // Shortest augmenting path (Kuhn-Munkres with potentials), 1-based.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) assignment[p[j] - 1] = j - 1;
  }
  return assignment;
}

TableMatching match_tables(const NormalizedTable& pred, const NormalizedTable& gold) {
  const std::size_t rp = pred.rows(), cp = pred.cols(), rg = gold.rows(), cg = gold.cols();
  if (pred.empty() || gold.empty()) {
    TableMatching m;
    m.exact = true;
    return m;
  }
  const std::size_t by_cols = injection_count(std::max(cp, cg), std::min(cp, cg), kMaxExactInjections);
  const std::size_t by_rows = injection_count(std::max(rp, rg), std::min(rp, rg), kMaxExactInjections);
  const std::size_t tensor = pred.cell_count() * gold.cell_count();
  if (std::min(by_cols, by_rows) <= kMaxExactInjections && tensor <= kMaxExactTensor) {
    return exact_matching(pred, gold, /*enumerate_columns=*/by_cols <= by_rows);
  }
  return greedy_matching(pred, gold);
}

SimilarityScore matched_cell_similarity(const NormalizedTable& pred, const NormalizedTable& gold,
                                        const TableMatching& matching) {
  const std::size_t matched = matching.rows.size() * matching.cols.size();
  const std::size_t union_cells = pred.cell_count() + gold.cell_count() - matched;
  if (union_cells == 0) return SimilarityScore::one();
  std::vector<double> values;
  values.reserve(matched);
  for (const auto& [pr, gr] : matching.rows) {
    for (const auto& [pc, gc] : matching.cols) {
      values.push_back(string_similarity(pred.cells()[pr][pc], gold.cells()[gr][gc]).value());
    }
  }
  return SimilarityScore(sorted_sum(values) / static_cast<double>(union_cells));
}

std::vector<TableSlot> pair_tables(std::span<const LabeledTable> pred,
                                   std::span<const LabeledTable> gold) {
  std::map<std::string, std::vector<std::size_t>> pred_by_label;
  for (std::size_t i = 0; i < pred.size(); ++i) pred_by_label[pred[i].label].push_back(i);
  std::map<std::string, std::size_t> taken;
  std::vector<bool> pred_used(pred.size(), false);

  std::vector<TableSlot> slots;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    TableSlot slot;
    slot.gold = g;
    const auto it = pred_by_label.find(gold[g].label);
    std::size_t& k = taken[gold[g].label];
    if (it != pred_by_label.end() && k < it->second.size()) {
      slot.pred = it->second[k++];
      pred_used[*slot.pred] = true;
    }
    slots.push_back(slot);
  }
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (!pred_used[p]) slots.push_back(TableSlot{p, std::nullopt});
  }
  return slots;
}

}  // namespace strucbench
