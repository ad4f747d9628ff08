#ifndef OIEROBUST_TUPLE_SCORER_HPP
#define OIEROBUST_TUPLE_SCORER_HPP

// All-pair tuple matching (CaRB style).
//
// Every gold x system pair gets a cell with token-level precision and recall.
// Recall averages the best cell recall of each gold row. Precision walks the
// pairs from the best cell F1 to the worst, matches each gold and system tuple
// at most once, and averages the matched cell precisions over all system
// tuples (unmatched ones count as zero).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oierobust/error.hpp"
#include "oierobust/text_metrics.hpp"

namespace oierobust {

struct ExtractionTuple {
  TokenList predicate;
  std::vector<TokenList> args;
  std::optional<TokenList> time;
  std::optional<TokenList> location;
  std::optional<double> confidence;

  // Tokenises every field with tokenize().
  static ExtractionTuple from_text(std::string_view predicate,
                                   const std::vector<std::string>& args,
                                   std::optional<std::string> time = {},
                                   std::optional<std::string> location = {}) {
    ExtractionTuple t;
    t.predicate = tokenize(predicate);
    for (const auto& a : args) t.args.push_back(tokenize(a));
    if (time) t.time = tokenize(*time);
    if (location) t.location = tokenize(*location);
    return t;
  }

  // Matching slots: predicate, arguments, then time and location if present.
  std::vector<TokenList> slots() const {
    std::vector<TokenList> s;
    s.reserve(args.size() + 3);
    s.push_back(predicate);
    s.insert(s.end(), args.begin(), args.end());
    if (time) s.push_back(*time);
    if (location) s.push_back(*location);
    return s;
  }

  friend bool operator==(const ExtractionTuple&,
                         const ExtractionTuple&) = default;
};

inline void validate(const ExtractionTuple& t) {
  if (t.predicate.empty()) throw ValidationError("tuple has empty predicate");
  if (t.args.empty()) throw ValidationError("tuple has no arguments");
}

struct MatchCell {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline double harmonic_mean(double p, double r) {
  return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

class MatchTable {
 public:
  MatchTable(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  MatchCell& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const MatchCell& at(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<MatchCell> cells_;
};

struct SentenceScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;
};

namespace detail {

inline std::size_t multiset_overlap(TokenList a, TokenList b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

inline std::size_t token_count(const std::vector<TokenList>& slots) {
  std::size_t n = 0;
  for (const auto& s : slots) n += s.size();
  return n;
}

// Summing in sorted order keeps the result independent of input order.
inline double ordered_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double total = 0.0;
  for (const double x : xs) total += x;
  return total;
}

}  // namespace detail

inline MatchCell cell_score(const ExtractionTuple& gold,
                            const ExtractionTuple& system) {
  const auto g = gold.slots();
  const auto s = system.slots();
  std::size_t matched = 0;
  for (std::size_t k = 0; k < std::min(g.size(), s.size()); ++k)
    matched += detail::multiset_overlap(g[k], s[k]);
  const std::size_t g_total = detail::token_count(g);
  const std::size_t s_total = detail::token_count(s);
  MatchCell cell;
  if (s_total > 0)
    cell.precision = static_cast<double>(matched) / static_cast<double>(s_total);
  if (g_total > 0)
    cell.recall = static_cast<double>(matched) / static_cast<double>(g_total);
  cell.f1 = harmonic_mean(cell.precision, cell.recall);
  return cell;
}

inline MatchTable match_table(const std::vector<ExtractionTuple>& gold,
                              const std::vector<ExtractionTuple>& system) {
  MatchTable table(gold.size(), system.size());
  for (std::size_t r = 0; r < gold.size(); ++r)
    for (std::size_t c = 0; c < system.size(); ++c)
      table.at(r, c) = cell_score(gold[r], system[c]);
  return table;
}

inline SentenceScore carb_score(const std::vector<ExtractionTuple>& gold,
                                const std::vector<ExtractionTuple>& system) {
  if (gold.empty()) throw ArgumentError("gold extraction list is empty");
  SentenceScore score;
  if (system.empty()) return score;

  const MatchTable table = match_table(gold, system);

  std::vector<double> row_best(table.rows(), 0.0);
  for (std::size_t r = 0; r < table.rows(); ++r)
    for (std::size_t c = 0; c < table.cols(); ++c)
      row_best[r] = std::max(row_best[r], table.at(r, c).recall);
  score.recall = detail::ordered_sum(row_best) / static_cast<double>(gold.size());

  // Ties on F1 are broken by tuple content before position, so reordering
  // the inputs cannot change which (equal-valued) tuples get paired.
  std::vector<std::vector<TokenList>> gold_slots, sys_slots;
  for (const auto& t : gold) gold_slots.push_back(t.slots());
  for (const auto& t : system) sys_slots.push_back(t.slots());

  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t r = 0; r < table.rows(); ++r)
    for (std::size_t c = 0; c < table.cols(); ++c)
      if (table.at(r, c).f1 > 0.0) order.emplace_back(r, c);
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const MatchCell& x = table.at(a.first, a.second);
    const MatchCell& y = table.at(b.first, b.second);
    if (x.f1 != y.f1) return x.f1 > y.f1;
    if (x.precision != y.precision) return x.precision > y.precision;
    if (gold_slots[a.first] != gold_slots[b.first])
      return gold_slots[a.first] < gold_slots[b.first];
    if (sys_slots[a.second] != sys_slots[b.second])
      return sys_slots[a.second] < sys_slots[b.second];
    return a < b;
  });

  std::vector<bool> gold_used(gold.size(), false);
  std::vector<bool> sys_used(system.size(), false);
  std::vector<double> matched;
  for (const auto& [r, c] : order) {
    if (gold_used[r] || sys_used[c]) continue;
    gold_used[r] = true;
    sys_used[c] = true;
    matched.push_back(table.at(r, c).precision);
    score.matched_pairs.emplace_back(r, c);
  }
  score.precision = detail::ordered_sum(matched) / static_cast<double>(system.size());
  score.f1 = harmonic_mean(score.precision, score.recall);
  return score;
}

}  // namespace oierobust

#endif  // OIEROBUST_TUPLE_SCORER_HPP
