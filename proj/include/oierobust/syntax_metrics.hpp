#ifndef OIEROBUST_SYNTAX_METRICS_HPP
#define OIEROBUST_SYNTAX_METRICS_HPP

// Syntactic distance and similarity between constituency trees.
//
// HWS distance compares the level-order label sequences of two pruned trees.
// Matching labels form diagonal runs in a |q1| x |q2| grid; every accepted
// run of length L adds L * alpha^m to a weighted length l, where m counts the
// runs accepted before it. The distance is 1 - l / min(|q1|, |q2|).
//
// Rows and columns are claimed by the first run that uses them (scanning the
// grid row by row), so a span of one sequence can never be matched against
// repeated copies of itself in the other. Without that guard a repeated span
// is counted once per copy and l can exceed min(|q1|, |q2|).
//
// Acceptance of a finished run:
//   * a run that stops before the grid edge is accepted when its length is at
//     least min_run;
//   * min_run == 2 (strict): of the runs that touch the last row or column,
//     only the one ending in the final cell is closed, with any length;
//   * min_run == 1 (uniform): every run touching the edge is closed.
// Interior closures are ordered by the cell that terminates them; edge
// closures follow, ordered by their end cell.
//
// CTK is the Collins-Duffy convolution kernel with decay lambda, cosine
// normalised into [0, 1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oierobust/error.hpp"
#include "oierobust/tree.hpp"

namespace oierobust {

struct HwsConfig {
  double alpha = 0.5;
  std::size_t height = 3;
  int min_run = 2;
  // Keep word tokens in the level-order sequences.
  bool include_words = true;
};

inline void validate(const HwsConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw ArgumentError("alpha must be in (0, 1]");
  if (cfg.height < 1) throw ArgumentError("height must be >= 1");
  if (cfg.min_run != 1 && cfg.min_run != 2)
    throw ArgumentError("min_run must be 1 or 2");
}

struct HwsRun {
  std::size_t end_row = 0;  // 0-based cell holding the last element
  std::size_t end_col = 0;
  std::size_t length = 0;
  std::size_t exponent = 0;
  double contribution = 0.0;
};

struct HwsResult {
  double distance = 1.0;
  double weighted_length = 0.0;
  std::size_t matched_length = 0;  // sum of accepted run lengths
  std::vector<HwsRun> runs;        // in acceptance order
};

namespace detail {

struct RunAccumulator {
  double alpha;
  HwsResult result;

  void accept(std::size_t length, std::size_t row, std::size_t col) {
    HwsRun run;
    run.end_row = row;
    run.end_col = col;
    run.length = length;
    run.exponent = result.runs.size();
    run.contribution =
        static_cast<double>(length) *
        std::pow(alpha, static_cast<double>(run.exponent));
    result.weighted_length += run.contribution;
    result.matched_length += length;
    result.runs.push_back(run);
  }

  HwsResult finish(std::size_t n, std::size_t m) && {
    result.distance =
        1.0 - result.weighted_length / static_cast<double>(std::min(n, m));
    return std::move(result);
  }
};

inline void check_sequences(const LabelSequence& q1, const LabelSequence& q2) {
  if (q1.empty() || q2.empty())
    throw ArgumentError("HWS distance needs non-empty label sequences");
}

}  // namespace detail

// Full trace of the grid scan. `revised = false` disables the row/column
// guard and reproduces the over-counting variant; it exists for tests.
inline HwsResult hws_trace(const LabelSequence& q1, const LabelSequence& q2,
                           const HwsConfig& cfg, bool revised = true) {
  validate(cfg);
  detail::check_sequences(q1, q2);
  const std::size_t n = q1.size();
  const std::size_t m = q2.size();
  const auto min_run = static_cast<std::uint32_t>(cfg.min_run);

  std::vector<std::uint32_t> A(n * m, 0);
  std::vector<std::uint32_t> I(n, 0);  // run length that claimed row i
  std::vector<std::uint32_t> J(m, 0);  // run length that claimed column j
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return A[i * m + j];
  };

  detail::RunAccumulator acc{cfg.alpha, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint32_t prev = (i > 0 && j > 0) ? at(i - 1, j - 1) : 0;
      if (q1[i] == q2[j] && (!revised || (I[i] == 0 && J[j] == 0))) {
        at(i, j) = prev + 1;
        if (revised) {
          I[i] = at(i, j);
          J[j] = at(i, j);
        }
      }
      if (prev != 0 && at(i, j) == 0 && prev >= min_run)
        acc.accept(prev, i - 1, j - 1);
    }
  }

  if (cfg.min_run == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if ((i + 1 == n || j + 1 == m) && at(i, j) >= 1)
          acc.accept(at(i, j), i, j);
      }
    }
  } else if (at(n - 1, m - 1) >= 1) {
    acc.accept(at(n - 1, m - 1), n - 1, m - 1);
  }
  return std::move(acc).finish(n, m);
}

inline double hws_distance(const LabelSequence& q1, const LabelSequence& q2,
                           const HwsConfig& cfg) {
  return hws_trace(q1, q2, cfg).distance;
}

// The label sequence HWS compares for a tree under `cfg`.
inline LabelSequence hws_sequence(const ConstituencyTree& t,
                                  const HwsConfig& cfg) {
  if (!cfg.include_words)
    return level_order(prune(strip_words(t), cfg.height).root);
  return level_order(prune(t, cfg.height).root);
}

inline double hws_distance(const ConstituencyTree& t1,
                           const ConstituencyTree& t2, const HwsConfig& cfg) {
  validate(cfg);
  return hws_distance(hws_sequence(t1, cfg), hws_sequence(t2, cfg), cfg);
}

// Reference implementation for short sequences. Instead of scanning a grid it
// pairs each row with the first free column holding the same label, rebuilds
// the diagonal runs from those pairs and orders their closing events
// explicitly.
inline constexpr std::size_t kHwsOracleMaxLength = 10;

inline HwsResult hws_oracle_trace(const LabelSequence& q1,
                                  const LabelSequence& q2,
                                  const HwsConfig& cfg, bool revised = true) {
  validate(cfg);
  detail::check_sequences(q1, q2);
  if (q1.size() > kHwsOracleMaxLength || q2.size() > kHwsOracleMaxLength)
    throw ArgumentError("oracle is limited to sequences of length <= 10");
  const std::size_t n = q1.size();
  const std::size_t m = q2.size();

  std::vector<std::vector<bool>> used(n, std::vector<bool>(m, false));
  if (revised) {
    std::vector<bool> col_taken(m, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!col_taken[j] && q1[i] == q2[j]) {
          used[i][j] = true;
          col_taken[j] = true;
          break;
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) used[i][j] = q1[i] == q2[j];
  }

  struct Event {
    std::size_t key;
    std::size_t length, row, col;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!used[i][j] || (i > 0 && j > 0 && used[i - 1][j - 1])) continue;
      std::size_t len = 1;
      while (i + len < n && j + len < m && used[i + len][j + len]) ++len;
      const std::size_t er = i + len - 1;
      const std::size_t ec = j + len - 1;
      const bool interior = er + 1 < n && ec + 1 < m;
      if (interior) {
        if (len >= static_cast<std::size_t>(cfg.min_run))
          events.push_back({(er + 1) * m + (ec + 1), len, er, ec});
      } else if (cfg.min_run == 1 || (er + 1 == n && ec + 1 == m)) {
        events.push_back({n * m + er * m + ec, len, er, ec});
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.key < b.key; });

  detail::RunAccumulator acc{cfg.alpha, {}};
  for (const auto& e : events) acc.accept(e.length, e.row, e.col);
  return std::move(acc).finish(n, m);
}

inline double hws_distance_oracle(const LabelSequence& q1,
                                  const LabelSequence& q2,
                                  const HwsConfig& cfg) {
  return hws_oracle_trace(q1, q2, cfg).distance;
}

struct CtkConfig {
  double lambda = 1.0;
};

inline void validate(const CtkConfig& cfg) {
  if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0))
    throw ArgumentError("lambda must be in (0, 1]");
}

namespace detail {

struct FlatTree {
  std::vector<std::string> production;  // empty for leaves
  std::vector<std::vector<std::size_t>> children;
};

inline void flatten(const ConstituencyTree& t, FlatTree& out) {
  const std::size_t id = out.production.size();
  out.production.emplace_back();
  out.children.emplace_back();
  if (!t.is_leaf()) {
    std::string prod = t.label + " ->";
    for (const auto& c : t.children) {
      prod += ' ';
      prod += c.label;
    }
    out.production[id] = std::move(prod);
  }
  for (const auto& c : t.children) {
    out.children[id].push_back(out.production.size());
    flatten(c, out);
  }
}

inline FlatTree flatten(const ConstituencyTree& t) {
  FlatTree f;
  flatten(t, f);
  return f;
}

}  // namespace detail

// Sum over node pairs of the number of shared fragments rooted at both nodes,
// each fragment weighted lambda^(productions in it).
inline double ctk_kernel(const ConstituencyTree& t1,
                         const ConstituencyTree& t2, const CtkConfig& cfg) {
  validate(cfg);
  const detail::FlatTree a = detail::flatten(t1);
  const detail::FlatTree b = detail::flatten(t2);
  const std::size_t n = a.production.size();
  const std::size_t m = b.production.size();
  std::vector<double> C(n * m, 0.0);
  double total = 0.0;
  // Pre-order ids put children after their parent, so walking backwards
  // fills every child pair before it is needed.
  for (std::size_t x = n; x-- > 0;) {
    if (a.production[x].empty()) continue;
    for (std::size_t y = m; y-- > 0;) {
      if (a.production[x] != b.production[y]) continue;
      double c = cfg.lambda;
      const auto& ca = a.children[x];
      const auto& cb = b.children[y];
      for (std::size_t k = 0; k < ca.size(); ++k)
        c *= 1.0 + C[ca[k] * m + cb[k]];
      C[x * m + y] = c;
      total += c;
    }
  }
  return total;
}

inline double ctk_similarity(const ConstituencyTree& t1,
                             const ConstituencyTree& t2, const CtkConfig& cfg) {
  const double k11 = ctk_kernel(t1, t1, cfg);
  const double k22 = ctk_kernel(t2, t2, cfg);
  if (k11 <= 0.0 || k22 <= 0.0) return 0.0;
  const double s = ctk_kernel(t1, t2, cfg) / std::sqrt(k11 * k22);
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace oierobust

#endif  // OIEROBUST_SYNTAX_METRICS_HPP
