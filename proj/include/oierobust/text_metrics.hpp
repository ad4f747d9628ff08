#ifndef OIEROBUST_TEXT_METRICS_HPP
#define OIEROBUST_TEXT_METRICS_HPP

// Tokenisation, sentence-level BLEU and weighted ROUGE.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oierobust/error.hpp"

namespace oierobust {

using TokenList = std::vector<std::string>;

// Lowercases, splits on whitespace and makes every punctuation character a
// token of its own.
inline TokenList tokenize(std::string_view text) {
  TokenList out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else if (std::ispunct(c)) {
      flush();
      out.emplace_back(1, ch);
    } else {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  flush();
  return out;
}

inline std::string join(const TokenList& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

namespace detail {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

template <class Seq>
NgramCounts ngram_counts(const Seq& seq, std::size_t n) {
  NgramCounts counts;
  if (n == 0 || seq.size() < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i)
    ++counts[std::vector<std::string>(seq.begin() + i, seq.begin() + i + n)];
  return counts;
}

inline std::size_t clipped_overlap(const NgramCounts& a, const NgramCounts& b) {
  std::size_t total = 0;
  for (const auto& [gram, count] : a) {
    const auto it = b.find(gram);
    if (it != b.end()) total += std::min(count, it->second);
  }
  return total;
}

inline double f_measure(double p, double r) {
  return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace detail

struct BleuConfig {
  std::size_t max_n = 4;
  double smoothing_epsilon = 0.1;
  double scale = 100.0;
};

// Geometric mean of clipped n-gram precisions times the brevity penalty.
// Orders beyond the candidate length are left out so that any non-empty
// sequence scores `scale` against itself; an order with no matches uses
// epsilon in place of the zero count.
inline double bleu(const TokenList& candidate, const TokenList& reference,
                   const BleuConfig& cfg = {}) {
  if (cfg.max_n < 1) throw ArgumentError("BLEU max_n must be >= 1");
  if (!(cfg.smoothing_epsilon > 0.0))
    throw ArgumentError("BLEU smoothing epsilon must be > 0");
  if (candidate.empty()) return 0.0;
  const std::size_t orders = std::min(cfg.max_n, candidate.size());
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    const auto c = detail::ngram_counts(candidate, n);
    const auto r = detail::ngram_counts(reference, n);
    const double total = static_cast<double>(candidate.size() - n + 1);
    const double matched = static_cast<double>(detail::clipped_overlap(c, r));
    const double p = matched > 0.0 ? matched / total
                                   : cfg.smoothing_epsilon / total;
    log_sum += std::log(p);
  }
  const double c_len = static_cast<double>(candidate.size());
  const double r_len = static_cast<double>(reference.size());
  const double bp = c_len > r_len ? 1.0 : std::exp(1.0 - r_len / c_len);
  return cfg.scale * bp * std::exp(log_sum / static_cast<double>(orders));
}

// ROUGE-N F-measure. When either side is too short to hold an n-gram the
// score is 1 for identical sequences and 0 otherwise.
inline double rouge_n_f(const std::vector<std::string>& a,
                        const std::vector<std::string>& b, std::size_t n) {
  const auto ca = detail::ngram_counts(a, n);
  const auto cb = detail::ngram_counts(b, n);
  if (ca.empty() || cb.empty()) return a == b ? 1.0 : 0.0;
  const double overlap = static_cast<double>(detail::clipped_overlap(ca, cb));
  const double na = static_cast<double>(a.size() - n + 1);
  const double nb = static_cast<double>(b.size() - n + 1);
  return detail::f_measure(overlap / na, overlap / nb);
}

inline std::size_t lcs_length(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (const auto& x : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = (x == b[j - 1]) ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

inline double rouge_l_f(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return a == b ? 1.0 : 0.0;
  const double lcs = static_cast<double>(lcs_length(a, b));
  return detail::f_measure(lcs / static_cast<double>(a.size()),
                           lcs / static_cast<double>(b.size()));
}

using RougeWeights = std::array<double, 3>;  // ROUGE-1, ROUGE-2, ROUGE-L

inline constexpr RougeWeights kEqualRougeWeights{1.0 / 3, 1.0 / 3, 1.0 / 3};

inline double weighted_rouge(const std::vector<std::string>& a,
                             const std::vector<std::string>& b,
                             const RougeWeights& w = kEqualRougeWeights) {
  if (a.empty() || b.empty())
    throw ArgumentError("weighted ROUGE needs non-empty sequences");
  if (std::any_of(w.begin(), w.end(), [](double x) { return x < 0.0; }) ||
      std::abs(w[0] + w[1] + w[2] - 1.0) > 1e-9)
    throw ArgumentError("ROUGE weights must be non-negative and sum to 1");
  return w[0] * rouge_n_f(a, b, 1) + w[1] * rouge_n_f(a, b, 2) +
         w[2] * rouge_l_f(a, b);
}

}  // namespace oierobust

#endif  // OIEROBUST_TEXT_METRICS_HPP
