#ifndef OIEROBUST_CLIQUE_TOOLS_HPP
#define OIEROBUST_CLIQUE_TOOLS_HPP

// Building clique candidates: diversity filtering of generated paraphrases
// and count-proportional sampling of target syntactic templates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oierobust/error.hpp"
#include "oierobust/robustness.hpp"
#include "oierobust/text_metrics.hpp"
#include "oierobust/tree.hpp"

namespace oierobust {

using ScoreMatrix = std::vector<std::vector<double>>;

// Node 0 of the score matrix is the original, node i is paraphrases[i - 1].
struct ParaphraseSet {
  SentenceEntry original;
  std::vector<SentenceEntry> paraphrases;
  std::optional<ScoreMatrix> score_matrix;
};

inline void validate(const ParaphraseSet& set) {
  if (!set.score_matrix) return;
  const ScoreMatrix& s = *set.score_matrix;
  const std::size_t n = set.paraphrases.size() + 1;
  if (s.size() != n)
    throw ValidationError("score matrix must have " + std::to_string(n) +
                          " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i].size() != n)
      throw ValidationError("score matrix row " + std::to_string(i) +
                            " has wrong length");
    if (std::abs(s[i][i] - 100.0) > 1e-9)
      throw ValidationError("score matrix diagonal must be 100");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s[i][j] - s[j][i]) > 1e-9)
        throw ValidationError("score matrix is not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ")");
}

// Pairwise BLEU over tokenised text, symmetrised by averaging both
// directions.
inline ScoreMatrix bleu_score_matrix(const ParaphraseSet& set,
                                     const BleuConfig& cfg = {}) {
  std::vector<TokenList> tokens{tokenize(set.original.text)};
  for (const auto& p : set.paraphrases) tokens.push_back(tokenize(p.text));
  const std::size_t n = tokens.size();
  ScoreMatrix s(n, std::vector<double>(n, cfg.scale));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v =
          0.5 * (bleu(tokens[i], tokens[j], cfg) + bleu(tokens[j], tokens[i], cfg));
      s[i][j] = s[j][i] = v;
    }
  }
  return s;
}

struct FilterResult {
  ParaphraseSet kept;
  std::vector<std::string> removed;  // paraphrase ids in removal order
};

inline constexpr std::size_t kDefaultMaxParaphrases = 3;

// While too many paraphrases remain, take the most similar pair of
// paraphrases; if exactly one of them is shorter than 2/3 of the original
// (in tokens) drop it, otherwise drop the one with the larger score sum to
// every other remaining node, the original included. Pair ties go to the
// first pair in index order, sum ties to the higher index.
inline FilterResult diversity_filter(ParaphraseSet set,
                                     std::size_t max_paraphrases =
                                         kDefaultMaxParaphrases) {
  if (max_paraphrases < 1)
    throw ArgumentError("max_paraphrases must be >= 1");
  if (!set.score_matrix) set.score_matrix = bleu_score_matrix(set);
  validate(set);
  const ScoreMatrix& s = *set.score_matrix;
  const std::size_t n = set.paraphrases.size() + 1;

  std::vector<std::size_t> length(n);
  length[0] = tokenize(set.original.text).size();
  for (std::size_t i = 1; i < n; ++i)
    length[i] = tokenize(set.paraphrases[i - 1].text).size();
  auto is_short = [&](std::size_t i) { return 3 * length[i] < 2 * length[0]; };

  std::vector<bool> alive(n, true);
  std::size_t remaining = n - 1;
  FilterResult out;
  while (remaining > max_paraphrases) {
    std::size_t a = 0, b = 0;
    double best = -1.0;
    for (std::size_t i = 1; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (alive[j] && s[i][j] > best) {
          best = s[i][j];
          a = i;
          b = j;
        }
      }
    }
    std::size_t victim;
    if (is_short(a) != is_short(b)) {
      victim = is_short(a) ? a : b;
    } else {
      auto sum = [&](std::size_t x) {
        double total = 0.0;
        for (std::size_t y = 0; y < n; ++y)
          if (alive[y] && y != x) total += s[x][y];
        return total;
      };
      victim = sum(a) > sum(b) ? a : b;
    }
    alive[victim] = false;
    --remaining;
    out.removed.push_back(set.paraphrases[victim - 1].id);
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) keep.push_back(i);
  out.kept.original = set.original;
  ScoreMatrix sub;
  for (const std::size_t i : keep) {
    if (i > 0) out.kept.paraphrases.push_back(set.paraphrases[i - 1]);
    std::vector<double> row;
    for (const std::size_t j : keep) row.push_back(s[i][j]);
    sub.push_back(std::move(row));
  }
  out.kept.score_matrix = std::move(sub);
  return out;
}

inline constexpr std::size_t kTemplateHeight = 3;

// Canonical key of a syntactic template: the tree pruned at `height`.
inline std::string template_key(const ConstituencyTree& tree,
                                std::size_t height = kTemplateHeight) {
  return serialize(prune(tree, height).root);
}

// Co-occurrence counts of (source template, target template) pairs.
class TemplateCorpus {
 public:
  void add(const std::string& source, const std::string& target,
           std::size_t count = 1) {
    if (count == 0) throw ArgumentError("template pair count must be >= 1");
    pairs_[source][target] += count;
  }

  bool empty() const noexcept { return pairs_.empty(); }
  bool has_source(const std::string& key) const {
    return pairs_.count(key) != 0;
  }

  const std::map<std::string, std::size_t>& targets(
      const std::string& source) const {
    const auto it = pairs_.find(source);
    if (it == pairs_.end())
      throw ValidationError("unknown source template: " + source);
    return it->second;
  }

  std::vector<std::string> sources() const {
    std::vector<std::string> keys;
    for (const auto& [k, _] : pairs_) keys.push_back(k);
    return keys;
  }

 private:
  std::map<std::string, std::map<std::string, std::size_t>> pairs_;
};

struct RankedTemplate {
  std::string key;
  double score = 0.0;
};

// Ranks source templates by weighted ROUGE between level-order label
// sequences; ties go to the lexicographically smaller key.
inline std::vector<RankedTemplate> select_source_parses(
    const ConstituencyTree& sentence_parse, const TemplateCorpus& corpus,
    std::size_t top_k = 2, const RougeWeights& weights = kEqualRougeWeights) {
  if (corpus.empty()) throw ValidationError("template corpus is empty");
  const LabelSequence query =
      level_order(prune(sentence_parse, kTemplateHeight).root);
  std::vector<RankedTemplate> ranked;
  for (const auto& key : corpus.sources()) {
    const LabelSequence cand = level_order(parse_tree(key));
    ranked.push_back({key, weighted_rouge(query, cand, weights)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedTemplate& x, const RankedTemplate& y) {
                     return x.score > y.score;
                   });
  if (ranked.size() > top_k) ranked.resize(top_k);
  return ranked;
}

// Draws up to n distinct targets without replacement; each draw picks a
// remaining target with probability proportional to its co-occurrence count.
inline std::vector<std::string> sample_target_parses(
    const std::string& source_key, const TemplateCorpus& corpus,
    std::size_t n, std::uint64_t seed) {
  std::vector<std::pair<std::string, std::size_t>> pool;
  for (const auto& [target, count] : corpus.targets(source_key))
    pool.emplace_back(target, count);
  std::mt19937_64 rng(seed);
  std::vector<std::string> drawn;
  while (drawn.size() < n && !pool.empty()) {
    std::uint64_t total = 0;
    for (const auto& [_, c] : pool) total += c;
    std::uint64_t ticket = rng() % total;
    std::size_t pick = 0;
    while (ticket >= pool[pick].second) {
      ticket -= pool[pick].second;
      ++pick;
    }
    drawn.push_back(pool[pick].first);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return drawn;
}

}  // namespace oierobust

#endif  // OIEROBUST_CLIQUE_TOOLS_HPP
