#ifndef OIEROBUST_ROBUSTNESS_HPP
#define OIEROBUST_ROBUSTNESS_HPP

// Clique-wise robustness scoring: a clique is as good as its worst sentence.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oierobust/error.hpp"
#include "oierobust/parallel.hpp"
#include "oierobust/tuple_scorer.hpp"

namespace oierobust {

struct SentenceEntry {
  std::string id;
  std::string text;
  std::optional<std::string> parse;  // bracketed constituency tree
  std::vector<ExtractionTuple> gold;
};

// sentences.front() is the original; the rest are its paraphrases.
struct Clique {
  std::string id;
  std::vector<SentenceEntry> sentences;
};

inline void validate(const Clique& c) {
  if (c.sentences.empty())
    throw ValidationError("clique " + c.id + " has no sentences");
  for (const auto& s : c.sentences) {
    if (s.gold.empty())
      throw ValidationError("sentence " + s.id + " has no gold extractions");
    for (const auto& t : s.gold) validate(t);
  }
}

using SystemOutputs = std::map<std::string, std::vector<ExtractionTuple>>;

struct CliqueScore {
  std::string clique_id;
  std::vector<SentenceScore> per_sentence;
  std::size_t worst_index = 0;
  SentenceScore robust;
};

// Picks the minimum-F1 sentence; the first one wins ties.
inline CliqueScore select_worst(std::vector<SentenceScore> per_sentence,
                                std::string clique_id = {}) {
  if (per_sentence.empty())
    throw ArgumentError("clique " + clique_id + " has no sentence scores");
  CliqueScore out;
  out.clique_id = std::move(clique_id);
  for (std::size_t i = 1; i < per_sentence.size(); ++i)
    if (per_sentence[i].f1 < per_sentence[out.worst_index].f1)
      out.worst_index = i;
  out.robust = per_sentence[out.worst_index];
  out.per_sentence = std::move(per_sentence);
  return out;
}

inline CliqueScore score_clique(const Clique& clique,
                                const SystemOutputs& outputs) {
  std::vector<SentenceScore> scores;
  scores.reserve(clique.sentences.size());
  for (const auto& s : clique.sentences) {
    const auto it = outputs.find(s.id);
    if (it == outputs.end())
      throw ValidationError("no system output for sentence " + s.id);
    scores.push_back(carb_score(s.gold, it->second));
  }
  return select_worst(std::move(scores), clique.id);
}

enum class CliqueWeighting { kUniform, kBySize };

struct BenchmarkOptions {
  CliqueWeighting weighting = CliqueWeighting::kUniform;
  std::size_t threads = 1;
};

struct BenchmarkReport {
  std::vector<CliqueScore> clique_scores;
  double mean_robust_p = 0.0;
  double mean_robust_r = 0.0;
  double mean_robust_f1 = 0.0;
  // Plain per-sentence averages over every sentence of every clique.
  double mean_carb_p = 0.0;
  double mean_carb_r = 0.0;
  double mean_carb_f1 = 0.0;
  std::size_t sentence_count = 0;
};

inline BenchmarkReport score_benchmark(const std::vector<Clique>& cliques,
                                       const SystemOutputs& outputs,
                                       const BenchmarkOptions& opts = {}) {
  if (cliques.empty()) throw ArgumentError("benchmark has no cliques");
  BenchmarkReport report;
  report.clique_scores.resize(cliques.size());
  parallel_for(cliques.size(), opts.threads, [&](std::size_t i) {
    report.clique_scores[i] = score_clique(cliques[i], outputs);
  });

  double weight_total = 0.0;
  for (const auto& cs : report.clique_scores) {
    const double w = opts.weighting == CliqueWeighting::kBySize
                         ? static_cast<double>(cs.per_sentence.size())
                         : 1.0;
    weight_total += w;
    report.mean_robust_p += w * cs.robust.precision;
    report.mean_robust_r += w * cs.robust.recall;
    report.mean_robust_f1 += w * cs.robust.f1;
    for (const auto& s : cs.per_sentence) {
      report.mean_carb_p += s.precision;
      report.mean_carb_r += s.recall;
      report.mean_carb_f1 += s.f1;
      ++report.sentence_count;
    }
  }
  report.mean_robust_p /= weight_total;
  report.mean_robust_r /= weight_total;
  report.mean_robust_f1 /= weight_total;
  const auto n = static_cast<double>(report.sentence_count);
  report.mean_carb_p /= n;
  report.mean_carb_r /= n;
  report.mean_carb_f1 /= n;
  return report;
}

}  // namespace oierobust

#endif  // OIEROBUST_ROBUSTNESS_HPP
