#ifndef OIEROBUST_ANALYSIS_HPP
#define OIEROBUST_ANALYSIS_HPP

// Divergence sweeps, per-clique F1 variance and summary statistics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oierobust/error.hpp"
#include "oierobust/parallel.hpp"
#include "oierobust/robustness.hpp"
#include "oierobust/syntax_metrics.hpp"
#include "oierobust/text_metrics.hpp"
#include "oierobust/tree.hpp"

namespace oierobust {

// 0.1, 0.2, ..., 1.0
inline std::vector<double> default_weight_grid() {
  std::vector<double> w;
  for (int i = 1; i <= 10; ++i) w.push_back(i / 10.0);
  return w;
}

struct DivergenceProfile {
  std::string clique_id;
  double weight = 0.0;
  double mean_hws = 0.0;
  double mean_ctk = 1.0;
};

namespace detail {

inline std::vector<ConstituencyTree> clique_parses(const Clique& clique) {
  std::vector<ConstituencyTree> trees;
  for (const auto& s : clique.sentences) {
    if (!s.parse)
      throw ValidationError("sentence " + s.id + " has no parse");
    trees.push_back(parse_tree(*s.parse));
  }
  return trees;
}

}  // namespace detail

// Mean HWS distance and mean CTK similarity over all unordered sentence
// pairs. A clique with fewer than two sentences gives (0, 1).
inline DivergenceProfile clique_divergence(
    const Clique& clique, const std::vector<ConstituencyTree>& trees,
    const HwsConfig& hws, const CtkConfig& ctk) {
  DivergenceProfile p{clique.id, hws.alpha, 0.0, 1.0};
  if (trees.size() < 2) return p;
  double hws_sum = 0.0, ctk_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      hws_sum += hws_distance(trees[i], trees[j], hws);
      ctk_sum += ctk_similarity(trees[i], trees[j], ctk);
      ++pairs;
    }
  }
  p.mean_hws = hws_sum / static_cast<double>(pairs);
  p.mean_ctk = ctk_sum / static_cast<double>(pairs);
  return p;
}

inline DivergenceProfile clique_divergence(const Clique& clique,
                                           const HwsConfig& hws,
                                           const CtkConfig& ctk) {
  validate(hws);
  validate(ctk);
  return clique_divergence(clique, detail::clique_parses(clique), hws, ctk);
}

// One profile per weight w, using alpha = w for HWS and lambda = w for CTK.
// The remaining HWS settings come from `base`.
inline std::vector<DivergenceProfile> intra_clique_divergence(
    const Clique& clique, const std::vector<double>& weights,
    const HwsConfig& base = {}) {
  const auto trees = detail::clique_parses(clique);
  std::vector<DivergenceProfile> out;
  for (const double w : weights) {
    HwsConfig hws = base;
    hws.alpha = w;
    const CtkConfig ctk{w};
    validate(hws);
    validate(ctk);
    DivergenceProfile p = clique_divergence(clique, trees, hws, ctk);
    p.weight = w;
    out.push_back(p);
  }
  return out;
}

struct SweepPoint {
  double weight = 0.0;
  double mean_hws = 0.0;
  double mean_ctk = 0.0;
};

struct DivergenceSweep {
  std::vector<std::vector<DivergenceProfile>> per_clique;
  std::vector<SweepPoint> curve;
};

inline DivergenceSweep inter_clique_sweep(const std::vector<Clique>& cliques,
                                          const std::vector<double>& weights,
                                          const HwsConfig& base = {},
                                          std::size_t threads = 1) {
  if (cliques.empty()) throw ArgumentError("benchmark has no cliques");
  DivergenceSweep sweep;
  sweep.per_clique.resize(cliques.size());
  parallel_for(cliques.size(), threads, [&](std::size_t i) {
    sweep.per_clique[i] = intra_clique_divergence(cliques[i], weights, base);
  });
  for (std::size_t w = 0; w < weights.size(); ++w) {
    SweepPoint pt{weights[w], 0.0, 0.0};
    for (const auto& prof : sweep.per_clique) {
      pt.mean_hws += prof[w].mean_hws;
      pt.mean_ctk += prof[w].mean_ctk;
    }
    pt.mean_hws /= static_cast<double>(cliques.size());
    pt.mean_ctk /= static_cast<double>(cliques.size());
    sweep.curve.push_back(pt);
  }
  return sweep;
}

inline double population_variance(const std::vector<double>& xs) {
  if (xs.empty()) throw ArgumentError("variance of an empty series");
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size());
}

// Sample Pearson correlation coefficient.
inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ArgumentError("pearson needs series of equal length");
  if (x.size() < 2) throw ArgumentError("pearson needs at least 2 points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw ArgumentError("correlation is undefined for a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct VarianceRecord {
  std::string clique_id;
  double f1_variance = 0.0;
  double mean_hws = 0.0;
  double mean_ctk = 0.0;
};

struct Bin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mean_value = 0.0;  // mean of the binned payload; 0 when empty
};

// Equal-width bins over [min(keys), max(keys)]; the last bin is closed on
// the right. Every key lands in exactly one bin. When all keys are equal
// everything goes to the first bin.
inline std::vector<Bin> equal_width_bins(const std::vector<double>& keys,
                                         const std::vector<double>& payload,
                                         std::size_t bin_count) {
  if (bin_count < 1) throw ArgumentError("bin count must be >= 1");
  if (keys.size() != payload.size())
    throw ArgumentError("bin keys and payload differ in length");
  std::vector<Bin> bins(bin_count);
  if (keys.empty()) return bins;
  const auto [lo_it, hi_it] = std::minmax_element(keys.begin(), keys.end());
  const double lo = *lo_it, hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(bin_count);
  for (std::size_t b = 0; b < bin_count; ++b) {
    bins[b].lower = lo + width * static_cast<double>(b);
    bins[b].upper = b + 1 == bin_count ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::size_t b = 0;
    if (width > 0.0) {
      b = static_cast<std::size_t>((keys[i] - lo) / width);
      b = std::min(b, bin_count - 1);
      // Floating point can put a key just across a boundary it sits on.
      while (b > 0 && keys[i] < bins[b].lower) --b;
      while (b + 1 < bin_count && keys[i] >= bins[b + 1].lower) ++b;
    }
    ++bins[b].count;
    bins[b].mean_value += payload[i];
  }
  for (auto& bin : bins)
    if (bin.count > 0) bin.mean_value /= static_cast<double>(bin.count);
  return bins;
}

struct VarianceAnalysis {
  std::vector<VarianceRecord> records;
  std::vector<Bin> by_hws;   // mean F1 variance per HWS-distance interval
  std::vector<Bin> by_ctk;   // mean F1 variance per CTK-similarity interval
  std::vector<Bin> variance_histogram;  // clique counts per variance interval
};

inline constexpr std::size_t kDefaultBins = 5;

// `profiles` holds one profile per clique, all at the same weight.
inline VarianceAnalysis variance_analysis(
    const BenchmarkReport& report,
    const std::vector<DivergenceProfile>& profiles,
    std::size_t bin_count = kDefaultBins) {
  std::map<std::string, const DivergenceProfile*> by_id;
  for (const auto& p : profiles) by_id[p.clique_id] = &p;
  std::set<std::string> report_ids;
  for (const auto& c : report.clique_scores) report_ids.insert(c.clique_id);

  std::string diff;
  for (const auto& id : report_ids)
    if (!by_id.count(id)) diff += " " + id + "(no profile)";
  for (const auto& [id, _] : by_id)
    if (!report_ids.count(id)) diff += " " + id + "(no scores)";
  if (!diff.empty() || profiles.size() != by_id.size())
    throw ValidationError("report and profiles cover different cliques:" +
                          (diff.empty() ? std::string(" duplicate ids") : diff));

  VarianceAnalysis out;
  std::vector<double> var, hws, ctk;
  for (const auto& cs : report.clique_scores) {
    std::vector<double> f1s;
    for (const auto& s : cs.per_sentence) f1s.push_back(s.f1);
    const DivergenceProfile& p = *by_id.at(cs.clique_id);
    out.records.push_back(
        {cs.clique_id, population_variance(f1s), p.mean_hws, p.mean_ctk});
    var.push_back(out.records.back().f1_variance);
    hws.push_back(p.mean_hws);
    ctk.push_back(p.mean_ctk);
  }
  out.by_hws = equal_width_bins(hws, var, bin_count);
  out.by_ctk = equal_width_bins(ctk, var, bin_count);
  out.variance_histogram = equal_width_bins(var, var, bin_count);
  return out;
}

struct VocabStats {
  std::size_t vocabulary_size = 0;
  std::size_t total_tokens = 0;
  std::vector<std::size_t> per_sentence;
};

inline VocabStats vocab_stats(const std::vector<SentenceEntry>& sentences) {
  std::set<std::string> vocab;
  VocabStats stats;
  for (const auto& s : sentences) {
    const TokenList toks = tokenize(s.text);
    vocab.insert(toks.begin(), toks.end());
    stats.per_sentence.push_back(toks.size());
    stats.total_tokens += toks.size();
  }
  stats.vocabulary_size = vocab.size();
  return stats;
}

}  // namespace oierobust

#endif  // OIEROBUST_ANALYSIS_HPP
