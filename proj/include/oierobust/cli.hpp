#ifndef OIEROBUST_CLI_HPP
#define OIEROBUST_CLI_HPP

// Command-line front end. Exit status: 0 success, 1 invalid input data,
// 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oierobust/analysis.hpp"
#include "oierobust/clique_tools.hpp"
#include "oierobust/error.hpp"
#include "oierobust/io.hpp"
#include "oierobust/robustness.hpp"
#include "oierobust/syntax_metrics.hpp"
#include "oierobust/tree.hpp"
#include "oierobust/tuple_scorer.hpp"

namespace oierobust {

namespace cli_detail {

struct GlobalFlags {
  std::uint64_t seed = 0;
  double alpha = HwsConfig{}.alpha;
  double lambda = CtkConfig{}.lambda;
  std::size_t height = HwsConfig{}.height;
  int min_run = HwsConfig{}.min_run;
  std::string format = "jsonl";
  std::string out = "-";
  std::size_t threads = 1;
};

// Validator for discount factors.
inline CLI::Validator unit_interval_open_left() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v)) return "not a number: " + s;
        if (!(v > 0.0 && v <= 1.0)) return "value " + s + " not in (0, 1]";
        return {};
      },
      "(0,1]");
}

inline void write_output(const std::string& path, const std::string& content,
                         std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << content;
}

inline HwsConfig hws_config(const GlobalFlags& g, bool include_words) {
  HwsConfig c;
  c.alpha = g.alpha;
  c.height = g.height;
  c.min_run = g.min_run;
  c.include_words = include_words;
  return c;
}

inline Json config_json(const GlobalFlags& g) {
  return Json{{"seed", g.seed},     {"alpha", g.alpha},
              {"lambda", g.lambda}, {"height", g.height},
              {"min_run", g.min_run}, {"format", g.format}};
}

inline std::vector<std::string> read_tree_lines(const std::string& path) {
  std::vector<std::string> out;
  for (auto& line : detail::split_lines(detail::read_file(path)))
    if (!detail::blank(line)) out.push_back(std::move(line));
  return out;
}

inline std::vector<double> parse_weights(const std::string& spec) {
  if (spec.empty()) return default_weight_grid();
  std::vector<double> w;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!CLI::detail::lexical_cast(item, v) || !(v > 0.0 && v <= 1.0))
      throw CLI::ValidationError("--weights", "weight " + item + " not in (0, 1]");
    w.push_back(v);
  }
  if (w.empty()) throw CLI::ValidationError("--weights", "no weights given");
  return w;
}

inline std::string profiles_csv(const DivergenceSweep& sweep) {
  std::string out = "clique_id,weight,mean_hws,mean_ctk\n";
  for (const auto& clique : sweep.per_clique)
    for (const auto& p : clique)
      out += p.clique_id + "," + format_real(p.weight) + "," +
             format_real(p.mean_hws) + "," + format_real(p.mean_ctk) + "\n";
  return out;
}

inline std::string curve_csv(const DivergenceSweep& sweep) {
  std::string out = "weight,mean_hws,mean_ctk\n";
  for (const auto& pt : sweep.curve)
    out += format_real(pt.weight) + "," + format_real(pt.mean_hws) + "," +
           format_real(pt.mean_ctk) + "\n";
  return out;
}

inline Json bins_json(const std::vector<Bin>& bins) {
  Json arr = Json::array();
  for (const auto& b : bins)
    arr.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count},
                   {"mean", b.mean_value}});
  return arr;
}

inline std::string bins_csv(const VarianceAnalysis& va) {
  std::string out = "series,bin,lower,upper,count,mean\n";
  auto emit = [&](const std::string& name, const std::vector<Bin>& bins) {
    for (std::size_t i = 0; i < bins.size(); ++i)
      out += name + "," + std::to_string(i) + "," + format_real(bins[i].lower) +
             "," + format_real(bins[i].upper) + "," +
             std::to_string(bins[i].count) + "," +
             format_real(bins[i].mean_value) + "\n";
  };
  emit("variance_by_hws", va.by_hws);
  emit("variance_by_ctk", va.by_ctk);
  emit("variance_histogram", va.variance_histogram);
  return out;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv,
                   std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Robustness-oriented evaluation tools for open information "
               "extraction",
               "oierobust"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--alpha", g.alpha, "HWS discount factor")
      ->check(unit_interval_open_left());
  app.add_option("--lambda", g.lambda, "Tree kernel decay factor")
      ->check(unit_interval_open_left());
  app.add_option("--height", g.height, "Pruning height (root depth is 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--min-run", g.min_run,
                 "Shortest countable interior run: 2 strict, 1 uniform")
      ->check(CLI::IsMember({1, 2}));
  app.add_option("--format", g.format, "Prediction format")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  app.add_option("--out", g.out, "Output path ('-' for stdout)");
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  std::string benchmark_path, pred_path;
  bool missing_empty = false;

  auto* score = app.add_subcommand("score", "Per-sentence tuple-matching scores");
  score->add_option("--benchmark", benchmark_path, "Gold benchmark (JSONL)")->required();
  score->add_option("--pred", pred_path, "System predictions")->required();
  score->add_flag("--missing-empty", missing_empty,
                  "Score sentences without predictions as empty output");

  std::string csv_path;
  bool weighted = false;
  auto* robust = app.add_subcommand("robust-score", "Clique-wise robustness scores");
  robust->add_option("--benchmark", benchmark_path, "Clique benchmark (JSONL)")->required();
  robust->add_option("--pred", pred_path, "System predictions")->required();
  robust->add_option("--csv", csv_path, "Also write a per-clique CSV");
  robust->add_flag("--weighted", weighted, "Weight clique means by clique size");
  robust->add_flag("--missing-empty", missing_empty,
                   "Score sentences without predictions as empty output");

  std::string alg = "hws";
  std::vector<std::string> tree_files;
  bool no_words = false;
  auto* syntax = app.add_subcommand("syntax", "Pairwise syntactic distance or similarity");
  syntax->add_option("--alg", alg, "hws or ctk")->check(CLI::IsMember({"hws", "ctk"}));
  syntax->add_flag("--no-words", no_words, "Drop word tokens before comparing");
  syntax->add_option("files", tree_files, "Two files with one bracketed tree per line")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);

  std::string input_path;
  std::size_t max_paraphrases = kDefaultMaxParaphrases;
  auto* filter = app.add_subcommand("filter", "Diversity filtering of paraphrase sets");
  filter->add_option("--input", input_path, "Paraphrase set JSON / JSONL")->required();
  filter->add_option("--max", max_paraphrases, "Paraphrases to keep")
      ->check(CLI::PositiveNumber);

  std::string corpus_path, source_key, parse_text;
  std::size_t n_targets = 5, top_k = 2;
  auto* sample = app.add_subcommand("sample-templates", "Sample target syntactic templates");
  sample->add_option("--corpus", corpus_path, "Template pair TSV")->required();
  auto* src_opt = sample->add_option("--source", source_key, "Source template key");
  auto* parse_opt = sample->add_option(
      "--parse", parse_text, "Sentence parse; its closest source templates are used");
  src_opt->excludes(parse_opt);
  sample->add_option("-n", n_targets, "Targets per source")->check(CLI::PositiveNumber);
  sample->add_option("--top-k", top_k, "Source templates per parse")
      ->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Analysis suite");
  analyze->require_subcommand(1);
  std::string weights_spec, profiles_path;
  auto* divergence = analyze->add_subcommand("divergence", "Syntactic divergence sweep");
  divergence->add_option("--benchmark", benchmark_path, "Clique benchmark (JSONL)")->required();
  divergence->add_option("--weights", weights_spec,
                         "Comma-separated discount weights (default 0.1..1.0)");
  divergence->add_option("--profiles", profiles_path,
                         "Also write per-clique profiles as CSV");
  divergence->add_flag("--no-words", no_words, "Drop word tokens before comparing");

  std::size_t bins = kDefaultBins;
  auto* variance = analyze->add_subcommand("variance", "F1 variance against divergence");
  variance->add_option("--benchmark", benchmark_path, "Clique benchmark (JSONL)")->required();
  variance->add_option("--pred", pred_path, "System predictions")->required();
  variance->add_option("--bins", bins, "Equal-width intervals")->check(CLI::PositiveNumber);
  variance->add_option("--csv", csv_path, "Also write the bins as CSV");
  variance->add_flag("--missing-empty", missing_empty,
                     "Score sentences without predictions as empty output");
  variance->add_flag("--no-words", no_words, "Drop word tokens before comparing");

  std::string text_path;
  auto* vocab = analyze->add_subcommand("vocab", "Vocabulary statistics");
  auto* vb = vocab->add_option("--benchmark", benchmark_path, "Clique benchmark (JSONL)");
  auto* vt = vocab->add_option("--text", text_path, "Plain text, one sentence per line");
  vb->excludes(vt);
  vocab->require_option(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (score->parsed()) {
      const auto cliques = load_benchmark(benchmark_path);
      const auto fmt = parse_prediction_format(g.format);
      const auto preds =
          align_predictions(cliques, load_predictions(pred_path, fmt), fmt, missing_empty);
      Json j;
      j["version"] = kVersion;
      Json cfg = config_json(g);
      cfg["missing_empty"] = missing_empty;
      j["config"] = cfg;
      j["sentences"] = Json::array();
      double p = 0, r = 0, f = 0;
      std::size_t n = 0;
      for (const auto& c : cliques) {
        for (const auto& s : c.sentences) {
          const SentenceScore sc = carb_score(s.gold, preds.at(s.id));
          Json row = score_to_json(sc, true);
          row["id"] = s.id;
          j["sentences"].push_back(std::move(row));
          p += sc.precision;
          r += sc.recall;
          f += sc.f1;
          ++n;
        }
      }
      const auto dn = static_cast<double>(n);
      j["mean"] = {{"precision", p / dn}, {"recall", r / dn}, {"f1", f / dn}};
      write_output(g.out, j.dump(2) + "\n", out);
    } else if (robust->parsed()) {
      const auto cliques = load_benchmark(benchmark_path);
      const auto fmt = parse_prediction_format(g.format);
      const auto preds =
          align_predictions(cliques, load_predictions(pred_path, fmt), fmt, missing_empty);
      BenchmarkOptions opts;
      opts.threads = g.threads;
      opts.weighting = weighted ? CliqueWeighting::kBySize : CliqueWeighting::kUniform;
      const BenchmarkReport report = score_benchmark(cliques, preds, opts);
      Json cfg = config_json(g);
      cfg["weighting"] = weighted ? "by_size" : "uniform";
      cfg["missing_empty"] = missing_empty;
      write_output(g.out, report_to_json(report, cliques, cfg).dump(2) + "\n", out);
      if (!csv_path.empty()) write_output(csv_path, report_to_csv(report), out);
    } else if (syntax->parsed()) {
      const auto a = read_tree_lines(tree_files[0]);
      const auto b = read_tree_lines(tree_files[1]);
      if (a.size() != b.size())
        throw ValidationError("tree files differ in line count (" +
                              std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
      const HwsConfig hws = hws_config(g, !no_words);
      const CtkConfig ctk{g.lambda};
      std::string result;
      for (std::size_t i = 0; i < a.size(); ++i) {
        ConstituencyTree t1, t2;
        try {
          t1 = parse_tree(a[i]);
          t2 = parse_tree(b[i]);
        } catch (const ParseError& e) {
          throw ValidationError("tree pair " + std::to_string(i + 1) + ": " + e.what());
        }
        if (no_words && alg == "ctk") {
          t1 = strip_words(t1);
          t2 = strip_words(t2);
        }
        const double v = alg == "hws" ? hws_distance(t1, t2, hws)
                                      : ctk_similarity(t1, t2, ctk);
        result += format_real(v) + "\n";
      }
      write_output(g.out, result, out);
    } else if (filter->parsed()) {
      const auto sets = parse_paraphrase_sets(detail::read_file(input_path), input_path);
      std::string result;
      for (const auto& s : sets) {
        const FilterResult fr = diversity_filter(s, max_paraphrases);
        Json j = paraphrase_set_to_json(fr.kept);
        j["removed"] = fr.removed;
        result += j.dump() + "\n";
      }
      write_output(g.out, result, out);
    } else if (sample->parsed()) {
      const TemplateCorpus corpus =
          parse_template_corpus(detail::read_file(corpus_path), corpus_path);
      std::vector<std::string> sources;
      if (!source_key.empty()) {
        sources.push_back(template_key(parse_tree(source_key)));
      } else if (!parse_text.empty()) {
        for (const auto& r : select_source_parses(parse_tree(parse_text), corpus, top_k))
          sources.push_back(r.key);
      } else {
        throw CLI::RequiredError("--source or --parse");
      }
      std::string result;
      for (std::size_t i = 0; i < sources.size(); ++i) {
        // Each source gets its own stream derived from the global seed.
        for (const auto& t : sample_target_parses(sources[i], corpus, n_targets,
                                                  g.seed + i))
          result += sources[i] + "\t" + t + "\n";
      }
      write_output(g.out, result, out);
    } else if (divergence->parsed()) {
      const auto cliques = load_benchmark(benchmark_path);
      const auto weights = parse_weights(weights_spec);
      const auto sweep =
          inter_clique_sweep(cliques, weights, hws_config(g, !no_words), g.threads);
      write_output(g.out, curve_csv(sweep), out);
      if (!profiles_path.empty()) write_output(profiles_path, profiles_csv(sweep), out);
    } else if (variance->parsed()) {
      const auto cliques = load_benchmark(benchmark_path);
      const auto fmt = parse_prediction_format(g.format);
      const auto preds =
          align_predictions(cliques, load_predictions(pred_path, fmt), fmt, missing_empty);
      BenchmarkOptions opts;
      opts.threads = g.threads;
      const BenchmarkReport report = score_benchmark(cliques, preds, opts);
      const HwsConfig hws = hws_config(g, !no_words);
      std::vector<DivergenceProfile> profiles(cliques.size());
      parallel_for(cliques.size(), g.threads, [&](std::size_t i) {
        profiles[i] = clique_divergence(cliques[i], hws, CtkConfig{g.lambda});
      });
      const VarianceAnalysis va = variance_analysis(report, profiles, bins);
      Json j;
      j["version"] = kVersion;
      j["config"] = config_json(g);
      j["config"]["bins"] = bins;
      j["records"] = Json::array();
      for (const auto& r : va.records)
        j["records"].push_back({{"clique_id", r.clique_id},
                                {"f1_variance", r.f1_variance},
                                {"mean_hws", r.mean_hws},
                                {"mean_ctk", r.mean_ctk}});
      j["variance_by_hws"] = bins_json(va.by_hws);
      j["variance_by_ctk"] = bins_json(va.by_ctk);
      j["variance_histogram"] = bins_json(va.variance_histogram);
      write_output(g.out, j.dump(2) + "\n", out);
      if (!csv_path.empty()) write_output(csv_path, bins_csv(va), out);
    } else if (vocab->parsed()) {
      std::vector<SentenceEntry> sentences;
      if (!benchmark_path.empty()) {
        for (auto& c : load_benchmark(benchmark_path))
          for (auto& s : c.sentences) sentences.push_back(std::move(s));
      } else {
        for (auto& line : detail::split_lines(detail::read_file(text_path)))
          if (!detail::blank(line)) sentences.push_back({"", std::move(line), {}, {}});
      }
      const VocabStats st = vocab_stats(sentences);
      Json j{{"vocabulary_size", st.vocabulary_size},
             {"total_tokens", st.total_tokens},
             {"sentence_count", st.per_sentence.size()},
             {"per_sentence", st.per_sentence}};
      write_output(g.out, j.dump(2) + "\n", out);
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace oierobust

#endif  // OIEROBUST_CLI_HPP
