#ifndef OIEROBUST_IO_HPP
#define OIEROBUST_IO_HPP

// File formats: JSON-lines benchmarks and predictions, legacy OpenIE TSV
// predictions, paraphrase sets, template-pair TSV and report JSON.

#include <cstddef>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oierobust/analysis.hpp"
#include "oierobust/clique_tools.hpp"
#include "oierobust/error.hpp"
#include "oierobust/robustness.hpp"
#include "oierobust/tuple_scorer.hpp"

namespace oierobust {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline bool blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

inline std::string line_error(const std::string& path, std::size_t line,
                              const std::string& what) {
  return path + ":" + std::to_string(line) + ": " + what;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON mapping

inline ExtractionTuple tuple_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("extraction must be an object");
  ExtractionTuple t;
  t.predicate = tokenize(j.at("predicate").get<std::string>());
  for (const auto& a : j.at("args")) t.args.push_back(tokenize(a.get<std::string>()));
  if (j.contains("time") && !j["time"].is_null())
    t.time = tokenize(j["time"].get<std::string>());
  if (j.contains("location") && !j["location"].is_null())
    t.location = tokenize(j["location"].get<std::string>());
  if (j.contains("confidence") && !j["confidence"].is_null())
    t.confidence = j["confidence"].get<double>();
  validate(t);
  return t;
}

// Fields are written in their normalised (tokenised) form.
inline Json tuple_to_json(const ExtractionTuple& t) {
  Json j;
  j["predicate"] = join(t.predicate);
  j["args"] = Json::array();
  for (const auto& a : t.args) j["args"].push_back(join(a));
  if (t.time) j["time"] = join(*t.time);
  if (t.location) j["location"] = join(*t.location);
  if (t.confidence) j["confidence"] = *t.confidence;
  return j;
}

inline SentenceEntry sentence_from_json(const Json& j) {
  SentenceEntry s;
  s.id = j.at("id").get<std::string>();
  s.text = j.at("text").get<std::string>();
  if (j.contains("parse") && !j["parse"].is_null())
    s.parse = j["parse"].get<std::string>();
  if (j.contains("gold"))
    for (const auto& g : j["gold"]) s.gold.push_back(tuple_from_json(g));
  return s;
}

inline Json sentence_to_json(const SentenceEntry& s) {
  Json j;
  j["id"] = s.id;
  j["text"] = s.text;
  if (s.parse) j["parse"] = *s.parse;
  j["gold"] = Json::array();
  for (const auto& g : s.gold) j["gold"].push_back(tuple_to_json(g));
  return j;
}

inline Clique clique_from_json(const Json& j) {
  Clique c;
  c.id = j.at("id").get<std::string>();
  for (const auto& s : j.at("sentences")) c.sentences.push_back(sentence_from_json(s));
  return c;
}

inline Json clique_to_json(const Clique& c) {
  Json j;
  j["id"] = c.id;
  j["sentences"] = Json::array();
  for (const auto& s : c.sentences) j["sentences"].push_back(sentence_to_json(s));
  return j;
}

// ---------------------------------------------------------------------------
// Benchmarks

// One clique per non-blank line. Clique ids and sentence ids must be unique
// across the file and every sentence needs at least one gold tuple.
inline std::vector<Clique> parse_benchmark(const std::string& text,
                                           const std::string& name = "<input>") {
  std::vector<Clique> cliques;
  std::set<std::string> clique_ids, sentence_ids;
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (detail::blank(lines[n])) continue;
    Clique c;
    try {
      c = clique_from_json(Json::parse(lines[n]));
      validate(c);
    } catch (const Json::exception& e) {
      throw ValidationError(detail::line_error(name, n + 1, e.what()));
    } catch (const ValidationError& e) {
      throw ValidationError(detail::line_error(name, n + 1, e.what()));
    }
    if (!clique_ids.insert(c.id).second)
      throw ValidationError(
          detail::line_error(name, n + 1, "duplicate clique id " + c.id));
    for (const auto& s : c.sentences)
      if (!sentence_ids.insert(s.id).second)
        throw ValidationError(
            detail::line_error(name, n + 1, "duplicate sentence id " + s.id));
    cliques.push_back(std::move(c));
  }
  return cliques;
}

inline std::vector<Clique> load_benchmark(const std::string& path) {
  return parse_benchmark(detail::read_file(path), path);
}

inline std::string serialize_benchmark(const std::vector<Clique>& cliques) {
  std::string out;
  for (const auto& c : cliques) {
    out += clique_to_json(c).dump();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Predictions

enum class PredictionFormat { kJsonl, kTsv };

inline PredictionFormat parse_prediction_format(const std::string& s) {
  if (s == "jsonl") return PredictionFormat::kJsonl;
  if (s == "tsv") return PredictionFormat::kTsv;
  throw ArgumentError("unknown prediction format: " + s);
}

// JSONL rows {"sentence_id": ..., "extractions": [...]} are keyed by id.
// TSV rows "sentence<TAB>confidence<TAB>predicate<TAB>arg1[<TAB>arg2...]"
// are keyed by the exact sentence text.
inline SystemOutputs parse_predictions(const std::string& text,
                                       PredictionFormat format,
                                       const std::string& name = "<input>") {
  SystemOutputs out;
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (detail::blank(line)) continue;
    if (format == PredictionFormat::kJsonl) {
      try {
        const Json j = Json::parse(line);
        auto& bucket = out[j.at("sentence_id").get<std::string>()];
        for (const auto& e : j.at("extractions")) bucket.push_back(tuple_from_json(e));
      } catch (const Json::exception& e) {
        throw ValidationError(detail::line_error(name, n + 1, e.what()));
      } catch (const ValidationError& e) {
        throw ValidationError(detail::line_error(name, n + 1, e.what()));
      }
      continue;
    }
    const auto fields = detail::split_tabs(line);
    if (fields.size() < 4)
      throw ValidationError(detail::line_error(
          name, n + 1,
          "expected at least 4 tab-separated fields, got " +
              std::to_string(fields.size())));
    ExtractionTuple t;
    if (!detail::blank(fields[1])) {
      try {
        std::size_t used = 0;
        t.confidence = std::stod(fields[1], &used);
        if (!detail::blank(std::string_view(fields[1]).substr(used)))
          throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ValidationError(
            detail::line_error(name, n + 1, "bad confidence '" + fields[1] + "'"));
      }
    }
    t.predicate = tokenize(fields[2]);
    for (std::size_t k = 3; k < fields.size(); ++k) t.args.push_back(tokenize(fields[k]));
    try {
      validate(t);
    } catch (const ValidationError& e) {
      throw ValidationError(detail::line_error(name, n + 1, e.what()));
    }
    out[fields[0]].push_back(std::move(t));
  }
  return out;
}

inline SystemOutputs load_predictions(const std::string& path,
                                      PredictionFormat format) {
  return parse_predictions(detail::read_file(path), format, path);
}

// Re-keys predictions by sentence id. TSV predictions are keyed by text and
// are looked up through the benchmark's sentence texts. Sentences without
// predictions get an empty list when `missing_as_empty`, otherwise they are
// an error.
inline SystemOutputs align_predictions(const std::vector<Clique>& cliques,
                                       const SystemOutputs& raw,
                                       PredictionFormat format,
                                       bool missing_as_empty) {
  SystemOutputs out;
  for (const auto& c : cliques) {
    for (const auto& s : c.sentences) {
      const std::string& key = format == PredictionFormat::kTsv ? s.text : s.id;
      const auto it = raw.find(key);
      if (it != raw.end()) {
        out[s.id] = it->second;
      } else if (missing_as_empty) {
        out[s.id] = {};
      } else {
        throw ValidationError("no predictions for sentence " + s.id);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

inline Json score_to_json(const SentenceScore& s, bool with_pairs) {
  Json j{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
  if (with_pairs) {
    j["matched_pairs"] = Json::array();
    for (const auto& [g, p] : s.matched_pairs) j["matched_pairs"].push_back({g, p});
  }
  return j;
}

inline Json report_to_json(const BenchmarkReport& report,
                           const std::vector<Clique>& cliques,
                           const Json& config) {
  Json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["clique_count"] = report.clique_scores.size();
  j["sentence_count"] = report.sentence_count;
  j["mean_robust"] = {{"precision", report.mean_robust_p},
                      {"recall", report.mean_robust_r},
                      {"f1", report.mean_robust_f1}};
  j["mean_carb"] = {{"precision", report.mean_carb_p},
                    {"recall", report.mean_carb_r},
                    {"f1", report.mean_carb_f1}};
  j["cliques"] = Json::array();
  for (std::size_t i = 0; i < report.clique_scores.size(); ++i) {
    const CliqueScore& cs = report.clique_scores[i];
    Json c;
    c["id"] = cs.clique_id;
    c["worst_index"] = cs.worst_index;
    c["worst_sentence_id"] = cliques[i].sentences[cs.worst_index].id;
    c["robust"] = score_to_json(cs.robust, false);
    c["sentences"] = Json::array();
    for (std::size_t k = 0; k < cs.per_sentence.size(); ++k) {
      Json s = score_to_json(cs.per_sentence[k], true);
      s["id"] = cliques[i].sentences[k].id;
      c["sentences"].push_back(std::move(s));
    }
    j["cliques"].push_back(std::move(c));
  }
  return j;
}

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string report_to_csv(const BenchmarkReport& report) {
  std::string out = "clique_id,size,worst_index,precision,recall,f1\n";
  for (const auto& cs : report.clique_scores) {
    out += cs.clique_id + "," + std::to_string(cs.per_sentence.size()) + "," +
           std::to_string(cs.worst_index) + "," + format_real(cs.robust.precision) +
           "," + format_real(cs.robust.recall) + "," + format_real(cs.robust.f1) +
           "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Paraphrase sets

inline ParaphraseSet paraphrase_set_from_json(const Json& j) {
  ParaphraseSet set;
  set.original = sentence_from_json(j.at("original"));
  for (const auto& p : j.at("paraphrases")) set.paraphrases.push_back(sentence_from_json(p));
  if (j.contains("score_matrix") && !j["score_matrix"].is_null())
    set.score_matrix = j["score_matrix"].get<ScoreMatrix>();
  validate(set);
  return set;
}

inline Json paraphrase_set_to_json(const ParaphraseSet& set) {
  auto entry = [](const SentenceEntry& s) {
    Json e{{"id", s.id}, {"text", s.text}};
    if (s.parse) e["parse"] = *s.parse;
    if (!s.gold.empty()) e["gold"] = sentence_to_json(s)["gold"];
    return e;
  };
  Json j;
  j["original"] = entry(set.original);
  j["paraphrases"] = Json::array();
  for (const auto& p : set.paraphrases) j["paraphrases"].push_back(entry(p));
  if (set.score_matrix) j["score_matrix"] = *set.score_matrix;
  return j;
}

// A single JSON object, a JSON array of objects, or JSON lines.
inline std::vector<ParaphraseSet> parse_paraphrase_sets(
    const std::string& text, const std::string& name = "<input>") {
  std::vector<ParaphraseSet> sets;
  const Json whole = Json::parse(text, nullptr, false);
  if (!whole.is_discarded()) {
    try {
      if (whole.is_array()) {
        for (const auto& j : whole) sets.push_back(paraphrase_set_from_json(j));
      } else {
        sets.push_back(paraphrase_set_from_json(whole));
      }
    } catch (const Json::exception& e) {
      throw ValidationError(name + ": " + e.what());
    }
    return sets;
  }
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (detail::blank(lines[n])) continue;
    try {
      sets.push_back(paraphrase_set_from_json(Json::parse(lines[n])));
    } catch (const Json::exception& e) {
      throw ValidationError(detail::line_error(name, n + 1, e.what()));
    } catch (const ValidationError& e) {
      throw ValidationError(detail::line_error(name, n + 1, e.what()));
    }
  }
  return sets;
}

// ---------------------------------------------------------------------------
// Template pairs: "source tree<TAB>target tree[<TAB>count]". Trees are
// reduced to their height-3 template keys before counting.

inline TemplateCorpus parse_template_corpus(const std::string& text,
                                            const std::string& name = "<input>") {
  TemplateCorpus corpus;
  const auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (detail::blank(lines[n])) continue;
    const auto fields = detail::split_tabs(lines[n]);
    if (fields.size() != 2 && fields.size() != 3)
      throw ValidationError(
          detail::line_error(name, n + 1, "expected 2 or 3 tab-separated fields"));
    std::size_t count = 1;
    try {
      if (fields.size() == 3) {
        std::size_t used = 0;
        const long long c = std::stoll(fields[2], &used);
        if (c < 1 || used != fields[2].size()) throw std::invalid_argument("count");
        count = static_cast<std::size_t>(c);
      }
      corpus.add(template_key(parse_tree(fields[0])),
                 template_key(parse_tree(fields[1])), count);
    } catch (const ParseError& e) {
      throw ValidationError(detail::line_error(name, n + 1, e.what()));
    } catch (const std::invalid_argument&) {
      throw ValidationError(detail::line_error(name, n + 1, "bad count"));
    } catch (const std::out_of_range&) {
      throw ValidationError(detail::line_error(name, n + 1, "bad count"));
    }
  }
  return corpus;
}

}  // namespace oierobust

#endif  // OIEROBUST_IO_HPP
