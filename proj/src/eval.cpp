#include "lazyrag/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "lazyrag/errors.hpp"
#include "lazyrag/util.hpp"

namespace lazyrag {

namespace {

struct CodepointRange {
  std::uint32_t lo;
  std::uint32_t hi;
};

// Principal Unicode punctuation ranges (general categories P*): ASCII
// punctuation, Latin-1 marks, general punctuation, supplemental
// punctuation, CJK symbols, and their fullwidth/vertical forms.
constexpr CodepointRange kPunctuationRanges[] = {
    {0x21, 0x23},     {0x25, 0x2A},     {0x2C, 0x2F},     {0x3A, 0x3B},
    {0x3F, 0x40},     {0x5B, 0x5D},     {0x5F, 0x5F},     {0x7B, 0x7B},
    {0x7D, 0x7D},     {0xA1, 0xA1},     {0xA7, 0xA7},     {0xAB, 0xAB},
    {0xB6, 0xB7},     {0xBB, 0xBB},     {0xBF, 0xBF},     {0x2010, 0x2027},
    {0x2030, 0x203D}, {0x2041, 0x2043}, {0x2045, 0x2051}, {0x2053, 0x205E},
    {0x2E00, 0x2E4F}, {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F},
    {0x30FB, 0x30FB}, {0xFE10, 0xFE19}, {0xFE30, 0xFE52}, {0xFE54, 0xFE61},
    {0xFE63, 0xFE63}, {0xFE68, 0xFE68}, {0xFE6A, 0xFE6B}, {0xFF01, 0xFF03},
    {0xFF05, 0xFF0A}, {0xFF0C, 0xFF0F}, {0xFF1A, 0xFF1B}, {0xFF1F, 0xFF20},
    {0xFF3B, 0xFF3D}, {0xFF3F, 0xFF3F}, {0xFF5B, 0xFF5B}, {0xFF5D, 0xFF5D},
    {0xFF5F, 0xFF65},
};

bool is_punctuation(std::uint32_t cp) {
  for (const CodepointRange& range : kPunctuationRanges) {
    if (cp >= range.lo && cp <= range.hi) return true;
    if (cp < range.lo) break;  // ranges are sorted
  }
  return false;
}

// Decodes one UTF-8 codepoint starting at `pos`; returns its length in
// bytes. Malformed bytes are passed through one at a time with their
// byte value as the codepoint, so nothing is ever dropped silently.
std::size_t decode_utf8(const std::string& s, std::size_t pos, std::uint32_t& cp) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  std::size_t len = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1Fu;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0Fu;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07u;
  } else {
    cp = b0;
    return 1;
  }
  if (pos + len > s.size()) {
    cp = b0;
    return 1;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char bi = byte(pos + i);
    if ((bi & 0xC0) != 0x80) {
      cp = b0;
      return 1;
    }
    cp = (cp << 6) | (bi & 0x3Fu);
  }
  return len;
}

}  // namespace

std::string normalize_answer(const std::string& text) {
  // Pass 1: drop punctuation, lowercase ASCII letters, keep everything
  // else byte-for-byte.
  std::string stripped;
  stripped.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::uint32_t cp = 0;
    const std::size_t len = decode_utf8(text, pos, cp);
    if (!is_punctuation(cp)) {
      if (len == 1) {
        char c = text[pos];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        stripped += c;
      } else {
        stripped.append(text, pos, len);
      }
    }
    pos += len;
  }
  // Pass 2: drop articles and collapse whitespace.
  WhitespaceTokenizer tokenizer;
  std::vector<std::string> kept;
  for (const Token& token : tokenizer.tokenize(stripped)) {
    if (token.text == "a" || token.text == "an" || token.text == "the") continue;
    kept.push_back(token.text);
  }
  return join(kept, " ");
}

bool exact_match(const std::string& prediction, const std::vector<std::string>& references) {
  if (references.empty()) throw ValidationError("exact match needs at least one reference");
  const std::string normalized = normalize_answer(prediction);
  for (const std::string& reference : references) {
    if (normalized == normalize_answer(reference)) return true;
  }
  return false;
}

std::vector<EvalRecord> load_dataset(std::istream& in, const std::string& source_name) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source_name + ": " + e.what());
  }
  if (!root.is_array()) throw ParseError(source_name + ": dataset must be a JSON array");

  std::vector<EvalRecord> records;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string where = source_name + ": record " + std::to_string(i + 1);
    const nlohmann::json& rj = root[i];
    if (!rj.is_object()) throw ParseError(where + ": must be a JSON object");
    const auto require_string = [&](const char* field) {
      if (!rj.contains(field) || !rj[field].is_string() ||
          rj[field].get<std::string>().empty()) {
        throw ParseError(where + ": missing or empty string field '" + field + "'");
      }
      return rj[field].get<std::string>();
    };
    EvalRecord record;
    record.id = require_string("id");
    record.question = require_string("question");
    record.context = require_string("context");
    if (!rj.contains("answers") || !rj["answers"].is_array()) {
      throw ParseError(where + ": missing array field 'answers'");
    }
    for (const nlohmann::json& answer : rj["answers"]) {
      if (!answer.is_string()) throw ParseError(where + ": answers must be strings");
      record.answers.push_back(answer.get<std::string>());
    }
    if (record.answers.empty()) {
      throw ValidationError("record '" + record.id + "': empty answers list");
    }
    record.doc_id = rj.contains("doc_id") && rj["doc_id"].is_string()
                        ? rj["doc_id"].get<std::string>()
                        : record.id;
    if (!seen_ids.insert(record.id).second) {
      throw ValidationError("duplicate record id: " + record.id);
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<EvalRecord> load_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset: " + path);
  return load_dataset(in, path);
}

EntropyStats entropy_stats(const std::vector<double>& correct_entropies,
                           const std::vector<double>& incorrect_entropies) {
  const WelchComparison w = welch_compare(correct_entropies, incorrect_entropies);
  EntropyStats s;
  s.n_correct = w.n_a;
  s.n_incorrect = w.n_b;
  s.mean_correct = w.mean_a;
  s.mean_incorrect = w.mean_b;
  s.t_statistic = w.t_statistic;
  s.df = w.df;
  s.p_value = w.p_value;
  s.cohens_d = w.cohens_d;
  s.ci95_low = w.ci95_low;
  s.ci95_high = w.ci95_high;
  return s;
}

std::vector<EvalRecord> sample_records(const std::vector<EvalRecord>& dataset,
                                       std::size_t n, std::uint64_t seed) {
  if (n >= dataset.size()) return dataset;
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  // Fisher-Yates prefix with an explicit modulus draw: unlike
  // std::uniform_int_distribution this is bit-stable across standard
  // library implementations.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<EvalRecord> picked;
  picked.reserve(n);
  for (std::size_t i = 0; i < n; ++i) picked.push_back(dataset[order[i]]);
  return picked;
}

EvalReport run_eval(const std::vector<EvalRecord>& dataset, const Mode& mode,
                    LanguageModel& model, Embedder& embedder, const EvalOptions& opts) {
  mode.validate();
  if (dataset.empty()) throw ValidationError("dataset has no records");
  if (opts.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  const std::vector<EvalRecord> records =
      opts.sample ? sample_records(dataset, *opts.sample, opts.seed) : dataset;

  const WhitespaceTokenizer tokenizer;
  std::vector<PerQueryResult> results(records.size());

#pragma omp parallel for schedule(dynamic) num_threads(opts.jobs)
  for (long li = 0; li < static_cast<long>(records.size()); ++li) {
    const std::size_t i = static_cast<std::size_t>(li);
    const EvalRecord& record = records[i];
    PerQueryResult& slot = results[i];
    slot.record_id = record.id;
    try {
      // Each record's paragraph is its own document: summarize, chunk,
      // and index exactly what this question may draw on.
      const Document doc{record.doc_id, std::nullopt, record.context};
      const SummaryContext summary = summarize(doc, opts.sentences_per_paragraph);
      const std::vector<Chunk> chunks = chunk_document(doc, tokenizer, opts.chunking);
      const VectorIndex index = VectorIndex::build(chunks, embedder);
      const QueryContext ctx{&summary, &index, &record.context};
      slot.answer = answer(record.question, ctx, model, embedder, mode, opts.pipeline);
      slot.correct = exact_match(slot.answer.answer_text, record.answers);
    } catch (const std::exception& e) {
      slot.error = e.what();
      slot.correct = false;
    }
  }

  if (opts.strict) {
    for (const PerQueryResult& result : results) {
      if (!result.error.empty()) throw EvalError(result.record_id, result.error);
    }
  }

  EvalReport report;
  report.mode = mode;
  report.per_query = std::move(results);
  std::sort(report.per_query.begin(), report.per_query.end(),
            [](const PerQueryResult& a, const PerQueryResult& b) {
              return a.record_id < b.record_id;
            });

  std::size_t correct = 0;
  std::size_t retrieved = 0;
  double token_sum = 0.0;
  std::vector<double> correct_entropies;
  std::vector<double> incorrect_entropies;
  for (const PerQueryResult& result : report.per_query) {
    if (!result.error.empty()) continue;
    ++report.processed;
    if (result.correct) ++correct;
    if (result.answer.retrieval_performed) ++retrieved;
    token_sum += static_cast<double>(result.answer.input_tokens);
    if (result.answer.entropy_trace && result.answer.entropy_trace->n_used > 0) {
      (result.correct ? correct_entropies : incorrect_entropies)
          .push_back(result.answer.entropy_trace->mean_first_n);
    }
  }
  if (report.processed > 0) {
    const double denom = static_cast<double>(report.processed);
    report.accuracy = static_cast<double>(correct) / denom;
    report.avg_tokens = token_sum / denom;
    report.retrieval_rate = static_cast<double>(retrieved) / denom;
  }
  if (correct_entropies.size() >= 2 && incorrect_entropies.size() >= 2) {
    report.entropy = entropy_stats(correct_entropies, incorrect_entropies);
  }
  return report;
}

std::vector<std::pair<double, EvalReport>> sweep(const std::vector<EvalRecord>& dataset,
                                                 const std::vector<double>& taus,
                                                 const Mode& lazy_mode,
                                                 LanguageModel& model, Embedder& embedder,
                                                 const EvalOptions& opts) {
  if (lazy_mode.kind != ModeKind::Lazy) {
    throw std::invalid_argument("threshold sweeps only apply to lazy mode");
  }
  if (taus.empty()) throw std::invalid_argument("sweep needs at least one threshold");
  std::vector<std::pair<double, EvalReport>> runs;
  runs.reserve(taus.size());
  for (double tau : taus) {
    Mode mode = lazy_mode;
    mode.tau = tau;
    runs.emplace_back(tau, run_eval(dataset, mode, model, embedder, opts));
  }
  return runs;
}

namespace {

nlohmann::ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

void append_mode_params(nlohmann::ordered_json& j, const Mode& mode) {
  if (mode.kind == ModeKind::Lazy) {
    j["tau"] = finite_or_null(mode.tau);
    j["n_tokens"] = mode.n_tokens;
    j["k"] = mode.k;
  } else if (mode.kind == ModeKind::StandardRag || mode.kind == ModeKind::StrongRag) {
    j["k"] = mode.k;
  }
}

}  // namespace

nlohmann::ordered_json answer_to_json(const PipelineAnswer& answer) {
  nlohmann::ordered_json j;
  j["answer"] = answer.answer_text;
  j["mode"] = mode_name(answer.mode.kind);
  append_mode_params(j, answer.mode);
  j["retrieval_performed"] = answer.retrieval_performed;
  j["passes"] = answer.passes;
  j["retrieved_chunks"] = answer.retrieved_chunks;
  j["input_tokens"] = answer.input_tokens;
  if (answer.entropy_trace) {
    j["mean_entropy"] = finite_or_null(answer.entropy_trace->mean_first_n);
    j["entropy_n_used"] = answer.entropy_trace->n_used;
    j["per_step_entropy"] = answer.entropy_trace->per_step;
  }
  if (answer.gate_decision) {
    j["gate_triggered"] = answer.gate_decision->triggered;
    j["gate_threshold"] = finite_or_null(answer.gate_decision->threshold);
  }
  return j;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(report.mode.kind);
  append_mode_params(j, report.mode);
  j["records"] = report.per_query.size();
  j["processed"] = report.processed;
  j["accuracy"] = report.accuracy;
  j["avg_tokens"] = report.avg_tokens;
  j["retrieval_rate"] = report.retrieval_rate;
  if (report.entropy) {
    nlohmann::ordered_json e;
    e["n_correct"] = report.entropy->n_correct;
    e["n_incorrect"] = report.entropy->n_incorrect;
    e["mean_correct"] = report.entropy->mean_correct;
    e["mean_incorrect"] = report.entropy->mean_incorrect;
    e["t_statistic"] = finite_or_null(report.entropy->t_statistic);
    e["df"] = report.entropy->df;
    e["p_value"] = report.entropy->p_value;
    e["cohens_d"] = finite_or_null(report.entropy->cohens_d);
    e["ci95_low"] = report.entropy->ci95_low;
    e["ci95_high"] = report.entropy->ci95_high;
    j["entropy_stats"] = std::move(e);
  } else {
    j["entropy_stats"] = nullptr;
  }
  nlohmann::ordered_json per_query = nlohmann::ordered_json::array();
  for (const PerQueryResult& result : report.per_query) {
    nlohmann::ordered_json q;
    q["id"] = result.record_id;
    if (!result.error.empty()) {
      q["error"] = result.error;
      q["correct"] = false;
    } else {
      q["correct"] = result.correct;
      nlohmann::ordered_json a = answer_to_json(result.answer);
      for (auto& [key, value] : a.items()) q[key] = value;
    }
    per_query.push_back(std::move(q));
  }
  j["per_query"] = std::move(per_query);
  return j;
}

std::string report_csv_header() { return "mode,tau,accuracy,avg_tokens,retrieval_rate\n"; }

std::string report_csv_row(const EvalReport& report) {
  const std::string tau =
      report.mode.kind == ModeKind::Lazy ? fixed4(report.mode.tau) : "";
  return std::string(mode_name(report.mode.kind)) + "," + tau + "," +
         fixed4(report.accuracy) + "," + fixed4(report.avg_tokens) + "," +
         fixed4(report.retrieval_rate) + "\n";
}

nlohmann::ordered_json sweep_to_json(const std::vector<std::pair<double, EvalReport>>& runs,
                                     const Mode& lazy_mode) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(lazy_mode.kind);
  j["n_tokens"] = lazy_mode.n_tokens;
  j["k"] = lazy_mode.k;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& [tau, report] : runs) {
    nlohmann::ordered_json p;
    p["tau"] = finite_or_null(tau);
    p["accuracy"] = report.accuracy;
    p["retrieval_rate"] = report.retrieval_rate;
    p["avg_tokens"] = report.avg_tokens;
    p["processed"] = report.processed;
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  return j;
}

std::string sweep_csv(const std::vector<std::pair<double, EvalReport>>& runs) {
  std::string out = "tau,accuracy,retrieval_rate,avg_tokens\n";
  for (const auto& [tau, report] : runs) {
    out += fixed4(tau) + "," + fixed4(report.accuracy) + "," +
           fixed4(report.retrieval_rate) + "," + fixed4(report.avg_tokens) + "\n";
  }
  return out;
}

}  // namespace lazyrag
