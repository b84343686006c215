#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazyrag/corpus.hpp"
#include "lazyrag/pipeline.hpp"
#include "lazyrag/stats.hpp"

namespace lazyrag {

struct EvalRecord {
  std::string id;
  std::string question;
  std::string context;                  // gold paragraph for this question
  std::vector<std::string> answers;     // acceptable references, nonempty
  std::string doc_id;                   // defaults to the record id
};

// Answer normalization before comparison: lowercase, strip punctuation
// (Unicode punctuation categories), drop the articles a/an/the, and
// collapse whitespace runs to single spaces.
std::string normalize_answer(const std::string& text);

// True when the normalized prediction equals any normalized reference.
bool exact_match(const std::string& prediction, const std::vector<std::string>& references);

// JSON array of {"id", "question", "context", "answers", "doc_id"?}.
std::vector<EvalRecord> load_dataset(std::istream& in,
                                     const std::string& source_name = "<dataset>");
std::vector<EvalRecord> load_dataset_file(const std::string& path);

// Welch comparison of mean gate entropies, correct answers vs incorrect
// ones; the confidence interval covers mean_incorrect - mean_correct.
struct EntropyStats {
  std::size_t n_correct = 0;
  std::size_t n_incorrect = 0;
  double mean_correct = 0.0;
  double mean_incorrect = 0.0;
  double t_statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  double cohens_d = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

EntropyStats entropy_stats(const std::vector<double>& correct_entropies,
                           const std::vector<double>& incorrect_entropies);

struct PerQueryResult {
  std::string record_id;
  PipelineAnswer answer;
  bool correct = false;
  std::string error;  // nonempty when the record failed (lenient runs only)
};

struct EvalReport {
  Mode mode;
  std::vector<PerQueryResult> per_query;  // sorted by record id
  std::size_t processed = 0;              // records that completed
  double accuracy = 0.0;
  double avg_tokens = 0.0;                // mean final-prompt tokens per query
  double retrieval_rate = 0.0;            // fraction of queries that searched
  std::optional<EntropyStats> entropy;    // only when both groups have >= 2
};

struct EvalOptions {
  ChunkingParams chunking;
  std::size_t sentences_per_paragraph = 2;
  PipelineConfig pipeline;
  int jobs = 1;            // worker threads across records
  bool strict = true;      // fail the whole run on the first record error
  std::optional<std::size_t> sample;  // evaluate a random subset of this size
  std::uint64_t seed = 0;             // drives sampling only
};

// Runs every record through the pipeline. Each record's gold paragraph
// is its own document: it is summarized, chunked, and indexed per
// record, which matches reading-comprehension datasets where the
// paragraph is the retrieval universe. Aggregates are computed after
// sorting, so results do not depend on worker scheduling.
EvalReport run_eval(const std::vector<EvalRecord>& dataset, const Mode& mode,
                    LanguageModel& model, Embedder& embedder,
                    const EvalOptions& opts = {});

// Re-runs a Lazy evaluation once per threshold.
std::vector<std::pair<double, EvalReport>> sweep(const std::vector<EvalRecord>& dataset,
                                                 const std::vector<double>& taus,
                                                 const Mode& lazy_mode,
                                                 LanguageModel& model, Embedder& embedder,
                                                 const EvalOptions& opts = {});

// Deterministic subset: Fisher-Yates prefix driven by an explicitly
// seeded mt19937_64, so the same seed picks the same records everywhere.
std::vector<EvalRecord> sample_records(const std::vector<EvalRecord>& dataset,
                                       std::size_t n, std::uint64_t seed);

// Serialization. JSON uses ordered keys so repeated runs are
// byte-identical; CSV numbers are fixed at four decimals.
nlohmann::ordered_json answer_to_json(const PipelineAnswer& answer);
nlohmann::ordered_json report_to_json(const EvalReport& report);
std::string report_csv_header();
std::string report_csv_row(const EvalReport& report);
nlohmann::ordered_json sweep_to_json(const std::vector<std::pair<double, EvalReport>>& runs,
                                     const Mode& lazy_mode);
std::string sweep_csv(const std::vector<std::pair<double, EvalReport>>& runs);

}  // namespace lazyrag
