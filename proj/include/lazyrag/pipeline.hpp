#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lazyrag/corpus.hpp"
#include "lazyrag/embedding.hpp"
#include "lazyrag/gate.hpp"
#include "lazyrag/index.hpp"
#include "lazyrag/lm.hpp"
#include "lazyrag/tokenizer.hpp"

namespace lazyrag {

enum class ModeKind {
  Lazy,        // summary first, retrieval only when the gate fires
  Baseline,    // question only, no context at all
  StandardRag, // retrieved chunks as the only context, every query
  StrongRag,   // summary plus retrieved chunks, every query
  Oracle,      // the gold paragraph as context (upper bound)
};

struct Mode {
  ModeKind kind = ModeKind::Lazy;
  double tau = 1.0;   // entropy threshold, Lazy only
  int n_tokens = 10;  // gate window, Lazy only
  int k = 3;          // retrieved chunks, Lazy/Standard/Strong

  static Mode lazy(double tau = 1.0, int n_tokens = 10, int k = 3);
  static Mode baseline();
  static Mode standard_rag(int k = 3);
  static Mode strong_rag(int k = 3);
  static Mode oracle();

  void validate() const;  // throws std::invalid_argument on bad parameters
};

const char* mode_name(ModeKind kind);
ModeKind mode_from_name(const std::string& name);  // throws ValidationError

struct PipelineConfig {
  int max_tokens = 32;
  GateMode gate_mode = GateMode::MeanFirstN;
  std::vector<std::string> stop_sequences = {"\n"};
  const Tokenizer* tokenizer = nullptr;  // prompt accounting; whitespace by default
};

// What a query may draw on; modes require different subsets and reject
// a missing piece with ValidationError.
struct QueryContext {
  const SummaryContext* summary = nullptr;
  const VectorIndex* index = nullptr;
  const std::string* gold_context = nullptr;
};

struct PipelineAnswer {
  std::string answer_text;
  Mode mode;
  bool retrieval_performed = false;
  int passes = 1;
  std::vector<std::string> retrieved_chunks;  // chunk ids in rank order
  std::size_t input_tokens = 0;               // whitespace tokens of the final prompt
  // Present for Lazy runs only.
  std::optional<EntropyTrace> entropy_trace;
  std::optional<GateDecision> gate_decision;
};

// Prompt builders; templates are fixed byte-for-byte so prompt caching
// and tests can rely on them.
std::string build_prompt_first_pass(const SummaryContext& summary, const std::string& query);
std::string build_prompt_expanded(const SummaryContext& summary,
                                  const std::vector<Chunk>& chunks,
                                  const std::string& query);
std::string build_prompt_baseline(const std::string& query);
std::string build_prompt_chunks_only(const std::vector<Chunk>& chunks,
                                     const std::string& query);
std::string build_prompt_oracle(const std::string& gold_context, const std::string& query);

// The answer is everything up to the earliest stop sequence (or first
// newline), trimmed of surrounding whitespace.
std::string extract_answer(const std::string& generated,
                           const std::vector<std::string>& stop_sequences);

// Runs one query through the selected mode. Lazy performs the summary
// pass, evaluates the gate over the first n_tokens steps, and only on a
// trigger embeds the query, searches the index, and re-generates with
// the retrieved chunks appended.
PipelineAnswer answer(const std::string& query, const QueryContext& ctx,
                      LanguageModel& model, Embedder& embedder, const Mode& mode,
                      const PipelineConfig& cfg = {});

}  // namespace lazyrag
