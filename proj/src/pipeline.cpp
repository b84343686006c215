#include "lazyrag/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "lazyrag/errors.hpp"
#include "lazyrag/util.hpp"

namespace lazyrag {

namespace {

// Chunk texts in rank order, duplicates (same chunk id) dropped, joined
// by blank lines.
std::string join_chunks(const std::vector<Chunk>& chunks) {
  std::vector<std::string> texts;
  std::unordered_set<std::string> seen;
  for (const Chunk& chunk : chunks) {
    if (seen.insert(chunk.id()).second) texts.push_back(chunk.text);
  }
  return join(texts, "\n\n");
}

void require_query(const std::string& query) {
  if (query.empty()) throw ValidationError("query must be nonempty");
}

std::vector<Chunk> chunks_of(const std::vector<RetrievalResult>& results) {
  std::vector<Chunk> chunks;
  chunks.reserve(results.size());
  for (const RetrievalResult& r : results) chunks.push_back(r.chunk);
  return chunks;
}

}  // namespace

Mode Mode::lazy(double tau, int n_tokens, int k) {
  Mode m;
  m.kind = ModeKind::Lazy;
  m.tau = tau;
  m.n_tokens = n_tokens;
  m.k = k;
  m.validate();
  return m;
}

Mode Mode::baseline() {
  Mode m;
  m.kind = ModeKind::Baseline;
  return m;
}

Mode Mode::standard_rag(int k) {
  Mode m;
  m.kind = ModeKind::StandardRag;
  m.k = k;
  m.validate();
  return m;
}

Mode Mode::strong_rag(int k) {
  Mode m;
  m.kind = ModeKind::StrongRag;
  m.k = k;
  m.validate();
  return m;
}

Mode Mode::oracle() {
  Mode m;
  m.kind = ModeKind::Oracle;
  return m;
}

void Mode::validate() const {
  if (kind == ModeKind::Lazy) {
    if (!(tau >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
    if (n_tokens < 1) throw std::invalid_argument("gate window must be >= 1 token");
  }
  if (kind == ModeKind::Lazy || kind == ModeKind::StandardRag ||
      kind == ModeKind::StrongRag) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
  }
}

const char* mode_name(ModeKind kind) {
  switch (kind) {
    case ModeKind::Lazy: return "lazy";
    case ModeKind::Baseline: return "baseline";
    case ModeKind::StandardRag: return "standard";
    case ModeKind::StrongRag: return "strong";
    case ModeKind::Oracle: return "oracle";
  }
  return "unknown";
}

ModeKind mode_from_name(const std::string& name) {
  if (name == "lazy") return ModeKind::Lazy;
  if (name == "baseline") return ModeKind::Baseline;
  if (name == "standard") return ModeKind::StandardRag;
  if (name == "strong") return ModeKind::StrongRag;
  if (name == "oracle") return ModeKind::Oracle;
  throw ValidationError("unknown mode: '" + name +
                        "' (expected lazy|baseline|standard|strong|oracle)");
}

std::string build_prompt_first_pass(const SummaryContext& summary,
                                    const std::string& query) {
  require_query(query);
  return "Context: " + summary.text +
         "\nBased on the context above, answer the following question.\nQuestion: " +
         query + "\nAnswer:";
}

std::string build_prompt_expanded(const SummaryContext& summary,
                                  const std::vector<Chunk>& chunks,
                                  const std::string& query) {
  require_query(query);
  if (chunks.empty()) throw ValidationError("expanded prompt needs at least one chunk");
  return "Context: " + summary.text + "\nAdditional Details: " + join_chunks(chunks) +
         "\nBased on the context above, answer the following question.\nQuestion: " +
         query + "\nAnswer:";
}

std::string build_prompt_baseline(const std::string& query) {
  require_query(query);
  return "Question: " + query + "\nAnswer:";
}

std::string build_prompt_chunks_only(const std::vector<Chunk>& chunks,
                                     const std::string& query) {
  require_query(query);
  if (chunks.empty()) throw ValidationError("chunk prompt needs at least one chunk");
  return "Context: " + join_chunks(chunks) +
         "\nBased on the context above, answer the following question.\nQuestion: " +
         query + "\nAnswer:";
}

std::string build_prompt_oracle(const std::string& gold_context, const std::string& query) {
  require_query(query);
  if (gold_context.empty()) throw ValidationError("gold context must be nonempty");
  return "Context: " + gold_context +
         "\nBased on the context above, answer the following question.\nQuestion: " +
         query + "\nAnswer:";
}

std::string extract_answer(const std::string& generated,
                           const std::vector<std::string>& stop_sequences) {
  std::size_t cut = generated.find('\n');
  for (const std::string& stop_seq : stop_sequences) {
    if (stop_seq.empty()) continue;
    const std::size_t pos = generated.find(stop_seq);
    if (pos != std::string::npos) cut = std::min(cut, pos);
  }
  return std::string(trim(generated.substr(0, cut)));
}

PipelineAnswer answer(const std::string& query, const QueryContext& ctx,
                      LanguageModel& model, Embedder& embedder, const Mode& mode,
                      const PipelineConfig& cfg) {
  require_query(query);
  mode.validate();
  if (cfg.max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");

  const WhitespaceTokenizer default_tokenizer;
  const Tokenizer& tokenizer = cfg.tokenizer ? *cfg.tokenizer : default_tokenizer;

  PipelineAnswer out;
  out.mode = mode;

  auto run_single_pass = [&](const std::string& prompt) {
    const std::vector<TokenStep> steps =
        model.generate(GenerationRequest{prompt, cfg.max_tokens, cfg.stop_sequences});
    out.answer_text = extract_answer(concat_tokens(steps), cfg.stop_sequences);
    out.input_tokens = tokenizer.count(prompt);
  };

  auto retrieve = [&](int k) {
    if (!ctx.index) throw ValidationError(std::string(mode_name(mode.kind)) +
                                          " mode requires a chunk index");
    const EmbeddingVector query_vec = embedder.embed(query);
    return ctx.index->search(query_vec, k);
  };

  switch (mode.kind) {
    case ModeKind::Baseline: {
      run_single_pass(build_prompt_baseline(query));
      break;
    }
    case ModeKind::Oracle: {
      if (!ctx.gold_context || ctx.gold_context->empty()) {
        throw ValidationError("oracle mode requires a gold context");
      }
      run_single_pass(build_prompt_oracle(*ctx.gold_context, query));
      break;
    }
    case ModeKind::StandardRag: {
      const std::vector<RetrievalResult> results = retrieve(mode.k);
      for (const RetrievalResult& r : results) out.retrieved_chunks.push_back(r.chunk.id());
      out.retrieval_performed = true;
      run_single_pass(build_prompt_chunks_only(chunks_of(results), query));
      break;
    }
    case ModeKind::StrongRag: {
      if (!ctx.summary) throw ValidationError("strong mode requires a summary context");
      const std::vector<RetrievalResult> results = retrieve(mode.k);
      for (const RetrievalResult& r : results) out.retrieved_chunks.push_back(r.chunk.id());
      out.retrieval_performed = true;
      run_single_pass(build_prompt_expanded(*ctx.summary, chunks_of(results), query));
      break;
    }
    case ModeKind::Lazy: {
      if (!ctx.summary) throw ValidationError("lazy mode requires a summary context");
      // Checked up front, not on first trigger: a missing index is a
      // configuration error and must not hide behind easy queries.
      if (!ctx.index) throw ValidationError("lazy mode requires a chunk index");
      // The first pass must generate enough steps to fill the gate
      // window even when the caller caps answers shorter.
      const int first_pass_tokens = std::max(mode.n_tokens, cfg.max_tokens);
      const std::string first_prompt = build_prompt_first_pass(*ctx.summary, query);
      const std::vector<TokenStep> first_steps = model.generate(
          GenerationRequest{first_prompt, first_pass_tokens, cfg.stop_sequences});

      const EntropyTrace trace =
          mean_entropy(first_steps, static_cast<std::size_t>(mode.n_tokens));
      const GateDecision decision = cfg.gate_mode == GateMode::StreamingHalt
                                        ? decide_streaming(trace, mode.tau)
                                        : decide(trace, mode.tau);
      out.entropy_trace = trace;
      out.gate_decision = decision;

      if (decision.triggered) {
        const std::vector<RetrievalResult> results = retrieve(mode.k);
        for (const RetrievalResult& r : results) {
          out.retrieved_chunks.push_back(r.chunk.id());
        }
        out.retrieval_performed = true;
        out.passes = 2;
        run_single_pass(build_prompt_expanded(*ctx.summary, chunks_of(results), query));
      } else {
        out.answer_text = extract_answer(concat_tokens(first_steps), cfg.stop_sequences);
        out.input_tokens = tokenizer.count(first_prompt);
      }
      break;
    }
  }
  return out;
}

}  // namespace lazyrag
