// Command-line front end: index inspection, single questions, dataset
// evaluation, threshold sweeps, and the latency cost model.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lazyrag/corpus.hpp"
#include "lazyrag/embedding.hpp"
#include "lazyrag/errors.hpp"
#include "lazyrag/eval.hpp"
#include "lazyrag/gate.hpp"
#include "lazyrag/http_clients.hpp"
#include "lazyrag/index.hpp"
#include "lazyrag/latency.hpp"
#include "lazyrag/lm.hpp"
#include "lazyrag/mock_model.hpp"
#include "lazyrag/pipeline.hpp"
#include "lazyrag/util.hpp"

namespace {

using namespace lazyrag;

// Options shared by the question-answering subcommands.
struct BackendOptions {
  std::string model_spec;
  std::string embedder_spec = "builtin";
  int timeout_ms = 30000;
  int logprobs = 20;
};

struct ModeOptions {
  std::string mode = "lazy";
  double tau = 1.0;
  int n_tokens = 10;
  int k = 3;
  std::string gate_mode = "mean";
  int max_tokens = 32;
};

struct ChunkOptions {
  std::size_t chunk_tokens = 100;
  std::size_t overlap = 20;
};

std::unique_ptr<LanguageModel> make_model(const BackendOptions& backend) {
  const std::string& spec = backend.model_spec;
  if (spec.rfind("mock:", 0) == 0) {
    return std::make_unique<MockModel>(MockModel::from_file(spec.substr(5)));
  }
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    return std::make_unique<HttpLanguageModel>(spec, backend.logprobs, backend.timeout_ms);
  }
  throw ValidationError("unknown model spec '" + spec +
                        "' (expected mock:PATH or http://...)");
}

std::unique_ptr<Embedder> make_embedder(const BackendOptions& backend) {
  const std::string& spec = backend.embedder_spec;
  if (spec == "builtin") return std::make_unique<HashingEmbedder>();
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    return std::make_unique<HttpEmbedder>(spec, backend.timeout_ms);
  }
  throw ValidationError("unknown embedder spec '" + spec +
                        "' (expected builtin or http://...)");
}

Mode make_mode(const ModeOptions& opts, const std::string& name) {
  Mode mode;
  mode.kind = mode_from_name(name);
  mode.tau = opts.tau;
  mode.n_tokens = opts.n_tokens;
  mode.k = opts.k;
  mode.validate();
  return mode;
}

GateMode parse_gate_mode(const std::string& name) {
  if (name == "mean") return GateMode::MeanFirstN;
  if (name == "streaming") return GateMode::StreamingHalt;
  throw ValidationError("unknown gate mode '" + name + "' (expected mean|streaming)");
}

std::vector<std::string> split_csv_list(const std::string& joined) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= joined.size()) {
    const std::size_t comma = joined.find(',', pos);
    const std::string part(trim(joined.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + ": '" + text + "'");
  }
}

// ---------------------------------------------------------------- index

struct IndexArgs {
  std::string corpus_path;
  ChunkOptions chunking;
  bool json = false;
  std::string out;
};

int cmd_index(const IndexArgs& args) {
  const std::vector<Document> docs = load_corpus_file(args.corpus_path);
  if (docs.empty()) {
    std::cerr << "warning: corpus is empty: " << args.corpus_path << "\n";
  }
  const WhitespaceTokenizer tokenizer;
  const ChunkingParams params{args.chunking.chunk_tokens, args.chunking.overlap};

  nlohmann::ordered_json manifest;
  manifest["documents"] = docs.size();
  std::size_t total_chunks = 0;
  nlohmann::ordered_json doc_list = nlohmann::ordered_json::array();
  for (const Document& doc : docs) {
    const std::vector<Chunk> chunks = chunk_document(doc, tokenizer, params);
    const SummaryContext summary = summarize(doc);
    total_chunks += chunks.size();
    nlohmann::ordered_json dj;
    dj["id"] = doc.id;
    dj["tokens"] = tokenizer.count(doc.text);
    dj["chunks"] = chunks.size();
    dj["summary_tokens"] = tokenizer.count(summary.text);
    doc_list.push_back(std::move(dj));
  }
  manifest["chunks"] = total_chunks;
  manifest["docs"] = std::move(doc_list);

  if (!args.out.empty()) write_file(args.out + ".json", manifest.dump(2) + "\n");
  if (args.json) {
    std::cout << manifest.dump(2) << "\n";
  } else {
    std::cout << "documents: " << docs.size() << "\nchunks: " << total_chunks << "\n";
    for (const auto& dj : manifest["docs"]) {
      std::cout << dj["id"].get<std::string>() << ": tokens=" << dj["tokens"]
                << " chunks=" << dj["chunks"] << " summary_tokens="
                << dj["summary_tokens"] << "\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------------ ask

struct AskArgs {
  std::string query;
  std::string corpus_path;
  std::string doc_id;
  bool global_index = false;
  BackendOptions backend;
  ModeOptions mode;
  ChunkOptions chunking;
  bool json = false;
};

int cmd_ask(const AskArgs& args) {
  const Mode mode = make_mode(args.mode, args.mode.mode);
  std::unique_ptr<LanguageModel> model = make_model(args.backend);
  std::unique_ptr<Embedder> embedder = make_embedder(args.backend);

  PipelineConfig cfg;
  cfg.max_tokens = args.mode.max_tokens;
  cfg.gate_mode = parse_gate_mode(args.mode.gate_mode);

  // Baseline needs no corpus at all; every other mode reads one.
  std::optional<SummaryContext> summary;
  std::optional<VectorIndex> index;
  std::string gold_context;
  if (mode.kind != ModeKind::Baseline) {
    if (args.corpus_path.empty()) {
      throw ValidationError(std::string(mode_name(mode.kind)) +
                            " mode requires --corpus");
    }
    const std::vector<Document> docs = load_corpus_file(args.corpus_path);
    if (docs.empty()) throw ValidationError("corpus is empty: " + args.corpus_path);
    const Document* selected = nullptr;
    if (!args.doc_id.empty()) {
      for (const Document& doc : docs) {
        if (doc.id == args.doc_id) selected = &doc;
      }
      if (!selected) throw ValidationError("no document with id: " + args.doc_id);
    } else if (docs.size() == 1) {
      selected = &docs.front();
    } else if (!args.global_index) {
      throw ValidationError("corpus holds " + std::to_string(docs.size()) +
                            " documents; pick one with --doc or search them all "
                            "with --global-index");
    }

    const WhitespaceTokenizer tokenizer;
    const ChunkingParams params{args.chunking.chunk_tokens, args.chunking.overlap};
    if (selected) {
      summary = summarize(*selected);
      gold_context = selected->text;
    } else {
      // Whole-corpus mode without a focus document: the cheap context
      // is every document's summary; there is no single gold paragraph.
      std::vector<std::string> parts;
      for (const Document& doc : docs) parts.push_back(summarize(doc).text);
      summary = SummaryContext{"<corpus>", join(parts, " ")};
    }
    std::vector<Chunk> chunks;
    if (args.global_index) {
      for (const Document& doc : docs) {
        for (Chunk& chunk : chunk_document(doc, tokenizer, params)) {
          chunks.push_back(std::move(chunk));
        }
      }
    } else {
      chunks = chunk_document(*selected, tokenizer, params);
    }
    index.emplace(VectorIndex::build(chunks, *embedder));
  }

  QueryContext ctx;
  if (summary) ctx.summary = &*summary;
  if (index) ctx.index = &*index;
  if (!gold_context.empty()) ctx.gold_context = &gold_context;

  const PipelineAnswer result = answer(args.query, ctx, *model, *embedder, mode, cfg);

  if (args.json) {
    std::cout << answer_to_json(result).dump(2) << "\n";
    return 0;
  }
  std::cout << "answer: " << result.answer_text << "\n";
  std::cout << "mode: " << mode_name(mode.kind) << "\n";
  if (mode.kind == ModeKind::Lazy) {
    const GateDecision& gate = *result.gate_decision;
    std::cout << "retrieval: " << (gate.triggered ? "triggered" : "skipped")
              << " (mean entropy " << gate.mean_entropy << " vs threshold "
              << gate.threshold << ")\n";
  } else if (result.retrieval_performed) {
    std::cout << "retrieval: performed\n";
  }
  std::cout << "passes: " << result.passes << "\n";
  std::cout << "input tokens: " << result.input_tokens << "\n";
  if (!result.retrieved_chunks.empty()) {
    std::cout << "chunks: " << join(result.retrieved_chunks, ", ") << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- eval

struct EvalArgs {
  std::string dataset_path;
  std::string modes = "lazy";
  BackendOptions backend;
  ModeOptions mode;
  ChunkOptions chunking;
  int jobs = 1;
  bool strict = true;
  std::uint64_t seed = 0;
  std::optional<std::size_t> sample;
  bool json = false;
  std::string out;
};

EvalOptions make_eval_options(const EvalArgs& args) {
  EvalOptions opts;
  opts.chunking = ChunkingParams{args.chunking.chunk_tokens, args.chunking.overlap};
  opts.pipeline.max_tokens = args.mode.max_tokens;
  opts.pipeline.gate_mode = parse_gate_mode(args.mode.gate_mode);
  opts.jobs = args.jobs;
  opts.strict = args.strict;
  opts.seed = args.seed;
  opts.sample = args.sample;
  return opts;
}

void print_report_summary(const EvalReport& report) {
  std::cout << "mode=" << mode_name(report.mode.kind);
  if (report.mode.kind == ModeKind::Lazy) std::cout << " tau=" << report.mode.tau;
  std::cout << " processed=" << report.processed << " accuracy="
            << fixed4(report.accuracy) << " avg_tokens=" << fixed4(report.avg_tokens)
            << " retrieval_rate=" << fixed4(report.retrieval_rate) << "\n";
  if (report.entropy) {
    const EntropyStats& s = *report.entropy;
    std::cout << "entropy: correct=" << fixed4(s.mean_correct) << " (n=" << s.n_correct
              << ") incorrect=" << fixed4(s.mean_incorrect) << " (n=" << s.n_incorrect
              << ") t=" << fixed4(s.t_statistic) << " p=" << s.p_value
              << " d=" << fixed4(s.cohens_d) << " ci95=[" << fixed4(s.ci95_low) << ", "
              << fixed4(s.ci95_high) << "]\n";
  }
}

int cmd_eval(const EvalArgs& args) {
  const std::vector<EvalRecord> dataset = load_dataset_file(args.dataset_path);
  std::unique_ptr<LanguageModel> model = make_model(args.backend);
  std::unique_ptr<Embedder> embedder = make_embedder(args.backend);
  const EvalOptions opts = make_eval_options(args);

  const std::vector<std::string> mode_names = split_csv_list(args.modes);
  if (mode_names.empty()) throw ValidationError("no modes given");

  std::vector<EvalReport> reports;
  for (const std::string& name : mode_names) {
    reports.push_back(
        run_eval(dataset, make_mode(args.mode, name), *model, *embedder, opts));
  }

  nlohmann::ordered_json out_json;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::string csv = report_csv_header();
  for (const EvalReport& report : reports) {
    runs.push_back(report_to_json(report));
    csv += report_csv_row(report);
  }
  out_json["runs"] = std::move(runs);

  if (!args.out.empty()) {
    write_file(args.out + ".json", out_json.dump(2) + "\n");
    write_file(args.out + ".csv", csv);
  }
  if (args.json) {
    std::cout << out_json.dump(2) << "\n";
  } else {
    for (const EvalReport& report : reports) print_report_summary(report);
  }
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string dataset_path;
  std::string taus;
  BackendOptions backend;
  ModeOptions mode;
  ChunkOptions chunking;
  int jobs = 1;
  bool strict = true;
  std::uint64_t seed = 0;
  std::optional<std::size_t> sample;
  bool json = false;
  std::string out;
};

int cmd_sweep(const SweepArgs& args) {
  const std::vector<EvalRecord> dataset = load_dataset_file(args.dataset_path);
  std::unique_ptr<LanguageModel> model = make_model(args.backend);
  std::unique_ptr<Embedder> embedder = make_embedder(args.backend);

  std::vector<double> taus;
  for (const std::string& part : split_csv_list(args.taus)) {
    taus.push_back(parse_double(part, "threshold"));
  }
  if (taus.empty()) throw ValidationError("--taus needs at least one value");

  EvalArgs eval_args;
  eval_args.mode = args.mode;
  eval_args.chunking = args.chunking;
  eval_args.jobs = args.jobs;
  eval_args.strict = args.strict;
  eval_args.seed = args.seed;
  eval_args.sample = args.sample;
  const EvalOptions opts = make_eval_options(eval_args);

  const Mode lazy_mode = make_mode(args.mode, "lazy");
  const auto runs = sweep(dataset, taus, lazy_mode, *model, *embedder, opts);

  const nlohmann::ordered_json out_json = sweep_to_json(runs, lazy_mode);
  const std::string csv = sweep_csv(runs);
  if (!args.out.empty()) {
    write_file(args.out + ".json", out_json.dump(2) + "\n");
    write_file(args.out + ".csv", csv);
  }
  if (args.json) {
    std::cout << out_json.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  return 0;
}

// -------------------------------------------------------------- latency

struct LatencyArgs {
  bool reference_preset = false;
  std::vector<std::string> rates;
  std::string from_report;
  std::string t_retrievals;
  double t_entropy = 50.0;
  bool json = false;
  std::string out;
};

int cmd_latency(const LatencyArgs& args) {
  LatencyTable table;
  if (args.reference_preset) {
    table = reference_latency_table();
  } else {
    std::vector<LatencyConfig> configs;
    if (!args.from_report.empty()) {
      nlohmann::json report;
      try {
        report = nlohmann::json::parse(read_file(args.from_report));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(args.from_report + ": " + e.what());
      }
      const nlohmann::json runs = report.is_object() && report.contains("runs")
                                      ? report["runs"]
                                      : nlohmann::json::array({report});
      for (const nlohmann::json& run : runs) {
        if (!run.is_object() || !run.contains("mode") ||
            !run.contains("retrieval_rate") || !run["retrieval_rate"].is_number()) {
          throw ParseError(args.from_report +
                           ": runs need 'mode' and numeric 'retrieval_rate'");
        }
        std::string label = run["mode"].get<std::string>();
        if (run.contains("tau") && run["tau"].is_number()) {
          label += "(tau=" + fixed4(run["tau"].get<double>()) + ")";
        }
        configs.push_back(LatencyConfig{label, run["retrieval_rate"].get<double>()});
      }
    }
    for (const std::string& rate_spec : args.rates) {
      const std::size_t eq = rate_spec.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ValidationError("--rate expects label=value, got '" + rate_spec + "'");
      }
      configs.push_back(LatencyConfig{
          rate_spec.substr(0, eq),
          parse_double(rate_spec.substr(eq + 1), "retrieval rate")});
    }
    if (configs.empty()) {
      throw ValidationError(
          "latency needs --paper-defaults, --rate label=R, or --from-report FILE");
    }
    std::vector<double> t_retrievals;
    for (const std::string& part : split_csv_list(args.t_retrievals)) {
      t_retrievals.push_back(parse_double(part, "retrieval latency"));
    }
    table = latency_table(configs, args.t_entropy, t_retrievals);
  }

  if (!args.out.empty()) {
    write_file(args.out + ".json", latency_to_json(table).dump(2) + "\n");
    write_file(args.out + ".csv", latency_csv(table));
  }
  if (args.json) {
    std::cout << latency_to_json(table).dump(2) << "\n";
  } else {
    std::cout << latency_text(table);
  }
  return 0;
}

// ----------------------------------------------------------------- main

void add_backend_options(CLI::App* cmd, BackendOptions& backend, bool model_required) {
  CLI::Option* model = cmd->add_option("--model", backend.model_spec,
                                       "model backend: mock:PATH or http://URL");
  model->envname("LAZYRAG_MODEL");
  if (model_required) model->required();
  cmd->add_option("--embedder", backend.embedder_spec,
                  "embedding backend: builtin or http://URL")
      ->envname("LAZYRAG_EMBEDDER");
  cmd->add_option("--timeout-ms", backend.timeout_ms, "HTTP backend timeout")
      ->envname("LAZYRAG_TIMEOUT_MS");
  cmd->add_option("--logprobs", backend.logprobs,
                  "top-K logprobs requested from HTTP models");
}

void add_mode_options(CLI::App* cmd, ModeOptions& mode, bool with_mode_flag) {
  if (with_mode_flag) {
    cmd->add_option("--mode", mode.mode,
                    "pipeline mode(s): lazy|baseline|standard|strong|oracle")
        ->envname("LAZYRAG_MODE");
  }
  cmd->add_option("--tau", mode.tau, "entropy threshold in nats (lazy mode)")
      ->envname("LAZYRAG_TAU");
  cmd->add_option("--n-tokens", mode.n_tokens, "gate window in tokens (lazy mode)")
      ->envname("LAZYRAG_N_TOKENS");
  cmd->add_option("--k", mode.k, "chunks retrieved per query")->envname("LAZYRAG_K");
  cmd->add_option("--gate-mode", mode.gate_mode, "gate rule: mean or streaming")
      ->envname("LAZYRAG_GATE_MODE");
  cmd->add_option("--max-tokens", mode.max_tokens, "generation budget per answer")
      ->envname("LAZYRAG_MAX_TOKENS");
}

void add_chunk_options(CLI::App* cmd, ChunkOptions& chunking) {
  cmd->add_option("--chunk-tokens", chunking.chunk_tokens, "tokens per chunk")
      ->envname("LAZYRAG_CHUNK_TOKENS");
  cmd->add_option("--overlap", chunking.overlap, "tokens shared by neighbor chunks")
      ->envname("LAZYRAG_OVERLAP");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"adaptive retrieval-augmented question answering"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file (INI: key=value, [subcommand] sections)");

  IndexArgs index_args;
  CLI::App* index_cmd = app.add_subcommand("index", "chunk a corpus and print its manifest");
  index_cmd->add_option("--corpus", index_args.corpus_path, "NDJSON corpus path")
      ->envname("LAZYRAG_CORPUS")
      ->required();
  add_chunk_options(index_cmd, index_args.chunking);
  index_cmd->add_flag("--json", index_args.json, "print JSON instead of text");
  index_cmd->add_option("--out", index_args.out, "write <out>.json");

  AskArgs ask_args;
  CLI::App* ask_cmd = app.add_subcommand("ask", "answer one question");
  ask_cmd->add_option("query", ask_args.query, "the question")->required();
  ask_cmd->add_option("--corpus", ask_args.corpus_path, "NDJSON corpus path")
      ->envname("LAZYRAG_CORPUS");
  ask_cmd->add_option("--doc", ask_args.doc_id, "document id to answer from");
  ask_cmd->add_flag("--global-index", ask_args.global_index,
                    "search chunks of every document, not just the selected one");
  add_backend_options(ask_cmd, ask_args.backend, /*model_required=*/true);
  add_mode_options(ask_cmd, ask_args.mode, /*with_mode_flag=*/true);
  add_chunk_options(ask_cmd, ask_args.chunking);
  ask_cmd->add_flag("--json", ask_args.json, "print JSON instead of text");

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("eval", "run a dataset through one or more modes");
  eval_cmd->add_option("--dataset", eval_args.dataset_path, "JSON dataset path")
      ->envname("LAZYRAG_DATASET")
      ->required();
  eval_cmd->add_option("--mode", eval_args.modes,
                       "comma-separated modes: lazy|baseline|standard|strong|oracle")
      ->envname("LAZYRAG_MODE");
  add_backend_options(eval_cmd, eval_args.backend, /*model_required=*/true);
  add_mode_options(eval_cmd, eval_args.mode, /*with_mode_flag=*/false);
  add_chunk_options(eval_cmd, eval_args.chunking);
  eval_cmd->add_option("--jobs", eval_args.jobs, "worker threads across records")
      ->envname("LAZYRAG_JOBS");
  eval_cmd->add_flag("--strict,!--no-strict", eval_args.strict,
                     "abort the run when any record fails (default on)");
  eval_cmd->add_option("--seed", eval_args.seed, "sampling seed")->envname("LAZYRAG_SEED");
  eval_cmd->add_option("--sample", eval_args.sample, "evaluate a random subset of N records");
  eval_cmd->add_flag("--json", eval_args.json, "print JSON instead of text");
  eval_cmd->add_option("--out", eval_args.out, "write <out>.json and <out>.csv");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate lazy mode across entropy thresholds");
  sweep_cmd->add_option("--dataset", sweep_args.dataset_path, "JSON dataset path")
      ->envname("LAZYRAG_DATASET")
      ->required();
  sweep_cmd->add_option("--taus", sweep_args.taus, "comma-separated thresholds")
      ->required();
  add_backend_options(sweep_cmd, sweep_args.backend, /*model_required=*/true);
  add_mode_options(sweep_cmd, sweep_args.mode, /*with_mode_flag=*/false);
  add_chunk_options(sweep_cmd, sweep_args.chunking);
  sweep_cmd->add_option("--jobs", sweep_args.jobs, "worker threads across records")
      ->envname("LAZYRAG_JOBS");
  sweep_cmd->add_flag("--strict,!--no-strict", sweep_args.strict,
                      "abort the run when any record fails (default on)");
  sweep_cmd->add_option("--seed", sweep_args.seed, "sampling seed")
      ->envname("LAZYRAG_SEED");
  sweep_cmd->add_option("--sample", sweep_args.sample,
                        "evaluate a random subset of N records");
  sweep_cmd->add_flag("--json", sweep_args.json, "print JSON instead of CSV");
  sweep_cmd->add_option("--out", sweep_args.out, "write <out>.json and <out>.csv");

  LatencyArgs latency_args;
  CLI::App* latency_cmd =
      app.add_subcommand("latency", "expected overhead/savings of the entropy gate");
  latency_cmd->add_flag("--paper-defaults", latency_args.reference_preset,
                        "use the built-in reference preset");
  latency_cmd->add_option("--rate", latency_args.rates,
                          "config as label=retrieval_rate (repeatable)");
  latency_cmd->add_option("--from-report", latency_args.from_report,
                          "pull retrieval rates from an eval report JSON");
  latency_cmd->add_option("--t-retrieval", latency_args.t_retrievals,
                          "comma-separated retrieval latencies in ms");
  latency_cmd->add_option("--t-entropy", latency_args.t_entropy,
                          "gate latency in ms (default 50)");
  latency_cmd->add_flag("--json", latency_args.json, "print JSON instead of text");
  latency_cmd->add_option("--out", latency_args.out, "write <out>.json and <out>.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(index_cmd)) return cmd_index(index_args);
  if (app.got_subcommand(ask_cmd)) return cmd_ask(ask_args);
  if (app.got_subcommand(eval_cmd)) return cmd_eval(eval_args);
  if (app.got_subcommand(sweep_cmd)) return cmd_sweep(sweep_args);
  if (app.got_subcommand(latency_cmd)) return cmd_latency(latency_args);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const lazyrag::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const lazyrag::TransportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lazyrag::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lazyrag::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
