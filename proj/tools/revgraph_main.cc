// Copyright 2026 The Revgraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// revgraph: command-line entry points over the revision analysis library.
//
// Exit codes: 0 success, 1 domain error, 2 usage error. With --json, errors
// are written to stderr as {"error": {"code": ..., "message": ...}}.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "revgraph/alignment.h"
#include "revgraph/analytics.h"
#include "revgraph/corpus_io.h"
#include "revgraph/edit_graph.h"
#include "revgraph/llm/chat.h"
#include "revgraph/llm/demos.h"
#include "revgraph/llm/evaluate.h"
#include "revgraph/llm/prompts.h"
#include "revgraph/segmentation.h"
#include "revgraph/serialization.h"
#include "revgraph/service.h"
#include "revgraph/status_macros.h"
#include "revgraph/two_stage.h"

namespace revgraph {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Options shared by every subcommand.
struct GlobalOptions {
  bool json_errors = false;
  std::string config_path;
  json config = json::object();
};

int ReportError(const GlobalOptions& global, const absl::Status& status) {
  if (global.json_errors) {
    json body = {{"error",
                  {{"code", absl::StatusCodeToString(status.code())},
                   {"message", std::string(status.message())}}}};
    std::cerr << body.dump() << "\n";
  } else {
    std::cerr << "revgraph: " << status << "\n";
  }
  return kExitDomain;
}

absl::Status LoadConfig(GlobalOptions& global) {
  if (global.config_path.empty()) return absl::OkStatus();
  ASSIGN_OR_RETURN(std::string text, ReadFile(global.config_path));
  global.config = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (global.config.is_discarded() || !global.config.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(global.config_path, ": config must be a JSON object"));
  }
  return absl::OkStatus();
}

// Writes to `path`, or stdout when it is empty or "-".
absl::Status Emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return absl::OkStatus();
  }
  return WriteFile(path, content);
}

// Trigram hashing by default; {"vectors": {text: [...]}} pins a fixed table,
// which fixtures use to reproduce hand-picked similarities.
absl::StatusOr<std::shared_ptr<const EmbeddingProvider>> ConfiguredEmbedder(const json& config) {
  int dimension = 1024;
  if (config.contains("embedder") && config["embedder"].is_object()) {
    const json& e = config["embedder"];
    if (e.contains("vectors")) {
      std::map<std::string, std::vector<double>, std::less<>> table;
      if (!e["vectors"].is_object()) {
        return absl::InvalidArgumentError("embedder.vectors must map texts to arrays");
      }
      for (const auto& [text, v] : e["vectors"].items()) {
        if (!v.is_array() || !std::all_of(v.begin(), v.end(),
                                          [](const json& x) { return x.is_number(); })) {
          return absl::InvalidArgumentError(absl::StrCat("embedder vector for '", text,
                                                         "' must be an array of numbers"));
        }
        table[text] = v.get<std::vector<double>>();
      }
      return std::make_shared<TableEmbedder>(std::move(table));
    }
    dimension = e.value("dimension", dimension);
  }
  return std::make_shared<TrigramEmbedder>(dimension);
}

llm::BatchOptions ConfiguredBatch(const json& config) {
  llm::BatchOptions batch;
  if (config.contains("batch") && config["batch"].is_object()) {
    const json& b = config["batch"];
    batch.max_in_flight = b.value("max_in_flight", batch.max_in_flight);
    batch.max_retries = b.value("max_retries", batch.max_retries);
    batch.seed = b.value("seed", batch.seed);
  }
  return batch;
}

absl::StatusOr<std::shared_ptr<const llm::ChatProvider>> ConfiguredProvider(const json& config) {
  if (!config.contains("provider")) {
    return absl::FailedPreconditionError("no 'provider' in the config file");
  }
  return llm::MakeChatProvider(config["provider"]);
}

absl::StatusOr<DocumentGraph> LoadSegmented(const std::string& path) {
  ASSIGN_OR_RETURN(DocumentGraph doc, LoadDocument(path));
  if (doc.IsSegmented()) return doc;
  std::vector<Segmenter> segmenters = {MakeDefaultSegmenter()};
  return SegmentGraph(doc, segmenters);
}

std::string EditsJsonLines(std::span<const Edit> edits) {
  std::vector<json> lines;
  for (const Edit& e : edits) lines.push_back(EditToJson(e));
  return ToJsonLines(lines);
}

// segment ---------------------------------------------------------------

struct SegmentOptions {
  std::string in;
  std::string out;
  std::string segmenters = "default";
  std::string abbreviations;
  bool overwrite = false;
};

absl::Status RunSegment(const SegmentOptions& opts) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(opts.in));
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError(absl::StrCat(opts.in, ": invalid JSON"));
  ASSIGN_OR_RETURN(DocumentInput input, DocumentInputFromJson(j));
  std::shared_ptr<const AbbreviationSet> abbreviations;
  if (!opts.abbreviations.empty()) {
    auto merged = std::make_shared<AbbreviationSet>(AbbreviationSet::Default());
    RETURN_IF_ERROR(merged->MergeFile(opts.abbreviations));
    abbreviations = merged;
  }
  std::vector<std::string> names = absl::StrSplit(opts.segmenters, ',', absl::SkipEmpty());
  ASSIGN_OR_RETURN(std::vector<Segmenter> segmenters, SegmentersByName(names, abbreviations));
  ASSIGN_OR_RETURN(DocumentInput segmented, SegmentDocument(input, segmenters, opts.overwrite));
  ASSIGN_OR_RETURN(DocumentGraph graph, BuildDocument(segmented));
  return Emit(opts.out, DocumentToJson(graph).dump(2) + "\n");
}

// align -----------------------------------------------------------------

struct AlignOptions {
  std::string old_path;
  std::string new_path;
  std::optional<double> t0;
  std::optional<double> t1;
  std::string measures;
  std::string out;
  std::string granularity = "sentence";
  bool two_stage = false;
  std::string demos;
};

absl::StatusOr<AlignConfig> BuildAlignConfig(const json& config, std::optional<double> t0,
                                             std::optional<double> t1, std::string measures) {
  ASSIGN_OR_RETURN(auto embedder, ConfiguredEmbedder(config));
  AlignConfig align = DefaultAlignConfig(embedder);
  if (config.contains("align") && config["align"].is_object()) {
    const json& a = config["align"];
    align.t0 = a.value("t0", align.t0);
    align.t1 = a.value("t1", align.t1);
    if (measures.empty()) measures = a.value("measures", "");
  }
  if (t0) align.t0 = *t0;
  if (t1) align.t1 = *t1;
  if (!measures.empty()) {
    ASSIGN_OR_RETURN(align.measures, MakeMeasures(measures, embedder));
  }
  RETURN_IF_ERROR(align.Validate());
  return align;
}

absl::Status RunAlign(const GlobalOptions& global, const AlignOptions& opts) {
  ASSIGN_OR_RETURN(AlignConfig config,
                   BuildAlignConfig(global.config, opts.t0, opts.t1, opts.measures));
  ASSIGN_OR_RETURN(DocumentGraph old_doc, LoadSegmented(opts.old_path));
  ASSIGN_OR_RETURN(DocumentGraph new_doc, LoadSegmented(opts.new_path));
  std::vector<Edit> edits;
  if (opts.two_stage) {
    ASSIGN_OR_RETURN(auto provider, ConfiguredProvider(global.config));
    TwoStageOptions two_stage;
    const std::string demo_path =
        opts.demos.empty() ? llm::DefaultDemoPath(llm::Task::kAlignment) : opts.demos;
    ASSIGN_OR_RETURN(two_stage.demos, llm::LoadDemoFile(demo_path));
    two_stage.batch = ConfiguredBatch(global.config);
    ASSIGN_OR_RETURN(TwoStageResult result,
                     TwoStageAlign(old_doc, new_doc, config, *provider, two_stage));
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    edits = std::move(result.edits);
  } else {
    ASSIGN_OR_RETURN(edits, PreAlign(old_doc, new_doc, config));
  }
  std::optional<Granularity> target = ParseGranularity(opts.granularity);
  if (!target) {
    return absl::InvalidArgumentError(absl::StrCat("unknown granularity '", opts.granularity, "'"));
  }
  if (*target != Granularity::kSentence) {
    ASSIGN_OR_RETURN(edits, LiftEdits(edits, *target, old_doc, new_doc));
  }
  return Emit(opts.out, EditsJsonLines(edits));
}

// analyze ---------------------------------------------------------------

struct AnalyzeOptions {
  std::string manifest;
  std::string old_path;
  std::string new_path;
  std::string edits;
  std::string requests;
  std::string links;
  std::string out;
  std::string plots;
  int bins = 10;
};

absl::Status WriteHistogramCsvs(const std::string& dir, const PositionalHistogram& hist) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return absl::PermissionDeniedError(absl::StrCat("cannot create ", dir, ": ", ec.message()));
  auto write = [&](const std::string& name, const auto& rows) {
    std::string csv = "label";
    for (int b = 0; b < hist.bins; ++b) absl::StrAppend(&csv, ",bin", b);
    csv += "\n";
    for (const auto& [label, counts] : rows) {
      absl::StrAppend(&csv, ToString(label), ",", absl::StrJoin(counts, ","), "\n");
    }
    return WriteFile((fs::path(dir) / name).string(), csv);
  };
  RETURN_IF_ERROR(write("positional_by_action.csv", hist.by_action));
  return write("positional_by_intent.csv", hist.by_intent);
}

template <typename T>
absl::StatusOr<std::vector<T>> LoadRecords(const std::string& path,
                                           absl::StatusOr<T> (*parse)(const json&)) {
  std::vector<T> out;
  if (path.empty()) return out;
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  ASSIGN_OR_RETURN(std::vector<json> lines, ParseJsonLines(text));
  for (size_t i = 0; i < lines.size(); ++i) {
    absl::StatusOr<T> record = parse(lines[i]);
    if (!record.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": record ", i + 1, ": ", std::string(record.status().message())));
    }
    out.push_back(*std::move(record));
  }
  return out;
}

absl::Status RunAnalyze(const AnalyzeOptions& opts) {
  if (!opts.manifest.empty()) {
    ASSIGN_OR_RETURN(CorpusManifest manifest, LoadManifest(opts.manifest));
    ASSIGN_OR_RETURN(std::vector<CorpusPair> corpus, LoadCorpus(manifest));
    std::vector<PairAnalyticsInput> inputs;
    for (const CorpusPair& p : corpus) {
      inputs.push_back({&p.old_doc, &p.new_doc, p.edits, p.requests, p.links});
    }
    ASSIGN_OR_RETURN(CorpusReport report, AnalyzeCorpus(inputs, opts.bins));
    if (!opts.plots.empty()) RETURN_IF_ERROR(WriteHistogramCsvs(opts.plots, report.positional));
    return Emit(opts.out, CorpusReportToJson(report).dump(2) + "\n");
  }
  if (opts.old_path.empty() || opts.new_path.empty() || opts.edits.empty()) {
    return absl::InvalidArgumentError("analyze needs --manifest or --old, --new and --edits");
  }
  ASSIGN_OR_RETURN(DocumentGraph old_doc, LoadSegmented(opts.old_path));
  ASSIGN_OR_RETURN(DocumentGraph new_doc, LoadSegmented(opts.new_path));
  ASSIGN_OR_RETURN(std::vector<Edit> edits, LoadEdits(opts.edits));
  ASSIGN_OR_RETURN(std::vector<ReviewRequest> requests,
                   LoadRecords<ReviewRequest>(opts.requests, RequestFromJson));
  ASSIGN_OR_RETURN(std::vector<CrossLink> links,
                   LoadRecords<CrossLink>(opts.links, CrossLinkFromJson));
  ASSIGN_OR_RETURN(AnalyticsReport report,
                   Analyze(edits, old_doc, new_doc, requests, links, opts.bins));
  if (!opts.plots.empty()) RETURN_IF_ERROR(WriteHistogramCsvs(opts.plots, report.positional));
  return Emit(opts.out, ReportToJson(report).dump(2) + "\n");
}

// dataset ---------------------------------------------------------------

struct DatasetOptions {
  std::string manifest;
  std::string task = "intent";
  std::optional<uint64_t> seed;
  std::string out_dir;
};

json IntentSampleJson(const IntentSample& s) {
  return {{"pair_id", s.pair_id},         {"edit_id", s.edit_id},
          {"action", ToString(s.action)}, {"old_text", s.old_text},
          {"new_text", s.new_text},       {"old_section", s.old_section},
          {"new_section", s.new_section},
          {"label", s.intent ? json(ToString(*s.intent)) : json(nullptr)}};
}

json AlignmentSampleJson(const AlignmentSample& s) {
  return {{"pair_id", s.pair_id},   {"new_id", s.new_id},     {"old_id", s.old_id},
          {"new_text", s.new_text}, {"old_text", s.old_text}, {"label", s.aligned ? "Yes" : "No"}};
}

json RequestSampleJson(const RequestSample& s) {
  return {{"pair_id", s.pair_id},
          {"sentence_id", s.sentence_id},
          {"new_text", s.text},
          {"label", s.is_request ? "Yes" : "No"}};
}

template <typename Sample>
absl::Status WriteSplit(const std::string& dir, const std::string& task,
                        const std::vector<Sample>& train, const std::vector<Sample>& test,
                        const std::vector<std::string>& warnings, json (*to_json)(const Sample&)) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return absl::PermissionDeniedError(absl::StrCat("cannot create ", dir, ": ", ec.message()));
  auto lines = [&](const std::vector<Sample>& samples) {
    std::vector<json> out;
    for (const Sample& s : samples) out.push_back(to_json(s));
    return ToJsonLines(out);
  };
  RETURN_IF_ERROR(WriteFile((fs::path(dir) / (task + "_train.jsonl")).string(), lines(train)));
  return WriteFile((fs::path(dir) / (task + "_test.jsonl")).string(), lines(test));
}

absl::Status RunDataset(const GlobalOptions& global, const DatasetOptions& opts) {
  ASSIGN_OR_RETURN(CorpusManifest manifest, LoadManifest(opts.manifest));
  ASSIGN_OR_RETURN(std::vector<CorpusPair> corpus, LoadCorpus(manifest));
  const uint64_t seed = opts.seed.value_or(manifest.seed);
  if (opts.task == "intent") {
    IntentDataset d = BuildIntentDataset(corpus, seed);
    return WriteSplit(opts.out_dir, opts.task, d.train, d.test, d.warnings, IntentSampleJson);
  }
  if (opts.task == "alignment") {
    ASSIGN_OR_RETURN(auto embedder, ConfiguredEmbedder(global.config));
    ASSIGN_OR_RETURN(AlignmentDataset d, BuildAlignmentDataset(corpus, *embedder, seed));
    return WriteSplit(opts.out_dir, opts.task, d.train, d.test, d.warnings, AlignmentSampleJson);
  }
  if (opts.task == "request") {
    ASSIGN_OR_RETURN(RequestDataset d, BuildRequestDataset(corpus, seed));
    return WriteSplit(opts.out_dir, opts.task, d.train, d.test, d.warnings, RequestSampleJson);
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown dataset task '", opts.task, "'"));
}

// prompts ---------------------------------------------------------------

struct PromptsOptions {
  std::string task = "intent";
  std::string items;
  std::string demos;
  std::string pool;
  std::string method = "def";
  int n = 0;
  bool include_defaults = false;
  std::string ordering = "def_then_dyn";
  std::string rationale = "LR";
  int max_tokens = 0;
  bool run = false;
  std::string out;
};

absl::Status RunPrompts(const GlobalOptions& global, const PromptsOptions& opts) {
  std::optional<llm::Task> task = llm::ParseTask(opts.task);
  std::optional<llm::DemoMethod> method = llm::ParseDemoMethod(opts.method);
  std::optional<llm::DemoOrdering> ordering = llm::ParseDemoOrdering(opts.ordering);
  std::optional<llm::RationaleOrder> rationale = llm::ParseRationaleOrder(opts.rationale);
  if (!task || !method || !ordering || !rationale) {
    return absl::InvalidArgumentError("unknown --task, --method, --ordering or --rationale value");
  }
  const std::string demo_path = opts.demos.empty() ? llm::DefaultDemoPath(*task) : opts.demos;
  ASSIGN_OR_RETURN(std::vector<llm::DemoItem> defaults, llm::LoadDemoFile(demo_path));
  std::vector<llm::DemoItem> pool;
  if (!opts.pool.empty()) {
    ASSIGN_OR_RETURN(pool, llm::LoadDemoFile(opts.pool));
  }

  if (opts.items.empty()) {
    llm::PromptBundle skeleton = llm::BuildPromptSkeleton(*task, defaults, *rationale);
    return Emit(opts.out, skeleton.Render() + "\n");
  }
  ASSIGN_OR_RETURN(std::vector<llm::DemoItem> items,
                   llm::LoadDemoFile(opts.items, /*require_label=*/false));
  llm::DemoSelectorConfig selector{*method, opts.n, opts.include_defaults, *ordering, *rationale};
  llm::PromptConfig prompt_config{*rationale, opts.max_tokens};
  ASSIGN_OR_RETURN(auto embedder, ConfiguredEmbedder(global.config));

  std::vector<llm::BatchItem> batch;
  for (const llm::DemoItem& item : items) {
    ASSIGN_OR_RETURN(llm::DemoSelection selection,
                     llm::SelectDemos(selector, item, pool, defaults, *embedder));
    absl::StatusOr<llm::PromptBundle> prompt =
        *task == llm::Task::kIntent || *task == llm::Task::kIntentAddDelete
            ? llm::BuildIntentPrompt(item, selection.demos, prompt_config)
            : llm::BuildPrompt(*task, item, selection.demos, prompt_config);
    if (!prompt.ok()) {
      return absl::Status(prompt.status().code(),
                          absl::StrCat("item ", item.id, ": ", std::string(prompt.status().message())));
    }
    batch.push_back({item.id, *std::move(prompt)});
  }

  std::map<std::string, absl::StatusOr<std::string>> answers;
  if (opts.run) {
    ASSIGN_OR_RETURN(auto provider, ConfiguredProvider(global.config));
    answers = llm::RunBatch(*provider, batch, ConfiguredBatch(global.config));
  }
  std::vector<json> lines;
  for (size_t i = 0; i < batch.size(); ++i) {
    json line = {{"id", batch[i].id},
                 {"system", batch[i].prompt.system},
                 {"user", batch[i].prompt.UserMessage()}};
    if (!items[i].label.empty()) line["gold"] = items[i].label;
    if (opts.run) {
      const absl::StatusOr<std::string>& answer = answers.at(batch[i].id);
      if (answer.ok()) {
        line["answer"] = *answer;
      } else {
        line["error"] = std::string(answer.status().message());
      }
    }
    lines.push_back(std::move(line));
  }
  return Emit(opts.out, ToJsonLines(lines));
}

// eval ------------------------------------------------------------------

struct EvalOptions {
  std::string predictions;
  std::string task = "intent";
  std::string out;
};

// Each line carries "gold" and either a parsed "prediction" (null when the
// model gave no usable answer) or a raw "answer" to parse.
absl::Status RunEval(const EvalOptions& opts) {
  std::optional<llm::Task> task = llm::ParseTask(opts.task);
  if (!task) return absl::InvalidArgumentError(absl::StrCat("unknown task '", opts.task, "'"));
  ASSIGN_OR_RETURN(std::string text, ReadFile(opts.predictions));
  ASSIGN_OR_RETURN(std::vector<json> lines, ParseJsonLines(text));
  std::vector<std::optional<std::string>> predictions;
  std::vector<std::string> gold;
  for (size_t i = 0; i < lines.size(); ++i) {
    const json& line = lines[i];
    if (!line.is_object() || !line.contains("gold") || !line["gold"].is_string()) {
      return absl::InvalidArgumentError(absl::StrCat(opts.predictions, ":", i + 1,
                                                     ": needs a string 'gold'"));
    }
    gold.push_back(line["gold"].get<std::string>());
    std::optional<std::string> prediction;
    if (line.contains("prediction") && line["prediction"].is_string()) {
      prediction = line["prediction"].get<std::string>();
    } else if (line.contains("answer") && line["answer"].is_string()) {
      absl::StatusOr<llm::Verdict> verdict = llm::ParseVerdict(line["answer"].get<std::string>(), *task);
      if (verdict.ok()) prediction = verdict->label;
    }
    predictions.push_back(std::move(prediction));
  }
  std::vector<std::string> labels = llm::TaskLabels(*task);
  ASSIGN_OR_RETURN(llm::EvalResult result, llm::Evaluate(predictions, gold, labels));
  return Emit(opts.out, llm::EvalResultToJson(result).dump(2) + "\n");
}

// serve -----------------------------------------------------------------

struct ServeOptions {
  std::string manifest;
  std::string addr = "127.0.0.1:8080";
  std::string static_dir;
  std::string journal_dir;
};

absl::Status RunServe(const GlobalOptions& global, const ServeOptions& opts) {
  std::vector<std::string> parts = absl::StrSplit(opts.addr, absl::MaxSplits(':', 1));
  int port = 0;
  if (parts.size() != 2 || !absl::SimpleAtoi(parts[1], &port) || port < 0 || port > 65535) {
    return absl::InvalidArgumentError(absl::StrCat("bad --addr '", opts.addr, "'; want host:port"));
  }
  ASSIGN_OR_RETURN(CorpusManifest manifest, LoadManifest(opts.manifest));
  ServiceConfig config;
  ASSIGN_OR_RETURN(config.align, BuildAlignConfig(global.config, std::nullopt, std::nullopt, ""));
  config.journal_dir = opts.journal_dir.empty()
                           ? (fs::path(opts.manifest).parent_path() / "journal").string()
                           : opts.journal_dir;
  ASSIGN_OR_RETURN(std::unique_ptr<RevisionService> service,
                   RevisionService::Create(manifest, std::move(config)));
  std::cerr << "serving " << manifest.entries.size() << " pair(s) on " << opts.addr << std::endl;
  return Serve(*service, parts[0], port, opts.static_dir);
}

int Main(int argc, char** argv) {
  CLI::App app{"Revision analysis for document version pairs."};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_flag("--json", global.json_errors, "Write errors to stderr as JSON");
  app.add_option("--config", global.config_path, "JSON config file")->check(CLI::ExistingFile);

  SegmentOptions segment;
  CLI::App* seg = app.add_subcommand("segment", "Split paragraphs into sentences");
  seg->add_option("--in", segment.in, "Document JSON")->required()->check(CLI::ExistingFile);
  seg->add_option("--out", segment.out, "Output document JSON (default stdout)");
  seg->add_option("--segmenters", segment.segmenters, "Comma-separated: default, naive");
  seg->add_option("--abbreviations", segment.abbreviations, "Extra abbreviation list")
      ->check(CLI::ExistingFile);
  seg->add_flag("--overwrite", segment.overwrite, "Resegment paragraphs that have sentences");

  AlignOptions align;
  CLI::App* al = app.add_subcommand("align", "Pre-align two document versions");
  al->add_option("--old", align.old_path, "Old version JSON")->required()->check(CLI::ExistingFile);
  al->add_option("--new", align.new_path, "New version JSON")->required()->check(CLI::ExistingFile);
  al->add_option("--t0", align.t0, "Lower threshold");
  al->add_option("--t1", align.t1, "Upper threshold");
  al->add_option("--measures", align.measures, "Comma-separated: lev, fuzzy, sem");
  al->add_option("--out", align.out, "Edits JSONL (default stdout)");
  al->add_option("--granularity", align.granularity, "sentence, paragraph or section");
  al->add_flag("--two-stage", align.two_stage, "Verify leftovers with the configured model");
  al->add_option("--demos", align.demos, "Alignment demonstrations for --two-stage");

  AnalyzeOptions analyze;
  CLI::App* an = app.add_subcommand("analyze", "Revision statistics for a pair or a corpus");
  an->add_option("--manifest", analyze.manifest, "Corpus manifest")->check(CLI::ExistingFile);
  an->add_option("--old", analyze.old_path, "Old version JSON")->check(CLI::ExistingFile);
  an->add_option("--new", analyze.new_path, "New version JSON")->check(CLI::ExistingFile);
  an->add_option("--edits", analyze.edits, "Edits JSONL")->check(CLI::ExistingFile);
  an->add_option("--requests", analyze.requests, "Review requests JSONL")->check(CLI::ExistingFile);
  an->add_option("--links", analyze.links, "Cross-links JSONL")->check(CLI::ExistingFile);
  an->add_option("--out", analyze.out, "Report JSON (default stdout)");
  an->add_option("--plots", analyze.plots, "Directory for histogram CSVs");
  an->add_option("--bins", analyze.bins, "Positional bins")->check(CLI::PositiveNumber);

  DatasetOptions dataset;
  CLI::App* ds = app.add_subcommand("dataset", "Build train/test splits from a corpus");
  ds->add_option("--manifest", dataset.manifest, "Corpus manifest")
      ->required()
      ->check(CLI::ExistingFile);
  ds->add_option("--task", dataset.task, "intent, alignment or request")
      ->check(CLI::IsMember({"intent", "alignment", "request"}));
  ds->add_option("--seed", dataset.seed, "Split seed (default: manifest seed)");
  ds->add_option("--out-dir", dataset.out_dir, "Output directory")->required();

  PromptsOptions prompts;
  CLI::App* pr = app.add_subcommand("prompts", "Render prompts, optionally running them");
  pr->add_option("--task", prompts.task, "intent, intent_add_delete, alignment or request");
  pr->add_option("--items", prompts.items, "JSON array of test items")->check(CLI::ExistingFile);
  pr->add_option("--demos", prompts.demos, "Default demonstrations")->check(CLI::ExistingFile);
  pr->add_option("--pool", prompts.pool, "Pool for dynamic demonstrations")
      ->check(CLI::ExistingFile);
  pr->add_option("--method", prompts.method, "def, cat, diff or loc");
  pr->add_option("--n", prompts.n, "Dynamic demonstrations")->check(CLI::NonNegativeNumber);
  pr->add_flag("--include-defaults", prompts.include_defaults, "Add defaults to dynamic demos");
  pr->add_option("--ordering", prompts.ordering, "def_then_dyn or dyn_then_def");
  pr->add_option("--rationale", prompts.rationale, "LR, RL or none");
  pr->add_option("--max-tokens", prompts.max_tokens, "Prompt budget (0 = unlimited)");
  pr->add_flag("--run", prompts.run, "Send prompts to the configured provider");
  pr->add_option("--out", prompts.out, "Output JSONL (default stdout)");

  EvalOptions eval;
  CLI::App* ev = app.add_subcommand("eval", "Score predictions against gold labels");
  ev->add_option("--predictions", eval.predictions, "Predictions JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--task", eval.task, "Task whose label set applies");
  ev->add_option("--out", eval.out, "Result JSON (default stdout)");

  ServeOptions serve;
  CLI::App* sv = app.add_subcommand("serve", "Serve the annotation HTTP API");
  sv->add_option("--manifest", serve.manifest, "Corpus manifest")
      ->required()
      ->check(CLI::ExistingFile);
  sv->add_option("--addr", serve.addr, "host:port");
  sv->add_option("--static", serve.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  sv->add_option("--journal-dir", serve.journal_dir, "Journal directory (default: next to manifest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  absl::Status status = LoadConfig(global);
  if (status.ok()) {
    if (*seg) status = RunSegment(segment);
    else if (*al) status = RunAlign(global, align);
    else if (*an) status = RunAnalyze(analyze);
    else if (*ds) status = RunDataset(global, dataset);
    else if (*pr) status = RunPrompts(global, prompts);
    else if (*ev) status = RunEval(eval);
    else if (*sv) status = RunServe(global, serve);
  }
  return status.ok() ? 0 : ReportError(global, status);
}

}  // namespace
}  // namespace revgraph

int main(int argc, char** argv) { return revgraph::Main(argc, argv); }
