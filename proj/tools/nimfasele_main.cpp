// Copyright 2026 The Nimfasele Authors
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

// Command-line front end: normalize, build, train, correct, eval.

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nimfasele/nimfasele.hpp"

namespace nf = nimfasele;
using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kStdio = "-";

std::string ReadAll(const std::string& path) {
  std::ostringstream ss;
  if (path == kStdio) {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nf::Error(nf::ErrorCode::kIo, "cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

void WriteAll(const std::string& path, std::string_view data) {
  if (path == kStdio) {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw nf::Error(nf::ErrorCode::kIo, "cannot write " + path);
}

// Lines without their terminators; a final newline does not start a new line.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw nf::Error(nf::ErrorCode::kIo, "SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// UTC, from SOURCE_DATE_EPOCH when set so that manifests can be reproduced.
std::string Timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Manifest {
 public:
  explicit Manifest(std::string command) {
    doc_["command"] = std::move(command);
    doc_["version"] = std::string(nf::kVersion);
    doc_["timestamp"] = Timestamp();
    doc_["config"] = json::object();
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
  }

  json& config() { return doc_["config"]; }
  void Set(const std::string& key, json value) { doc_[key] = std::move(value); }

  void AddInput(const std::string& path, std::string_view data) {
    doc_["inputs"].push_back(Entry(path, data));
  }
  void AddOutput(const std::string& path, std::string_view data, json extra = {}) {
    json e = Entry(path, data);
    if (extra.is_object()) e.update(extra);
    doc_["outputs"].push_back(std::move(e));
  }

  void Write(const std::string& path) const { WriteAll(path, doc_.dump(2) + "\n"); }

 private:
  static json Entry(const std::string& path, std::string_view data) {
    return json{{"path", path == kStdio ? "<stdio>" : path},
                {"sha256", Sha256Hex(data)},
                {"bytes", data.size()}};
  }

  json doc_;
};

struct TableFlags {
  std::string table_path;
  bool unify_digits = false;

  void Register(CLI::App* app) {
    app->add_option("--table", table_path,
                    "Extra normalization entries, one `hex<TAB>replacement` per line");
    app->add_flag("--unify-digits", unify_digits, "Map Arabic-Indic digits to Persian digits");
  }

  nf::CharClassTable Build() const {
    nf::CharClassTable table = nf::CharClassTable::Default({.unify_digits = unify_digits});
    if (!table_path.empty()) {
      std::istringstream in(ReadAll(table_path));
      table = table.WithOverrides(in);
    }
    return table;
  }

  void Describe(json& config) const {
    config["unify_digits"] = unify_digits;
    config["table"] = table_path.empty() ? json(nullptr) : json(table_path);
  }
};

// Manifest path for a command writing `out`: explicit, beside `out`, or none.
std::optional<std::string> ManifestPath(const std::string& requested, const std::string& out) {
  if (!requested.empty()) return requested;
  if (out != kStdio) return out + ".manifest.json";
  return std::nullopt;
}

// ---------------------------------------------------------------- normalize

struct NormalizeArgs {
  std::string in = "-";
  std::string out = "-";
  std::string manifest;
  TableFlags table;
};

void RunNormalize(const NormalizeArgs& args) {
  const nf::CharClassTable table = args.table.Build();
  const std::string input = ReadAll(args.in);
  std::string output;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(input)) {
    ++line_no;
    output += nf::utf8::Encode(table.Normalize(nf::utf8::Decode(line, line_no)));
    output.push_back('\n');
  }
  WriteAll(args.out, output);
  if (auto path = ManifestPath(args.manifest, args.out)) {
    Manifest m("normalize");
    args.table.Describe(m.config());
    m.AddInput(args.in, input);
    m.AddOutput(args.out, output);
    m.Write(*path);
  }
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string corpus;
  std::string out_dir;
  std::string mode = "A";
  std::string format = "plain";
  nf::NoiseConfig noise;
  nf::SplitSpec split;
  TableFlags table;
};

std::string SerializeDataset(const std::vector<nf::Sample>& samples) {
  std::string text;
  for (const nf::Sample& s : samples) {
    text += nf::SerializeSample(s);
    text.push_back('\n');
  }
  return text;
}

void RunBuild(const BuildArgs& args) {
  const bool noisy = args.mode == "B";
  args.noise.Validate();
  nf::ValidateSplitSpec(args.split);
  const nf::CharClassTable table = args.table.Build();
  const std::string input = ReadAll(args.corpus);
  std::istringstream in(input);
  nf::LoadOptions load;
  load.format = args.format == "conll" ? nf::CorpusFormat::kTwoColumn : nf::CorpusFormat::kPlain;
  load.table = &table;
  load.provenance = args.corpus;
  const nf::LoadedCorpus loaded = nf::LoadTokenizedCorpus(in, load);
  const nf::CorpusSplit split = nf::SplitCorpus(loaded.corpus, args.split);

  Manifest manifest("build");
  json& config = manifest.config();
  config["mode"] = args.mode;
  config["format"] = args.format;
  config["test_frac"] = args.split.test_fraction;
  config["valid_frac"] = args.split.valid_fraction;
  if (noisy) {
    config["r1_max"] = args.noise.r1_max;
    config["r2_max"] = args.noise.r2_max;
    config["r3_max"] = args.noise.r3_max;
    config["rng"] = std::string(nf::kGeneratorId);
  }
  args.table.Describe(config);
  manifest.Set("seed", args.noise.seed);
  manifest.Set("skipped_empty_lines", loaded.skipped_empty);
  manifest.AddInput(args.corpus, input);

  // Noise streams are keyed by the sentence's index in the whole corpus.
  std::uint64_t offset = 0;
  const std::pair<const char*, const nf::Corpus*> parts[] = {
      {"test.tsv", &split.test}, {"valid.tsv", &split.valid}, {"train.tsv", &split.train}};
  for (const auto& [name, part] : parts) {
    std::vector<nf::Sample> samples;
    if (noisy) {
      samples = nf::BuildNoisyDataset(*part, args.noise, offset);
    } else {
      for (const auto& s : part->sentences) samples.push_back(nf::ToSample(nf::EncodeStripped(s)));
    }
    offset += part->size();
    const std::string text = SerializeDataset(samples);
    const std::string path = args.out_dir + "/" + name;
    WriteAll(path, text);
    manifest.AddOutput(name, text, {{"samples", samples.size()}});
    std::cerr << name << ": " << samples.size() << " samples\n";
  }
  manifest.Write(args.out_dir + "/manifest.json");
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string dataset;
  std::string model;
  std::string valid;
  std::string manifest;
  nf::crf::TrainConfig cfg;
};

std::vector<nf::Sample> ParseDataset(std::string_view text) {
  std::vector<nf::Sample> out;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (line.empty()) continue;
    out.push_back(nf::ParseSample(line, line_no));
  }
  return out;
}

nf::EvalReport EvaluateSamples(const nf::crf::CrfModel& model,
                               const std::vector<nf::Sample>& samples) {
  nf::EvalReport total;
  for (const nf::Sample& s : samples) {
    if (s.symbols.empty()) continue;
    total = nf::Merge(total, nf::Evaluate(s.tags, nf::crf::PredictMasked(model, s.symbols, s.mask),
                                          s.mask));
  }
  return total;
}

const char* StopName(nf::crf::OwlqnStop stop) {
  switch (stop) {
    case nf::crf::OwlqnStop::kMaxIterations: return "max-iterations";
    case nf::crf::OwlqnStop::kConverged: return "converged";
    case nf::crf::OwlqnStop::kZeroGradient: return "zero-gradient";
    case nf::crf::OwlqnStop::kLineSearchFailed: return "line-search-failed";
  }
  return "unknown";
}

void RunTrain(const TrainArgs& args) {
  const std::string train_text = ReadAll(args.dataset);
  const std::vector<nf::Sample> train = ParseDataset(train_text);
  std::string valid_text;
  std::vector<nf::Sample> valid;
  if (!args.valid.empty()) {
    valid_text = ReadAll(args.valid);
    valid = ParseDataset(valid_text);
  }
  std::ostream& log = args.model == kStdio ? std::cerr : std::cout;

  nf::crf::TrainSummary summary;
  const nf::crf::CrfModel model = nf::crf::Train(
      train, args.cfg,
      [&](const nf::crf::TrainIteration& it) {
        char line[160];
        std::snprintf(line, sizeof(line), "iter %3d  objective %.6f  nonzero %zu", it.iteration,
                      it.objective, it.nonzero_weights);
        log << line;
        if (!valid.empty()) {
          std::snprintf(line, sizeof(line), "  valid_macro_f1 %.4f",
                        EvaluateSamples(it.snapshot(), valid).macro_f1);
          log << line;
        }
        log << '\n';
      },
      &summary);
  log << "stopped after " << summary.iterations << " iterations (" << StopName(summary.stop)
      << "), " << model.vocab().size() << " features\n";

  std::ostringstream buf;
  nf::crf::SaveModel(model, buf);
  const std::string model_text = buf.str();
  WriteAll(args.model, model_text);

  if (auto path = ManifestPath(args.manifest, args.model)) {
    Manifest m("train");
    json& config = m.config();
    config["c1"] = args.cfg.c1;
    config["c2"] = args.cfg.c2;
    config["max_iter"] = args.cfg.max_iterations;
    config["tol"] = args.cfg.convergence_tol;
    config["min_count"] = args.cfg.min_feature_count;
    config["threads"] = args.cfg.threads;
    m.Set("seed", nullptr);
    m.Set("iterations", summary.iterations);
    m.Set("stop", StopName(summary.stop));
    m.AddInput(args.dataset, train_text);
    if (!args.valid.empty()) m.AddInput(args.valid, valid_text);
    m.AddOutput(args.model, model_text);
    m.Write(*path);
  }
}

// ---------------------------------------------------------------- correct

struct CorrectArgs {
  std::string model;
  std::string in = "-";
  std::string out = "-";
  std::string manifest;
  TableFlags table;
};

nf::crf::CrfModel LoadModelFile(const std::string& path, std::string* text = nullptr) {
  std::string data = ReadAll(path);
  std::istringstream in(data);
  nf::crf::CrfModel model = nf::crf::LoadModel(in);
  if (text != nullptr) *text = std::move(data);
  return model;
}

void RunCorrect(const CorrectArgs& args) {
  std::string model_text;
  const nf::crf::CrfModel model = LoadModelFile(args.model, &model_text);
  const nf::CharClassTable table = args.table.Build();
  const std::string input = ReadAll(args.in);
  std::string output;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(input)) {
    ++line_no;
    output += nf::utf8::Encode(nf::crf::Correct(model, nf::utf8::Decode(line, line_no), table));
    output.push_back('\n');
  }
  WriteAll(args.out, output);
  if (auto path = ManifestPath(args.manifest, args.out)) {
    Manifest m("correct");
    args.table.Describe(m.config());
    m.AddInput(args.model, model_text);
    m.AddInput(args.in, input);
    m.AddOutput(args.out, output);
    m.Write(*path);
  }
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string input;
  std::string model;
  std::string external;
  bool baseline = false;
  bool samples = false;
  bool strict = false;
  std::string format = "both";
  std::string title;
  std::string out = "-";
  std::string manifest;
  TableFlags table;
};

// Scores the model on each pair's gold separators. Stripped-input models see
// the gold letters only; retained-input models also see the raw separators.
nf::EvalReport EvaluateModelOnPairs(const nf::crf::CrfModel& model,
                                    const std::vector<nf::ParallelPair>& pairs) {
  nf::EvalReport total;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const nf::TaggedSentence gold = nf::EncodeStripped(pairs[i].gold);
    if (gold.chars.empty()) continue;
    if (model.input_mode() == nf::crf::InputMode::kStripped) {
      total = nf::Merge(total, nf::Evaluate(gold.tags, nf::crf::Predict(model, gold.chars)));
      continue;
    }
    const std::u32string raw = nf::TrimSeparators(pairs[i].raw);
    if (nf::StripSeparators(raw) != gold.chars) {
      throw nf::Error(nf::ErrorCode::kNotComparable,
                      "raw and gold differ in non-separator characters", i + 1);
    }
    const nf::Sample s = nf::EncodeRetained(raw, gold.tags);
    total = nf::Merge(total, nf::Evaluate(s.tags, nf::crf::PredictMasked(model, s.symbols, s.mask),
                                          s.mask));
  }
  return total;
}

void RunEval(const EvalArgs& args) {
  const int sources = (args.model.empty() ? 0 : 1) + (args.baseline ? 1 : 0) +
                      (args.external.empty() ? 0 : 1);
  if (sources != 1) {
    throw nf::Error(nf::ErrorCode::kInvalidArgument,
                    "give exactly one of --model, --baseline, --external");
  }
  if (args.samples && args.model.empty()) {
    throw nf::Error(nf::ErrorCode::kInvalidArgument, "--samples requires --model");
  }
  const nf::CharClassTable table = args.table.Build();
  const std::string input = ReadAll(args.input);
  Manifest m("eval");
  m.AddInput(args.input, input);

  nf::EvalReport report;
  std::string title = args.title;
  if (args.samples) {
    std::string model_text;
    const nf::crf::CrfModel model = LoadModelFile(args.model, &model_text);
    m.AddInput(args.model, model_text);
    report = EvaluateSamples(model, ParseDataset(input));
    if (title.empty()) title = "crf";
  } else {
    std::istringstream in(input);
    const std::vector<nf::ParallelPair> pairs =
        nf::LoadParallel(in, {.table = &table, .strict = args.strict});
    if (args.baseline) {
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        try {
          report = nf::Merge(report, nf::ScoreBaseline(pairs[i]));
        } catch (const nf::Error& e) {
          throw nf::Error(e.code(), "pair differs outside separators", i + 1);
        }
      }
      if (title.empty()) title = "baseline";
    } else if (!args.external.empty()) {
      const std::string corrected_text = ReadAll(args.external);
      m.AddInput(args.external, corrected_text);
      const auto corrected = SplitLines(corrected_text);
      if (corrected.size() != pairs.size()) {
        throw nf::Error(nf::ErrorCode::kFormat,
                        "line count mismatch: " + std::to_string(corrected.size()) +
                            " corrected lines for " + std::to_string(pairs.size()) + " pairs");
      }
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::u32string fixed = table.Normalize(nf::utf8::Decode(corrected[i], i + 1));
        report = nf::Merge(report, nf::EvaluateExternal(pairs[i].raw, fixed, pairs[i].gold));
      }
      if (title.empty()) title = "external";
    } else {
      std::string model_text;
      const nf::crf::CrfModel model = LoadModelFile(args.model, &model_text);
      m.AddInput(args.model, model_text);
      report = EvaluateModelOnPairs(model, pairs);
      if (title.empty()) title = "crf";
    }
  }

  std::string output;
  if (args.format != "kv") output += nf::FormatTable(report, title);
  if (args.format == "both") output += "\n";
  if (args.format != "table") output += nf::FormatKeyValue(report);
  WriteAll(args.out, output);
  if (auto path = ManifestPath(args.manifest, args.out)) {
    json& config = m.config();
    config["source"] = args.baseline ? "baseline" : !args.external.empty() ? "external" : "model";
    config["samples"] = args.samples;
    config["strict"] = args.strict;
    config["format"] = args.format;
    args.table.Describe(config);
    m.AddOutput(args.out, output);
    m.Write(*path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persian space and ZWNJ correction with a linear-chain CRF"};
  app.set_version_flag("--version", std::string(nf::kVersion));
  app.require_subcommand(1);

  NormalizeArgs norm;
  CLI::App* normalize = app.add_subcommand("normalize", "Canonicalize characters line by line");
  normalize->add_option("in", norm.in, "Input file, - for stdin")->capture_default_str();
  normalize->add_option("out", norm.out, "Output file, - for stdout")->capture_default_str();
  normalize->add_option("--manifest", norm.manifest,
                        "Manifest path (default: <out>.manifest.json)");
  norm.table.Register(normalize);

  BuildArgs build;
  CLI::App* build_cmd = app.add_subcommand("build", "Split a corpus and write tagged datasets");
  build_cmd->add_option("corpus", build.corpus, "Tokenized corpus, - for stdin")->required();
  build_cmd->add_option("-o,--out-dir", build.out_dir, "Directory for the dataset files")
      ->required()
      ->check(CLI::ExistingDirectory);
  build_cmd->add_option("--mode", build.mode, "A: separators removed; B: noisy separators kept")
      ->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  build_cmd
      ->add_option("--format", build.format, "plain: one sentence per line; conll: token column")
      ->check(CLI::IsMember({"plain", "conll"}))
      ->capture_default_str();
  build_cmd->add_option("--seed", build.noise.seed, "Noise seed")->capture_default_str();
  build_cmd->add_option("--r1-max", build.noise.r1_max, "Max share of ZWNJs turned into spaces")
      ->capture_default_str();
  build_cmd->add_option("--r2-max", build.noise.r2_max, "Max share of spaces deleted")
      ->capture_default_str();
  build_cmd->add_option("--r3-max", build.noise.r3_max, "Max share of characters disturbed")
      ->capture_default_str();
  build_cmd->add_option("--test-frac", build.split.test_fraction, "Leading share for test")
      ->capture_default_str();
  build_cmd->add_option("--valid-frac", build.split.valid_fraction, "Next share for validation")
      ->capture_default_str();
  build.table.Register(build_cmd);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a CRF on a dataset file");
  train_cmd->add_option("dataset", train.dataset, "Dataset file, - for stdin")->required();
  train_cmd->add_option("-m,--model", train.model, "Model output, - for stdout")->required();
  train_cmd->add_option("--valid", train.valid, "Validation dataset scored each iteration");
  train_cmd->add_option("--c1", train.cfg.c1, "L1 coefficient")->capture_default_str();
  train_cmd->add_option("--c2", train.cfg.c2, "L2 coefficient")->capture_default_str();
  train_cmd->add_option("--max-iter", train.cfg.max_iterations, "Iteration limit")
      ->capture_default_str();
  train_cmd->add_option("--tol", train.cfg.convergence_tol, "Relative objective change to stop")
      ->capture_default_str();
  train_cmd->add_option("--min-count", train.cfg.min_feature_count, "Feature frequency cutoff")
      ->capture_default_str();
  train_cmd->add_option("--threads", train.cfg.threads, "Gradient worker threads")
      ->capture_default_str();
  train_cmd->add_option("--manifest", train.manifest,
                        "Manifest path (default: <model>.manifest.json)");

  CorrectArgs corr;
  CLI::App* correct = app.add_subcommand("correct", "Rewrite spaces and ZWNJs line by line");
  correct->add_option("-m,--model", corr.model, "Model file")->required();
  correct->add_option("in", corr.in, "Input file, - for stdin")->capture_default_str();
  correct->add_option("out", corr.out, "Output file, - for stdout")->capture_default_str();
  correct->add_option("--manifest", corr.manifest, "Manifest path (default: <out>.manifest.json)");
  corr.table.Register(correct);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score separator decisions");
  eval_cmd->add_option("input", eval.input, "raw<TAB>gold file, or a dataset with --samples")
      ->required();
  eval_cmd->add_option("-m,--model", eval.model, "Score this model");
  eval_cmd->add_flag("--baseline", eval.baseline, "Score the raw side as it is");
  eval_cmd->add_option("--external", eval.external, "Score corrected text, one line per pair");
  eval_cmd->add_flag("--samples", eval.samples, "Input is a dataset file from `build`");
  eval_cmd->add_flag("--strict", eval.strict, "Reject pairs whose letters differ");
  eval_cmd->add_option("--format", eval.format, "table, kv or both")
      ->check(CLI::IsMember({"table", "kv", "both"}))
      ->capture_default_str();
  eval_cmd->add_option("--title", eval.title, "Row label in the table");
  eval_cmd->add_option("-o,--out", eval.out, "Report output, - for stdout")->capture_default_str();
  eval_cmd->add_option("--manifest", eval.manifest, "Manifest path (default: <out>.manifest.json)");
  eval.table.Register(eval_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*normalize) RunNormalize(norm);
    if (*build_cmd) RunBuild(build);
    if (*train_cmd) RunTrain(train);
    if (*correct) RunCorrect(corr);
    if (*eval_cmd) RunEval(eval);
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "nimfasele: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
