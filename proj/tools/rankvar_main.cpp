/*
 * Copyright 2026 The rankvar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankvar/error.hpp"
#include "rankvar/evaluate.hpp"
#include "rankvar/fingerprint.hpp"
#include "rankvar/io.hpp"
#include "rankvar/report.hpp"
#include "rankvar/split.hpp"
#include "rankvar/variant.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

/// Thrown for problems that are the caller's fault (bad flag values,
/// unknown variant names); mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    rankvar::write_file_atomic(out_path, content);
  }
}

struct SplitArgs {
  std::string input;
  double threshold = 4.5;
  double test_fraction = 0.2;
  std::string out_train;
  std::string out_test;
};

int run_split(const SplitArgs& args) {
  rankvar::SplitConfig config;
  config.positive_threshold = args.threshold;
  config.test_fraction = args.test_fraction;
  config.validate();

  const auto parsed = rankvar::parse_interactions_file(args.input);
  const auto positive = rankvar::filter_positive(parsed.log, config.positive_threshold);
  const auto split = rankvar::temporal_split(positive, config.test_fraction);
  const auto warm_test = rankvar::drop_cold(split.train, split.test);

  rankvar::write_file_atomic(args.out_train,
                             rankvar::write_interactions(split.train, parsed.format));
  rankvar::write_file_atomic(args.out_test,
                             rankvar::write_interactions(warm_test, parsed.format));
  std::cerr << "split: " << parsed.log.size() << " rows -> " << positive.size()
            << " positive -> train " << split.train.size() << ", test " << warm_test.size()
            << " (" << (split.test.size() - warm_test.size()) << " cold rows dropped)\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string predictions;
  std::string test;
  std::string train;
  std::size_t k = 20;
  std::vector<std::string> variants{"all"};
  std::string format = "json";
  std::string out;
  std::size_t threads = 1;
  std::string dataset;
};

std::vector<rankvar::VariantSpec> select_variants(const std::vector<std::string>& wanted) {
  std::vector<rankvar::VariantSpec> registry = rankvar::registry_default();
  if (wanted.size() == 1 && wanted.front() == "all") return registry;

  std::vector<rankvar::VariantSpec> selected;
  for (const std::string& name : wanted) {
    bool found = false;
    for (const rankvar::VariantSpec& spec : registry) {
      if (spec.canonical_name == name) {
        selected.push_back(spec);
        found = true;
        break;
      }
    }
    if (!found) {
      throw UsageError("unknown variant '" + name + "' (use --list-variants to see names)");
    }
  }
  return selected;
}

int run_evaluate(const EvaluateArgs& args) {
  const auto registry = select_variants(args.variants);

  const auto preds = rankvar::parse_predictions_file(args.predictions);
  const auto test = rankvar::parse_interactions_file(args.test);
  const auto truth = rankvar::extract_ground_truth(test.log);
  rankvar::InteractionLog train;
  if (!args.train.empty()) {
    train = rankvar::parse_interactions_file(args.train).log;
  }

  std::string dataset = args.dataset;
  if (dataset.empty()) {
    dataset = std::filesystem::path(args.predictions).stem().string();
  }

  rankvar::ExecPolicy exec;
  exec.threads = args.threads;
  const auto report = rankvar::evaluate_matrix(preds, truth, train, registry,
                                               rankvar::CutOff(args.k), exec, dataset);
  emit(rankvar::render_report(report, rankvar::report_format_from_name(args.format)),
       args.out);
  return kExitOk;
}

struct FingerprintArgs {
  std::string observed;
  std::string report;
  double tolerance = 0.0005;
  std::string format = "markdown";
  std::string out;
};

int run_fingerprint(const FingerprintArgs& args) {
  const auto observed = rankvar::parse_observed_json(rankvar::read_file(args.observed));
  const auto report = rankvar::parse_report_json(rankvar::read_file(args.report));
  const auto result = rankvar::fingerprint(observed, report, args.tolerance);
  emit(rankvar::render_fingerprint(result, rankvar::report_format_from_name(args.format)),
       args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rankvar. Variant-explicit evaluation of top-k recommendation metrics:\n"
      "temporal splitting, a 21-variant metric matrix, and fingerprinting of\n"
      "externally computed values."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  SplitArgs split_args;
  CLI::App* split = app.add_subcommand(
      "split", "Filter positives, split by global timestamp, drop cold test rows");
  split->add_option("--input", split_args.input, "Interaction log (CSV/TSV with header)")
      ->required();
  split->add_option("--threshold", split_args.threshold,
                    "Keep interactions with rating >= this value")
      ->capture_default_str();
  split->add_option("--test-fraction", split_args.test_fraction,
                    "Fraction of latest rows that form the test set, in (0,1)")
      ->capture_default_str();
  split->add_option("--out-train", split_args.out_train, "Output path for the train log")
      ->required();
  split->add_option("--out-test", split_args.out_test, "Output path for the test log")
      ->required();

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Evaluate predictions against a test split under every variant");
  evaluate->add_option("--predictions", eval_args.predictions,
                       "Predictions file: user_id,item_id,score; rows grouped per user in "
                       "descending score")
      ->required();
  evaluate->add_option("--test", eval_args.test, "Test interaction log (ground truth)")
      ->required();
  evaluate->add_option("--train", eval_args.train,
                       "Train interaction log; enables exclusion of seen items in AUC "
                       "variants");
  evaluate->add_option("--k", eval_args.k, "Recommendation list depth")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--variants", eval_args.variants,
                       "'all' or comma-separated canonical variant names")
      ->delimiter(',')
      ->capture_default_str();
  evaluate->add_option("--format", eval_args.format, "json, markdown or csv")
      ->capture_default_str();
  evaluate->add_option("--out", eval_args.out, "Output path (stdout when omitted)");
  evaluate->add_option("--threads", eval_args.threads,
                       "Worker-thread bound; output is identical for every value")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--dataset", eval_args.dataset,
                       "Dataset label in the report (defaults to the predictions file stem)");

  FingerprintArgs fp_args;
  CLI::App* fp = app.add_subcommand(
      "fingerprint", "Match externally observed metric values to registered variants");
  fp->add_option("--observed", fp_args.observed, "JSON object of metric label -> value")
      ->required();
  fp->add_option("--report", fp_args.report, "Evaluation report JSON produced by 'evaluate'")
      ->required();
  fp->add_option("--tolerance", fp_args.tolerance, "Maximum absolute deviation of a match")
      ->capture_default_str();
  fp->add_option("--format", fp_args.format, "json, markdown or csv")
      ->capture_default_str();
  fp->add_option("--out", fp_args.out, "Output path (stdout when omitted)");

  app.add_flag_callback(
      "--list-variants",
      []() {
        for (const rankvar::VariantSpec& spec : rankvar::registry_default()) {
          std::cout << spec.canonical_name << "\n";
        }
        throw CLI::Success{};
      },
      "Print canonical variant names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --list-variants
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsageError;
  }

  try {
    if (split->parsed()) return run_split(split_args);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (fp->parsed()) return run_fingerprint(fp_args);
    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const rankvar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == rankvar::ErrorKind::Config ? kExitUsageError : kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}
