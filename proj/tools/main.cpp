#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using mwp::cli::Command;
  using mwp::cli::RunConfig;

  CLI::App app{"mwpkit: math word problem preprocessing and auxiliary-label toolkit"};
  app.require_subcommand(1);
  app.allow_extras(false);

  RunConfig config;
  std::string schema;
  std::string dedup_ref;

  const std::pair<const char*, Command> commands[] = {
      {"filter", Command::Filter}, {"map", Command::Map},   {"labels", Command::Labels},
      {"eval", Command::Eval},     {"stats", Command::Stats}, {"qt", Command::Qt},
      {"gradcheck", Command::GradCheck}};
  const char* descriptions[] = {"partition records into clean, unsolvable and rejected splits",
                                "replace quantities with placeholders",
                                "emit auxiliary label bundles",
                                "evaluate equations against answers",
                                "operator and quantity count histograms",
                                "quantity tagging labels",
                                "finite-difference check of the loss heads"};

  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    const Command cmd = commands[i].second;
    sub->callback([&config, cmd] { config.command = cmd; });
    if (cmd != Command::GradCheck) sub->add_option("--input", config.input, "input JSON-lines file")->required();
    sub->add_option("--output-dir", config.output_dir, "directory for output files")->capture_default_str();
    sub->add_option("--seed", config.seed, "run seed")->capture_default_str();
    sub->add_option("--k", config.k, "placeholder vocabulary size")->capture_default_str()->check(
        CLI::PositiveNumber);
    sub->add_flag("--strict", config.strict, "exit 1 when any record is skipped");
    sub->add_flag("--quiet", config.quiet, "no summary table on stderr");
    if (cmd == Command::GradCheck) {
      sub->add_option("--dim", config.dim, "embedding width")->capture_default_str();
      sub->add_option("--hidden", config.hidden, "hidden width")->capture_default_str();
      sub->add_option("--configs", config.configs, "random configurations per task")->capture_default_str();
      sub->add_option("--instances", config.instances, "instances per configuration")->capture_default_str();
      continue;
    }
    sub->add_option("--schema", schema, "JSON field-name map");
    sub->add_option("--max-text-tokens", config.max_text_tokens, "text length limit in tokens")->capture_default_str();
    sub->add_option("--max-eq-tokens", config.max_eq_tokens, "equation length limit in tokens")->capture_default_str();
    sub->add_option("--constants", config.constants, "allowed equation constants")->delimiter(',')
        ->capture_default_str();
    sub->add_option("--tolerance", config.tolerance, "answer check tolerance")->capture_default_str();
    sub->add_option("--threads", config.threads, "worker threads for filter")->capture_default_str();
    if (cmd == Command::Filter) sub->add_option("--dedup-ref", dedup_ref, "reference set for duplicate removal");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mwp::cli::kExitConfig;
  }
  if (!schema.empty()) config.schema_path = schema;
  if (!dedup_ref.empty()) config.dedup_ref = dedup_ref;
  return mwp::cli::run(config, std::cerr);
}
