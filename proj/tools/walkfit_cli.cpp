#include <CLI11.hpp>

#include <iostream>

#include "walkfit/cli/commands.hpp"

#ifndef WALKFIT_DEFAULT_CATALOG
#define WALKFIT_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace {

void scene_flags(CLI::App* cmd, walkfit::cli::RunConfig& c) {
  cmd->add_option("--scene", c.scene, "scene bundle (JSON)")->required();
  cmd->add_option("--out", c.out, "output directory")->required();
  cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores");
}

void metric_flags(CLI::App* cmd, walkfit::cli::RunConfig& c) {
  cmd->add_option("--samples", c.samples, "sample target per space")->capture_default_str();
  cmd->add_option("--window", c.window, "comparison window side in meters")->capture_default_str();
  cmd->add_option("--gains", c.gains, "rotation gain range min,max[,count]")->delimiter(',')->expected(2, 3);
}

}  // namespace

int main(int argc, char** argv) {
  walkfit::cli::RunConfig cfg;
  CLI::App app{"walkfit: virtual layout compatibility for redirected walking"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed-base", cfg.seed_base, "seed every random choice derives from")->capture_default_str();
  app.add_option("--catalog", cfg.catalog, "asset catalog (overrides the scene's catalog_path)");

  CLI::App* score = app.add_subcommand("score-map", "score the empty floor plan and any stored layouts");
  scene_flags(score, cfg);
  metric_flags(score, cfg);

  CLI::App* lay = app.add_subcommand("layout", "generate the LLM and the refined layout");
  scene_flags(lay, cfg);
  metric_flags(lay, cfg);
  lay->add_option("--provider", cfg.provider, "object provider")
      ->check(CLI::IsMember({"mock", "http"}))
      ->capture_default_str();
  lay->add_option("--endpoint", cfg.endpoint, "chat completion URL for --provider http")->capture_default_str();
  lay->add_option("--model", cfg.model, "model name for --provider http")->capture_default_str();
  lay->add_option("--key-env", cfg.key_env, "environment variable holding the API key")->capture_default_str();
  lay->add_flag("--skip-refine", cfg.skip_refine, "keep the repaired layout unrefined");

  CLI::App* sim = app.add_subcommand("simulate", "run the collision ablation on a scene with layouts");
  scene_flags(sim, cfg);
  sim->add_option("--trials", cfg.trials, "walks per condition")->capture_default_str();
  sim->add_option("--conditions", cfg.conditions, "llm_arc, enipp_norwd, enipp_arc")->delimiter(',');
  sim->add_flag("--svg", cfg.svg, "draw the first walk of every condition");

  CLI::App* gen = app.add_subcommand("gen-reference-scenes", "write the five built-in scene pairs");
  gen->add_option("--out", cfg.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*score) walkfit::cli::cmd_score_map(cfg);
    if (*lay) walkfit::cli::cmd_layout(cfg);
    if (*sim) walkfit::cli::cmd_simulate(cfg);
    if (*gen) walkfit::cli::cmd_gen_reference_scenes(cfg, WALKFIT_DEFAULT_CATALOG);
  } catch (const walkfit::Error& e) {
    std::cerr << "walkfit: " << e.what() << "\n";
    return e.is_user_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "walkfit: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
