#pragma once

// The four batch commands behind the walkfit executable. Every file they write is a pure
// function of the inputs and flags, so reruns into a clean directory are byte-identical.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "walkfit/eni/export.hpp"
#include "walkfit/layout/http_provider.hpp"
#include "walkfit/layout/provider.hpp"
#include "walkfit/pipeline/pipeline.hpp"
#include "walkfit/pipeline/reference.hpp"
#include "walkfit/sim/svg.hpp"
#include "walkfit/sim/trial.hpp"

namespace walkfit::cli {

struct RunConfig {
  std::string scene;
  std::string out;
  std::string catalog;  // overrides the scene's catalog_path
  std::string provider = "mock";
  std::string endpoint = layout::HttpProviderConfig{}.endpoint;
  std::string model = layout::HttpProviderConfig{}.model;
  std::string key_env = layout::HttpProviderConfig{}.key_env;
  std::uint64_t seed_base = 1;
  int samples = 150;               // virtual and physical sample targets
  double window = 4.0;             // side of the square comparison window (m)
  std::vector<double> gains;       // empty, or {min, max} / {min, max, count}
  unsigned threads = 0;
  int trials = 20;
  std::vector<std::string> conditions{"llm_arc", "enipp_norwd", "enipp_arc"};
  bool skip_refine = false;
  bool svg = false;  // trajectory drawings for the first seed of every condition

  eni::MetricConfig metric() const {
    eni::MetricConfig m;
    m.window_half_extent = 0.5 * window;
    if (!gains.empty()) {
      if (gains.size() != 2 && gains.size() != 3) throw ConfigError("--gains takes min,max or min,max,count");
      m.gains.rg_min = gains[0];
      m.gains.rg_max = gains[1];
      if (gains.size() == 3) {
        if (gains[2] != std::floor(gains[2])) throw ConfigError("gain count must be an integer");
        m.gains.samples = static_cast<int>(gains[2]);
      }
    }
    m.validate();
    return m;
  }

  eni::SampleTargets sample_targets() const {
    if (samples < 1) throw ConfigError("--samples must be positive");
    return {samples, samples};
  }

  pipeline::PipelineOptions pipeline_options() const {
    pipeline::PipelineOptions o;
    o.metric = metric();
    o.samples = sample_targets();
    o.placement.rng_seed = static_cast<unsigned>(seed_base);
    o.refine = !skip_refine;
    o.threads = threads;
    return o;
  }
};

namespace cli_detail {

namespace fs = std::filesystem;

inline std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

inline SceneBundle load(const RunConfig& c) {
  if (c.scene.empty()) throw ConfigError("--scene is required");
  if (!fs::exists(c.scene)) throw ConfigError("scene file not found: " + c.scene);
  return load_scene(c.scene);
}

inline std::string catalog_path(const RunConfig& c, const SceneBundle& s) {
  return c.catalog.empty() ? resolve_catalog_path(c.scene, s) : c.catalog;
}

inline void require_out(const RunConfig& c) {
  if (c.out.empty()) throw ConfigError("--out is required");
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec || !fs::is_directory(c.out)) throw ConfigError("cannot create output directory " + c.out);
}

template <class F>
std::string to_text(F&& write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

inline Json totals_json(const pipeline::Totals& t) {
  Json j{{"floor_plan", t.floor_plan}};
  if (t.llm) j["llm_layout"] = *t.llm;
  if (t.refined) j["refined_layout"] = *t.refined;
  return j;
}

inline void print_totals(std::ostream& log, const pipeline::Totals& t) {
  log << "floor plan total     " << eni::fmt_fixed(t.floor_plan, 4) << "\n";
  if (t.llm) log << "LLM layout total     " << eni::fmt_fixed(*t.llm, 4) << "\n";
  if (t.refined) log << "refined layout total " << eni::fmt_fixed(*t.refined, 4) << "\n";
}

inline eni::SvgOverlay overlay(const Environment& V, const SceneBundle& s) {
  eni::SvgOverlay o;
  o.outlines.push_back(V.boundary());
  for (const SimplePolygon& h : V.obstacles()) o.filled.push_back(h);
  if (s.layout)
    for (const PlacedObject& obj : s.layout->objects) o.filled.push_back(footprint_box(obj).polygon());
  return o;
}

// Provider wrapper that keeps every exchange in a log owned by the caller, including the
// request that was in flight when a provider failed.
class Recorded : public layout::Provider {
 public:
  Recorded(std::unique_ptr<layout::Provider> inner, std::vector<layout::Exchange>* log)
      : inner_(std::move(inner)), log_(log) {}
  std::string name() const override { return inner_->name(); }

 protected:
  std::string complete(const std::string& system, const std::string& user) override {
    log_->push_back({system, user, ""});
    std::string r = inner_->ask(system, user);
    log_->back().response = r;
    return r;
  }

 private:
  std::unique_ptr<layout::Provider> inner_;
  std::vector<layout::Exchange>* log_;
};

inline Json transcript_json(const std::vector<layout::Exchange>& log) {
  Json j = Json::array();
  for (const layout::Exchange& e : log) j.push_back(layout::to_json(e));
  return j;
}

}  // namespace cli_detail

// Score map of the scene's empty floor plan: per-point CSV, an SVG heatmap and the totals for
// the floor plan and whichever layouts the scene carries.
inline pipeline::Totals cmd_score_map(const RunConfig& c, std::ostream& log = std::cout) {
  using namespace cli_detail;
  const SceneBundle s = load(c);
  require_out(c);
  const Environment V = floorplan_to_environment(s.virtual_plan);
  const eni::ScoreMap map = eni::score_map(V, s.physical, c.metric(), c.sample_targets(), c.threads);
  const pipeline::Totals t = pipeline::totals(map, s);
  write_text_file(path_in(c.out, "score_map.csv"), to_text([&](std::ostream& o) { eni::write_csv(o, map); }));
  write_text_file(path_in(c.out, "score_map.svg"),
                  to_text([&](std::ostream& o) { eni::write_svg(o, map, overlay(V, s)); }));
  write_text_file(path_in(c.out, "totals.json"), dump_canonical(totals_json(t)));
  print_totals(log, t);
  return t;
}

// Full layout pipeline. Writes the completed scene (with both layouts and a copy of the
// catalog), the layouts on their own, the score map, totals, warnings and provider transcripts.
inline pipeline::PipelineResult cmd_layout(const RunConfig& c, std::ostream& log = std::cout) {
  using namespace cli_detail;
  const SceneBundle s = load(c);
  const std::string cat_path = catalog_path(c, s);
  const Catalog catalog = Catalog::load(cat_path);
  require_out(c);
  if (c.provider != "mock" && c.provider != "http") throw ConfigError("unknown provider '" + c.provider + "'");

  std::vector<layout::Exchange> logs[2];
  const pipeline::ProviderFactory factory = [&](const std::string& stage) -> std::unique_ptr<layout::Provider> {
    std::unique_ptr<layout::Provider> p;
    if (c.provider == "mock") {
      p = std::make_unique<layout::MockProvider>(catalog, c.seed_base);
    } else {
      layout::HttpProviderConfig h;
      h.endpoint = c.endpoint;
      h.model = c.model;
      h.key_env = c.key_env;
      p = std::make_unique<layout::HttpProvider>(h);
    }
    return std::make_unique<Recorded>(std::move(p), &logs[stage == "baseline" ? 0 : 1]);
  };
  auto save_transcripts = [&] {
    write_text_file(path_in(c.out, "transcript_baseline.json"), dump_canonical(transcript_json(logs[0])));
    write_text_file(path_in(c.out, "transcript_enipp.json"), dump_canonical(transcript_json(logs[1])));
  };

  pipeline::PipelineResult res;
  try {
    res = pipeline::run_pipeline(s, catalog, factory, c.pipeline_options());
  } catch (const Error& e) {
    save_transcripts();
    const std::string where = " (transcripts in " + path_in(c.out, "transcript_*.json") + ")";
    if (e.is_user_error()) throw Error(e.what() + where);
    throw Error(e.what() + where, false);
  }
  save_transcripts();

  SceneBundle out = res.scene;
  out.catalog_path = "catalog.json";
  write_text_file(path_in(c.out, "catalog.json"), dump_canonical(read_json_file(cat_path)));
  save_scene(path_in(c.out, "scene.json"), out);
  write_text_file(path_in(c.out, "layout.json"), dump_canonical(to_json(*out.layout)));
  write_text_file(path_in(c.out, "baseline_layout.json"), dump_canonical(to_json(*out.baseline_layout)));
  write_text_file(path_in(c.out, "score_map.csv"), to_text([&](std::ostream& o) { eni::write_csv(o, res.map); }));

  const pipeline::Totals t = pipeline::totals(res.map, out);
  Json report = totals_json(t);
  report["unrefined_layout"] = pipeline::layout_total(res.map, res.enipp.unrefined.objects);
  report["refine_iterations"] = res.enipp.refine.iterations;
  report["refine_accepted"] = res.enipp.refine.accepted;
  Json warnings = res.warnings;
  for (const std::string& w : res.baseline.warnings) warnings.push_back("baseline: " + w);
  for (const std::string& w : res.enipp.warnings) warnings.push_back("enipp: " + w);
  report["warnings"] = warnings;
  write_text_file(path_in(c.out, "report.json"), dump_canonical(report));

  print_totals(log, t);
  log << res.baseline.layout.objects.size() << " objects in the LLM layout, " << res.enipp.layout.objects.size()
      << " in the refined layout, " << warnings.size() << " warnings\n";
  return res;
}

// Collision ablation over seeds seed_base .. seed_base + trials - 1.
inline sim::ExperimentResult cmd_simulate(const RunConfig& c, std::ostream& log = std::cout) {
  using namespace cli_detail;
  const SceneBundle s = load(c);
  if (c.trials < 1) throw ConfigError("--trials must be positive");
  std::vector<sim::Condition> conds;
  for (const std::string& n : c.conditions) conds.push_back(sim::condition_from_string(n));
  for (sim::Condition k : conds) sim::layout_for(s, k);
  require_out(c);
  const sim::ExperimentResult r = sim::run_experiment({s}, conds, c.trials, c.seed_base, {}, c.threads);
  write_text_file(path_in(c.out, "trials.csv"), to_text([&](std::ostream& o) { sim::write_trials_csv(o, r); }));
  write_text_file(path_in(c.out, "stats.csv"), to_text([&](std::ostream& o) { sim::write_stats_csv(o, r); }));
  write_text_file(path_in(c.out, "experiment.json"), dump_canonical(sim::to_json(r)));
  if (c.svg) {
    const Environment V = floorplan_to_environment(s.virtual_plan);
    for (sim::Condition k : conds) {
      sim::TrialOptions opt;
      opt.trajectory_stride = 5;
      const sim::CollisionReport rep = sim::run_trial(s, k, c.seed_base, opt);
      write_text_file(path_in(c.out, "trajectory_" + sim::to_string(k) + ".svg"), to_text([&](std::ostream& o) {
                        sim::write_trajectory_svg(o, V, sim::layout_for(s, k).objects, s.physical, rep);
                      }));
    }
  }
  for (const sim::ConditionStats& st : r.stats)
    log << sim::to_string(st.condition) << ": collisions median " << eni::fmt_fixed(st.collisions.median, 2)
        << " mean " << eni::fmt_fixed(st.collisions.mean, 3) << ", unreachable rooms mean "
        << eni::fmt_fixed(st.unreachable.mean, 3) << "\n";
  return r;
}

// The five built-in scene pairs plus a copy of the catalog they point at.
inline void cmd_gen_reference_scenes(const RunConfig& c, const std::string& default_catalog,
                                     std::ostream& log = std::cout) {
  using namespace cli_detail;
  const std::string cat_path = c.catalog.empty() ? default_catalog : c.catalog;
  const Json catalog = read_json_file(cat_path);
  Catalog::from_json(catalog);
  require_out(c);
  write_text_file(path_in(c.out, "catalog.json"), dump_canonical(catalog));
  for (const SceneBundle& s : pipeline::reference_scenes()) {
    save_scene(path_in(c.out, s.name + ".json"), s);
    const auto [vlo, vhi] = s.virtual_plan.outline.bounds();
    const auto [plo, phi] = s.physical.boundary().bounds();
    log << s.name << ": virtual " << eni::fmt_fixed(vhi.x - vlo.x, 1) << " x " << eni::fmt_fixed(vhi.y - vlo.y, 1)
        << ", physical " << eni::fmt_fixed(phi.x - plo.x, 1) << " x " << eni::fmt_fixed(phi.y - plo.y, 1) << ", "
        << s.rooms->size() << " rooms\n";
  }
}

}  // namespace walkfit::cli
