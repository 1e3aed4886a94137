// vcsc: syndication networks, social-capital indicators and the two-latent SEM.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vcsc/error.hpp"
#include "vcsc/pipeline.hpp"
#include "vcsc/synth.hpp"

namespace {

struct Options {
  std::string investments;
  std::string exits;
  std::string indicators;
  std::string mode = "same-round";
  std::string models = "1,2,3,4";
  std::string out = ".";
  std::uint64_t seed = 1;
  std::string scaling = "minmax";
  std::string sh_form = "constraint";
  bool both_modes = false;
  vcsc::SynthConfig synth;
};

void add_event_inputs(CLI::App* cmd, Options& o, bool required) {
  auto* inv = cmd->add_option("--investments", o.investments, "Investments CSV");
  auto* ex = cmd->add_option("--exits", o.exits, "Exits CSV");
  if (required) {
    inv->required();
    ex->required();
  }
}

void add_mode(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "same-round | different-round")
      ->check(CLI::IsMember({"same-round", "different-round"}));
}

void add_indicator_opts(CLI::App* cmd, Options& o) {
  cmd->add_option("--scaling", o.scaling, "minmax | none")->check(CLI::IsMember({"minmax", "none"}));
  cmd->add_option("--sh-form", o.sh_form, "constraint | complement")
      ->check(CLI::IsMember({"constraint", "complement"}));
}

vcsc::ModeAnalysis analyze(const Options& o) {
  const auto log = vcsc::load_event_log(o.investments, o.exits);
  return vcsc::analyze_mode(log, vcsc::parse_projection_mode(o.mode), vcsc::parse_structural_hole_form(o.sh_form),
                            vcsc::parse_scaling(o.scaling));
}

/// The indicator matrix comes from --indicators when given, else from the events.
vcsc::IndicatorMatrix indicators(const Options& o) {
  if (!o.indicators.empty()) return vcsc::load_indicator_matrix(o.indicators);
  if (o.investments.empty() || o.exits.empty())
    throw vcsc::Error(vcsc::ErrorCode::InvalidArgument, "give --indicators or both --investments and --exits");
  return analyze(o).indicators;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Venture-capital syndication networks, social-capital indicators and latent-variable model fits"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic investments/exits pair");
  synth->add_option("--firms", o.synth.firms)->required();
  synth->add_option("--companies", o.synth.companies)->required();
  synth->add_option("--rounds", o.synth.rounds_per_company, "Maximum rounds per company");
  synth->add_option("--synd-rate", o.synth.syndication_rate)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--exit-rate", o.synth.exit_rate)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", o.seed);
  synth->add_option("--out", o.out, "Output directory");

  auto* ingest = app.add_subcommand("ingest", "Validate and deduplicate the event files");
  add_event_inputs(ingest, o, true);
  ingest->add_option("--out", o.out);

  auto* network = app.add_subcommand("network", "Build the syndication network and export its edge list");
  add_event_inputs(network, o, true);
  add_mode(network, o);
  network->add_option("--out", o.out);

  auto* metrics = app.add_subcommand("metrics", "Social-capital indicators per firm");
  add_event_inputs(metrics, o, true);
  add_mode(metrics, o);
  add_indicator_opts(metrics, o);
  metrics->add_option("--out", o.out);

  auto* perf = app.add_subcommand("perf", "Performance indicators per firm");
  add_event_inputs(perf, o, true);
  add_mode(perf, o);
  perf->add_option("--out", o.out);

  auto* describe = app.add_subcommand("describe", "Descriptive statistics of the model indicators");
  add_event_inputs(describe, o, false);
  describe->add_option("--indicators", o.indicators, "Indicator matrix CSV (instead of event files)");
  add_mode(describe, o);
  add_indicator_opts(describe, o);
  describe->add_option("--out", o.out);

  auto* sem = app.add_subcommand("sem", "Fit Models 1-4 by maximum likelihood");
  add_event_inputs(sem, o, false);
  sem->add_option("--indicators", o.indicators, "Indicator matrix CSV (instead of event files)");
  add_mode(sem, o);
  add_indicator_opts(sem, o);
  sem->add_option("--model", o.models, "Comma-separated model ids");
  sem->add_option("--out", o.out);

  auto* run = app.add_subcommand("run", "Full pipeline");
  add_event_inputs(run, o, true);
  add_mode(run, o);
  add_indicator_opts(run, o);
  run->add_option("--model", o.models, "Comma-separated model ids");
  run->add_option("--seed", o.seed);
  run->add_flag("--both-modes", o.both_modes, "Run same-round and different-round");
  run->add_option("--out", o.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      o.synth.seed = o.seed;
      vcsc::write_synthetic(vcsc::generate_synthetic_eventlog(o.synth), o.out);
    } else if (*ingest) {
      vcsc::write_files(o.out, vcsc::ingest_files(vcsc::load_event_log(o.investments, o.exits)));
    } else if (*network) {
      const auto log = vcsc::load_event_log(o.investments, o.exits);
      vcsc::ModeAnalysis a;
      a.mode = vcsc::parse_projection_mode(o.mode);
      a.network = vcsc::build_network(log, a.mode);
      auto files = vcsc::network_files(a);
      files["sample_accounting.txt"] =
          vcsc::render_sample_table(vcsc::sample_accounting(log, {{a.mode, a.network.node_count()}}));
      vcsc::write_files(o.out, files);
    } else if (*metrics) {
      vcsc::write_files(o.out, vcsc::metric_files(analyze(o)));
    } else if (*perf) {
      vcsc::write_files(o.out, vcsc::performance_files(analyze(o)));
    } else if (*describe) {
      vcsc::write_files(o.out, vcsc::describe_files(indicators(o), vcsc::parse_projection_mode(o.mode)));
    } else if (*sem) {
      vcsc::write_files(o.out, vcsc::sem_files(indicators(o), vcsc::parse_model_list(o.models),
                                               vcsc::parse_projection_mode(o.mode)));
    } else if (*run) {
      vcsc::RunConfig cfg;
      cfg.investments_path = o.investments;
      cfg.exits_path = o.exits;
      cfg.output_dir = o.out;
      cfg.seed = o.seed;
      cfg.models = vcsc::parse_model_list(o.models);
      cfg.scaling = vcsc::parse_scaling(o.scaling);
      cfg.structural_hole_form = vcsc::parse_structural_hole_form(o.sh_form);
      if (o.both_modes)
        cfg.modes = {vcsc::ProjectionMode::SameRound, vcsc::ProjectionMode::DifferentRound};
      else
        cfg.modes = {vcsc::parse_projection_mode(o.mode)};
      vcsc::run_pipeline(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "vcsc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
