// oscsync command-line front end: simulate / analyze / sweep / scan /
// chain / chain-sweep / capacity / logic / rerun.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscsync/oscsync.hpp"

namespace {

using namespace oscsync;

constexpr double kMicro = 1e-6;

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out = "oscsync";
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s, dt_s, transient_s;
  std::optional<double> delta_v, noise_v;
  std::optional<double> i1_ua, i2_ua;
  std::optional<int> threads;
  std::optional<double> window_s, window_fraction, eta_th;
  std::optional<int> m_max, min_epochs;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "parameter preset: strong_pair | weak_pair");
  cmd->add_option("--out", o.out, "output path prefix");
  cmd->add_option("--seed", o.seed, "base seed (overrides config)");
  cmd->add_option("--duration-s", o.duration_s, "simulated time per run, s");
  cmd->add_option("--dt-s", o.dt_s, "integration step, s");
  cmd->add_option("--transient-s", o.transient_s, "discarded start-up interval, s");
  cmd->add_option("--delta-v", o.delta_v, "uniform coupling strength, V");
  cmd->add_option("--noise-v", o.noise_v, "noise amplitude U_n0, V");
  cmd->add_option("--i1-ua", o.i1_ua, "supply current of oscillator 1, uA");
  cmd->add_option("--i2-ua", o.i2_ua, "supply current of oscillator 2, uA");
  cmd->add_option("--threads", o.threads, "worker threads for sweeps (0 = all cores)");
  cmd->add_option("--window-s", o.window_s, "absolute coincidence window, s");
  cmd->add_option("--window-fraction", o.window_fraction,
                  "coincidence window as a fraction of the mean period");
  cmd->add_option("--eta-th", o.eta_th, "synchronization threshold, percent");
  cmd->add_option("--m-max", o.m_max, "maximal lock order");
  cmd->add_option("--min-epochs", o.min_epochs, "minimal epoch count for a verdict");
}

ResolvedConfig resolve(const CommonOpts& o) {
  ResolvedConfig cfg;
  if (!o.config_path.empty()) {
    cfg = load_config(o.config_path);
  } else if (!o.preset.empty()) {
    cfg = parse_config("{\"preset\": \"" + o.preset + "\"}");
  } else {
    cfg = default_config();
  }
  if (!o.preset.empty() && !o.config_path.empty()) {
    // --preset on top of --config replaces the oscillators and scenario
    const auto p = preset_from_name(o.preset);
    if (!p) throw ConfigError("unknown preset \"" + o.preset + "\"");
    cfg.network.oscillators = preset_oscillators(*p);
    cfg.network.set_uniform_delta(preset_delta(*p));
    cfg.network.noise_amplitude = preset_noise(*p);
  }
  if (o.seed) cfg.network.seed = *o.seed;
  if (o.duration_s) cfg.network.duration = *o.duration_s;
  if (o.dt_s) cfg.network.dt = *o.dt_s;
  if (o.transient_s) cfg.network.transient = *o.transient_s;
  if (o.delta_v) cfg.network.set_uniform_delta(*o.delta_v);
  if (o.noise_v) cfg.network.noise_amplitude = *o.noise_v;
  if (o.i1_ua) cfg.network.oscillators.at(0).supply_current = *o.i1_ua * kMicro;
  if (o.i2_ua) cfg.network.oscillators.at(1).supply_current = *o.i2_ua * kMicro;
  if (o.threads) cfg.sweep.threads = *o.threads;
  if (o.window_s) cfg.analyzer.coincidence_window = *o.window_s;
  if (o.window_fraction) cfg.analyzer.window_fraction = *o.window_fraction;
  if (o.eta_th) cfg.analyzer.eta_threshold = *o.eta_th;
  if (o.m_max) cfg.analyzer.m_max = *o.m_max;
  if (o.min_epochs) cfg.analyzer.min_epochs = *o.min_epochs;
  if (o.delta_v) cfg.chain.delta = *o.delta_v;
  return cfg;
}

void finish(const std::string& sub, const ResolvedConfig& cfg, const std::string& out,
            std::vector<std::string> outputs) {
  RunManifest m;
  m.subcommand = sub;
  m.config = cfg;
  m.base_seed = cfg.network.seed;
  m.version = kVersion;
  m.outputs = std::move(outputs);
  write_manifest(out + "_manifest.json", m);
}

int run_simulate(const ResolvedConfig& cfg, const std::string& out, bool traces) {
  ResolvedConfig c = cfg;
  c.network.sample_traces = c.network.sample_traces || traces;
  const TraceBundle bundle = simulate(c.network);

  std::vector<std::string> outputs;
  for (std::size_t j = 0; j < bundle.spike_trains.size(); ++j) {
    std::string path = out + "_osc" + std::to_string(j + 1) + ".spk";
    write_spike_train(path, bundle.spike_trains[j]);
    outputs.push_back(path);
  }
  if (c.network.sample_traces) {
    std::string path = out + "_traces.csv";
    write_traces_csv(path, bundle);
    outputs.push_back(path);
  }
  finish("simulate", c, out, outputs);

  for (std::size_t j = 0; j < bundle.spike_trains.size(); ++j)
    std::cout << "osc" << j + 1 << ": " << bundle.spike_trains[j].size() << " spikes\n";
  if (bundle.insufficient_activity)
    std::cout << "warning: insufficient activity (a train has < 2 spikes)\n";
  return 0;
}

int run_analyze(const ResolvedConfig& cfg, const std::string& a_path, const std::string& b_path,
                const std::string& out) {
  const SpikeTrain a = read_spike_train(a_path);
  const SpikeTrain b = read_spike_train(b_path);
  const SyncEstimate est = estimate_sync(a, b, cfg.analyzer);
  write_estimate(out + "_estimate.csv", est);
  finish("analyze", cfg, out, {out + "_estimate.csv"});
  std::cout << "verdict," << to_string(est.verdict) << "\n"
            << "shr," << (est.shr.defined() ? est.shr.str() : "0/0") << "\n"
            << "eta," << est.eta << "\n"
            << "epochs," << est.epoch_count << "\n";
  return 0;
}

int run_sweep(const ResolvedConfig& cfg, const std::string& out,
              std::optional<double> cut_i2_ua) {
  const SweepMap map = sweep2d(cfg.sweep_config());
  const SweepSummary summary = summarize(map);
  write_map(out + "_map.csv", map);
  write_summary(out + "_summary.csv", summary);
  std::vector<std::string> outputs{out + "_map.csv", out + "_summary.csv"};
  if (cut_i2_ua) {
    double snapped = 0.0;
    const auto rows = staircase_cut(map, *cut_i2_ua * kMicro, &snapped);
    if (std::abs(snapped - *cut_i2_ua * kMicro) > 1e-12)
      std::cerr << "warning: cut snapped to nearest grid row i2=" << snapped / kMicro
                << " uA\n";
    write_staircase(out + "_staircase.csv", rows, snapped);
    outputs.push_back(out + "_staircase.csv");
  }
  finish("sweep", cfg, out, outputs);
  std::cout << "cells," << summary.total_cells << "\n"
            << "N_S," << summary.n_s << "\n"
            << "PSI," << summary.psi_total << "\n";
  return 0;
}

int run_scan(const ResolvedConfig& cfg, const std::string& which,
             const std::vector<double>& values, const std::string& out) {
  ScanParameter p;
  if (which == "delta")
    p = ScanParameter::Delta;
  else if (which == "noise")
    p = ScanParameter::Noise;
  else
    throw ConfigError("scan: --which must be delta or noise");
  const auto curve = scan_parameter(cfg.sweep_config(), p, values);
  write_scan(out + "_scan.csv", p, curve);
  finish("scan", cfg, out, {out + "_scan.csv"});

  const ScanPoint* best = &curve.front();
  for (const auto& pt : curve)
    if (pt.n_s > best->n_s) best = &pt;
  std::cout << "points," << curve.size() << "\n"
            << "argmax_value," << best->value << "\n"
            << "max_n_s," << best->n_s << "\n";
  return 0;
}

int run_chain(const ResolvedConfig& cfg, const std::string& out, bool spikes) {
  const ChainConfig chain = cfg.chain_config();
  const TraceBundle bundle = simulate_chain(chain);
  const ChainReport report = chain_report(bundle, cfg.analyzer);
  write_chain_report(out + "_chain.csv", report);
  std::vector<std::string> outputs{out + "_chain.csv"};
  if (spikes) {
    for (std::size_t j = 0; j < bundle.spike_trains.size(); ++j) {
      std::string path = out + "_osc" + std::to_string(j + 1) + ".spk";
      write_spike_train(path, bundle.spike_trains[j]);
      outputs.push_back(path);
    }
  }
  finish("chain", cfg, out, outputs);
  const SyncEstimate& e = report.end_to_end;
  std::cout << "end_to_end," << to_string(e.verdict) << ","
            << (e.shr.defined() ? e.shr.str() : "0/0") << "," << e.eta << "\n"
            << "predicted," << (report.predicted ? report.predicted->str() : "0/0") << "\n"
            << "multiplicativity_holds," << (report.multiplicativity_holds ? "true" : "false")
            << "\n";
  return 0;
}

int run_chain_sweep(const ResolvedConfig& cfg, const std::string& out) {
  const ChainConfig chain = cfg.chain_config();
  const SweepMap map =
      chain_sweep(chain, cfg.chain.vary_a, cfg.chain.vary_b, cfg.chain.vary_range,
                  cfg.chain.vary_range, cfg.analyzer, cfg.network.seed, cfg.sweep.threads);
  const SweepSummary summary = summarize(map);
  write_map(out + "_chainmap.csv", map);
  write_summary(out + "_chainsummary.csv", summary);
  finish("chain-sweep", cfg, out, {out + "_chainmap.csv", out + "_chainsummary.csv"});
  std::cout << "cells," << summary.total_cells << "\n"
            << "N_S," << summary.n_s << "\n"
            << "PSI," << summary.psi_total << "\n";
  return 0;
}

int run_capacity(int m, const std::string& out, bool write_file,
                 const ResolvedConfig& cfg) {
  const Capacity c = capacity(m);
  std::printf("N_S=%lld W_C=%lld\n", static_cast<long long>(c.n_s),
              static_cast<long long>(c.w_c));
  if (write_file) {
    std::string path = out + "_capacity.csv";
    std::ofstream f(path);
    f << "m_max,n_s,w_c\n" << m << "," << c.n_s << "," << c.w_c << "\n";
    finish("capacity", cfg, out, {path});
  }
  return 0;
}

int run_logic(const ResolvedConfig& cfg, const std::string& rule, const std::string& in_path,
              const std::string& shr_text, double eta, const std::string& out) {
  FractionRecord rec;
  if (!in_path.empty()) {
    rec = read_fraction_record(in_path);
  } else if (!shr_text.empty()) {
    const auto slash = shr_text.find('/');
    if (slash == std::string::npos) throw ConfigError("--shr expects num/den");
    rec.shr = {std::stoll(shr_text.substr(0, slash)), std::stoll(shr_text.substr(slash + 1))};
    rec.eta = eta;
  } else {
    throw ConfigError("logic: provide --in or --shr");
  }

  LogicVerdict v;
  if (rule == "sync") {
    SyncEstimate est;
    est.shr = reduce_fraction(rec.shr.num, rec.shr.den);
    est.eta = rec.eta;
    est.verdict = rec.verdict.value_or(rec.eta >= cfg.analyzer.eta_threshold
                                           ? Verdict::Synchronized
                                           : Verdict::Desynchronized);
    v = logic_rule_sync(est, cfg.analyzer.eta_threshold);
  } else if (rule == "decimal") {
    v = logic_rule_decimal(rec.shr);
  } else if (rule == "threshold") {
    v = logic_rule_threshold(rec.shr);
  } else {
    throw ConfigError("logic: --rule must be sync, decimal or threshold");
  }

  std::ostringstream line;
  line << (v.bit == LogicBit::One ? 1 : 0) << "," << to_string(v.rule) << "," << v.basis_shr.num
       << "," << v.basis_shr.den << "," << v.basis_eta;
  std::cout << "bit,rule,num,den,eta\n" << line.str() << "\n";
  if (!out.empty() && out != "oscsync") {
    std::ofstream f(out + "_logic.csv");
    f << "bit,rule,num,den,eta\n" << line.str() << "\n";
    finish("logic", cfg, out, {out + "_logic.csv"});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled relaxation-oscillator simulator and synchronization analyzer"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* sim = app.add_subcommand("simulate", "integrate a pair (or configured network)");
  bool sim_traces = false;
  add_common(sim, opts);
  sim->add_flag("--traces", sim_traces, "also export sampled voltage/current traces");

  auto* ana = app.add_subcommand("analyze", "phase-locking estimate for two spike trains");
  std::string a_path, b_path;
  add_common(ana, opts);
  ana->add_option("--a", a_path, "spike train of oscillator 1")
      ->required()
      ->check(CLI::ExistingFile);
  ana->add_option("--b", b_path, "spike train of oscillator 2")
      ->required()
      ->check(CLI::ExistingFile);

  auto* swp = app.add_subcommand("sweep", "2-D grid over the two supply currents");
  std::optional<double> cut_i2;
  add_common(swp, opts);
  swp->add_option("--cut-i2-ua", cut_i2, "also export the staircase cross-section at this i2");

  auto* scn = app.add_subcommand("scan", "1-D scan of coupling or noise, one sweep per point");
  std::string scan_which = "delta";
  std::vector<double> scan_values;
  add_common(scn, opts);
  scn->add_option("--which", scan_which, "delta | noise")->required();
  scn->add_option("--values", scan_values, "scan values, V")->required()->expected(-1);

  auto* chn = app.add_subcommand("chain", "N-oscillator chain with end-to-end report");
  bool chain_spikes = false;
  std::optional<int> chain_n;
  std::optional<double> chain_current_ua;
  add_common(chn, opts);
  chn->add_option("--n", chain_n, "chain length");
  chn->add_option("--current-ua", chain_current_ua, "default supply current, uA");
  chn->add_flag("--spikes", chain_spikes, "also export every spike train");

  auto* csw = app.add_subcommand("chain-sweep", "grid over two chain currents, end-to-end SHR");
  std::optional<int> csw_n;
  std::vector<int> csw_vary;
  std::optional<double> csw_step_ua;
  add_common(csw, opts);
  csw->add_option("--n", csw_n, "chain length");
  csw->add_option("--vary", csw_vary, "the two varied oscillators (1-based)")->expected(2);
  csw->add_option("--step-ua", csw_step_ua, "grid step, uA");

  auto* cap = app.add_subcommand("capacity", "classification capacity of the M-limited grid");
  int cap_m = 20;
  bool cap_write = false;
  add_common(cap, opts);
  cap->add_option("--m", cap_m, "lock-order limit");
  cap->add_flag("--write", cap_write, "also write a table next to the manifest");

  auto* lgc = app.add_subcommand("logic", "binary logic level of a measured SHR record");
  std::string rule = "decimal", logic_in, logic_shr;
  double logic_eta = 0.0;
  add_common(lgc, opts);
  lgc->add_option("--rule", rule, "sync | decimal | threshold")->required();
  lgc->add_option("--in", logic_in, "estimate or fraction record file")
      ->check(CLI::ExistingFile);
  lgc->add_option("--shr", logic_shr, "fraction given directly as num/den");
  lgc->add_option("--eta", logic_eta, "eta for the sync rule, percent");

  auto* rrn = app.add_subcommand("rerun", "re-execute a run from its manifest");
  std::string manifest_path;
  rrn->add_option("manifest", manifest_path, "manifest file")->required()
      ->check(CLI::ExistingFile);
  std::string rerun_out;
  rrn->add_option("--out", rerun_out, "override the output prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(rrn)) {
      const RunManifest m = load_manifest(manifest_path);
      const std::string out = !rerun_out.empty() ? rerun_out
                              : !m.outputs.empty()
                                  ? m.outputs.front().substr(0, m.outputs.front().rfind('_'))
                                  : "oscsync";
      if (m.subcommand == "simulate") return run_simulate(m.config, out, false);
      if (m.subcommand == "sweep") return run_sweep(m.config, out, std::nullopt);
      if (m.subcommand == "chain") return run_chain(m.config, out, false);
      if (m.subcommand == "chain-sweep") return run_chain_sweep(m.config, out);
      throw ConfigError("rerun: unsupported subcommand \"" + m.subcommand + "\"");
    }

    ResolvedConfig cfg = resolve(opts);
    if (app.got_subcommand(sim)) return run_simulate(cfg, opts.out, sim_traces);
    if (app.got_subcommand(ana)) return run_analyze(cfg, a_path, b_path, opts.out);
    if (app.got_subcommand(swp)) return run_sweep(cfg, opts.out, cut_i2);
    if (app.got_subcommand(scn)) return run_scan(cfg, scan_which, scan_values, opts.out);
    if (app.got_subcommand(chn)) {
      if (chain_n) cfg.chain.n = *chain_n;
      if (chain_current_ua) cfg.chain.current = *chain_current_ua * kMicro;
      return run_chain(cfg, opts.out, chain_spikes);
    }
    if (app.got_subcommand(csw)) {
      if (csw_n) cfg.chain.n = *csw_n;
      if (csw_vary.size() == 2) {
        cfg.chain.vary_a = csw_vary[0];
        cfg.chain.vary_b = csw_vary[1];
      }
      if (csw_step_ua) cfg.chain.vary_range.step = *csw_step_ua * kMicro;
      return run_chain_sweep(cfg, opts.out);
    }
    if (app.got_subcommand(cap)) return run_capacity(cap_m, opts.out, cap_write, cfg);
    if (app.got_subcommand(lgc))
      return run_logic(cfg, rule, logic_in, logic_shr, logic_eta, opts.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
