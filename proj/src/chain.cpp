#include "oscsync/chain.hpp"

#include "oscsync/errors.hpp"
#include "oscsync/parallel.hpp"

namespace oscsync {

NetworkConfig ChainConfig::to_network() const {
  if (n < 3) throw ConfigError("chain: n must be >= 3");
  if (!currents.empty() && currents.size() != static_cast<std::size_t>(n))
    throw ConfigError("chain: currents must be empty or have n entries");

  NetworkConfig cfg;
  cfg.oscillators.assign(static_cast<std::size_t>(n), template_osc);
  for (std::size_t j = 0; j < currents.size(); ++j)
    cfg.oscillators[j].supply_current = currents[j];
  cfg.set_uniform_delta(delta);
  cfg.noise_amplitude = noise_amplitude;
  cfg.noise_mode = noise_mode;
  cfg.seed = seed;
  cfg.dt = dt;
  cfg.duration = duration;
  cfg.transient = transient;
  cfg.sample_traces = sample_traces;
  cfg.validate();
  return cfg;
}

TraceBundle simulate_chain(const ChainConfig& cfg) { return simulate(cfg.to_network()); }

Fraction predict_end_to_end(std::span<const Fraction> pairwise) { return product(pairwise); }

ChainReport chain_report(const TraceBundle& bundle, const AnalyzerConfig& analyzer) {
  const std::size_t n = bundle.spike_trains.size();
  if (n < 2) throw ConfigError("chain_report: bundle must hold at least two trains");

  ChainReport report;
  report.pairwise.reserve(n - 1);
  std::vector<Fraction> fractions;
  bool all_defined = true;
  bool any_below_threshold = false;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    SyncEstimate est =
        estimate_sync(bundle.spike_trains[j], bundle.spike_trains[j + 1], analyzer);
    if (est.shr.defined()) {
      fractions.push_back(est.shr);
      if (est.eta < analyzer.eta_threshold) any_below_threshold = true;
    } else {
      all_defined = false;
    }
    report.pairwise.push_back(std::move(est));
  }

  report.end_to_end =
      estimate_sync(bundle.spike_trains.front(), bundle.spike_trains.back(), analyzer);
  if (all_defined) report.predicted = predict_end_to_end(fractions);
  report.multiplicativity_holds = report.predicted.has_value() &&
                                  report.end_to_end.shr.defined() &&
                                  report.end_to_end.shr == *report.predicted;
  report.low_eta_transfer =
      report.end_to_end.verdict == Verdict::Synchronized && any_below_threshold;
  return report;
}

SweepMap chain_sweep(const ChainConfig& cfg, int vary_a, int vary_b, CurrentRange range_a,
                     CurrentRange range_b, const AnalyzerConfig& analyzer,
                     std::uint64_t base_seed, int threads) {
  if (vary_a == vary_b) throw ConfigError("chain_sweep: varied indices must be distinct");
  if (vary_a < 1 || vary_a > cfg.n || vary_b < 1 || vary_b > cfg.n)
    throw ConfigError("chain_sweep: varied index out of range");
  analyzer.validate();
  const NetworkConfig base = cfg.to_network();

  if (range_a.min <= 0.0) range_a.min = base.oscillators[vary_a - 1].sw.i_th;
  if (range_a.max <= 0.0) range_a.max = base.oscillators[vary_a - 1].sw.i_h;
  if (range_b.min <= 0.0) range_b.min = base.oscillators[vary_b - 1].sw.i_th;
  if (range_b.max <= 0.0) range_b.max = base.oscillators[vary_b - 1].sw.i_h;

  SweepMap map;
  map.i1 = range_a.values();
  map.i2 = range_b.values();
  const std::size_t n1 = map.i1.size(), n2 = map.i2.size();
  map.cells.resize(n1 * n2);

  parallel_for(
      n1 * n2,
      [&](std::size_t idx) {
        const std::size_t a = idx / n2, b = idx % n2;
        NetworkConfig cell_cfg = base;
        cell_cfg.oscillators[vary_a - 1].supply_current = map.i1[a];
        cell_cfg.oscillators[vary_b - 1].supply_current = map.i2[b];
        cell_cfg.seed = mix_seed(base_seed, a, b);
        CellResult& cell = map.cells[idx];
        try {
          const TraceBundle bundle = simulate(cell_cfg);
          const SyncEstimate est = estimate_sync(bundle.spike_trains.front(),
                                                 bundle.spike_trains.back(), analyzer);
          cell.verdict = est.verdict;
          cell.shr = est.shr;
          cell.m1 = est.m1;
          cell.m2 = est.m2;
          cell.eta = est.eta;
        } catch (const std::exception& e) {
          cell.error = true;
          cell.error_message = e.what();
        }
      },
      threads);
  return map;
}

}  // namespace oscsync
