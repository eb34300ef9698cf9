#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oscsync/sweep.hpp"

namespace oscsync {

// Homogeneous nearest-neighbor chain built from one switch template.
struct ChainConfig {
  int n = 3;
  OscillatorSpec template_osc;      // supply_current acts as the default
  std::vector<double> currents;     // A; empty = all template current
  double delta = 0.3;               // V, uniform both directions
  double noise_amplitude = 0.0;     // V
  NoiseMode noise_mode = NoiseMode::Shared;
  std::uint64_t seed = 1;
  double dt = 1e-5;
  double duration = 0.25;
  double transient = 0.05;
  bool sample_traces = false;

  NetworkConfig to_network() const;  // validates
};

TraceBundle simulate_chain(const ChainConfig& cfg);

// Reduced product of pairwise subharmonic ratios (the long-range
// composition law).
Fraction predict_end_to_end(std::span<const Fraction> pairwise);

struct ChainReport {
  std::vector<SyncEstimate> pairwise;  // (j, j+1), j = 1..N-1
  SyncEstimate end_to_end;             // (1, N)
  std::optional<Fraction> predicted;   // product; absent if any pair lacks (M1, M2)
  bool multiplicativity_holds = false;
  // end-to-end lock achieved although some intermediate pair sits below
  // the eta threshold
  bool low_eta_transfer = false;
};

ChainReport chain_report(const TraceBundle& bundle, const AnalyzerConfig& analyzer);

// Grid over the currents of two chain members (1-based indices); each cell
// records the end-to-end estimate between oscillators 1 and N.
SweepMap chain_sweep(const ChainConfig& cfg, int vary_a, int vary_b, CurrentRange range_a,
                     CurrentRange range_b, const AnalyzerConfig& analyzer,
                     std::uint64_t base_seed, int threads = 0);

}  // namespace oscsync
