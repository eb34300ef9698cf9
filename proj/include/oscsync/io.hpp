#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscsync/chain.hpp"
#include "oscsync/sweep.hpp"

namespace oscsync {

// Bundled parameter sets of the two coupled-switch geometries studied in
// the lab: closely spaced switches couple strongly, distant ones weakly.
// A preset fills the pair, the coupling and the noise level; any config
// key still overrides.
enum class Preset { StrongPair, WeakPair };

std::optional<Preset> preset_from_name(const std::string& name);
const char* to_string(Preset p);
std::vector<OscillatorSpec> preset_oscillators(Preset p);
double preset_delta(Preset p);
double preset_noise(Preset p);

struct SweepSection {
  CurrentRange i1{0.0, 0.0, 10e-6};
  CurrentRange i2{0.0, 0.0, 10e-6};
  int threads = 0;
};

struct ChainSection {
  int n = 3;
  double current = 750e-6;        // A, applied to every oscillator
  std::vector<double> currents;   // optional per-oscillator override
  double delta = 0.3;             // V
  int vary_a = 1, vary_b = 2;     // 1-based, for chain-sweep
  CurrentRange vary_range{0.0, 0.0, 50e-6};
};

// A config file with every default filled in.
struct ResolvedConfig {
  NetworkConfig network;
  AnalyzerConfig analyzer;
  SweepSection sweep;
  ChainSection chain;

  SweepConfig sweep_config() const;
  ChainConfig chain_config() const;
};

// Parse a JSON config; unknown keys are hard errors naming the key.
// Units in files: currents uA, voltages V, times s, resistances Ohm,
// capacitance F. Internally everything is SI base units.
ResolvedConfig load_config(const std::string& path);
ResolvedConfig parse_config(const std::string& text);
ResolvedConfig default_config();  // empty-file equivalent (strong_pair)

// Canonical full-schema serialization; parse_config(dump_config(c))
// round-trips exactly.
std::string dump_config(const ResolvedConfig& cfg);

// Written alongside every CLI output so a run can be regenerated from the
// manifest alone.
struct RunManifest {
  std::string subcommand;
  ResolvedConfig config;
  std::uint64_t base_seed = 0;
  std::string version;
  std::vector<std::string> outputs;
};

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

// flat-file exporters / importers
void write_spike_train(const std::string& path, const SpikeTrain& train);
SpikeTrain read_spike_train(const std::string& path);
void write_traces_csv(const std::string& path, const TraceBundle& bundle);
void write_estimate(const std::string& path, const SyncEstimate& est);
void write_map(const std::string& path, const SweepMap& map);
void write_summary(const std::string& path, const SweepSummary& summary);
void write_staircase(const std::string& path, const std::vector<StaircaseRow>& rows,
                     double i2_snapped);
void write_scan(const std::string& path, ScanParameter which,
                const std::vector<ScanPoint>& curve);
void write_chain_report(const std::string& path, const ChainReport& report);

// Fraction (and optional eta) from an estimate record or a bare "num/den"
// file, for the logic subcommand.
struct FractionRecord {
  Fraction shr{0, 0};
  double eta = 0.0;
  std::optional<Verdict> verdict;
};
FractionRecord read_fraction_record(const std::string& path);

}  // namespace oscsync
