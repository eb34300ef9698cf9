#pragma once

#include <cstdint>
#include <vector>

#include "oscsync/rng.hpp"

namespace oscsync {

// Piecewise-linear I-V characteristic of one threshold switch.
// OFF branch: i = u / r_off, ON branch: i = (u - u_cf) / r_on.
// Turn-on above u_th (possibly lowered by heated neighbors), turn-off
// below u_h.
struct SwitchParams {
  double i_th = 0.0;   // A
  double i_h = 0.0;    // A
  double u_th = 0.0;   // V
  double u_h = 0.0;    // V
  double u_cf = 0.0;   // V
  double r_off = 0.0;  // Ohm
  double r_on = 0.0;   // Ohm

  void validate() const;  // throws ConfigError
};

enum class SwitchState : std::uint8_t { Off = 0, On = 1 };

// One oscillator: a current source charging a capacitor through nothing,
// discharged through the switch.
struct OscillatorSpec {
  SwitchParams sw;
  double supply_current = 0.0;    // A
  double capacitance = 100e-9;    // F

  void validate() const;
};

enum class NoiseMode : std::uint8_t { Shared = 0, Independent = 1 };

// A path graph of oscillators with directional thermal coupling.
// Link k joins oscillators k and k+1 (0-based):
//   delta_fwd[k] lowers u_th of oscillator k+1 while k is ON,
//   delta_bwd[k] lowers u_th of oscillator k   while k+1 is ON.
struct NetworkConfig {
  std::vector<OscillatorSpec> oscillators;
  std::vector<double> delta_fwd;  // V, size N-1
  std::vector<double> delta_bwd;  // V, size N-1
  double noise_amplitude = 0.0;   // V (U_n0)
  NoiseMode noise_mode = NoiseMode::Shared;
  std::uint64_t seed = 1;
  double dt = 1e-5;        // s
  double duration = 0.25;  // s
  double transient = 0.05; // s, discarded at the head of every record
  bool sample_traces = false;

  std::size_t size() const { return oscillators.size(); }
  void set_uniform_delta(double delta);
  void validate() const;
};

struct NetworkState {
  std::int64_t step_index = 0;
  double time = 0.0;                  // = step_index * dt
  std::vector<double> voltage;        // capacitor voltages U_j
  std::vector<SwitchState> state;
  std::vector<double> last_noise;     // 1 entry (shared) or N (independent)
};

// Per-oscillator noise streams. Shared mode keeps a single stream; the
// independent streams are seeded mix_seed(seed, j) so that an
// oscillator's draw sequence does not depend on the network size.
struct NoiseStreams {
  std::vector<GaussianSampler> streams;

  static NoiseStreams for_config(const NetworkConfig& cfg);
  GaussianSampler& stream_for(std::size_t osc, NoiseMode mode) {
    return streams[mode == NoiseMode::Shared ? 0 : osc];
  }
};

using SpikeTrain = std::vector<double>;  // strictly increasing OFF->ON times, s

struct TraceBundle {
  std::vector<SpikeTrain> spike_trains;
  // sampled only when cfg.sample_traces: one shared time axis plus
  // per-oscillator capacitor voltage and switch current
  std::vector<double> trace_time;
  std::vector<std::vector<double>> trace_voltage;
  std::vector<std::vector<double>> trace_current;
  NetworkConfig config_echo;
  bool insufficient_activity = false;  // some train has < 2 spikes
};

// Turn-on threshold of oscillator j given the previous-step states of its
// neighbors: u_th minus delta for every neighbor currently ON.
double effective_threshold(const NetworkState& state, const NetworkConfig& cfg, std::size_t j);

NetworkState initial_state(const NetworkConfig& cfg);

// Advance one step of dt: draw noise, move every capacitor voltage along
// the exact solution of its current linear branch, then apply all switch
// transitions simultaneously against the new switch voltages and the
// pre-step neighbor states. turned_on, when given, receives the
// oscillators that fired OFF->ON this step.
void step(NetworkState& state, const NetworkConfig& cfg, NoiseStreams& noise,
          std::vector<std::uint8_t>* turned_on = nullptr);

// Integrate [0, duration], discarding events before `transient`.
TraceBundle simulate(const NetworkConfig& cfg);

// Exact period of the noiseless, uncoupled limit cycle.
double analytic_period(const SwitchParams& sw, double supply_current, double capacitance);

}  // namespace oscsync
