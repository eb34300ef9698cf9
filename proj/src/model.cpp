#include "oscsync/model.hpp"

#include <cmath>
#include <string>

#include "oscsync/errors.hpp"

namespace oscsync {

void SwitchParams::validate() const {
  if (!(u_th > u_h && u_h > u_cf && u_cf >= 0.0))
    throw ConfigError("switch: requires u_th > u_h > u_cf >= 0");
  if (!(r_off > r_on && r_on > 0.0))
    throw ConfigError("switch: requires r_off > r_on > 0");
  if (!(i_h > i_th && i_th > 0.0))
    throw ConfigError("switch: requires i_h > i_th > 0");
}

void OscillatorSpec::validate() const {
  sw.validate();
  if (!(capacitance > 0.0)) throw ConfigError("oscillator: capacitance must be > 0");
  if (!(supply_current > 0.0)) throw ConfigError("oscillator: supply_current must be > 0");
}

void NetworkConfig::set_uniform_delta(double delta) {
  const std::size_t links = oscillators.empty() ? 0 : oscillators.size() - 1;
  delta_fwd.assign(links, delta);
  delta_bwd.assign(links, delta);
}

void NetworkConfig::validate() const {
  if (oscillators.empty()) throw ConfigError("network: needs at least one oscillator");
  for (const auto& o : oscillators) o.validate();
  const std::size_t links = oscillators.size() - 1;
  if (delta_fwd.size() != links || delta_bwd.size() != links)
    throw ConfigError("network: coupling arrays must have N-1 entries (path graph)");
  for (double d : delta_fwd)
    if (d < 0.0) throw ConfigError("network: coupling strengths must be >= 0");
  for (double d : delta_bwd)
    if (d < 0.0) throw ConfigError("network: coupling strengths must be >= 0");
  if (noise_amplitude < 0.0) throw ConfigError("network: noise amplitude must be >= 0");
  if (!(dt > 0.0)) throw ConfigError("network: dt must be > 0");
  if (!(duration > transient && transient >= 0.0))
    throw ConfigError("network: requires duration > transient >= 0");
}

NoiseStreams NoiseStreams::for_config(const NetworkConfig& cfg) {
  NoiseStreams n;
  if (cfg.noise_mode == NoiseMode::Shared) {
    n.streams.emplace_back(mix_seed(cfg.seed, 0));
  } else {
    n.streams.reserve(cfg.size());
    for (std::size_t j = 0; j < cfg.size(); ++j)
      n.streams.emplace_back(mix_seed(cfg.seed, j));
  }
  return n;
}

double effective_threshold(const NetworkState& state, const NetworkConfig& cfg, std::size_t j) {
  double u = cfg.oscillators[j].sw.u_th;
  if (j > 0 && state.state[j - 1] == SwitchState::On) u -= cfg.delta_fwd[j - 1];
  if (j + 1 < cfg.size() && state.state[j + 1] == SwitchState::On) u -= cfg.delta_bwd[j];
  return u;
}

NetworkState initial_state(const NetworkConfig& cfg) {
  NetworkState s;
  const std::size_t n = cfg.size();
  s.voltage.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.voltage[j] = cfg.oscillators[j].sw.u_h;
  s.state.assign(n, SwitchState::Off);
  s.last_noise.assign(cfg.noise_mode == NoiseMode::Shared ? 1 : n, 0.0);
  return s;
}

namespace {

// Per-oscillator constants of the two linear branches, hoisted out of the
// step loop. Both branches obey C dU/dt = I - (U - A0)/R with solution
// U(t+dt) = A + (U - A) exp(-dt/(RC)), A = I R + A0 + U_n.
struct BranchTable {
  struct Row {
    double a_off;   // I*r_off
    double a_on;    // I*r_on + u_cf
    double e_off;   // exp(-dt/(r_off*C))
    double e_on;    // exp(-dt/(r_on*C))
    double u_h;
  };
  std::vector<Row> rows;

  explicit BranchTable(const NetworkConfig& cfg) {
    rows.reserve(cfg.size());
    for (const auto& o : cfg.oscillators) {
      Row r;
      r.a_off = o.supply_current * o.sw.r_off;
      r.a_on = o.supply_current * o.sw.r_on + o.sw.u_cf;
      r.e_off = std::exp(-cfg.dt / (o.sw.r_off * o.capacitance));
      r.e_on = std::exp(-cfg.dt / (o.sw.r_on * o.capacitance));
      r.u_h = o.sw.u_h;
      rows.push_back(r);
    }
  }
};

void advance(NetworkState& state, const NetworkConfig& cfg, NoiseStreams& noise,
             const BranchTable& table, std::vector<std::uint8_t>* turned_on) {
  const std::size_t n = cfg.size();

  for (std::size_t s = 0; s < state.last_noise.size(); ++s)
    state.last_noise[s] = sample_noise(noise.streams[s], cfg.noise_amplitude);
  const bool shared = cfg.noise_mode == NoiseMode::Shared;

  if (turned_on) turned_on->assign(n, 0);

  // thresholds from pre-step neighbor states, transitions applied after
  // all voltages moved: no ordering dependence inside a step
  double uth_eff_stack[8];
  std::vector<double> uth_eff_heap;
  double* uth_eff = uth_eff_stack;
  if (n > 8) {
    uth_eff_heap.resize(n);
    uth_eff = uth_eff_heap.data();
  }
  for (std::size_t j = 0; j < n; ++j) uth_eff[j] = effective_threshold(state, cfg, j);

  for (std::size_t j = 0; j < n; ++j) {
    const auto& row = table.rows[j];
    const double un = state.last_noise[shared ? 0 : j];
    double u = state.voltage[j];
    if (state.state[j] == SwitchState::Off) {
      const double a = row.a_off + un;
      u = a + (u - a) * row.e_off;
    } else {
      const double a = row.a_on + un;
      u = a + (u - a) * row.e_on;
    }
    if (!std::isfinite(u))
      throw SimulationDiverged("non-finite voltage at oscillator " + std::to_string(j + 1) +
                               ", t=" + std::to_string(state.time));
    state.voltage[j] = u;

    const double v_sw = u - un;
    if (state.state[j] == SwitchState::On) {
      if (v_sw < row.u_h) state.state[j] = SwitchState::Off;
    } else if (v_sw > uth_eff[j]) {
      state.state[j] = SwitchState::On;
      if (turned_on) (*turned_on)[j] = 1;
    }
  }

  ++state.step_index;
  state.time = static_cast<double>(state.step_index) * cfg.dt;
}

}  // namespace

void step(NetworkState& state, const NetworkConfig& cfg, NoiseStreams& noise,
          std::vector<std::uint8_t>* turned_on) {
  const BranchTable table(cfg);
  advance(state, cfg, noise, table, turned_on);
}

TraceBundle simulate(const NetworkConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.size();

  TraceBundle bundle;
  bundle.config_echo = cfg;
  bundle.spike_trains.resize(n);

  NetworkState state = initial_state(cfg);
  NoiseStreams noise = NoiseStreams::for_config(cfg);
  const BranchTable table(cfg);

  const auto n_steps = static_cast<std::int64_t>(std::llround(cfg.duration / cfg.dt));
  std::vector<std::uint8_t> turned_on(n);

  if (cfg.sample_traces) {
    const auto keep = static_cast<std::size_t>(n_steps);
    bundle.trace_time.reserve(keep);
    bundle.trace_voltage.assign(n, {});
    bundle.trace_current.assign(n, {});
  }

  for (std::int64_t k = 0; k < n_steps; ++k) {
    advance(state, cfg, noise, table, &turned_on);
    const double t = state.time;
    if (t < cfg.transient) continue;

    for (std::size_t j = 0; j < n; ++j)
      if (turned_on[j]) bundle.spike_trains[j].push_back(t);

    if (cfg.sample_traces) {
      const bool shared = cfg.noise_mode == NoiseMode::Shared;
      bundle.trace_time.push_back(t);
      for (std::size_t j = 0; j < n; ++j) {
        const auto& sw = cfg.oscillators[j].sw;
        const double v_sw = state.voltage[j] - state.last_noise[shared ? 0 : j];
        const double i_sw = state.state[j] == SwitchState::Off ? v_sw / sw.r_off
                                                               : (v_sw - sw.u_cf) / sw.r_on;
        bundle.trace_voltage[j].push_back(state.voltage[j]);
        bundle.trace_current[j].push_back(i_sw);
      }
    }
  }

  for (const auto& train : bundle.spike_trains)
    if (train.size() < 2) bundle.insufficient_activity = true;
  return bundle;
}

double analytic_period(const SwitchParams& sw, double supply_current, double capacitance) {
  sw.validate();
  if (!(capacitance > 0.0)) throw ConfigError("analytic_period: capacitance must be > 0");
  const double top = supply_current * sw.r_off;     // OFF-branch asymptote
  const double bottom = supply_current * sw.r_on + sw.u_cf;  // ON-branch asymptote
  if (!(top > sw.u_th))
    throw NoOscillation("charging asymptote I*r_off below u_th: no oscillation");
  if (!(bottom < sw.u_h))
    throw NoOscillation("discharge asymptote u_cf + I*r_on above u_h: no oscillation");
  const double tau_off = sw.r_off * capacitance;
  const double tau_on = sw.r_on * capacitance;
  return tau_off * std::log((top - sw.u_h) / (top - sw.u_th)) +
         tau_on * std::log((sw.u_th - bottom) / (sw.u_h - bottom));
}

}  // namespace oscsync
