#include "oscsync/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oscsync/errors.hpp"
#include "oscsync/version.hpp"

namespace oscsync {

using nlohmann::json;

namespace {

constexpr double kMicro = 1e-6;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string full(double v) { return fmt("%.17g", v); }
std::string g6(double v) { return fmt("%.6g", v); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError("config: " + context + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!ok.count(item.key()))
      throw ConfigError("config: unknown key \"" + item.key() + "\" in " + context);
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("config: ") + key + " must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw ConfigError(std::string("config: ") + key + " must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

std::optional<Preset> preset_from_name(const std::string& name) {
  if (name == "strong_pair") return Preset::StrongPair;
  if (name == "weak_pair") return Preset::WeakPair;
  return std::nullopt;
}

const char* to_string(Preset p) {
  return p == Preset::StrongPair ? "strong_pair" : "weak_pair";
}

std::vector<OscillatorSpec> preset_oscillators(Preset p) {
  OscillatorSpec o1, o2;
  if (p == Preset::StrongPair) {
    o1.sw = {550e-6, 1100e-6, 5.0, 1.5, 0.8, 9.1e3, 620.0};
    o2.sw = {450e-6, 1330e-6, 5.4, 1.7, 1.0, 12.0e3, 530.0};
    o1.supply_current = 740e-6;
  } else {
    o1.sw = {390e-6, 1100e-6, 5.0, 1.5, 0.8, 13.0e3, 620.0};
    o2.sw = {370e-6, 1330e-6, 5.4, 1.7, 1.0, 14.5e3, 530.0};
    o1.supply_current = 725e-6;
  }
  o2.supply_current = 720e-6;
  return {o1, o2};
}

double preset_delta(Preset p) { return p == Preset::StrongPair ? 0.5 : 0.1; }
double preset_noise(Preset /*p*/) { return 20e-3; }

SweepConfig ResolvedConfig::sweep_config() const {
  SweepConfig cfg;
  cfg.base = network;
  cfg.i1 = sweep.i1;
  cfg.i2 = sweep.i2;
  cfg.analyzer = analyzer;
  cfg.base_seed = network.seed;
  cfg.threads = sweep.threads;
  return cfg;
}

ChainConfig ResolvedConfig::chain_config() const {
  ChainConfig cfg;
  cfg.n = chain.n;
  cfg.template_osc = network.oscillators.at(0);
  cfg.template_osc.supply_current = chain.current;
  cfg.currents = chain.currents;
  cfg.delta = chain.delta;
  cfg.noise_amplitude = network.noise_amplitude;
  cfg.noise_mode = network.noise_mode;
  cfg.seed = network.seed;
  cfg.dt = network.dt;
  cfg.duration = network.duration;
  cfg.transient = network.transient;
  cfg.sample_traces = network.sample_traces;
  return cfg;
}

ResolvedConfig default_config() { return parse_config("{}"); }

ResolvedConfig load_config(const std::string& path) { return parse_config(slurp(path)); }

ResolvedConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  check_keys(j, "top level",
             {"preset", "oscillators", "coupling", "noise", "integration", "seed", "analyzer",
              "sweep", "chain"});

  ResolvedConfig cfg;

  Preset preset = Preset::StrongPair;
  if (j.contains("preset")) {
    const auto name = j.at("preset").get<std::string>();
    const auto p = preset_from_name(name);
    if (!p) throw ConfigError("config: unknown preset \"" + name + "\"");
    preset = *p;
  }
  cfg.network.oscillators = preset_oscillators(preset);
  cfg.network.set_uniform_delta(preset_delta(preset));
  cfg.network.noise_amplitude = preset_noise(preset);

  if (j.contains("oscillators")) {
    const json& arr = j.at("oscillators");
    if (!arr.is_array() || arr.empty())
      throw ConfigError("config: oscillators must be a non-empty array");
    std::vector<OscillatorSpec> oscs;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const json& o = arr[k];
      check_keys(o, "oscillators[" + std::to_string(k) + "]",
                 {"i_th_ua", "i_h_ua", "u_th_v", "u_h_v", "u_cf_v", "r_off_ohm", "r_on_ohm",
                  "current_ua", "capacitance_f"});
      // template: the matching preset entry (pairs), else preset switch 1
      OscillatorSpec spec = cfg.network.oscillators[std::min<std::size_t>(k, 1)];
      spec.sw.i_th = get_num(o, "i_th_ua", spec.sw.i_th / kMicro) * kMicro;
      spec.sw.i_h = get_num(o, "i_h_ua", spec.sw.i_h / kMicro) * kMicro;
      spec.sw.u_th = get_num(o, "u_th_v", spec.sw.u_th);
      spec.sw.u_h = get_num(o, "u_h_v", spec.sw.u_h);
      spec.sw.u_cf = get_num(o, "u_cf_v", spec.sw.u_cf);
      spec.sw.r_off = get_num(o, "r_off_ohm", spec.sw.r_off);
      spec.sw.r_on = get_num(o, "r_on_ohm", spec.sw.r_on);
      spec.supply_current = get_num(o, "current_ua", spec.supply_current / kMicro) * kMicro;
      spec.capacitance = get_num(o, "capacitance_f", spec.capacitance);
      oscs.push_back(spec);
    }
    const double d = cfg.network.delta_fwd.empty() ? preset_delta(preset)
                                                   : cfg.network.delta_fwd[0];
    cfg.network.oscillators = std::move(oscs);
    cfg.network.set_uniform_delta(d);
  }

  if (j.contains("coupling")) {
    const json& c = j.at("coupling");
    check_keys(c, "coupling", {"delta_v", "delta_fwd_v", "delta_bwd_v"});
    if (c.contains("delta_v")) {
      cfg.network.set_uniform_delta(c.at("delta_v").get<double>());
    }
    const std::size_t links = cfg.network.size() - 1;
    if (c.contains("delta_fwd_v")) {
      const auto v = c.at("delta_fwd_v").get<std::vector<double>>();
      if (v.size() != links)
        throw ConfigError("config: delta_fwd_v must have N-1 entries");
      cfg.network.delta_fwd = v;
    }
    if (c.contains("delta_bwd_v")) {
      const auto v = c.at("delta_bwd_v").get<std::vector<double>>();
      if (v.size() != links)
        throw ConfigError("config: delta_bwd_v must have N-1 entries");
      cfg.network.delta_bwd = v;
    }
  }

  if (j.contains("noise")) {
    const json& n = j.at("noise");
    check_keys(n, "noise", {"amplitude_v", "mode"});
    cfg.network.noise_amplitude = get_num(n, "amplitude_v", cfg.network.noise_amplitude);
    if (n.contains("mode")) {
      const auto mode = n.at("mode").get<std::string>();
      if (mode == "shared")
        cfg.network.noise_mode = NoiseMode::Shared;
      else if (mode == "independent")
        cfg.network.noise_mode = NoiseMode::Independent;
      else
        throw ConfigError("config: noise mode must be \"shared\" or \"independent\"");
    }
  }

  if (j.contains("integration")) {
    const json& i = j.at("integration");
    check_keys(i, "integration", {"dt_s", "duration_s", "transient_s", "sample_traces"});
    cfg.network.dt = get_num(i, "dt_s", cfg.network.dt);
    cfg.network.duration = get_num(i, "duration_s", cfg.network.duration);
    cfg.network.transient = get_num(i, "transient_s", cfg.network.transient);
    if (i.contains("sample_traces"))
      cfg.network.sample_traces = i.at("sample_traces").get<bool>();
  }

  if (j.contains("seed")) cfg.network.seed = j.at("seed").get<std::uint64_t>();

  if (j.contains("analyzer")) {
    const json& a = j.at("analyzer");
    check_keys(a, "analyzer",
               {"eta_threshold_pct", "m_max", "window_s", "window_fraction", "min_epochs"});
    cfg.analyzer.eta_threshold = get_num(a, "eta_threshold_pct", cfg.analyzer.eta_threshold);
    cfg.analyzer.m_max = get_int(a, "m_max", cfg.analyzer.m_max);
    cfg.analyzer.coincidence_window = get_num(a, "window_s", cfg.analyzer.coincidence_window);
    cfg.analyzer.window_fraction = get_num(a, "window_fraction", cfg.analyzer.window_fraction);
    cfg.analyzer.min_epochs = get_int(a, "min_epochs", cfg.analyzer.min_epochs);
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, "sweep",
               {"i1_min_ua", "i1_max_ua", "i1_step_ua", "i2_min_ua", "i2_max_ua", "i2_step_ua",
                "threads"});
    cfg.sweep.i1.min = get_num(s, "i1_min_ua", 0.0) * kMicro;
    cfg.sweep.i1.max = get_num(s, "i1_max_ua", 0.0) * kMicro;
    cfg.sweep.i1.step = get_num(s, "i1_step_ua", 10.0) * kMicro;
    cfg.sweep.i2.min = get_num(s, "i2_min_ua", 0.0) * kMicro;
    cfg.sweep.i2.max = get_num(s, "i2_max_ua", 0.0) * kMicro;
    cfg.sweep.i2.step = get_num(s, "i2_step_ua", 10.0) * kMicro;
    cfg.sweep.threads = get_int(s, "threads", 0);
  }

  if (j.contains("chain")) {
    const json& c = j.at("chain");
    check_keys(c, "chain",
               {"n", "current_ua", "currents_ua", "delta_v", "vary", "vary_min_ua",
                "vary_max_ua", "vary_step_ua"});
    cfg.chain.n = get_int(c, "n", cfg.chain.n);
    cfg.chain.current = get_num(c, "current_ua", cfg.chain.current / kMicro) * kMicro;
    if (c.contains("currents_ua")) {
      cfg.chain.currents = c.at("currents_ua").get<std::vector<double>>();
      for (double& x : cfg.chain.currents) x *= kMicro;
    }
    cfg.chain.delta = get_num(c, "delta_v", cfg.chain.delta);
    if (c.contains("vary")) {
      const auto v = c.at("vary").get<std::vector<int>>();
      if (v.size() != 2) throw ConfigError("config: chain.vary must hold two indices");
      cfg.chain.vary_a = v[0];
      cfg.chain.vary_b = v[1];
    }
    cfg.chain.vary_range.min = get_num(c, "vary_min_ua", 0.0) * kMicro;
    cfg.chain.vary_range.max = get_num(c, "vary_max_ua", 0.0) * kMicro;
    cfg.chain.vary_range.step = get_num(c, "vary_step_ua", 50.0) * kMicro;
  }

  cfg.network.validate();
  cfg.analyzer.validate();
  return cfg;
}

std::string dump_config(const ResolvedConfig& cfg) {
  json j;
  json oscs = json::array();
  for (const auto& o : cfg.network.oscillators) {
    oscs.push_back({{"i_th_ua", o.sw.i_th / kMicro},
                    {"i_h_ua", o.sw.i_h / kMicro},
                    {"u_th_v", o.sw.u_th},
                    {"u_h_v", o.sw.u_h},
                    {"u_cf_v", o.sw.u_cf},
                    {"r_off_ohm", o.sw.r_off},
                    {"r_on_ohm", o.sw.r_on},
                    {"current_ua", o.supply_current / kMicro},
                    {"capacitance_f", o.capacitance}});
  }
  j["oscillators"] = std::move(oscs);
  j["coupling"] = {{"delta_fwd_v", cfg.network.delta_fwd},
                   {"delta_bwd_v", cfg.network.delta_bwd}};
  j["noise"] = {{"amplitude_v", cfg.network.noise_amplitude},
                {"mode", cfg.network.noise_mode == NoiseMode::Shared ? "shared" : "independent"}};
  j["integration"] = {{"dt_s", cfg.network.dt},
                      {"duration_s", cfg.network.duration},
                      {"transient_s", cfg.network.transient},
                      {"sample_traces", cfg.network.sample_traces}};
  j["seed"] = cfg.network.seed;
  j["analyzer"] = {{"eta_threshold_pct", cfg.analyzer.eta_threshold},
                   {"m_max", cfg.analyzer.m_max},
                   {"window_s", cfg.analyzer.coincidence_window},
                   {"window_fraction", cfg.analyzer.window_fraction},
                   {"min_epochs", cfg.analyzer.min_epochs}};
  j["sweep"] = {{"i1_min_ua", cfg.sweep.i1.min / kMicro},
                {"i1_max_ua", cfg.sweep.i1.max / kMicro},
                {"i1_step_ua", cfg.sweep.i1.step / kMicro},
                {"i2_min_ua", cfg.sweep.i2.min / kMicro},
                {"i2_max_ua", cfg.sweep.i2.max / kMicro},
                {"i2_step_ua", cfg.sweep.i2.step / kMicro},
                {"threads", cfg.sweep.threads}};
  json chain = {{"n", cfg.chain.n},
                {"current_ua", cfg.chain.current / kMicro},
                {"delta_v", cfg.chain.delta},
                {"vary", {cfg.chain.vary_a, cfg.chain.vary_b}},
                {"vary_min_ua", cfg.chain.vary_range.min / kMicro},
                {"vary_max_ua", cfg.chain.vary_range.max / kMicro},
                {"vary_step_ua", cfg.chain.vary_range.step / kMicro}};
  if (!cfg.chain.currents.empty()) {
    json arr = json::array();
    for (double x : cfg.chain.currents) arr.push_back(x / kMicro);
    chain["currents_ua"] = std::move(arr);
  }
  j["chain"] = std::move(chain);
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& m) {
  json j;
  j["artifact"] = "oscsync";
  j["version"] = m.version;
  j["subcommand"] = m.subcommand;
  j["base_seed"] = m.base_seed;
  j["config"] = json::parse(dump_config(m.config));
  j["outputs"] = m.outputs;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

RunManifest load_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest: JSON parse error: ") + e.what());
  }
  check_keys(j, "manifest", {"artifact", "version", "subcommand", "base_seed", "config", "outputs"});
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.version = j.value("version", "");
  m.base_seed = j.at("base_seed").get<std::uint64_t>();
  m.config = parse_config(j.at("config").dump());
  m.outputs = j.value("outputs", std::vector<std::string>{});
  return m;
}

void write_spike_train(const std::string& path, const SpikeTrain& train) {
  auto out = open_out(path);
  for (double t : train) out << full(t) << "\n";
}

SpikeTrain read_spike_train(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  SpikeTrain train;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    train.push_back(std::stod(line));
  }
  for (std::size_t k = 1; k < train.size(); ++k)
    if (!(train[k] > train[k - 1]))
      throw ConfigError("spike train not strictly increasing: " + path);
  return train;
}

void write_traces_csv(const std::string& path, const TraceBundle& bundle) {
  auto out = open_out(path);
  out << "time_s";
  for (std::size_t j = 0; j < bundle.trace_voltage.size(); ++j)
    out << ",osc" << j + 1 << "_u_V,osc" << j + 1 << "_i_A";
  out << "\n";
  for (std::size_t k = 0; k < bundle.trace_time.size(); ++k) {
    out << full(bundle.trace_time[k]);
    for (std::size_t j = 0; j < bundle.trace_voltage.size(); ++j)
      out << "," << full(bundle.trace_voltage[j][k]) << "," << full(bundle.trace_current[j][k]);
    out << "\n";
  }
}

void write_estimate(const std::string& path, const SyncEstimate& est) {
  auto out = open_out(path);
  out << "# oscsync sync estimate\n";
  out << "verdict," << to_string(est.verdict) << "\n";
  out << "m1," << est.m1 << "\n";
  out << "m2," << est.m2 << "\n";
  out << "shr," << (est.shr.defined() ? est.shr.str() : "0/0") << "\n";
  out << "eta," << g6(est.eta) << "\n";
  out << "epoch_count," << est.epoch_count << "\n";
  out << "freq_ratio_check," << g6(est.freq_ratio_check) << "\n";
  out << "window_s," << full(est.window) << "\n";
}

namespace {

void write_cell_row(std::ofstream& out, double i1, double i2, const CellResult& c) {
  out << g6(i1 / kMicro) << "," << g6(i2 / kMicro) << ",";
  if (c.error)
    out << "ERROR,0,0,0";
  else
    out << to_string(c.verdict) << "," << c.m1 << "," << c.m2 << "," << g6(c.eta);
  out << "\n";
}

}  // namespace

void write_map(const std::string& path, const SweepMap& map) {
  auto out = open_out(path);
  const auto axis = [](const std::vector<double>& v) {
    const double step = v.size() > 1 ? v[1] - v[0] : 0.0;
    return g6(v.front() / kMicro) + " " + g6(v.back() / kMicro) + " " + g6(step / kMicro);
  };
  out << "# i1: " << axis(map.i1) << "\n";
  out << "# i2: " << axis(map.i2) << "\n";
  out << "# columns: i1_ua,i2_ua,verdict,m1,m2,eta\n";
  for (std::size_t a = 0; a < map.i1.size(); ++a)
    for (std::size_t b = 0; b < map.i2.size(); ++b)
      write_cell_row(out, map.i1[a], map.i2[b], map.at(a, b));
}

void write_summary(const std::string& path, const SweepSummary& summary) {
  auto out = open_out(path);
  out << "# columns: shr,psi_percent\n";
  for (const auto& [shr, psi] : summary.psi_per_shr)
    out << shr.str() << "," << g6(psi) << "\n";
  out << "TOTAL," << g6(summary.psi_total) << "\n";
  out << "N_S," << summary.n_s << "\n";
}

void write_staircase(const std::string& path, const std::vector<StaircaseRow>& rows,
                     double i2_snapped) {
  auto out = open_out(path);
  out << "# i2: " << g6(i2_snapped / kMicro) << "\n";
  out << "# columns: i1_ua,shr,eta,verdict\n";
  for (const auto& r : rows)
    out << g6(r.i1 / kMicro) << "," << (r.shr.defined() ? r.shr.str() : "0/0") << ","
        << g6(r.eta) << "," << to_string(r.verdict) << "\n";
}

void write_scan(const std::string& path, ScanParameter which,
                const std::vector<ScanPoint>& curve) {
  auto out = open_out(path);
  out << "# scan: " << (which == ScanParameter::Delta ? "delta" : "noise") << "\n";
  out << "# columns: value_v,n_s,psi_percent\n";
  for (const auto& p : curve)
    out << full(p.value) << "," << p.n_s << "," << g6(p.psi) << "\n";
}

void write_chain_report(const std::string& path, const ChainReport& report) {
  auto out = open_out(path);
  out << "# columns: kind,a,b,m1,m2,eta,verdict\n";
  const std::size_t n = report.pairwise.size() + 1;
  for (std::size_t j = 0; j < report.pairwise.size(); ++j) {
    const SyncEstimate& e = report.pairwise[j];
    out << "pair," << j + 1 << "," << j + 2 << "," << e.m1 << "," << e.m2 << "," << g6(e.eta)
        << "," << to_string(e.verdict) << "\n";
  }
  const SyncEstimate& e = report.end_to_end;
  out << "end_to_end,1," << n << "," << e.m1 << "," << e.m2 << "," << g6(e.eta) << ","
      << to_string(e.verdict) << "\n";
  if (report.predicted)
    out << "predicted," << report.predicted->num << "," << report.predicted->den << ","
        << (report.multiplicativity_holds ? "true" : "false") << "\n";
  else
    out << "predicted,0,0,false\n";
}

FractionRecord read_fraction_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  FractionRecord rec;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::string key = line, value;
    if (const auto comma = line.find(','); comma != std::string::npos) {
      key = line.substr(0, comma);
      value = line.substr(comma + 1);
    }
    if (key == "shr" || key.find('/') != std::string::npos) {
      const std::string& f = value.empty() ? key : value;
      const auto slash = f.find('/');
      if (slash == std::string::npos) throw ConfigError("fraction record: expected num/den");
      rec.shr = {std::stoll(f.substr(0, slash)), std::stoll(f.substr(slash + 1))};
    } else if (key == "eta") {
      rec.eta = std::stod(value);
    } else if (key == "verdict") {
      if (value == "SYNCHRONIZED") rec.verdict = Verdict::Synchronized;
      else if (value == "DESYNCHRONIZED") rec.verdict = Verdict::Desynchronized;
      else rec.verdict = Verdict::InsufficientData;
    }
    // other estimate-record keys are ignored here
  }
  if (!rec.shr.defined()) throw ConfigError("fraction record: no shr found in " + path);
  return rec;
}

}  // namespace oscsync
