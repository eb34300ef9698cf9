#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscsync/oscsync.hpp"

namespace py = pybind11;
using namespace oscsync;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thermally coupled relaxation-oscillator networks: simulation, "
            "higher-order synchronization metrics, parameter sweeps and "
            "synchronization-based logic.";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SimulationDiverged>(m, "SimulationDiverged", PyExc_RuntimeError);
  py::register_exception<NoOscillation>(m, "NoOscillation", PyExc_ValueError);
  py::register_exception<InsufficientData>(m, "InsufficientDataError", PyExc_ValueError);

  py::enum_<SwitchState>(m, "SwitchState")
      .value("OFF", SwitchState::Off)
      .value("ON", SwitchState::On);
  py::enum_<NoiseMode>(m, "NoiseMode")
      .value("SHARED", NoiseMode::Shared)
      .value("INDEPENDENT", NoiseMode::Independent);
  py::enum_<Verdict>(m, "Verdict")
      .value("SYNCHRONIZED", Verdict::Synchronized)
      .value("DESYNCHRONIZED", Verdict::Desynchronized)
      .value("INSUFFICIENT_DATA", Verdict::InsufficientData);
  py::enum_<LogicBit>(m, "LogicBit").value("ZERO", LogicBit::Zero).value("ONE", LogicBit::One);
  py::enum_<LogicRule>(m, "LogicRule")
      .value("SYNC", LogicRule::Sync)
      .value("DECIMAL", LogicRule::Decimal)
      .value("THRESHOLD", LogicRule::Threshold);
  py::enum_<ScanParameter>(m, "ScanParameter")
      .value("DELTA", ScanParameter::Delta)
      .value("NOISE", ScanParameter::Noise);
  py::enum_<Preset>(m, "Preset")
      .value("STRONG_PAIR", Preset::StrongPair)
      .value("WEAK_PAIR", Preset::WeakPair);

  py::class_<SwitchParams>(m, "SwitchParams")
      .def(py::init<>())
      .def(py::init([](double i_th, double i_h, double u_th, double u_h, double u_cf,
                       double r_off, double r_on) {
             SwitchParams p{i_th, i_h, u_th, u_h, u_cf, r_off, r_on};
             p.validate();
             return p;
           }),
           py::arg("i_th"), py::arg("i_h"), py::arg("u_th"), py::arg("u_h"), py::arg("u_cf"),
           py::arg("r_off"), py::arg("r_on"))
      .def_readwrite("i_th", &SwitchParams::i_th)
      .def_readwrite("i_h", &SwitchParams::i_h)
      .def_readwrite("u_th", &SwitchParams::u_th)
      .def_readwrite("u_h", &SwitchParams::u_h)
      .def_readwrite("u_cf", &SwitchParams::u_cf)
      .def_readwrite("r_off", &SwitchParams::r_off)
      .def_readwrite("r_on", &SwitchParams::r_on)
      .def("validate", &SwitchParams::validate);

  py::class_<OscillatorSpec>(m, "OscillatorSpec")
      .def(py::init<>())
      .def_readwrite("sw", &OscillatorSpec::sw)
      .def_readwrite("supply_current", &OscillatorSpec::supply_current)
      .def_readwrite("capacitance", &OscillatorSpec::capacitance);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("oscillators", &NetworkConfig::oscillators)
      .def_readwrite("delta_fwd", &NetworkConfig::delta_fwd)
      .def_readwrite("delta_bwd", &NetworkConfig::delta_bwd)
      .def_readwrite("noise_amplitude", &NetworkConfig::noise_amplitude)
      .def_readwrite("noise_mode", &NetworkConfig::noise_mode)
      .def_readwrite("seed", &NetworkConfig::seed)
      .def_readwrite("dt", &NetworkConfig::dt)
      .def_readwrite("duration", &NetworkConfig::duration)
      .def_readwrite("transient", &NetworkConfig::transient)
      .def_readwrite("sample_traces", &NetworkConfig::sample_traces)
      .def("set_uniform_delta", &NetworkConfig::set_uniform_delta)
      .def("validate", &NetworkConfig::validate);

  py::class_<TraceBundle>(m, "TraceBundle")
      .def_readonly("spike_trains", &TraceBundle::spike_trains)
      .def_readonly("trace_time", &TraceBundle::trace_time)
      .def_readonly("trace_voltage", &TraceBundle::trace_voltage)
      .def_readonly("trace_current", &TraceBundle::trace_current)
      .def_readonly("insufficient_activity", &TraceBundle::insufficient_activity);

  py::class_<Fraction>(m, "Fraction")
      .def(py::init([](std::int64_t num, std::int64_t den) { return Fraction{num, den}; }),
           py::arg("num"), py::arg("den"))
      .def_readonly("num", &Fraction::num)
      .def_readonly("den", &Fraction::den)
      .def("defined", &Fraction::defined)
      .def("__eq__", [](const Fraction& a, const Fraction& b) { return a == b; })
      .def("__repr__", [](const Fraction& f) { return "Fraction(" + f.str() + ")"; })
      .def("__str__", &Fraction::str);

  py::class_<AnalyzerConfig>(m, "AnalyzerConfig")
      .def(py::init<>())
      .def_readwrite("eta_threshold", &AnalyzerConfig::eta_threshold)
      .def_readwrite("m_max", &AnalyzerConfig::m_max)
      .def_readwrite("coincidence_window", &AnalyzerConfig::coincidence_window)
      .def_readwrite("window_fraction", &AnalyzerConfig::window_fraction)
      .def_readwrite("min_epochs", &AnalyzerConfig::min_epochs);

  py::class_<Epoch>(m, "Epoch")
      .def_readonly("start", &Epoch::start)
      .def_readonly("m1", &Epoch::m1)
      .def_readonly("m2", &Epoch::m2);

  py::class_<SyncEstimate>(m, "SyncEstimate")
      .def_readonly("verdict", &SyncEstimate::verdict)
      .def_readonly("shr", &SyncEstimate::shr)
      .def_readonly("m1", &SyncEstimate::m1)
      .def_readonly("m2", &SyncEstimate::m2)
      .def_readonly("eta", &SyncEstimate::eta)
      .def_readonly("epoch_histogram", &SyncEstimate::epoch_histogram)
      .def_readonly("epoch_count", &SyncEstimate::epoch_count)
      .def_readonly("freq_ratio_check", &SyncEstimate::freq_ratio_check)
      .def_readonly("window", &SyncEstimate::window);

  py::class_<Capacity>(m, "Capacity")
      .def_readonly("n_s", &Capacity::n_s)
      .def_readonly("w_c", &Capacity::w_c)
      .def("__repr__", [](const Capacity& c) {
        return "Capacity(n_s=" + std::to_string(c.n_s) + ", w_c=" + std::to_string(c.w_c) + ")";
      });

  py::class_<CurrentRange>(m, "CurrentRange")
      .def(py::init([](double min, double max, double step) {
             return CurrentRange{min, max, step};
           }),
           py::arg("min"), py::arg("max"), py::arg("step") = 10e-6)
      .def_readwrite("min", &CurrentRange::min)
      .def_readwrite("max", &CurrentRange::max)
      .def_readwrite("step", &CurrentRange::step)
      .def("values", &CurrentRange::values);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("base", &SweepConfig::base)
      .def_readwrite("i1", &SweepConfig::i1)
      .def_readwrite("i2", &SweepConfig::i2)
      .def_readwrite("analyzer", &SweepConfig::analyzer)
      .def_readwrite("base_seed", &SweepConfig::base_seed)
      .def_readwrite("threads", &SweepConfig::threads);

  py::class_<CellResult>(m, "CellResult")
      .def_readonly("verdict", &CellResult::verdict)
      .def_readonly("shr", &CellResult::shr)
      .def_readonly("m1", &CellResult::m1)
      .def_readonly("m2", &CellResult::m2)
      .def_readonly("eta", &CellResult::eta)
      .def_readonly("error", &CellResult::error)
      .def_readonly("error_message", &CellResult::error_message);

  py::class_<SweepMap>(m, "SweepMap")
      .def_readonly("i1", &SweepMap::i1)
      .def_readonly("i2", &SweepMap::i2)
      .def_readonly("cells", &SweepMap::cells)
      .def("at", [](const SweepMap& map, std::size_t a, std::size_t b) { return map.at(a, b); });

  py::class_<SweepSummary>(m, "SweepSummary")
      .def_readonly("n_s", &SweepSummary::n_s)
      .def_readonly("psi_per_shr", &SweepSummary::psi_per_shr)
      .def_readonly("psi_total", &SweepSummary::psi_total)
      .def_readonly("desync_share", &SweepSummary::desync_share)
      .def_readonly("error_share", &SweepSummary::error_share)
      .def_readonly("total_cells", &SweepSummary::total_cells);

  py::class_<ScanPoint>(m, "ScanPoint")
      .def_readonly("value", &ScanPoint::value)
      .def_readonly("n_s", &ScanPoint::n_s)
      .def_readonly("psi", &ScanPoint::psi);

  py::class_<ChainConfig>(m, "ChainConfig")
      .def(py::init<>())
      .def_readwrite("n", &ChainConfig::n)
      .def_readwrite("template_osc", &ChainConfig::template_osc)
      .def_readwrite("currents", &ChainConfig::currents)
      .def_readwrite("delta", &ChainConfig::delta)
      .def_readwrite("noise_amplitude", &ChainConfig::noise_amplitude)
      .def_readwrite("noise_mode", &ChainConfig::noise_mode)
      .def_readwrite("seed", &ChainConfig::seed)
      .def_readwrite("dt", &ChainConfig::dt)
      .def_readwrite("duration", &ChainConfig::duration)
      .def_readwrite("transient", &ChainConfig::transient);

  py::class_<ChainReport>(m, "ChainReport")
      .def_readonly("pairwise", &ChainReport::pairwise)
      .def_readonly("end_to_end", &ChainReport::end_to_end)
      .def_readonly("predicted", &ChainReport::predicted)
      .def_readonly("multiplicativity_holds", &ChainReport::multiplicativity_holds)
      .def_readonly("low_eta_transfer", &ChainReport::low_eta_transfer);

  py::class_<LogicVerdict>(m, "LogicVerdict")
      .def_readonly("bit", &LogicVerdict::bit)
      .def_readonly("rule", &LogicVerdict::rule)
      .def_readonly("basis_shr", &LogicVerdict::basis_shr)
      .def_readonly("basis_eta", &LogicVerdict::basis_eta);

  m.def("preset_oscillators", &preset_oscillators, py::arg("preset"));
  m.def("preset_delta", &preset_delta, py::arg("preset"));
  m.def("preset_noise", &preset_noise, py::arg("preset"));
  m.def("mix_seed", &mix_seed, py::arg("base"), py::arg("a"), py::arg("b") = 0);

  m.def("analytic_period", &analytic_period, py::arg("switch"), py::arg("supply_current"),
        py::arg("capacitance") = 100e-9,
        "Exact period of the noiseless, uncoupled limit cycle.");
  m.def("simulate", &simulate, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("effective_threshold", &effective_threshold, py::arg("state"), py::arg("config"),
        py::arg("j"));

  m.def("detect_epochs", &detect_epochs, py::arg("a"), py::arg("b"), py::arg("eps"));
  m.def("estimate_sync", &estimate_sync, py::arg("a"), py::arg("b"),
        py::arg("config") = AnalyzerConfig{});
  m.def(
      "extract_spikes",
      [](const std::vector<double>& time, const std::vector<double>& value,
         double threshold_sigma, double refractory) {
        return extract_spikes(time, value, threshold_sigma, refractory);
      },
      py::arg("time"), py::arg("value"), py::arg("threshold_sigma") = 3.0,
      py::arg("refractory") = 0.0);
  m.def("mean_frequency", &mean_frequency, py::arg("train"));
  m.def("capacity", &capacity, py::arg("m_max"));
  m.def("reduce_fraction", &reduce_fraction, py::arg("m1"), py::arg("m2"));
  m.def("compose_shr", [](const std::vector<Fraction>& fs) { return compose_shr(fs); },
        py::arg("fractions"));
  m.def("predict_end_to_end",
        [](const std::vector<Fraction>& fs) { return predict_end_to_end(fs); },
        py::arg("pairwise"));

  m.def("sweep2d", &sweep2d, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("summarize", &summarize, py::arg("map"));
  m.def(
      "staircase_cut",
      [](const SweepMap& map, double i2) { return staircase_cut(map, i2); },
      py::arg("map"), py::arg("i2"));
  m.def(
      "scan_parameter",
      [](const SweepConfig& base, ScanParameter which, const std::vector<double>& values) {
        return scan_parameter(base, which, values);
      },
      py::arg("base"), py::arg("which"), py::arg("values"),
      py::call_guard<py::gil_scoped_release>());

  m.def("simulate_chain", &simulate_chain, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("chain_report", &chain_report, py::arg("bundle"), py::arg("analyzer"));
  m.def("chain_sweep", &chain_sweep, py::arg("config"), py::arg("vary_a"), py::arg("vary_b"),
        py::arg("range_a"), py::arg("range_b"), py::arg("analyzer"), py::arg("base_seed"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  m.def("logic_rule_sync", &logic_rule_sync, py::arg("estimate"),
        py::arg("eta_threshold") = 90.0);
  m.def("logic_rule_decimal", &logic_rule_decimal, py::arg("shr"));
  m.def("logic_rule_threshold", &logic_rule_threshold, py::arg("shr"));
}
