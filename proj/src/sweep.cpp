#include "oscsync/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "oscsync/errors.hpp"
#include "oscsync/parallel.hpp"

namespace oscsync {

std::vector<double> CurrentRange::values() const {
  validate();
  std::vector<double> v;
  // inclusive endpoints; half-step slack absorbs rounding at the top
  for (double x = min; x <= max + 0.5 * step; x += step) v.push_back(x);
  return v;
}

void CurrentRange::validate() const {
  if (!(step > 0.0)) throw ConfigError("sweep range: step must be > 0");
  if (!(max >= min && min > 0.0)) throw ConfigError("sweep range: requires max >= min > 0");
}

CurrentRange SweepConfig::resolved_i1() const {
  CurrentRange r = i1;
  if (r.min <= 0.0) r.min = base.oscillators.at(0).sw.i_th;
  if (r.max <= 0.0) r.max = base.oscillators.at(0).sw.i_h;
  return r;
}

CurrentRange SweepConfig::resolved_i2() const {
  CurrentRange r = i2;
  if (r.min <= 0.0) r.min = base.oscillators.at(1).sw.i_th;
  if (r.max <= 0.0) r.max = base.oscillators.at(1).sw.i_h;
  return r;
}

void SweepConfig::validate() const {
  base.validate();
  if (base.size() != 2) throw ConfigError("sweep: base network must be a pair");
  analyzer.validate();
  resolved_i1().validate();
  resolved_i2().validate();
}

namespace {

CellResult estimate_cell(const NetworkConfig& cfg, const AnalyzerConfig& analyzer) {
  CellResult cell;
  try {
    const TraceBundle bundle = simulate(cfg);
    const SyncEstimate est =
        estimate_sync(bundle.spike_trains[0], bundle.spike_trains[1], analyzer);
    cell.verdict = est.verdict;
    cell.shr = est.shr;
    cell.m1 = est.m1;
    cell.m2 = est.m2;
    cell.eta = est.eta;
  } catch (const std::exception& e) {
    cell.error = true;
    cell.error_message = e.what();
  }
  return cell;
}

}  // namespace

SweepMap sweep2d(const SweepConfig& cfg) {
  cfg.validate();
  SweepMap map;
  map.i1 = cfg.resolved_i1().values();
  map.i2 = cfg.resolved_i2().values();
  const std::size_t n1 = map.i1.size(), n2 = map.i2.size();
  map.cells.resize(n1 * n2);

  parallel_for(
      n1 * n2,
      [&](std::size_t idx) {
        const std::size_t a = idx / n2, b = idx % n2;
        NetworkConfig cell_cfg = cfg.base;
        cell_cfg.oscillators[0].supply_current = map.i1[a];
        cell_cfg.oscillators[1].supply_current = map.i2[b];
        cell_cfg.seed = mix_seed(cfg.base_seed, a, b);
        map.cells[idx] = estimate_cell(cell_cfg, cfg.analyzer);
      },
      cfg.threads);
  return map;
}

SweepSummary summarize(const SweepMap& map) {
  SweepSummary s;
  s.total_cells = static_cast<std::int64_t>(map.cells.size());
  if (s.total_cells == 0) return s;

  std::map<Fraction, std::int64_t> counts;
  std::int64_t n_sync = 0, n_error = 0;
  for (const CellResult& c : map.cells) {
    if (c.error) {
      ++n_error;
    } else if (c.verdict == Verdict::Synchronized) {
      ++n_sync;
      ++counts[c.shr];
    }
  }

  const double total = static_cast<double>(s.total_cells);
  s.n_s = static_cast<std::int64_t>(counts.size());
  for (const auto& [shr, n] : counts)
    s.psi_per_shr.emplace_back(shr, 100.0 * static_cast<double>(n) / total);
  std::stable_sort(s.psi_per_shr.begin(), s.psi_per_shr.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  s.psi_total = 100.0 * static_cast<double>(n_sync) / total;
  s.error_share = 100.0 * static_cast<double>(n_error) / total;
  s.desync_share =
      100.0 * static_cast<double>(s.total_cells - n_sync - n_error) / total;
  return s;
}

std::vector<StaircaseRow> staircase_cut(const SweepMap& map, double i2, double* snapped) {
  if (map.i2.empty()) throw ConfigError("staircase_cut: empty map");
  std::size_t b = 0;
  double best = std::abs(map.i2[0] - i2);
  for (std::size_t k = 1; k < map.i2.size(); ++k) {
    const double d = std::abs(map.i2[k] - i2);
    if (d < best) {
      best = d;
      b = k;
    }
  }
  if (snapped) *snapped = map.i2[b];

  std::vector<StaircaseRow> rows;
  rows.reserve(map.i1.size());
  for (std::size_t a = 0; a < map.i1.size(); ++a) {
    const CellResult& c = map.at(a, b);
    rows.push_back({map.i1[a], c.shr, c.eta, c.verdict});
  }
  return rows;
}

std::vector<ScanPoint> scan_parameter(const SweepConfig& base, ScanParameter which,
                                      std::span<const double> values) {
  if (values.empty()) throw ConfigError("scan_parameter: no values given");
  std::vector<ScanPoint> curve;
  curve.reserve(values.size());
  for (double v : values) {
    SweepConfig cfg = base;
    if (which == ScanParameter::Delta) {
      cfg.base.set_uniform_delta(v);
    } else {
      cfg.base.noise_amplitude = v;
    }
    const SweepSummary s = summarize(sweep2d(cfg));
    curve.push_back({v, s.n_s, s.psi_total});
  }
  return curve;
}

}  // namespace oscsync
