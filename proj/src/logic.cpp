#include "oscsync/logic.hpp"

#include "oscsync/errors.hpp"

namespace oscsync {

const char* to_string(LogicRule r) {
  switch (r) {
    case LogicRule::Sync: return "sync";
    case LogicRule::Decimal: return "decimal";
    default: return "threshold";
  }
}

LogicVerdict logic_rule_sync(const SyncEstimate& est, double eta_threshold) {
  if (est.verdict == Verdict::InsufficientData)
    throw InsufficientData("logic: no logic level for an insufficient-data estimate");
  LogicVerdict v;
  v.rule = LogicRule::Sync;
  v.basis_shr = est.shr;
  v.basis_eta = est.eta;
  v.bit = (est.eta >= eta_threshold && est.verdict == Verdict::Synchronized) ? LogicBit::One
                                                                             : LogicBit::Zero;
  return v;
}

LogicVerdict logic_rule_decimal(Fraction shr) {
  if (!shr.defined()) throw ConfigError("logic: undefined fraction");
  shr = reduce_fraction(shr.num, shr.den);
  std::int64_t d = shr.den;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  LogicVerdict v;
  v.rule = LogicRule::Decimal;
  v.basis_shr = shr;
  v.bit = d == 1 ? LogicBit::One : LogicBit::Zero;
  return v;
}

LogicVerdict logic_rule_threshold(Fraction shr) {
  if (!shr.defined()) throw ConfigError("logic: undefined fraction");
  shr = reduce_fraction(shr.num, shr.den);
  LogicVerdict v;
  v.rule = LogicRule::Threshold;
  v.basis_shr = shr;
  v.bit = shr.num >= shr.den ? LogicBit::One : LogicBit::Zero;
  return v;
}

Fraction compose_shr(std::span<const Fraction> fractions) { return product(fractions); }

}  // namespace oscsync
