#include "entmono/monogamy.hpp"

#include <algorithm>
#include <cmath>

#include "entmono/core.hpp"
#include "entmono/structure.hpp"

namespace entmono {

std::string to_string(WitnessOutcome w) {
  switch (w) {
    case WitnessOutcome::factored:
      return "factored";
    case WitnessOutcome::product_AC:
      return "product_AC";
    case WitnessOutcome::separable_AC_ppt:
      return "separable_AC_ppt";
    case WitnessOutcome::none:
      return "none";
  }
  return "?";
}

namespace {

void check_tripartite(const DimSignature& sig) {
  if (sig.subsystems() != 3) throw signature_error("audit needs a tripartite state");
}

WitnessOutcome classify_structure(const PureState* psi, const DensityMatrix& rho_ac,
                                  double eps_wit) {
  if (psi != nullptr) {
    if (witness_factorization(*psi, eps_wit).found) return WitnessOutcome::factored;
  }
  if (is_product(rho_ac, tolerances().recon).product) return WitnessOutcome::product_AC;
  if (ppt_separable(rho_ac, {0}) == Separability::separable) {
    return WitnessOutcome::separable_AC_ppt;
  }
  return WitnessOutcome::none;
}

void fill_structure(AuditRecord& rec, const PureState* psi, const DensityMatrix& rho_ac,
                    const AuditConfig& cfg) {
  if (cfg.with_product_distance) {
    rec.product_distance = is_product(rho_ac, tolerances().recon).distance;
  }
  if (cfg.with_witness && rec.disentangled) {
    rec.witness = classify_structure(psi, rho_ac, 1e-6);
  }
}

}  // namespace

AuditRecord disentangling_gap(const PureState& psi, const MeasureSpec& spec,
                              const AuditConfig& cfg) {
  check_tripartite(psi.signature());
  AuditRecord rec;
  rec.measure = spec.name();
  rec.pure = true;
  rec.eps_gap = cfg.eps_gap_pure;
  rec.e_abc = pure_measure(psi, {0}, spec);
  const DensityMatrix rho_ab = reduced_density(psi, {0, 1});
  const DensityMatrix rho_ac = reduced_density(psi, {0, 2});
  const RoofResult ab = roof_value(rho_ab, {0}, spec, cfg.opt);
  const RoofResult ac = roof_value(rho_ac, {0}, spec, cfg.opt);
  rec.e_ab = ab.value;
  rec.e_ac = ac.value;
  rec.roofs_converged = ab.converged && ac.converged;
  rec.gap = rec.e_abc - rec.e_ab;
  rec.disentangled = std::abs(rec.gap) < rec.eps_gap;
  fill_structure(rec, &psi, rho_ac, cfg);
  return rec;
}

AuditRecord disentangling_gap(const DensityMatrix& rho, const MeasureSpec& spec,
                              const AuditConfig& cfg) {
  check_tripartite(rho.signature());
  AuditRecord rec;
  rec.measure = spec.name();
  rec.pure = rho.rank() == 1;
  rec.eps_gap = rec.pure ? cfg.eps_gap_pure : cfg.eps_gap_mixed;
  const RoofResult abc = roof_value(rho, {0}, spec, cfg.opt);
  const DensityMatrix rho_ab = partial_trace(rho, {0, 1});
  const DensityMatrix rho_ac = partial_trace(rho, {0, 2});
  const RoofResult ab = roof_value(rho_ab, {0}, spec, cfg.opt);
  const RoofResult ac = roof_value(rho_ac, {0}, spec, cfg.opt);
  rec.e_abc = abc.value;
  rec.e_ab = ab.value;
  rec.e_ac = ac.value;
  rec.roofs_converged = abc.converged && ab.converged && ac.converged;
  rec.gap = rec.e_abc - rec.e_ab;
  rec.disentangled = std::abs(rec.gap) < rec.eps_gap;
  fill_structure(rec, nullptr, rho_ac, cfg);
  return rec;
}

CkwResult ckw_check(const PureState& psi, const AuditConfig& cfg) {
  (void)cfg;
  if (!(psi.signature() == DimSignature({2, 2, 2}))) {
    throw signature_error("additive tangle check needs three qubits");
  }
  CkwResult out;
  out.tau_abc = pure_measure(psi, {0}, MeasureSpec::make(MeasureKind::tangle));
  const auto pair_tangle = [&](const std::vector<int>& keep) {
    const DensityMatrix rho = reduced_density(psi, keep);
    const double c = wootters_eof(rho).concurrence;
    return c * c;
  };
  out.tau_ab = pair_tangle({0, 1});
  out.tau_ac = pair_tangle({0, 2});
  out.residual = out.tau_abc - out.tau_ab - out.tau_ac;
  return out;
}

namespace {

/// Predicate "the power inequality holds for this record at alpha".
bool holds_at(const AuditRecord& rec, double alpha, const AuditConfig& cfg) {
  const auto clamp = [&](double v) { return v < cfg.zero_clamp ? 0.0 : v; };
  const double abc = clamp(rec.e_abc);
  const double ab = clamp(std::min(rec.e_ab, rec.e_abc));  // monotonicity within slack
  const double ac = clamp(rec.e_ac);
  const double lhs = abc > 0.0 ? std::pow(abc, alpha) : 0.0;
  const double r1 = ab > 0.0 ? std::pow(ab, alpha) : 0.0;
  const double r2 = ac > 0.0 ? std::pow(ac, alpha) : 0.0;
  return lhs >= r1 + r2 - cfg.tau_audit;
}

}  // namespace

AlphaSearchResult alpha_from_records(std::vector<AuditRecord>& records,
                                     const AuditConfig& cfg) {
  if (records.empty()) throw signature_error("alpha search needs at least one record");
  AlphaSearchResult out;
  out.lo = cfg.alpha_lo;
  out.hi = cfg.alpha_hi;
  out.resolution = cfg.alpha_resolution;
  out.samples = static_cast<int>(records.size());
  // precondition making the predicate monotone in alpha
  for (const AuditRecord& rec : records) {
    const double top = std::max(rec.e_ab, rec.e_ac);
    if (top > rec.e_abc + 1e-6) {
      throw numeric_error("split value below a marginal value (" + rec.state +
                          "): the power comparison is not monotone");
    }
  }
  const auto critical = [&](const AuditRecord& rec) -> std::optional<double> {
    if (holds_at(rec, cfg.alpha_lo, cfg)) return cfg.alpha_lo;
    if (!holds_at(rec, cfg.alpha_hi, cfg)) return std::nullopt;
    double lo = cfg.alpha_lo, hi = cfg.alpha_hi;
    while (hi - lo > cfg.alpha_resolution) {
      const double mid = 0.5 * (lo + hi);
      if (holds_at(rec, mid, cfg)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };
  double worst = cfg.alpha_lo;
  bool all_found = true;
  for (AuditRecord& rec : records) {
    const std::optional<double> a = critical(rec);
    rec.alpha_result = a;
    if (!a.has_value()) {
      all_found = false;
    } else {
      worst = std::max(worst, *a);
    }
  }
  out.found = all_found;
  out.alpha = all_found ? worst : cfg.alpha_hi;
  return out;
}

AlphaSearchResult alpha_search(const std::vector<PureState>& samples,
                               const MeasureSpec& spec, const AuditConfig& cfg,
                               std::vector<AuditRecord>* records_out) {
  if (samples.empty()) throw signature_error("alpha search needs at least one sample");
  const DimSignature sig = samples[0].signature();
  std::vector<AuditRecord> records;
  records.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].signature() == sig)) {
      throw signature_error("alpha search samples must share one signature");
    }
    AuditRecord rec = disentangling_gap(samples[i], spec, cfg);
    rec.state = "sample#" + std::to_string(i);
    records.push_back(std::move(rec));
  }
  const AlphaSearchResult out = alpha_from_records(records, cfg);
  if (records_out != nullptr) *records_out = std::move(records);
  return out;
}

}  // namespace entmono
