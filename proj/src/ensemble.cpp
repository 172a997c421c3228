#include "entmono/ensemble.hpp"

#include <algorithm>

#include "entmono/core.hpp"
#include "entmono/rng.hpp"

namespace entmono {

namespace {

bool known_family(const std::string& f) {
  return f == "haar-pure" || f == "ginibre" || f == "product-family" || f == "ghz" ||
         f == "w" || f == "bell-c";
}

}  // namespace

void EnsembleSpec::validate() const {
  if (!known_family(family)) throw signature_error("unknown ensemble family '" + family + "'");
  if (count < 1) throw signature_error("ensemble count must be >= 1");
  if (family == "w") {
    if (!dims.empty() && dims != std::vector<int>{2, 2, 2}) {
      throw signature_error("the w family is three qubits");
    }
    return;
  }
  if (family == "ghz") {
    if (dims.empty()) return;  // defaults to qubits
    if (dims.size() != 3 || dims[0] != dims[1] || dims[1] != dims[2] || dims[0] < 2) {
      throw signature_error("the ghz family needs dims (d,d,d)");
    }
    return;
  }
  if (family == "bell-c") {
    if (dims.empty()) return;
    if (dims.size() != 3 || dims[0] != 2 || dims[1] != 2 || dims[2] < 1) {
      throw signature_error("the bell-c family needs dims (2,2,dC)");
    }
    return;
  }
  if (dims.empty()) throw signature_error("family '" + family + "' needs explicit dims");
  DimSignature sig(dims);  // validates entries
  if (family == "product-family") {
    if (dims.size() != 3) throw signature_error("product-family needs three subsystems");
    const int b1 = std::min(dims[0], dims[1]);
    if (b1 < 1 || dims[1] / b1 < 1) throw signature_error("middle dimension too small");
  }
  if (family == "ginibre") {
    if (rank < 0 || rank > sig.total()) throw signature_error("rank out of range");
  }
}

bool EnsembleSpec::pure() const { return family != "ginibre"; }

PureState ensemble_pure(const EnsembleSpec& spec, std::uint64_t seed, int index) {
  spec.validate();
  if (!spec.pure()) throw signature_error("family '" + spec.family + "' is not pure");
  if (index < 0 || index >= spec.count) throw signature_error("ensemble index out of range");
  const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(index));
  if (spec.family == "haar-pure") return random_pure(DimSignature(spec.dims), s);
  if (spec.family == "ghz") return ghz_state(spec.dims.empty() ? 2 : spec.dims[0]);
  if (spec.family == "w") return w_state();
  if (spec.family == "bell-c") return bell_with_spectator(spec.dims.empty() ? 2 : spec.dims[2]);
  // product-family
  const int da = spec.dims[0], db = spec.dims[1], dc = spec.dims[2];
  const int b1 = std::min(da, db);
  const int b2 = std::min(dc, db / b1);
  Rng rng(s);
  const PureState phi = random_pure(DimSignature({da, b1}), rng.raw());
  const PureState eta = random_pure(DimSignature({b2, dc}), rng.raw());
  const Mat u = random_unitary(db, rng);
  return make_product_family(phi, eta, u, db);
}

DensityMatrix ensemble_density(const EnsembleSpec& spec, std::uint64_t seed, int index) {
  spec.validate();
  if (index < 0 || index >= spec.count) throw signature_error("ensemble index out of range");
  if (spec.pure()) return ensemble_pure(spec, seed, index).projector();
  const DimSignature sig(spec.dims);
  const int rank = spec.rank == 0 ? static_cast<int>(sig.total()) : spec.rank;
  return random_density(sig, rank, derive_seed(seed, static_cast<std::uint64_t>(index)));
}

std::string member_label(const EnsembleSpec& spec, int index) {
  std::string d = "[";
  for (size_t k = 0; k < spec.dims.size(); ++k) {
    if (k) d += ",";
    d += std::to_string(spec.dims[k]);
  }
  d += "]";
  if (spec.dims.empty()) d = "";
  return spec.family + d + "#" + std::to_string(index);
}

}  // namespace entmono
