#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entmono/types.hpp"

namespace entmono {

class PureState;
class DensityMatrix;

/// Deterministic state generator. Member i of a batch depends only on
/// (family, dims, rank, seed, i), so batches are order-independent.
/// Families:
///   haar-pure       unit Gaussian vector, normalized, over `dims`
///   ginibre         mixed G G^dag / Tr over `dims`; `rank` columns (0 = full)
///   product-family  tripartite (dA,dB,dC): random phi on A(x)B1 and eta on
///                   B2(x)C wired through a random unitary on B, with
///                   B1 = min(dA,dB), B2 = min(dC, dB/B1); its AC marginal is
///                   a product by construction
///   ghz             (sum_k |kkk>)/sqrt(d), dims (d,d,d)
///   w               (|001>+|010>+|100>)/sqrt(3)
///   bell-c          Bell on AB with a |0> spectator C, dims (2,2,dC)
struct EnsembleSpec {
  std::string family = "haar-pure";
  std::vector<int> dims;
  int count = 1;
  int rank = 0;  // ginibre only; 0 means full rank

  void validate() const;
  bool pure() const;  // every family except ginibre yields pure states
};

PureState ensemble_pure(const EnsembleSpec& spec, std::uint64_t seed, int index);
DensityMatrix ensemble_density(const EnsembleSpec& spec, std::uint64_t seed, int index);

/// Short printable descriptor, e.g. "haar-pure[2,4,2]#17".
std::string member_label(const EnsembleSpec& spec, int index);

}  // namespace entmono
