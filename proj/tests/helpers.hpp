#pragma once

#include <vector>

#include "entmono/core.hpp"
#include "entmono/types.hpp"

namespace entmono::testing {

/// Index-juggling reduction written independently of the library's offset
/// tables; quadratic in the full dimension, fine for test sizes.
inline Mat naive_partial_trace(const Mat& rho, const DimSignature& sig,
                               const std::vector<int>& keep) {
  const auto& dims = sig.dims();
  const int n = sig.subsystems();
  std::vector<int> traced;
  for (int k = 0; k < n; ++k) {
    bool kept = false;
    for (int lbl : keep) kept |= (lbl == k);
    if (!kept) traced.push_back(k);
  }
  long dk = 1;
  for (int lbl : keep) dk *= dims[static_cast<size_t>(lbl)];
  Mat out = Mat::Zero(dk, dk);
  const long total = sig.total();
  std::vector<long> idx(static_cast<size_t>(n)), jdx(static_cast<size_t>(n));
  const auto decode = [&](long flat, std::vector<long>& digits) {
    for (int k = n - 1; k >= 0; --k) {
      digits[static_cast<size_t>(k)] = flat % dims[static_cast<size_t>(k)];
      flat /= dims[static_cast<size_t>(k)];
    }
  };
  const auto encode_kept = [&](const std::vector<long>& digits) {
    long flat = 0;
    for (int lbl : keep) flat = flat * dims[static_cast<size_t>(lbl)] + digits[static_cast<size_t>(lbl)];
    return flat;
  };
  for (long i = 0; i < total; ++i) {
    decode(i, idx);
    for (long j = 0; j < total; ++j) {
      decode(j, jdx);
      bool diag = true;
      for (int lbl : traced) diag &= (idx[static_cast<size_t>(lbl)] == jdx[static_cast<size_t>(lbl)]);
      if (diag) out(encode_kept(idx), encode_kept(jdx)) += rho(i, j);
    }
  }
  return out;
}

/// Random product of independent local unitaries over the signature.
inline Mat local_unitary(const DimSignature& sig, Rng& rng) {
  Mat u = random_unitary(sig.dim(0), rng);
  for (int k = 1; k < sig.subsystems(); ++k) u = kron(u, random_unitary(sig.dim(k), rng));
  return u;
}

}  // namespace entmono::testing
