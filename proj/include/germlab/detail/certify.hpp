#pragma once

#include "germlab/error.hpp"

#include <optional>
#include <string>
#include <type_traits>

namespace germlab::invariants {

template <class Attempt>
auto certify(const Genericity& gen, const std::string& what, Attempt attempt)
    -> typename std::invoke_result_t<Attempt, std::uint64_t, std::uint64_t>::value_type {
  using Value = typename std::invoke_result_t<Attempt, std::uint64_t, std::uint64_t>::value_type;
  if (gen.trials == 0) fail(ErrorCode::InvalidInput, "at least one trial is required");
  std::uint64_t bound = gen.bound;
  std::uint64_t stream = 0;
  std::string last_failure;
  for (int round = 0; round < 2; ++round) {
    Certification cert;
    cert.what = what;
    cert.bound = bound;
    cert.bound_doubled = round > 0;
    std::optional<Value> agreed;
    bool ok = true;
    for (unsigned k = 0; k < gen.trials; ++k) {
      const std::uint64_t s = ring::derive_seed(gen.seed, stream++);
      cert.seeds.push_back(s);
      auto v = attempt(s, bound);
      if (!v) {
        ok = false;
        last_failure = "degenerate choice for seed " + std::to_string(s) + " at bound " + std::to_string(bound);
        break;
      }
      if (agreed && !(*agreed == *v)) {
        ok = false;
        last_failure = "independent seeds disagree at bound " + std::to_string(bound);
        break;
      }
      agreed = std::move(v);
    }
    if (ok) {
      if constexpr (std::is_integral_v<Value>) {
        cert.value = std::to_string(*agreed);
      }
      if (gen.log) gen.log->push_back(std::move(cert));
      return *agreed;
    }
    bound *= 2;
  }
  fail(ErrorCode::NonGeneric, what + ": " + last_failure);
}

}  // namespace germlab::invariants
