#pragma once

#include "germlab/cli.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace testing {

using germlab::ring::Polynomial;
using germlab::ring::VariableSet;

inline VariableSet vars(std::initializer_list<const char*> names) {
  return VariableSet(std::vector<std::string>(names.begin(), names.end()));
}

inline Polynomial P(const VariableSet& v, std::string_view text) { return germlab::cli::parse_polynomial(text, v); }

inline std::vector<Polynomial> Ps(const VariableSet& v, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(P(v, t));
  return out;
}

inline germlab::ring::PolyMatrix matrix(const VariableSet& v,
                                        std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Polynomial>> r;
  for (const auto& row : rows) r.push_back(Ps(v, row));
  return germlab::ring::PolyMatrix::from_rows(v, r);
}

}  // namespace testing
