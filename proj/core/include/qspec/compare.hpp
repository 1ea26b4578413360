#pragma once
// Semi-simplification comparator for finite Hecke modules.  Two modules with
// commuting operator families agree in semi-simplification exactly when the
// multisets of simultaneous eigenvalue characters (with multiplicity) agree;
// that equality is detected through determinant identities
//
//   det(1 - T * h * U_1)  =  det(1 - T * h * U_2)
//
// checked for h = identity, each given generator, and a seeded batch of small
// integer combinations of the generators.  Any finite h-sample is a sampling
// of the full quantifier, so the seed and sample size are part of the
// verdict; nilpotent structure is invisible to the criterion by design.
#include <cstdint>
#include <string>

#include "qspec/slope.hpp"

namespace qspec {

struct CompareVerdict {
  bool consistent = false;
  std::string detail;  // empty when consistent, else the offending combination
  std::uint64_t seed = 0;
  int tested = 0;  // number of h actually compared
};

CompareVerdict compare_characters(const FiniteHeckeModule& A, const FiniteHeckeModule& B,
                                  int random_combos = 8, std::uint64_t seed = 1);

}  // namespace qspec
