#pragma once
// The finite double-coset geometry at level N·p: cosets C = GL₂(Z/M)/Γ̄₁(M)
// with Γ̄₁(M) = {(1 *; 0 *)}, the left action of the order's unit group
// through its mod-M splitting, and the orbit space X (the "class set" whose
// size is the relevant class number). Construction verifies that the unit
// action is free — the structural hypothesis the whole engine rests on — and
// equips every orbit with a determinant-one integer lift of its
// representative, so later branch matrices have determinant exactly equal to
// the reduced norm they come from.
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "qspec/quat.hpp"

namespace qspec {

class CosetSpace {
 public:
  CosetSpace(const QuatOrder& order, std::uint64_t N, std::uint64_t p);

  const QuatOrder& order() const { return *order_; }
  std::uint64_t modulus() const { return M_; }
  std::uint64_t level_N() const { return N_; }
  std::uint64_t prime_p() const { return p_; }

  int coset_count() const { return (int)cosets_.size(); }
  int class_count() const { return (int)orbit_rep_.size(); }

  int coset_id(const Mat2Z& g) const;  // g must be invertible mod M
  Mat2Z coset_matrix(int cid) const;

  int orbit_of_coset(int cid) const { return orbit_of_[(std::size_t)cid]; }
  int rep_coset(int orbit) const { return orbit_rep_[(std::size_t)orbit]; }
  // unit u with u · coset == representative coset of its orbit
  const QuatOrder::Coords& aligner(int cid) const { return aligner_[(std::size_t)cid]; }
  // integer lift (a,b;c,d) of the representative, det exactly 1, congruent
  // mod M to the representative coset normalized to determinant 1
  const std::array<long long, 4>& rep_lift(int orbit) const {
    return lifts_[(std::size_t)orbit];
  }

  static std::uint64_t phi(std::uint64_t m);
  static std::uint64_t gl2_order(std::uint64_t m);

 private:
  const QuatOrder* order_;
  std::uint64_t N_, p_, M_;
  std::vector<std::array<std::uint64_t, 4>> cosets_;  // canonical matrix per coset id
  std::map<std::array<std::uint64_t, 4>, int> coset_index_;
  std::vector<int> orbit_of_;
  std::vector<int> orbit_rep_;
  std::vector<QuatOrder::Coords> aligner_;
  std::vector<std::array<long long, 4>> lifts_;

  void build_cosets();
  void build_orbits();
  void build_lifts();
};

// det-1 integer lift of a matrix pair that is invertible mod M after
// normalizing its determinant to 1 (helper exposed for tests).
std::array<long long, 4> sl2_lift(const Mat2Z& g);

}  // namespace qspec
