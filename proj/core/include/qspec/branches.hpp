#pragma once
// Hecke branch data. Every operator of interest is a double coset supported
// at one place (or a diamond twist supported along the whole level); applied
// to a function on the class set it becomes, for each source class a, a sum
// of weight-twisted pulls from target classes:
//
//   (T f)_a = Σ_branches ρ(γ) f_target,   γ = g̃_a⁻¹ · φ_p(δ) · g̃_b,
//
// where δ runs over the order elements of reduced norm n that solve the
// local membership problem g̃_a·z_i ∈ δ·g̃_b·U. The reduction is computed
// here once per operator; the weight action ρ is applied later, so the same
// table serves every weight, including the universal one. Determinants of
// branch matrices equal the operator norm exactly because class
// representatives are lifted with determinant one.
#include <cstdint>
#include <string>
#include <vector>

#include "qspec/cosets.hpp"
#include "qspec/locan.hpp"
#include "qspec/quat.hpp"

namespace qspec {

struct Branch {
  int target;
  MonoidMatrix gamma;
};

class BranchTable {
 public:
  BranchTable(std::string name, std::uint64_t norm, std::vector<std::vector<Branch>> rows)
      : name_(std::move(name)), norm_(norm), rows_(std::move(rows)) {}
  const std::string& name() const { return name_; }
  std::uint64_t norm() const { return norm_; }
  int sources() const { return (int)rows_.size(); }
  const std::vector<Branch>& branches_from(int a) const { return rows_[(std::size_t)a]; }

 private:
  std::string name_;
  std::uint64_t norm_;
  std::vector<std::vector<Branch>> rows_;
};

class BranchFactory {
 public:
  BranchFactory(const CosetSpace& X, int pprec);

  // T_l for a prime l coprime to the level and the discriminant: l+1 branches
  BranchTable good_hecke(std::uint32_t l) const;
  // U_q for a prime q dividing the level: q branches
  BranchTable atkin_u(std::uint32_t q) const;
  // central S_l (the scalar double coset) for l coprime to level·disc: 1 branch
  BranchTable central(std::uint32_t l) const;
  // U_l for a prime l dividing the discriminant: 1 branch of norm l
  BranchTable ramified_u(std::uint32_t l) const;
  // diamond operator of a unit residue mod the level: 1 branch of norm 1
  BranchTable diamond(std::uint64_t a) const;

  const CosetSpace& space() const { return *X_; }
  int precision() const { return pprec_; }

 private:
  const CosetSpace* X_;
  int pprec_;

  struct PlaceTarget {
    std::uint64_t l;   // prime dividing the level
    int El;            // v_l(level)
    int e;             // divisibility exponent demanded at this place
    Mat2Z Y;           // target matrix mod l^(El+e)
  };
  struct OffTarget {   // support place away from the level: divisibility only
    std::uint64_t qe;  // q^e
    Mat2Z Y;           // target mod q^e
  };

  Branch reduce(int a, const std::vector<PlaceTarget>& places,
                const OffTarget* off, std::uint64_t n) const;
};

// branch table of the composite "apply second, then first": branches a→c are
// all two-step paths a→b→c with matrix γ_first·γ_second; exact as a
// correspondence, so products and commutators of operators can be formed
// without truncation error
BranchTable compose(const BranchTable& first, const BranchTable& second);

}  // namespace qspec
