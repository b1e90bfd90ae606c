#pragma once

// Feichtner-Yuzvinsky rings of a built lattice restricted to an interval
// [lo, hi], in all three classical presentations.  Elements are exact
// rational polynomials in the induced building-set members (ambient ids);
// reduction to the normal basis is done by row reduction per degree over the
// monomials with nested support (every monomial with non-nested support is
// itself an ideal element, so this loses nothing).

#include <map>
#include <vector>

#include "lbs/building.hpp"
#include "lbs/linalg.hpp"

namespace lbs {

// Generator exponents, generator id -> exponent > 0.  Degree counts each
// generator with weight 1 (the cohomological degree is twice that).
using FYMon = std::map<Elem, int>;
using FYPoly = std::map<FYMon, Rat>;

enum class FYPres { affine, projective, wonderful };

int fy_degree(const FYMon& m);
FYPoly fy_scale(const FYPoly& p, const Rat& c);
FYPoly fy_add(const FYPoly& a, const FYPoly& b);
FYPoly fy_mul(const FYPoly& a, const FYPoly& b);
inline FYPoly fy_gen(Elem g, int e = 1) { return {{{{g, e}}, Rat(1)}}; }
inline FYPoly fy_const(const Rat& c) {
  return c == 0 ? FYPoly{} : FYPoly{{{}, c}};
}

class FYAlgebra {
 public:
  FYAlgebra(const Lattice& L, const BuildingSet& B, Elem lo, Elem hi);

  const Lattice& lattice() const { return *L_; }
  Elem lo() const { return lo_; }
  Elem hi() const { return hi_; }
  int rank() const { return rank_; }  // rank of the interval
  const std::vector<Elem>& gens() const { return gens_; }
  const std::vector<Elem>& interval_atoms() const { return iatoms_; }

  // Normal basis (affine x-variables; the wonderful h-basis has the same
  // exponent maps).  Ordered by (degree, lexicographic exponent map).
  const std::vector<std::vector<FYMon>>& basis() const { return basis_; }
  std::vector<int> hilbert() const;
  // Dimensions recovered from the linear algebra alone (columns minus row
  // rank per degree), independent of the combinatorial basis count.
  const std::vector<int>& oracle_dims() const { return oracle_dims_; }

  // Image in the normal basis of the given presentation.  Affine and
  // projective results are expressed in the affine normal monomials,
  // wonderful results in the h-normal monomials.
  FYPoly reduce(const FYPoly& p, FYPres pres = FYPres::affine) const;

  // h_G = sum of x_{G'} over members G' >= G, and its inverse substitution.
  FYPoly to_x(const FYPoly& h_poly) const;
  FYPoly to_h(const FYPoly& x_poly) const;

  // Coefficient of x_hi^(rank-1) in the reduction of p (top degree part).
  Rat top_coefficient(const FYPoly& p) const;

 private:
  const Lattice* L_;
  const BuildingSet* B_;
  Elem lo_, hi_;
  int rank_;
  std::vector<Elem> gens_;
  std::vector<char> is_gen_;
  std::vector<Elem> iatoms_;
  std::vector<std::vector<FYMon>> basis_;
  std::vector<int> oracle_dims_;

  // Per degree: column list (nested monomials, non-normal first), index map
  // and the reduced row space of the ideal component.
  struct Degree {
    std::vector<FYMon> cols;
    std::map<FYMon, int> col_of;
    RowReducer rows;
  };
  std::vector<Degree> deg_;
  // Change of basis between reduced x-monomials and h-normal monomials.
  std::vector<Mat> wond_inv_;

  FYPoly reduce_affine(const FYPoly& p) const;
};

struct PDReport {
  std::vector<Mat> mats;  // mats[d] pairs degree d with degree rank-1-d
  bool nondegenerate = true;
};
PDReport pd_pairing(const FYAlgebra& A);

}  // namespace lbs
