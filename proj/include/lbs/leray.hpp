#pragma once

// Leray models of a built lattice: the bigraded commutative algebras
// generated by odd variables e_G (bidegree (0,1)) and even variables x_G
// (bidegree (2,0)), one pair per building-set member, modulo
//   (1) every monomial whose combined e/x support is not nested,
//   (2) sum of x_G over members G >= H, one relation per atom H,
//   (3) e_top (projective variant only; the affine variant keeps it),
// carrying the differential d(e_G) = x_G, d(x_G) = 0 of bidegree (2,-1).
// Bases are assembled per bidegree by monomial enumeration and exact row
// reduction against the ideal span; the nested-set decomposition of the
// same bigraded dimensions is computed independently for cross-checking,
// and homology is compared against the (projective) Orlik-Solomon algebra.

#include <map>
#include <utility>
#include <vector>

#include "lbs/building.hpp"
#include "lbs/fy.hpp"
#include "lbs/linalg.hpp"
#include "lbs/os.hpp"

namespace lbs {

enum class LerayVariant { projective, affine };

// A monomial e_S x^mu: e-part a sorted list of member ids (each squares to
// zero), x-part an exponent map on member ids.
struct LerayMon {
  std::vector<Elem> e;
  FYMon x;
  auto operator<=>(const LerayMon&) const = default;
};
using LerayPoly = std::map<LerayMon, Rat>;

// Bidegree of a monomial: (2 * x-weight, e-length).
std::pair<int, int> leray_bidegree(const LerayMon& m);

// Normalize a product of e-factors (arbitrary order, Koszul sign, zero on a
// repeated factor) against an x-part.
LerayPoly leray_term(const std::vector<Elem>& e_factors, const FYMon& x,
                     const Rat& c);
LerayPoly leray_scale(const LerayPoly& p, const Rat& c);
LerayPoly leray_add(const LerayPoly& a, const LerayPoly& b);

class LerayModel {
 public:
  LerayModel(const Lattice& L, const BuildingSet& B, LerayVariant variant);

  const Lattice& lattice() const { return *L_; }
  const BuildingSet& building() const { return B_; }
  LerayVariant variant() const { return variant_; }

  // Blocks are materialized for x-weight 0 .. max_x_weight (the top weight
  // is verified to be zero-dimensional, so nothing is truncated away) and
  // every achievable e-degree.
  int max_x_weight() const { return max_x_; }
  int max_e_degree() const { return max_e_; }

  // Normal monomials of bidegree (p, q); empty outside the stored range.
  const std::vector<LerayMon>& basis(int p, int q) const;
  // Nonzero bigraded dimensions, keyed by (p, q).
  std::map<std::pair<int, int>, int> dimensions() const;

  // Image in the normal monomials (kills non-nested supports, e_top in the
  // projective variant, and reduces modulo the linear relations).
  LerayPoly reduce(const LerayPoly& p) const;
  // Product in the quotient (Koszul sign on the e-parts), reduced.
  LerayPoly multiply(const LerayPoly& a, const LerayPoly& b) const;

  // The differential: signed Leibniz extension of e_G -> x_G.  Signs follow
  // the convention that e-factors are written sorted by increasing member
  // id, so the i-th factor is reached across i-1 odd letters.
  LerayPoly d(const LerayPoly& p) const;
  // Matrix of d from basis(p, q) to basis(p + 2, q - 1), row-major.
  Mat differential(int p, int q) const;

 private:
  struct Block {
    std::vector<LerayMon> cols;  // admissible monomials of this bidegree
    std::map<LerayMon, int> col_of;
    RowReducer rows;             // span of the linear-relation multiples
    std::vector<LerayMon> normal;
  };
  const Block* block(int p, int q) const;

  const Lattice* L_;
  BuildingSet B_;
  LerayVariant variant_;
  int max_x_ = 0;
  int max_e_ = 0;
  std::map<std::pair<int, int>, Block> blocks_;
};

// Bigraded dimensions predicted by the nested-set decomposition: every
// block is a sum of tensor products of local FY algebras over the slots of
// an irreducible nested set T.  Projective variant: T ranges over the
// irreducible nested sets and contributes in e-degree |T| - 1.  Affine
// variant: the e-part may also pick up the top, so a nested set S (top
// allowed but not required) contributes the slots of S + top in e-degree
// |S|.
std::map<std::pair<int, int>, int> decomposition_dimensions(
    const Lattice& L, const BuildingSet& B, LerayVariant variant);

struct LerayHomology {
  std::map<std::pair<int, int>, int> bigraded;  // nonzero dims only
  std::vector<int> diagonal;  // dims at (0, q), q = 0, 1, ...
  bool concentrated = false;  // no homology away from p = 0
};
LerayHomology homology(const LerayModel& Lm);

// Comparison with the Orlik-Solomon algebra along e_H -> sum of e_G over
// members G >= H: the projective model against the kernel of delta, the
// affine model against the full OS algebra.
struct OSComparisonReport {
  bool chain_map = false;        // all images are cycles
  bool iso = false;              // bijective on homology in every degree
  bool concentrated = false;     // homology lives at p = 0
  std::vector<int> os_dims;      // dimensions of the comparison source
  std::vector<int> homology_dims;
  bool ok = false;               // all of the above
};
OSComparisonReport os_comparison(const LerayModel& Lm);

// A basis element in the decomposition indexing: an irreducible nested set
// S together with one normal x-monomial per slot (keyed by the slot top,
// written in the induced members of the slot).
struct DecompElem {
  std::vector<Elem> S;
  std::map<Elem, FYMon> local;
};

// The monomial e_{S minus top} x^mu representing a decomposition element in
// the quotient presentation; local generators are converted to global
// members via Comp.  Not reduced.
LerayPoly decomp_monomial(const LerayModel& Lm, const DecompElem& a);

// Operadic product on decomposition elements: zero unless the two nested
// sets meet exactly in the top and their union is nested; otherwise both
// factors are pushed into the slots of the union via the FY cooperad maps
// (with the canonical slot identifications) and multiplied slotwise.  The
// result is returned in the quotient presentation, reduced.
LerayPoly bar_product(const LerayModel& Lm, const DecompElem& a,
                      const DecompElem& b);

}  // namespace lbs
