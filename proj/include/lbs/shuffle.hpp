#pragma once

// Directed built lattices: a linear order on the atoms induces a total
// order on lattice elements (via atom words), a monomial order on the
// tensor basis of the arity components of the lattice operad, an
// EL-labeling of every interval, and through these a normal-monomial
// count that certifies the quadratic relations of the dual x-algebra
// generators as a Groebner basis.

#include <map>
#include <optional>
#include <vector>

#include "lbs/building.hpp"
#include "lbs/common.hpp"
#include "lbs/lattice.hpp"

namespace lbs {

struct DirectedBuiltLattice {
  const Lattice* L = nullptr;
  BuildingSet B;
  std::vector<int> order;  // order[k] = atom index at position k (increasing)
  std::vector<int> pos;    // pos[atom index] = position, inverse of order

  DirectedBuiltLattice(const Lattice& lat, BuildingSet bs,
                       std::vector<int> atom_order = {});
};

// A basis monomial of the free shuffle operad on the one-dimensional
// generator module: an irreducible nested set of the arity [lo, hi],
// one generator per local interval.  Elements are ambient lattice ids.
struct ShuffleMonomial {
  Elem lo = -1;
  Elem hi = -1;
  std::vector<Elem> S;  // sorted, contains hi
};

ShuffleMonomial make_monomial(const DirectedBuiltLattice& D, Elem lo, Elem hi,
                              std::vector<Elem> S);

// Word of an element: the positions (in the atom order) of the atoms below
// it, increasing.
std::vector<int> element_word(const DirectedBuiltLattice& D, Elem g);

// Total order on elements: g1 precedes g2 when the word of g2 is an initial
// subword of the word of g1, or else when the words compare
// lexicographically.  Returns -1 / 0 / +1.  Extends the reversed lattice
// order and restricts to the induced order on intervals.
int element_compare(const DirectedBuiltLattice& D, Elem g1, Elem g2);

// Position (in the atom order) of the first atom whose join with x is y.
// Defined whenever some atom works, in particular for every cover x < y;
// this is the EL-label of the covering relation.
int el_label(const DirectedBuiltLattice& D, Elem x, Elem y);

// Label of an interval atom k of [lo, hi] in the induced atom order of the
// interval: the minimal position of an ambient atom joining lo up to k.
int interval_atom_label(const DirectedBuiltLattice& D, Elem lo, Elem k);

// The interval atom of [lo, hi] that is minimal in the induced order.
Elem min_interval_atom(const DirectedBuiltLattice& D, Elem lo, Elem hi);

// The unique maximal chain of [x, y] with strictly increasing labels,
// x = chain[0].  With k >= 0 only the first k steps are returned.
std::vector<Elem> increasing_chain(const DirectedBuiltLattice& D, Elem x,
                                   Elem y, int k = -1);

// Exhaustive EL verification on [lo, hi]: for every comparable pair exactly
// one maximal chain has increasing labels, its word is lexicographically
// least, and it is the chain produced by increasing_chain.
bool verify_el_labeling(const DirectedBuiltLattice& D, Elem lo, Elem hi);

// The cluster of a bottom-anchored chain (lo = chain[0] < chain[1] < ...):
// the composition of the singleton nested sets {chain[i]}, i.e. the chain
// elements together with hi.
std::vector<Elem> cluster_from_chain(const DirectedBuiltLattice& D,
                                     const std::vector<Elem>& chain, Elem hi);

// Frame of an irreducible nested set: the members whose local interval has
// rank > 1, plus hi, together with the local nested sets (clusters) that
// recompose to S.
struct FrameDecomposition {
  std::vector<Elem> frame;
  std::map<Elem, std::vector<Elem>> locals;
};
FrameDecomposition frame(const DirectedBuiltLattice& D, Elem lo, Elem hi,
                         const std::vector<Elem>& S);

// Monomial order on a fixed arity, extending element_compare inductively:
// strip a common minimal element and compare the joined monomials, else
// compare the order-minimal minimal elements.  Returns -1 / 0 / +1.
int monomial_compare(const DirectedBuiltLattice& D, const ShuffleMonomial& m1,
                     const ShuffleMonomial& m2);

// Whether m2 factors as a composition with m1 in one slot and generators in
// all the others.
bool divides(const DirectedBuiltLattice& D, const ShuffleMonomial& m1,
             const ShuffleMonomial& m2);

// Substitute m into the slot of g inside the outer monomial with nested set
// S (generators everywhere else).  m must live in the arity of that slot.
ShuffleMonomial compose_monomial(const DirectedBuiltLattice& D, Elem lo,
                                 Elem hi, const std::vector<Elem>& S, Elem g,
                                 const ShuffleMonomial& m);

// Normal monomials of the full arity with respect to the quadratic
// relations: the leading terms are the two-element monomials {k, top of the
// slot} where k is a local atom other than the induced-order-minimal one.
// Two independent enumerations:
//   - direct: filter the irreducible nested sets by leading-term
//     divisibility;
//   - by chains: frames without rank-1 local intervals below the top,
//     filled with truncated increasing local chains.
std::vector<std::vector<Elem>> normal_monomials_fydual(
    const DirectedBuiltLattice& D);
std::vector<std::vector<Elem>> normal_monomials_by_chains(
    const DirectedBuiltLattice& D);

struct GBVerdict {
  bool ok = false;
  int normal_count = 0;
  int fy_dimension = 0;
};

// The quadratic-Groebner-basis certificate: the normal-monomial count of
// the free shuffle operad modulo the quadratic leading terms equals the
// dimension of the x-algebra of the full arity.
GBVerdict verify_quadratic_gb(const DirectedBuiltLattice& D);

}  // namespace lbs
