#pragma once

// Structure maps of the four (co)operads carried by the Feichtner-Yuzvinsky
// and Orlik-Solomon algebras, materialized as exact rational matrices in the
// fixed normal bases, plus the automated checker for the presentation
// relations (chain, antichain with slot swap, isomorphism equivariance) and
// the quadratic relation elements of the dual FY operad.
//
// Arities are intervals [lo, hi] of one ambient lattice, in ambient element
// ids throughout; the slot identifications needed by the antichain relation
// are then plain join / complement maps on ambient ids.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lbs/fy.hpp"
#include "lbs/os.hpp"

namespace lbs {

// --- Graded linear algebra -------------------------------------------------

// Graded vector space with a fixed ordered basis (one degree per vector).
struct GSpace {
  std::vector<int> deg;
  int dim() const { return static_cast<int>(deg.size()); }
};

// Linear map between graded spaces; `parity` is the operator parity used for
// Koszul signs when the map is tensored into a bigger one.
struct GMap {
  GSpace src;
  GSpace dst;
  int parity = 0;
  Mat m;  // dst.dim() x src.dim()
};

GSpace tensor_space(const GSpace& a, const GSpace& b);
GMap gmap_identity(const GSpace& s);
GMap gmap_compose(const GMap& f, const GMap& g);  // f after g
// (f (x) g)(a (x) b) = (-1)^{|g| deg(a)} f(a) (x) g(b).
GMap gmap_tensor(const GMap& f, const GMap& g);
GMap gmap_scale(GMap f, const Rat& c);
// Reorder tensor slots: target_pos[i] is the destination position of source
// slot i; the Koszul sign of the permutation is applied per basis tuple.
GMap gmap_permute(const std::vector<GSpace>& slots,
                  const std::vector<int>& target_pos);
bool gmap_equal(const GMap& a, const GMap& b);

GSpace fy_space(const FYAlgebra& A);  // degrees 2 * x-degree
GSpace os_space(const OSAlgebra& A);  // degrees = monomial length

// --- Algebra cache per arity -----------------------------------------------

// Lazily constructed FY / OS algebras attached to the intervals of one built
// lattice, shared by all structure maps so bases stay consistent.
class OperadContext {
 public:
  OperadContext(const Lattice& L, BuildingSet B);
  const Lattice& lattice() const { return *L_; }
  const BuildingSet& building() const { return B_; }
  FYAlgebra& fy(Elem lo, Elem hi);
  OSAlgebra& os(Elem lo, Elem hi);

 private:
  const Lattice* L_;
  BuildingSet B_;
  std::map<std::pair<Elem, Elem>, std::unique_ptr<FYAlgebra>> fy_;
  std::map<std::pair<Elem, Elem>, std::unique_ptr<OSAlgebra>> os_;
};

enum class MapKind { fy_coop, fy_pd, os_coop, osbar_odd };

struct StructureMap {
  MapKind kind;
  Elem lo = -1, hi = -1;  // arity
  Elem g = -1;            // generator datum
  GMap map;
};

// --- Structure maps ----------------------------------------------------------

// Cooperad map of a general irreducible nested set S (hi in S): algebra map
// into the tensor product of the local interval algebras, slots ordered by
// decreasing member id.  h_G goes to h_{tau_S(G') v G} in the slot of G',
// the unique minimal element of S above-or-equal G.
GMap fy_nested_map(OperadContext& ctx, Elem lo, Elem hi,
                   const std::vector<Elem>& S);

// Single-generator maps.  g must be an induced member of (lo, hi) with
// lo < g < hi; otherwise validation_error("invalid_generator").
// FY({g}) : FY[lo,hi] -> FY[g,hi] (x) FY[lo,g].
StructureMap fy_cooperad_map(OperadContext& ctx, Elem lo, Elem hi, Elem g);
// FY^PD({g}) : FY[g,hi] (x) FY[lo,g] -> FY[lo,hi].
StructureMap fy_pd_operad_map(OperadContext& ctx, Elem lo, Elem hi, Elem g);
// OS({g}) : OS[lo,hi] -> OS[g,hi] (x) OS[lo,g].
StructureMap os_cooperad_map(OperadContext& ctx, Elem lo, Elem hi, Elem g);
// Odd map on the full OS bases (equals (delta (x) Id) after OS({g})); its
// restriction to the projective subalgebra lands in OSbar (x) OSbar.
StructureMap osbar_odd_map(OperadContext& ctx, Elem lo, Elem hi, Elem g);

// Transport along an interval isomorphism given elementwise on ambient ids
// (x_X -> x_{f(X)} resp. e_H -> e_{f(H)}), reduced in the target algebra.
GMap fy_transport(OperadContext& ctx, Elem slo, Elem shi, Elem dlo, Elem dhi,
                  const std::function<Elem(Elem)>& f);
GMap os_transport(OperadContext& ctx, Elem slo, Elem shi, Elem dlo, Elem dhi,
                  const std::function<Elem(Elem)>& f);

// reduce . delta on the flattened OS basis; odd parity.
GMap os_delta_map(OperadContext& ctx, Elem lo, Elem hi);

// Columns = the projective (ker delta) basis vectors in flat OS coordinates.
Mat osbar_inclusion(OperadContext& ctx, Elem lo, Elem hi);

// --- Well-definedness -------------------------------------------------------

// Generators of the affine FY ideal of [lo, hi]: one atom relation per
// interval atom and one squarefree product per minimal non-nested antichain.
std::vector<FYPoly> fy_ideal_generators(OperadContext& ctx, Elem lo, Elem hi);

// Image of an arbitrary x-polynomial under the cooperad map of S, as flat
// coordinates in the tensor of the slot algebras.
std::vector<Rat> fy_nested_image(OperadContext& ctx, Elem lo, Elem hi,
                                 const std::vector<Elem>& S, const FYPoly& p);

// All ideal generators of the source map to zero (and, for the operad maps,
// slotwise ideal generators are killed and the projective-relation
// totalization is independent of the chosen atom).
bool fy_coop_well_defined(OperadContext& ctx, Elem lo, Elem hi, Elem g);
bool fy_pd_well_defined(OperadContext& ctx, Elem lo, Elem hi, Elem g);
// OS({g}) kills delta(circuit) for every circuit of the source.
bool os_coop_well_defined(OperadContext& ctx, Elem lo, Elem hi, Elem g);
// The odd map sends the projective subalgebra into ker delta (x) ker delta.
bool osbar_lands_in_projective(OperadContext& ctx, Elem lo, Elem hi, Elem g);

// --- Presentation relations ---------------------------------------------------

struct RelationReport {
  bool ok = true;
  int checked = 0;
  std::vector<std::string> failures;
};

// Exhaustive check of the chain relation, the antichain relation (with the
// 2-3 slot swap, the canonical slot identifications, and the minus sign for
// the odd kind) and isomorphism equivariance over all automorphisms of the
// built lattice, at the top arity.
RelationReport check_presentation_relations(MapKind kind, OperadContext& ctx);

// --- Quadratic presentation of the dual FY operad ---------------------------

struct QuadraticRelation {
  Elem atom1 = -1, atom2 = -1;          // ambient atom ids, atom1 < atom2
  std::vector<Elem> terms1, terms2;     // members G < hi with G >= atom_i
};
std::vector<QuadraticRelation> quadratic_relation_elements(
    const Lattice& L, const BuildingSet& B);

// Row vector over the flat FY(L) basis of the functional
// alpha -> (coefficient of the tensor of slot top powers in FY(S)(alpha)).
std::vector<Rat> psi_functional(OperadContext& ctx,
                                const std::vector<Elem>& S);
// Functionals of all irreducible nested sets, stacked; the quadratic
// presentation requires full column rank (= dim FY) and a zero row for every
// quadratic relation element.
Mat psi_functional_matrix(OperadContext& ctx,
                          std::vector<std::vector<Elem>>* sets = nullptr);
// Sum over terms1 minus sum over terms2 of the single-step functionals; must
// be identically zero.
std::vector<Rat> quadratic_relation_functional(OperadContext& ctx,
                                               const QuadraticRelation& r);

}  // namespace lbs
