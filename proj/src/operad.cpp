#include "lbs/operad.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lbs {

// --- Graded linear algebra ---------------------------------------------------

GSpace tensor_space(const GSpace& a, const GSpace& b) {
  GSpace out;
  out.deg.reserve(a.deg.size() * b.deg.size());
  for (int da : a.deg)
    for (int db : b.deg) out.deg.push_back(da + db);
  return out;
}

GMap gmap_identity(const GSpace& s) {
  return GMap{s, s, 0, mat_identity(s.dim())};
}

GMap gmap_compose(const GMap& f, const GMap& g) {
  check_arg(f.src.dim() == g.dst.dim(), "gmap_mismatch",
            "composition arity mismatch");
  return GMap{g.src, f.dst, (f.parity + g.parity) % 2, mat_mul(f.m, g.m)};
}

GMap gmap_tensor(const GMap& f, const GMap& g) {
  GMap out;
  out.src = tensor_space(f.src, g.src);
  out.dst = tensor_space(f.dst, g.dst);
  out.parity = (f.parity + g.parity) % 2;
  out.m = mat_zero(out.dst.dim(), out.src.dim());
  const int gs = g.src.dim(), gd = g.dst.dim();
  for (int i = 0; i < f.src.dim(); ++i) {
    const bool flip = g.parity != 0 && (f.src.deg[i] % 2) != 0;
    for (int k = 0; k < f.dst.dim(); ++k) {
      if (f.m[k][i] == 0) continue;
      const Rat c = flip ? Rat(-f.m[k][i]) : f.m[k][i];
      for (int j = 0; j < gs; ++j)
        for (int l = 0; l < gd; ++l) {
          if (g.m[l][j] == 0) continue;
          out.m[k * gd + l][i * gs + j] = c * g.m[l][j];
        }
    }
  }
  return out;
}

GMap gmap_scale(GMap f, const Rat& c) {
  for (auto& row : f.m)
    for (auto& x : row) x *= c;
  return f;
}

GMap gmap_permute(const std::vector<GSpace>& slots,
                  const std::vector<int>& target_pos) {
  const int n = static_cast<int>(slots.size());
  check_arg(static_cast<int>(target_pos.size()) == n, "gmap_mismatch",
            "permutation size mismatch");
  GMap out;
  out.parity = 0;
  int dim = 1;
  for (const GSpace& s : slots) dim *= s.dim();
  std::vector<GSpace> tslots(n);
  for (int i = 0; i < n; ++i) tslots[target_pos[i]] = slots[i];
  out.src.deg.assign(dim, 0);
  out.dst.deg.assign(dim, 0);
  out.m = mat_zero(dim, dim);
  std::vector<int> tuple(n, 0);
  for (int idx = 0; idx < dim; ++idx) {
    // Decode idx slot-major.
    int rest = idx, srcdeg = 0;
    for (int k = n - 1; k >= 0; --k) {
      tuple[k] = rest % slots[k].dim();
      rest /= slots[k].dim();
      srcdeg += slots[k].deg[tuple[k]];
    }
    out.src.deg[idx] = srcdeg;
    // Koszul sign of moving slot p past slot q for inverted pairs.
    Rat sign(1);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        if (target_pos[p] > target_pos[q] && slots[p].deg[tuple[p]] % 2 != 0 &&
            slots[q].deg[tuple[q]] % 2 != 0)
          sign = -sign;
    int tidx = 0;
    for (int k = 0; k < n; ++k) {
      // The slot at target position k is the source slot with target_pos == k.
      int s = 0;
      while (target_pos[s] != k) ++s;
      tidx = tidx * slots[s].dim() + tuple[s];
    }
    out.m[tidx][idx] = sign;
  }
  for (int idx = 0; idx < dim; ++idx) {
    int rest = idx, deg = 0;
    for (int k = n - 1; k >= 0; --k) {
      deg += tslots[k].deg[rest % tslots[k].dim()];
      rest /= tslots[k].dim();
    }
    out.dst.deg[idx] = deg;
  }
  return out;
}

bool gmap_equal(const GMap& a, const GMap& b) {
  return a.src.deg == b.src.deg && a.dst.deg == b.dst.deg && a.m == b.m;
}

GSpace fy_space(const FYAlgebra& A) {
  GSpace s;
  for (int d = 0; d < static_cast<int>(A.basis().size()); ++d)
    for (size_t i = 0; i < A.basis()[d].size(); ++i) s.deg.push_back(2 * d);
  return s;
}

GSpace os_space(const OSAlgebra& A) {
  GSpace s;
  for (int d = 0; d < static_cast<int>(A.basis().size()); ++d)
    for (size_t i = 0; i < A.basis()[d].size(); ++i) s.deg.push_back(d);
  return s;
}

// --- Flat basis indexing -----------------------------------------------------

namespace {

struct FYFlat {
  const FYAlgebra* A = nullptr;
  std::map<FYMon, int> idx;
  int dim = 0;
};

FYFlat fy_flat(const FYAlgebra& A) {
  FYFlat f;
  f.A = &A;
  for (const auto& degree : A.basis())
    for (const FYMon& m : degree) f.idx.emplace(m, f.dim++);
  return f;
}

void fy_accumulate(const FYFlat& f, const FYPoly& reduced, const Rat& c,
                   std::vector<Rat>& target, int offset, int stride) {
  for (const auto& [mon, coef] : reduced)
    target[offset + stride * f.idx.at(mon)] += c * coef;
}

struct OSFlat {
  const OSAlgebra* A = nullptr;
  std::map<OSMon, int> idx;
  int dim = 0;
};

OSFlat os_flat(const OSAlgebra& A) {
  OSFlat f;
  f.A = &A;
  for (const auto& degree : A.basis())
    for (const OSMon& m : degree) f.idx.emplace(m, f.dim++);
  return f;
}

}  // namespace

// --- Context -----------------------------------------------------------------

OperadContext::OperadContext(const Lattice& L, BuildingSet B)
    : L_(&L), B_(std::move(B)) {}

FYAlgebra& OperadContext::fy(Elem lo, Elem hi) {
  auto key = std::make_pair(lo, hi);
  auto it = fy_.find(key);
  if (it == fy_.end())
    it = fy_.emplace(key, std::make_unique<FYAlgebra>(*L_, B_, lo, hi)).first;
  return *it->second;
}

OSAlgebra& OperadContext::os(Elem lo, Elem hi) {
  auto key = std::make_pair(lo, hi);
  auto it = os_.find(key);
  if (it == os_.end())
    it = os_.emplace(key, std::make_unique<OSAlgebra>(*L_, lo, hi)).first;
  return *it->second;
}

// --- FY cooperad -------------------------------------------------------------

namespace {

// Precomputed slot data of one nested-set cooperad map.
struct NestedMapData {
  std::vector<Elem> S;          // decreasing member id = slot order
  std::vector<Elem> slot_lo;    // tau_S per slot
  std::vector<FYAlgebra*> alg;  // slot algebras
  std::vector<FYFlat> flat;
  std::vector<int> dims;
  int tdim = 1;
  // Source generator -> (slot, generator of the slot algebra).
  std::map<Elem, std::pair<int, Elem>> assign;
};

NestedMapData build_nested_data(OperadContext& ctx, Elem lo, Elem hi,
                                std::vector<Elem> S) {
  const Lattice& L = ctx.lattice();
  std::sort(S.begin(), S.end(), std::greater<Elem>());
  check_arg(!S.empty() && S.front() == hi, "invalid_nested_set",
            "nested set of a cooperad map must contain the interval top");
  NestedCheck nc = is_nested(L, ctx.building(), lo, hi, S);
  check_arg(nc.ok, "invalid_nested_set", "set is not nested in the interval");

  NestedMapData d;
  d.S = S;
  for (Elem g : S) {
    d.slot_lo.push_back(tau(L, S, lo, g));
    d.alg.push_back(&ctx.fy(d.slot_lo.back(), g));
    d.flat.push_back(fy_flat(*d.alg.back()));
    d.dims.push_back(d.flat.back().dim);
    d.tdim *= d.dims.back();
  }
  FYAlgebra& src = ctx.fy(lo, hi);
  for (Elem G : src.gens()) {
    std::vector<Elem> above;
    for (Elem s : S)
      if (L.leq(G, s)) above.push_back(s);
    check_internal(!above.empty(), "nested map: generator not below top");
    std::vector<Elem> minimal;
    for (Elem s : above) {
      bool least = true;
      for (Elem t : above)
        if (t != s && L.lt(t, s)) least = false;
      if (least) minimal.push_back(s);
    }
    check_internal(minimal.size() == 1,
                   "nested map: non-unique minimal slot for a generator");
    const Elem gp = minimal[0];
    const int k =
        static_cast<int>(std::find(S.begin(), S.end(), gp) - S.begin());
    d.assign.emplace(G, std::make_pair(k, L.join(d.slot_lo[k], G)));
  }
  return d;
}

// Flat tensor coordinates of the image of an arbitrary x-polynomial.
std::vector<Rat> nested_image(OperadContext& ctx, Elem lo, Elem hi,
                              const NestedMapData& d, const FYPoly& p) {
  FYAlgebra& src = ctx.fy(lo, hi);
  std::vector<Rat> col(d.tdim, Rat(0));
  const FYPoly hp = src.to_h(p);
  const int n = static_cast<int>(d.S.size());
  for (const auto& [hmon, c] : hp) {
    std::vector<FYMon> slot_h(n);
    for (const auto& [G, e] : hmon) {
      const auto& [k, gen] = d.assign.at(G);
      slot_h[k][gen] += e;
    }
    std::vector<FYPoly> slot_poly(n);
    bool zero = false;
    for (int k = 0; k < n && !zero; ++k) {
      slot_poly[k] =
          d.alg[k]->reduce(d.alg[k]->to_x(FYPoly{{slot_h[k], Rat(1)}}));
      zero = slot_poly[k].empty();
    }
    if (zero) continue;
    // Outer product of the reduced slot polynomials.
    std::vector<std::pair<int, Rat>> partial = {{0, c}};
    for (int k = 0; k < n; ++k) {
      std::vector<std::pair<int, Rat>> next;
      for (const auto& [base, coef] : partial)
        for (const auto& [mon, mc] : slot_poly[k])
          next.emplace_back(base * d.dims[k] + d.flat[k].idx.at(mon),
                            coef * mc);
      partial = std::move(next);
    }
    for (const auto& [idx, coef] : partial) col[idx] += coef;
  }
  return col;
}

void validate_generator(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  std::vector<Elem> ind = induced_members(ctx.lattice(), ctx.building(), lo, hi);
  check_arg(g != hi && g != lo &&
                std::find(ind.begin(), ind.end(), g) != ind.end(),
            "invalid_generator",
            "generator must be a proper induced member of the interval");
}

}  // namespace

GMap fy_nested_map(OperadContext& ctx, Elem lo, Elem hi,
                   const std::vector<Elem>& S) {
  NestedMapData d = build_nested_data(ctx, lo, hi, S);
  FYAlgebra& src = ctx.fy(lo, hi);
  GMap out;
  out.src = fy_space(src);
  out.dst.deg = {0};
  {
    GSpace acc;
    acc.deg = {0};
    for (FYAlgebra* a : d.alg) acc = tensor_space(acc, fy_space(*a));
    out.dst = acc;
  }
  out.parity = 0;
  out.m = mat_zero(d.tdim, out.src.dim());
  int c = 0;
  for (const auto& degree : src.basis())
    for (const FYMon& mon : degree) {
      std::vector<Rat> col =
          nested_image(ctx, lo, hi, d, FYPoly{{mon, Rat(1)}});
      for (int r = 0; r < d.tdim; ++r) out.m[r][c] = col[r];
      ++c;
    }
  return out;
}

std::vector<Rat> fy_nested_image(OperadContext& ctx, Elem lo, Elem hi,
                                 const std::vector<Elem>& S, const FYPoly& p) {
  NestedMapData d = build_nested_data(ctx, lo, hi, S);
  return nested_image(ctx, lo, hi, d, p);
}

StructureMap fy_cooperad_map(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  validate_generator(ctx, lo, hi, g);
  return StructureMap{MapKind::fy_coop, lo, hi, g,
                      fy_nested_map(ctx, lo, hi, {g, hi})};
}

// --- FY^PD operad ------------------------------------------------------------

namespace {

struct PDData {
  FYAlgebra* A = nullptr;   // target, [lo, hi]
  FYAlgebra* T = nullptr;   // top slot, [g, hi]
  FYAlgebra* Bt = nullptr;  // bottom slot, [lo, g]
  Elem g = -1;
  std::map<Elem, Elem> comp_of;  // top-slot generator -> Comp_g
  FYPoly subst;                  // -sum of the projective relation, no x_g
};

PDData build_pd_data(OperadContext& ctx, Elem lo, Elem hi, Elem g,
                     Elem subst_atom = -1) {
  const Lattice& L = ctx.lattice();
  PDData d;
  d.A = &ctx.fy(lo, hi);
  d.T = &ctx.fy(g, hi);
  d.Bt = &ctx.fy(lo, g);
  d.g = g;
  const std::vector<Elem> cand = induced_members(L, ctx.building(), lo, hi);
  for (Elem X : d.T->gens()) d.comp_of.emplace(X, comp(L, cand, g, X));
  const Elem h0 =
      subst_atom >= 0 ? subst_atom : d.Bt->interval_atoms().front();
  for (Elem Gp : d.Bt->gens())
    if (Gp != g && L.leq(h0, Gp)) d.subst = fy_add(d.subst, fy_scale(fy_gen(Gp), Rat(-1)));
  return d;
}

// Reduced image of a pure tensor of x-monomials.
FYPoly pd_image_mon(const Lattice& L, const PDData& d, const FYMon& mt,
                    const FYMon& mb) {
  // Eliminate the bottom-slot top generator via the projective relation.
  FYPoly bot;
  auto it = mb.find(d.g);
  if (it == mb.end()) {
    bot = FYPoly{{mb, Rat(1)}};
  } else {
    FYMon rest = mb;
    const int k = it->second;
    rest.erase(d.g);
    bot = FYPoly{{rest, Rat(1)}};
    for (int i = 0; i < k; ++i) bot = fy_mul(bot, d.subst);
  }
  FYPoly out;
  for (const auto& [monb, cb] : bot) {
    FYMon im;
    im[d.g] += 1;
    for (const auto& [X, e] : mt) im[d.comp_of.at(X)] += e;
    for (const auto& [Y, e] : monb) im[Y] += e;
    out = fy_add(out, fy_scale(d.A->reduce(FYPoly{{im, Rat(1)}}), cb));
  }
  return out;
}

FYPoly pd_image(const Lattice& L, const PDData& d, const FYPoly& pt,
                const FYPoly& pb) {
  FYPoly out;
  for (const auto& [mt, ct] : pt)
    for (const auto& [mb, cb] : pb)
      out = fy_add(out, fy_scale(pd_image_mon(L, d, mt, mb), ct * cb));
  return out;
}

}  // namespace

StructureMap fy_pd_operad_map(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  validate_generator(ctx, lo, hi, g);
  const Lattice& L = ctx.lattice();
  PDData d = build_pd_data(ctx, lo, hi, g);
  const FYFlat ft = fy_flat(*d.T), fb = fy_flat(*d.Bt), fa = fy_flat(*d.A);
  GMap map;
  map.src = tensor_space(fy_space(*d.T), fy_space(*d.Bt));
  map.dst = fy_space(*d.A);
  map.parity = 0;
  map.m = mat_zero(fa.dim, ft.dim * fb.dim);
  int it = 0;
  for (const auto& degt : d.T->basis())
    for (const FYMon& mt : degt) {
      int ib = 0;
      for (const auto& degb : d.Bt->basis())
        for (const FYMon& mb : degb) {
          const FYPoly img = pd_image_mon(L, d, mt, mb);
          for (const auto& [mon, c] : img)
            map.m[fa.idx.at(mon)][it * fb.dim + ib] = c;
          ++ib;
        }
      ++it;
    }
  return StructureMap{MapKind::fy_pd, lo, hi, g, std::move(map)};
}

// --- OS cooperad and the odd projective map ----------------------------------

namespace {

struct OSCoopData {
  OSAlgebra* A = nullptr;
  OSAlgebra* T = nullptr;
  OSAlgebra* Bo = nullptr;
  Elem g = -1;
};

// Flat tensor coordinates of the image of an OS polynomial written over
// arbitrary (not necessarily basis) monomials.
std::vector<Rat> os_coop_image(const Lattice& L, const OSCoopData& d,
                               const OSFlat& ft, const OSFlat& fb,
                               const OSPoly& p) {
  std::vector<Rat> col(ft.dim * fb.dim, Rat(0));
  for (const auto& [mon, c] : p) {
    std::vector<int> tops, bots;
    Rat sign(1);
    int bots_seen = 0;
    for (int pos : mon) {
      const Elem H = d.A->atoms()[pos];
      if (L.leq(H, d.g)) {
        bots.push_back(d.Bo->atom_position(H));
        ++bots_seen;
      } else {
        tops.push_back(d.T->atom_position(L.join(d.g, H)));
        if (bots_seen % 2 != 0) sign = -sign;
      }
    }
    const OSPoly pt = d.T->reduce(os_term(tops, Rat(1)));
    const OSPoly pb = d.Bo->reduce(os_term(bots, Rat(1)));
    for (const auto& [mt, ct] : pt)
      for (const auto& [mb, cb] : pb)
        col[ft.idx.at(mt) * fb.dim + fb.idx.at(mb)] += c * sign * ct * cb;
  }
  return col;
}

}  // namespace

StructureMap os_cooperad_map(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  validate_generator(ctx, lo, hi, g);
  const Lattice& L = ctx.lattice();
  OSCoopData d{&ctx.os(lo, hi), &ctx.os(g, hi), &ctx.os(lo, g), g};
  const OSFlat fa = os_flat(*d.A), ft = os_flat(*d.T), fb = os_flat(*d.Bo);
  GMap map;
  map.src = os_space(*d.A);
  map.dst = tensor_space(os_space(*d.T), os_space(*d.Bo));
  map.parity = 0;
  map.m = mat_zero(ft.dim * fb.dim, fa.dim);
  int c = 0;
  for (const auto& degree : d.A->basis())
    for (const OSMon& mon : degree) {
      std::vector<Rat> col =
          os_coop_image(L, d, ft, fb, OSPoly{{mon, Rat(1)}});
      for (size_t r = 0; r < col.size(); ++r) map.m[r][c] = col[r];
      ++c;
    }
  return StructureMap{MapKind::os_coop, lo, hi, g, std::move(map)};
}

GMap os_delta_map(OperadContext& ctx, Elem lo, Elem hi) {
  OSAlgebra& A = ctx.os(lo, hi);
  const OSFlat f = os_flat(A);
  GMap out;
  out.src = os_space(A);
  out.dst = out.src;
  out.parity = 1;
  out.m = mat_zero(f.dim, f.dim);
  int c = 0;
  for (const auto& degree : A.basis())
    for (const OSMon& mon : degree) {
      const OSPoly img = A.reduce(OSAlgebra::delta(OSPoly{{mon, Rat(1)}}));
      for (const auto& [m2, coef] : img) out.m[f.idx.at(m2)][c] = coef;
      ++c;
    }
  return out;
}

StructureMap osbar_odd_map(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  StructureMap coop = os_cooperad_map(ctx, lo, hi, g);
  const GMap dtop = os_delta_map(ctx, g, hi);
  const GMap id_bot = gmap_identity(os_space(ctx.os(lo, g)));
  GMap map = gmap_compose(gmap_tensor(dtop, id_bot), coop.map);
  return StructureMap{MapKind::osbar_odd, lo, hi, g, std::move(map)};
}

Mat osbar_inclusion(OperadContext& ctx, Elem lo, Elem hi) {
  OSAlgebra& A = ctx.os(lo, hi);
  const OSFlat f = os_flat(A);
  std::vector<int> offset;
  int off = 0;
  for (const auto& degree : A.basis()) {
    offset.push_back(off);
    off += static_cast<int>(degree.size());
  }
  int nproj = 0;
  for (const auto& vecs : A.projective_basis())
    nproj += static_cast<int>(vecs.size());
  Mat inc = mat_zero(f.dim, nproj);
  int c = 0;
  for (int d = 0; d < static_cast<int>(A.projective_basis().size()); ++d)
    for (const auto& v : A.projective_basis()[d]) {
      for (size_t i = 0; i < v.size(); ++i)
        inc[offset[d] + static_cast<int>(i)][c] = v[i];
      ++c;
    }
  return inc;
}

// --- Transports ---------------------------------------------------------------

GMap fy_transport(OperadContext& ctx, Elem slo, Elem shi, Elem dlo, Elem dhi,
                  const std::function<Elem(Elem)>& f) {
  FYAlgebra& S = ctx.fy(slo, shi);
  FYAlgebra& D = ctx.fy(dlo, dhi);
  const FYFlat fd = fy_flat(D);
  GMap out;
  out.src = fy_space(S);
  out.dst = fy_space(D);
  out.parity = 0;
  out.m = mat_zero(fd.dim, out.src.dim());
  int c = 0;
  for (const auto& degree : S.basis())
    for (const FYMon& mon : degree) {
      FYMon im;
      for (const auto& [X, e] : mon) im[f(X)] += e;
      const FYPoly red = D.reduce(FYPoly{{im, Rat(1)}});
      for (const auto& [m2, coef] : red) out.m[fd.idx.at(m2)][c] = coef;
      ++c;
    }
  return out;
}

GMap os_transport(OperadContext& ctx, Elem slo, Elem shi, Elem dlo, Elem dhi,
                  const std::function<Elem(Elem)>& f) {
  OSAlgebra& S = ctx.os(slo, shi);
  OSAlgebra& D = ctx.os(dlo, dhi);
  const OSFlat fd = os_flat(D);
  GMap out;
  out.src = os_space(S);
  out.dst = os_space(D);
  out.parity = 0;
  out.m = mat_zero(fd.dim, out.src.dim());
  int c = 0;
  for (const auto& degree : S.basis())
    for (const OSMon& mon : degree) {
      std::vector<int> pos;
      for (int p : mon) pos.push_back(D.atom_position(f(S.atoms()[p])));
      const OSPoly red = D.reduce(os_term(pos, Rat(1)));
      for (const auto& [m2, coef] : red) out.m[fd.idx.at(m2)][c] = coef;
      ++c;
    }
  return out;
}

// --- Well-definedness ----------------------------------------------------------

std::vector<FYPoly> fy_ideal_generators(OperadContext& ctx, Elem lo, Elem hi) {
  const Lattice& L = ctx.lattice();
  FYAlgebra& A = ctx.fy(lo, hi);
  std::vector<FYPoly> gens;
  for (Elem H : A.interval_atoms()) {
    FYPoly rel;
    for (Elem G : A.gens())
      if (L.leq(H, G)) rel = fy_add(rel, fy_gen(G));
    gens.push_back(rel);
  }
  // Minimal non-nested antichains: every proper sub-antichain of size >= 2
  // joins outside the induced members.
  const std::vector<Elem>& mem = A.gens();
  std::set<Elem> memset(mem.begin(), mem.end());
  auto bad = [&](const std::vector<Elem>& a) {
    Mask m = 0;
    for (Elem x : a) m |= L.supp[x];
    return memset.count(L.join_of_mask(m)) != 0;
  };
  const int maxsz = A.rank() + 1;
  std::vector<Elem> cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (cur.size() >= 2 && bad(cur)) {
      // Check minimality: all proper subsets of size >= 2 are nested.
      const int n = static_cast<int>(cur.size());
      for (int drop = 0; drop < n; ++drop) {
        std::vector<Elem> sub;
        for (int i = 0; i < n; ++i)
          if (i != drop) sub.push_back(cur[i]);
        if (sub.size() >= 2 && bad(sub)) return;  // not minimal, and any
        // superset also contains the smaller bad antichain, so stop here.
      }
      FYMon prod;
      for (Elem x : cur) prod[x] += 1;
      std::vector<FYPoly> one = {FYPoly{{prod, Rat(1)}}};
      gens.push_back(one[0]);
      return;
    }
    if (static_cast<int>(cur.size()) >= maxsz) return;
    for (size_t i = start; i < mem.size(); ++i) {
      bool anti = true;
      for (Elem x : cur)
        if (L.leq(x, mem[i]) || L.leq(mem[i], x)) anti = false;
      if (!anti) continue;
      cur.push_back(mem[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return gens;
}

bool fy_coop_well_defined(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  NestedMapData d = build_nested_data(ctx, lo, hi, {g, hi});
  for (const FYPoly& p : fy_ideal_generators(ctx, lo, hi)) {
    std::vector<Rat> col = nested_image(ctx, lo, hi, d, p);
    for (const Rat& c : col)
      if (c != 0) return false;
  }
  return true;
}

bool fy_pd_well_defined(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  const Lattice& L = ctx.lattice();
  PDData d = build_pd_data(ctx, lo, hi, g);
  const FYPoly one = fy_const(Rat(1));
  for (const FYPoly& p : fy_ideal_generators(ctx, g, hi))
    if (!pd_image(L, d, p, one).empty()) return false;
  // The bottom-slot atom relations also certify that the totalization by the
  // projective relation does not depend on the chosen atom.
  for (const FYPoly& p : fy_ideal_generators(ctx, lo, g))
    if (!pd_image(L, d, one, p).empty()) return false;
  // And recomputing the matrix with any other substitution atom must agree.
  for (Elem h : d.Bt->interval_atoms()) {
    PDData d2 = build_pd_data(ctx, lo, hi, g, h);
    for (const auto& degt : d.T->basis())
      for (const FYMon& mt : degt)
        for (const auto& degb : d.Bt->basis())
          for (const FYMon& mb : degb)
            if (pd_image_mon(L, d, mt, mb) != pd_image_mon(L, d2, mt, mb))
              return false;
  }
  return true;
}

bool os_coop_well_defined(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  const Lattice& L = ctx.lattice();
  OSCoopData d{&ctx.os(lo, hi), &ctx.os(g, hi), &ctx.os(lo, g), g};
  const OSFlat ft = os_flat(*d.T), fb = os_flat(*d.Bo);
  for (const OSMon& circuit : d.A->circuits()) {
    const OSPoly p = OSAlgebra::delta(OSPoly{{circuit, Rat(1)}});
    for (const Rat& c : os_coop_image(L, d, ft, fb, p))
      if (c != 0) return false;
  }
  return true;
}

bool osbar_lands_in_projective(OperadContext& ctx, Elem lo, Elem hi, Elem g) {
  const StructureMap odd = osbar_odd_map(ctx, lo, hi, g);
  const Mat inc = osbar_inclusion(ctx, lo, hi);
  const Mat restricted = mat_mul(odd.map.m, inc);
  const GMap id_top = gmap_identity(os_space(ctx.os(g, hi)));
  const GMap id_bot = gmap_identity(os_space(ctx.os(lo, g)));
  const GMap d1 = gmap_tensor(os_delta_map(ctx, g, hi), id_bot);
  const GMap d2 = gmap_tensor(id_top, os_delta_map(ctx, lo, g));
  for (const Mat& dm : {d1.m, d2.m}) {
    const Mat z = mat_mul(dm, restricted);
    for (const auto& row : z)
      for (const Rat& c : row)
        if (c != 0) return false;
  }
  return true;
}

// --- Presentation relations ----------------------------------------------------

namespace {

std::string describe(const char* what, Elem a, Elem b) {
  std::ostringstream os;
  os << what << " g1=" << a << " g2=" << b;
  return os.str();
}

}  // namespace

RelationReport check_presentation_relations(MapKind kind, OperadContext& ctx) {
  const Lattice& L = ctx.lattice();
  const BuildingSet& B = ctx.building();
  const Elem lo = L.bottom(), hi = L.top();
  RelationReport rep;

  const bool is_os = kind == MapKind::os_coop || kind == MapKind::osbar_odd;
  const bool odd = kind == MapKind::osbar_odd;
  const bool is_pd = kind == MapKind::fy_pd;

  auto space = [&](Elem a, Elem b) -> GSpace {
    return is_os ? os_space(ctx.os(a, b)) : fy_space(ctx.fy(a, b));
  };
  std::map<std::tuple<Elem, Elem, Elem>, GMap> cache;
  auto smap = [&](Elem a, Elem b, Elem g) -> const GMap& {
    auto key = std::make_tuple(a, b, g);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GMap m;
    switch (kind) {
      case MapKind::fy_coop: m = fy_cooperad_map(ctx, a, b, g).map; break;
      case MapKind::fy_pd: m = fy_pd_operad_map(ctx, a, b, g).map; break;
      case MapKind::os_coop: m = os_cooperad_map(ctx, a, b, g).map; break;
      case MapKind::osbar_odd: m = osbar_odd_map(ctx, a, b, g).map; break;
    }
    return cache.emplace(key, std::move(m)).first->second;
  };
  auto transport = [&](Elem sa, Elem sb, Elem da, Elem db,
                       std::function<Elem(Elem)> f) -> GMap {
    return is_os ? os_transport(ctx, sa, sb, da, db, f)
                 : fy_transport(ctx, sa, sb, da, db, f);
  };
  Mat inc;  // odd maps are only defined on the projective subalgebra
  if (odd) inc = osbar_inclusion(ctx, lo, hi);
  auto agree = [&](const GMap& x, const GMap& y) {
    if (!odd) return gmap_equal(x, y);
    return mat_mul(x.m, inc) == mat_mul(y.m, inc);
  };

  std::vector<Elem> gens;
  for (Elem m : B.members)
    if (m != hi) gens.push_back(m);

  // Chain relation.
  for (Elem g1 : gens)
    for (Elem g2 : gens) {
      if (!L.lt(g1, g2)) continue;
      ++rep.checked;
      GMap lhsm, rhsm;
      if (is_pd) {
        lhsm = gmap_compose(
            smap(lo, hi, g1),
            gmap_tensor(smap(g1, hi, g2), gmap_identity(space(lo, g1))));
        rhsm = gmap_compose(
            smap(lo, hi, g2),
            gmap_tensor(gmap_identity(space(g2, hi)), smap(lo, g2, g1)));
      } else {
        lhsm = gmap_compose(
            gmap_tensor(smap(g1, hi, g2), gmap_identity(space(lo, g1))),
            smap(lo, hi, g1));
        rhsm = gmap_compose(
            gmap_tensor(gmap_identity(space(g2, hi)), smap(lo, g2, g1)),
            smap(lo, hi, g2));
        if (odd) rhsm = gmap_scale(rhsm, Rat(-1));
      }
      if (!agree(lhsm, rhsm)) {
        rep.ok = false;
        rep.failures.push_back(describe("chain", g1, g2));
      }
    }

  // Antichain relation, with the canonical slot identifications
  // [lo,g2] ~ [g1,K] (join with g1) and [g2,K] ~ [lo,g1] (complement by g2).
  for (Elem g1 : gens)
    for (Elem g2 : gens) {
      if (g1 >= g2 || L.leq(g1, g2) || L.leq(g2, g1)) continue;
      if (!is_nested(L, B, lo, hi, {g1, g2}).ok) continue;
      const Elem K = L.join(g1, g2);
      if (K == hi) continue;
      ++rep.checked;
      std::vector<Elem> cand1;
      for (Elem z = 0; z < L.size(); ++z)
        if (L.leq(lo, z) && L.leq(z, g1)) cand1.push_back(z);
      auto joiner = [&](Elem X) { return L.join(X, g1); };
      auto comper = [&](Elem Y) { return comp(L, cand1, g2, Y); };
      const GMap tb = transport(lo, g2, g1, K, joiner);
      const GMap tc = transport(g2, K, lo, g1, comper);
      GMap lhsm, rhsm;
      if (is_pd) {
        const GMap fix = gmap_tensor(
            gmap_identity(space(K, hi)), gmap_tensor(tb, tc));
        lhsm = gmap_compose(
            gmap_compose(smap(lo, hi, g1),
                         gmap_tensor(smap(g1, hi, K),
                                     gmap_identity(space(lo, g1)))),
            fix);
        const GMap sigma = gmap_permute(
            {space(K, hi), space(lo, g2), space(g2, K)}, {0, 2, 1});
        rhsm = gmap_compose(
            gmap_compose(smap(lo, hi, g2),
                         gmap_tensor(smap(g2, hi, K),
                                     gmap_identity(space(lo, g2)))),
            sigma);
      } else {
        lhsm = gmap_compose(
            gmap_tensor(smap(g1, hi, K), gmap_identity(space(lo, g1))),
            smap(lo, hi, g1));
        GMap r0 = gmap_compose(
            gmap_tensor(smap(g2, hi, K), gmap_identity(space(lo, g2))),
            smap(lo, hi, g2));
        const GMap sigma = gmap_permute(
            {space(K, hi), space(g2, K), space(lo, g2)}, {0, 2, 1});
        const GMap fix = gmap_tensor(
            gmap_identity(space(K, hi)), gmap_tensor(tb, tc));
        rhsm = gmap_compose(fix, gmap_compose(sigma, r0));
        if (odd) rhsm = gmap_scale(rhsm, Rat(-1));
      }
      if (!agree(lhsm, rhsm)) {
        rep.ok = false;
        rep.failures.push_back(describe("antichain", g1, g2));
      }
    }

  // Isomorphism equivariance over all automorphisms of the built lattice.
  const std::vector<std::vector<Elem>> autos =
      find_automorphisms(L, &B.members);
  for (const auto& f : autos) {
    auto fm = [&f](Elem x) { return f[x]; };
    const GMap tl = transport(lo, hi, lo, hi, fm);
    for (Elem g : gens) {
      const Elem fg = f[g];
      ++rep.checked;
      const GMap ttop = transport(g, hi, fg, hi, fm);
      const GMap tbot = transport(lo, g, lo, fg, fm);
      GMap lhsm, rhsm;
      if (is_pd) {
        lhsm = gmap_compose(tl, smap(lo, hi, g));
        rhsm = gmap_compose(smap(lo, hi, fg), gmap_tensor(ttop, tbot));
        if (!gmap_equal(lhsm, rhsm)) {
          rep.ok = false;
          rep.failures.push_back(describe("iso", g, fg));
        }
      } else {
        lhsm = gmap_compose(smap(lo, hi, fg), tl);
        rhsm = gmap_compose(gmap_tensor(ttop, tbot), smap(lo, hi, g));
        // Equivariance holds on the nose (not just on the projective part).
        if (!gmap_equal(lhsm, rhsm)) {
          rep.ok = false;
          rep.failures.push_back(describe("iso", g, fg));
        }
      }
    }
  }
  return rep;
}

// --- Quadratic presentation ----------------------------------------------------

std::vector<QuadraticRelation> quadratic_relation_elements(
    const Lattice& L, const BuildingSet& B) {
  std::vector<QuadraticRelation> out;
  if (L.natoms < 2) return out;
  auto terms = [&](Elem H) {
    std::vector<Elem> t;
    for (Elem G : B.members)
      if (G != L.top() && L.leq(H, G)) t.push_back(G);
    return t;
  };
  for (int i = 0; i < L.natoms; ++i)
    for (int j = i + 1; j < L.natoms; ++j) {
      QuadraticRelation r;
      r.atom1 = L.atom(i);
      r.atom2 = L.atom(j);
      r.terms1 = terms(r.atom1);
      r.terms2 = terms(r.atom2);
      out.push_back(std::move(r));
    }
  return out;
}

std::vector<Rat> psi_functional(OperadContext& ctx,
                                const std::vector<Elem>& S) {
  const Elem lo = ctx.lattice().bottom(), hi = ctx.lattice().top();
  NestedMapData d = build_nested_data(ctx, lo, hi, S);
  // Flat index of the tensor of slot top powers.
  int idx = 0;
  for (size_t k = 0; k < d.S.size(); ++k) {
    const FYAlgebra& A = *d.alg[k];
    FYMon topmon;
    if (A.rank() > 1) topmon[d.S[k]] = A.rank() - 1;
    idx = idx * d.dims[k] + d.flat[k].idx.at(topmon);
  }
  FYAlgebra& src = ctx.fy(lo, hi);
  std::vector<Rat> row;
  for (const auto& degree : src.basis())
    for (const FYMon& mon : degree) {
      std::vector<Rat> col =
          nested_image(ctx, lo, hi, d, FYPoly{{mon, Rat(1)}});
      row.push_back(col[idx]);
    }
  return row;
}

Mat psi_functional_matrix(OperadContext& ctx,
                          std::vector<std::vector<Elem>>* sets) {
  const Lattice& L = ctx.lattice();
  const std::vector<std::vector<Elem>> nested =
      enumerate_nested_sets(L, ctx.building(), true);
  Mat out;
  for (const auto& S : nested) out.push_back(psi_functional(ctx, S));
  if (sets) *sets = nested;
  return out;
}

std::vector<Rat> quadratic_relation_functional(OperadContext& ctx,
                                               const QuadraticRelation& r) {
  const Elem hi = ctx.lattice().top();
  std::vector<Rat> acc;
  auto add = [&](const std::vector<Elem>& terms, const Rat& sgn) {
    for (Elem G : terms) {
      const std::vector<Rat> row = psi_functional(ctx, {G, hi});
      if (acc.empty()) acc.assign(row.size(), Rat(0));
      for (size_t i = 0; i < row.size(); ++i) acc[i] += sgn * row[i];
    }
  };
  add(r.terms1, Rat(1));
  add(r.terms2, Rat(-1));
  return acc;
}

}  // namespace lbs
