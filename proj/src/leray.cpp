#include "lbs/leray.hpp"

#include <algorithm>
#include <functional>

#include "lbs/operad.hpp"

namespace lbs {

namespace {

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Elem> support(const LerayMon& m) {
  std::vector<Elem> s = m.e;
  for (const auto& [g, e] : m.x) s.push_back(g);
  return sorted_unique(s);
}

// Convolution of Hilbert series.
std::vector<int> conv(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Flat basis order of an FY algebra: degrees ascending, basis order inside.
std::vector<FYMon> flat_basis(const FYAlgebra& A) {
  std::vector<FYMon> out;
  for (const auto& degree : A.basis())
    for (const FYMon& m : degree) out.push_back(m);
  return out;
}

}  // namespace

std::pair<int, int> leray_bidegree(const LerayMon& m) {
  return {2 * fy_degree(m.x), static_cast<int>(m.e.size())};
}

LerayPoly leray_term(const std::vector<Elem>& e_factors, const FYMon& x,
                     const Rat& c) {
  if (c == 0) return {};
  int inversions = 0;
  for (size_t i = 0; i < e_factors.size(); ++i)
    for (size_t j = i + 1; j < e_factors.size(); ++j) {
      if (e_factors[i] == e_factors[j]) return {};
      if (e_factors[i] > e_factors[j]) ++inversions;
    }
  LerayMon m;
  m.e = e_factors;
  std::sort(m.e.begin(), m.e.end());
  m.x = x;
  return {{std::move(m), inversions % 2 == 0 ? c : -c}};
}

LerayPoly leray_scale(const LerayPoly& p, const Rat& c) {
  LerayPoly out;
  if (c == 0) return out;
  for (const auto& [m, v] : p) out.emplace(m, v * c);
  return out;
}

LerayPoly leray_add(const LerayPoly& a, const LerayPoly& b) {
  LerayPoly out = a;
  for (const auto& [m, v] : b) {
    Rat& t = out[m];
    t += v;
    if (t == 0) out.erase(m);
  }
  return out;
}

LerayModel::LerayModel(const Lattice& L, const BuildingSet& B,
                       LerayVariant variant)
    : L_(&L), B_(B), variant_(variant) {
  check_arg(B_.irreducible, "not_irreducible",
            "Leray models need the top element in the building set");
  max_x_ = L.rank();
  const bool projective = variant_ == LerayVariant::projective;
  const Elem top = L.top();

  // Admissible monomials, grouped by bidegree.  Each e_S x^mu arises from
  // exactly one nested support set and one (e-part, x-support) split.
  for (const std::vector<Elem>& N : enumerate_nested_sets(L, B_, false)) {
    const int n = static_cast<int>(N.size());
    for (int emask = 0; emask < (1 << n); ++emask) {
      LerayMon base;
      bool skip = false;
      for (int i = 0; i < n; ++i)
        if (emask & (1 << i)) {
          if (projective && N[i] == top) skip = true;
          base.e.push_back(N[i]);
        }
      if (skip) continue;
      // x-support = the complement, extended by any subset of the e-part.
      std::vector<Elem> forced, optional;
      for (int i = 0; i < n; ++i)
        ((emask >> i) & 1 ? optional : forced).push_back(N[i]);
      const int on = static_cast<int>(optional.size());
      for (int omask = 0; omask < (1 << on); ++omask) {
        std::vector<Elem> xsupp = forced;
        for (int i = 0; i < on; ++i)
          if (omask & (1 << i)) xsupp.push_back(optional[i]);
        if (static_cast<int>(xsupp.size()) > max_x_) continue;
        // All exponent maps with every entry >= 1, total weight <= max_x_.
        std::function<void(size_t, int, FYMon&)> rec = [&](size_t i, int left,
                                                           FYMon& acc) {
          if (i == xsupp.size()) {
            LerayMon m = base;
            m.x = acc;
            Block& blk = blocks_[leray_bidegree(m)];
            blk.cols.push_back(std::move(m));
            return;
          }
          const int rest = static_cast<int>(xsupp.size() - i - 1);
          for (int e = 1; e + rest <= left; ++e) {
            acc[xsupp[i]] = e;
            rec(i + 1, left - e, acc);
          }
          acc.erase(xsupp[i]);
        };
        FYMon acc;
        rec(0, max_x_, acc);
      }
    }
  }

  for (auto& [bd, blk] : blocks_) {
    std::sort(blk.cols.begin(), blk.cols.end());
    for (size_t i = 0; i < blk.cols.size(); ++i)
      blk.col_of.emplace(blk.cols[i], static_cast<int>(i));
    max_e_ = std::max(max_e_, bd.second);
  }

  // Span of the ideal in each bidegree: the atom relations times every
  // admissible monomial one x-weight lower (non-admissible multiples only
  // involve non-admissible monomials, which are already zero).
  for (auto& [bd, blk] : blocks_) {
    auto lower = blocks_.find({bd.first - 2, bd.second});
    if (lower == blocks_.end()) continue;
    for (const LerayMon& m : lower->second.cols) {
      for (int a = 0; a < L.natoms; ++a) {
        const Elem H = L.atom(a);
        SVec row;
        for (Elem G : B_.members) {
          if (!L.leq(H, G)) continue;
          LerayMon mg = m;
          ++mg.x[G];
          auto it = blk.col_of.find(mg);
          if (it != blk.col_of.end()) row[it->second] += 1;
        }
        blk.rows.add_row(std::move(row));
      }
    }
  }

  for (auto& [bd, blk] : blocks_) {
    for (size_t i = 0; i < blk.cols.size(); ++i)
      if (!blk.rows.is_pivot(static_cast<int>(i)))
        blk.normal.push_back(blk.cols[i]);
    check_internal(bd.first < 2 * max_x_ || blk.normal.empty(),
                   "Leray model reaches the x-weight bound");
  }
}

const LerayModel::Block* LerayModel::block(int p, int q) const {
  auto it = blocks_.find({p, q});
  return it == blocks_.end() ? nullptr : &it->second;
}

const std::vector<LerayMon>& LerayModel::basis(int p, int q) const {
  static const std::vector<LerayMon> empty;
  const Block* b = block(p, q);
  return b ? b->normal : empty;
}

std::map<std::pair<int, int>, int> LerayModel::dimensions() const {
  std::map<std::pair<int, int>, int> out;
  for (const auto& [bd, blk] : blocks_)
    if (!blk.normal.empty()) out.emplace(bd, static_cast<int>(blk.normal.size()));
  return out;
}

LerayPoly LerayModel::reduce(const LerayPoly& p) const {
  // Group by bidegree, drop monomials that are zero for monomial reasons.
  std::map<std::pair<int, int>, SVec> by_block;
  const Elem top = L_->top();
  for (const auto& [m, c] : p) {
    if (variant_ == LerayVariant::projective &&
        std::find(m.e.begin(), m.e.end(), top) != m.e.end())
      continue;
    const auto bd = leray_bidegree(m);
    if (!is_nested(*L_, B_, support(m)).ok) continue;
    const Block* blk = block(bd.first, bd.second);
    // Admissible monomials past the stored x-weight are zero in the
    // quotient (the top stored weight is verified empty, and the ideal
    // absorbs everything above it).
    if (blk == nullptr) continue;
    by_block[bd][blk->col_of.at(m)] += c;
  }
  LerayPoly out;
  for (auto& [bd, vec] : by_block) {
    const Block* blk = block(bd.first, bd.second);
    SVec red = blk->rows.reduce(std::move(vec));
    for (const auto& [col, c] : red) {
      if (c == 0) continue;
      out[blk->cols[col]] += c;
      if (out[blk->cols[col]] == 0) out.erase(blk->cols[col]);
    }
  }
  return out;
}

LerayPoly LerayModel::multiply(const LerayPoly& a, const LerayPoly& b) const {
  LerayPoly prod;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<Elem> e = ma.e;
      e.insert(e.end(), mb.e.begin(), mb.e.end());
      FYMon x = ma.x;
      for (const auto& [g, v] : mb.x) x[g] += v;
      prod = leray_add(prod, leray_term(e, x, ca * cb));
    }
  return reduce(prod);
}

LerayPoly LerayModel::d(const LerayPoly& p) const {
  LerayPoly out;
  for (const auto& [m, c] : p) {
    Rat sign(1);
    for (size_t i = 0; i < m.e.size(); ++i) {
      LerayMon t;
      t.e = m.e;
      t.e.erase(t.e.begin() + static_cast<long>(i));
      t.x = m.x;
      ++t.x[m.e[i]];
      out = leray_add(out, {{std::move(t), c * sign}});
      sign = -sign;
    }
  }
  return reduce(out);
}

Mat LerayModel::differential(int p, int q) const {
  const std::vector<LerayMon>& src = basis(p, q);
  const std::vector<LerayMon>& dst = basis(p + 2, q - 1);
  std::map<LerayMon, int> dst_of;
  for (size_t i = 0; i < dst.size(); ++i) dst_of.emplace(dst[i], i);
  Mat out = mat_zero(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (size_t j = 0; j < src.size(); ++j) {
    for (const auto& [m, c] : d(LerayPoly{{src[j], Rat(1)}}))
      out[dst_of.at(m)][j] = c;
  }
  return out;
}

std::map<std::pair<int, int>, int> decomposition_dimensions(
    const Lattice& L, const BuildingSet& B, LerayVariant variant) {
  check_arg(B.irreducible, "not_irreducible",
            "Leray models need the top element in the building set");
  std::map<std::pair<Elem, Elem>, std::vector<int>> hilb;
  auto slot_hilbert = [&](Elem lo, Elem hi) -> const std::vector<int>& {
    auto it = hilb.find({lo, hi});
    if (it == hilb.end())
      it = hilb.emplace(std::make_pair(lo, hi),
                        FYAlgebra(L, B, lo, hi).hilbert())
               .first;
    return it->second;
  };
  const Elem bot = L.bottom(), top = L.top();
  std::map<std::pair<int, int>, int> out;
  for (const std::vector<Elem>& S : enumerate_nested_sets(L, B, false)) {
    const bool has_top = std::find(S.begin(), S.end(), top) != S.end();
    int q;
    std::vector<Elem> T = S;
    if (variant == LerayVariant::projective) {
      if (!has_top) continue;
      q = static_cast<int>(S.size()) - 1;
    } else {
      q = static_cast<int>(S.size());
      if (!has_top) T.push_back(top);
    }
    std::vector<int> h = {1};
    for (Elem g : T) h = conv(h, slot_hilbert(tau(L, T, bot, g), g));
    for (size_t k = 0; k < h.size(); ++k)
      if (h[k] != 0) out[{2 * static_cast<int>(k), q}] += h[k];
  }
  return out;
}

LerayHomology homology(const LerayModel& Lm) {
  LerayHomology out;
  std::map<std::pair<int, int>, int> ranks;
  auto rank_at = [&](int p, int q) {
    auto it = ranks.find({p, q});
    if (it == ranks.end())
      it = ranks.emplace(std::make_pair(p, q), mat_rank(Lm.differential(p, q)))
               .first;
    return it->second;
  };
  int max_q0 = -1;
  for (const auto& [bd, dim] : Lm.dimensions()) {
    const int h = dim - rank_at(bd.first, bd.second) -
                  rank_at(bd.first - 2, bd.second + 1);
    check_internal(h >= 0, "negative homology dimension");
    if (h > 0) out.bigraded.emplace(bd, h);
    if (bd.first == 0) max_q0 = std::max(max_q0, bd.second);
  }
  out.concentrated = true;
  for (const auto& [bd, h] : out.bigraded)
    if (bd.first != 0) out.concentrated = false;
  for (int q = 0; q <= max_q0; ++q) {
    auto it = out.bigraded.find({0, q});
    out.diagonal.push_back(it == out.bigraded.end() ? 0 : it->second);
  }
  while (!out.diagonal.empty() && out.diagonal.back() == 0)
    out.diagonal.pop_back();
  return out;
}

OSComparisonReport os_comparison(const LerayModel& Lm) {
  const Lattice& L = Lm.lattice();
  const BuildingSet& B = Lm.building();
  OSAlgebra A(L, L.bottom(), L.top());
  OSComparisonReport rep;
  rep.os_dims = Lm.variant() == LerayVariant::projective
                    ? A.projective_hilbert()
                    : A.hilbert();
  while (!rep.os_dims.empty() && rep.os_dims.back() == 0)
    rep.os_dims.pop_back();

  const LerayHomology H = homology(Lm);
  rep.homology_dims = H.diagonal;
  rep.concentrated = H.concentrated;

  // Image of one OS monomial (positions into the atom order).
  auto image = [&](const OSMon& mon) {
    LerayPoly acc = leray_term({}, {}, Rat(1));
    for (int pos : mon) {
      const Elem Hh = A.atoms()[pos];
      LerayPoly next;
      for (Elem G : B.members) {
        if (!L.leq(Hh, G)) continue;
        for (const auto& [m, c] : acc) {
          std::vector<Elem> e = m.e;
          e.push_back(G);
          next = leray_add(next, leray_term(e, m.x, c));
        }
      }
      acc = std::move(next);
    }
    return Lm.reduce(acc);
  };

  rep.chain_map = true;
  rep.iso = true;
  for (int k = 0; k < static_cast<int>(rep.os_dims.size()); ++k) {
    // Coordinate vectors of the comparison source in the nbc basis.
    std::vector<std::vector<Rat>> source;
    const auto& nbc = k < static_cast<int>(A.basis().size())
                          ? A.basis()[k]
                          : std::vector<OSMon>{};
    if (Lm.variant() == LerayVariant::projective) {
      if (k < static_cast<int>(A.projective_basis().size()))
        source = A.projective_basis()[k];
    } else {
      for (size_t i = 0; i < nbc.size(); ++i) {
        std::vector<Rat> v(nbc.size(), Rat(0));
        v[i] = 1;
        source.push_back(std::move(v));
      }
    }
    check_internal(static_cast<int>(source.size()) == rep.os_dims[k],
                   "comparison source dimension mismatch");

    const std::vector<LerayMon>& target = Lm.basis(0, k);
    std::map<LerayMon, int> idx;
    for (size_t i = 0; i < target.size(); ++i) idx.emplace(target[i], i);
    std::vector<LerayPoly> nbc_img(nbc.size());
    for (size_t i = 0; i < nbc.size(); ++i) nbc_img[i] = image(nbc[i]);

    Mat rows;
    for (const std::vector<Rat>& v : source) {
      LerayPoly im;
      for (size_t i = 0; i < nbc.size(); ++i)
        if (v[i] != 0) im = leray_add(im, leray_scale(nbc_img[i], v[i]));
      im = Lm.reduce(im);
      if (!Lm.d(im).empty()) rep.chain_map = false;
      std::vector<Rat> row(target.size(), Rat(0));
      for (const auto& [m, c] : im) row[idx.at(m)] = c;
      rows.push_back(std::move(row));
    }
    // Nothing maps into the p = 0 column, so homology there is the kernel
    // of d; the induced map is bijective iff the images are independent and
    // the dimensions agree.
    const int hk =
        k < static_cast<int>(rep.homology_dims.size()) ? rep.homology_dims[k] : 0;
    if (hk != rep.os_dims[k] || mat_rank(rows) != rep.os_dims[k])
      rep.iso = false;
  }
  if (rep.homology_dims.size() > rep.os_dims.size()) rep.iso = false;
  rep.ok = rep.chain_map && rep.iso && rep.concentrated;
  return rep;
}

LerayPoly decomp_monomial(const LerayModel& Lm, const DecompElem& a) {
  const Lattice& L = Lm.lattice();
  const BuildingSet& B = Lm.building();
  check_arg(!a.S.empty() && a.S.back() == L.top() &&
                std::is_sorted(a.S.begin(), a.S.end()) &&
                is_nested(L, B, a.S).ok,
            "invalid_nested_set",
            "decomposition index must be a sorted irreducible nested set");
  std::vector<Elem> e;
  FYMon x;
  for (Elem g : a.S) {
    if (g != L.top()) e.push_back(g);
    auto it = a.local.find(g);
    if (it == a.local.end()) continue;
    const Elem lo = tau(L, a.S, L.bottom(), g);
    for (const auto& [K, c] : it->second) x[comp(L, B, lo, K)] += c;
  }
  return leray_term(e, x, Rat(1));
}

namespace {

// Slotted element of the decomposition over T: slot-top -> local monomial.
using Slotted = std::map<std::map<Elem, FYMon>, Rat>;

Slotted slotted_mul(const Slotted& a, const Slotted& b) {
  Slotted out;
  for (const auto& [ta, ca] : a)
    for (const auto& [tb, cb] : b) {
      std::map<Elem, FYMon> t = ta;
      t.insert(tb.begin(), tb.end());
      Rat& acc = out[t];
      acc += ca * cb;
      if (acc == 0) out.erase(t);
    }
  return out;
}

// Push one decomposition element into the slots of the finer nested set T
// via the FY cooperad maps, identifying each refined sub-slot with the
// corresponding slot of T along the canonical interval isomorphism.
Slotted push_to(OperadContext& ctx, const DecompElem& a,
                const std::vector<Elem>& T) {
  const Lattice& L = ctx.lattice();
  const Elem bot = L.bottom();
  const auto locals = decompose_nested(L, ctx.building(), bot, L.top(), T, a.S);
  Slotted result = {{{}, Rat(1)}};
  for (Elem g : a.S) {
    const Elem lo_g = tau(L, a.S, bot, g);
    std::vector<Elem> N = locals.at(g);
    std::sort(N.begin(), N.end(), std::greater<Elem>());  // slot order
    FYMon mon;
    if (auto it = a.local.find(g); it != a.local.end()) mon = it->second;
    const std::vector<Rat> flat =
        fy_nested_image(ctx, lo_g, g, N, FYPoly{{mon, Rat(1)}});

    // Per sub-slot: flat bases, the matching slot of T and the change of
    // coordinates from the sub-slot back to the T-slot.
    struct Sub {
      Elem t;
      std::vector<FYMon> sub_basis;
      std::vector<FYMon> t_basis;
      Mat to_t;  // inverse of the transport T-slot -> sub-slot
    };
    std::vector<Sub> subs;
    int tdim = 1;
    for (Elem K : N) {
      Sub s;
      const Elem sub_lo = tau(L, N, lo_g, K);
      s.t = comp(L, ctx.building(), lo_g, K);
      check_internal(std::find(T.begin(), T.end(), s.t) != T.end(),
                     "refined slot does not recompose into the union");
      const Elem t_lo = tau(L, T, bot, s.t);
      s.sub_basis = flat_basis(ctx.fy(sub_lo, K));
      s.t_basis = flat_basis(ctx.fy(t_lo, s.t));
      GMap tr = fy_transport(ctx, t_lo, s.t, sub_lo, K,
                             [&](Elem x) { return L.join(x, sub_lo); });
      auto inv = mat_inverse(tr.m);
      check_internal(inv.has_value(), "slot identification is not invertible");
      s.to_t = std::move(*inv);
      tdim *= static_cast<int>(s.sub_basis.size());
      subs.push_back(std::move(s));
    }
    check_internal(static_cast<int>(flat.size()) == tdim,
                   "flat image dimension mismatch");

    Slotted pushed;
    for (int idx = 0; idx < tdim; ++idx) {
      if (flat[idx] == 0) continue;
      // Decode the mixed-radix index (first sub-slot most significant).
      std::vector<int> digits(subs.size());
      int rest = idx;
      for (int k = static_cast<int>(subs.size()) - 1; k >= 0; --k) {
        const int dk = static_cast<int>(subs[k].sub_basis.size());
        digits[k] = rest % dk;
        rest /= dk;
      }
      // Convert each sub-slot monomial into the T-slot coordinates and
      // distribute the products.
      Slotted term = {{{}, flat[idx]}};
      for (size_t k = 0; k < subs.size(); ++k) {
        const Sub& s = subs[k];
        Slotted factor;
        for (size_t r = 0; r < s.t_basis.size(); ++r) {
          const Rat& c = s.to_t[r][digits[k]];
          if (c == 0) continue;
          factor[{{s.t, s.t_basis[r]}}] += c;
        }
        term = slotted_mul(term, factor);
      }
      for (const auto& [t, c] : term) {
        Rat& acc = pushed[t];
        acc += c;
        if (acc == 0) pushed.erase(t);
      }
    }
    result = slotted_mul(result, pushed);
  }
  return result;
}

}  // namespace

LerayPoly bar_product(const LerayModel& Lm, const DecompElem& a,
                      const DecompElem& b) {
  const Lattice& L = Lm.lattice();
  const BuildingSet& B = Lm.building();
  const Elem bot = L.bottom(), top = L.top();
  check_arg(!a.S.empty() && a.S.back() == top && is_nested(L, B, a.S).ok,
            "invalid_nested_set", "left factor index is not irreducible nested");
  check_arg(!b.S.empty() && b.S.back() == top && is_nested(L, B, b.S).ok,
            "invalid_nested_set",
            "right factor index is not irreducible nested");

  // Case split: zero unless the sets meet exactly in the top and the union
  // is nested.
  std::vector<Elem> inter;
  std::set_intersection(a.S.begin(), a.S.end(), b.S.begin(), b.S.end(),
                        std::back_inserter(inter));
  if (inter != std::vector<Elem>{top}) return {};
  std::vector<Elem> T;
  std::set_union(a.S.begin(), a.S.end(), b.S.begin(), b.S.end(),
                 std::back_inserter(T));
  if (!is_nested(L, B, T).ok) return {};

  OperadContext ctx(L, B);
  const Slotted pa = push_to(ctx, a, T);
  const Slotted pb = push_to(ctx, b, T);

  // Multiply slotwise inside the local FY algebras of T.
  LerayPoly out;
  for (const auto& [ta, ca] : pa)
    for (const auto& [tb, cb] : pb) {
      Slotted term = {{{}, ca * cb}};
      for (Elem t : T) {
        const Elem t_lo = tau(L, T, bot, t);
        FYMon ma, mb;
        if (auto it = ta.find(t); it != ta.end()) ma = it->second;
        if (auto it = tb.find(t); it != tb.end()) mb = it->second;
        const FYPoly prod = ctx.fy(t_lo, t).reduce(
            fy_mul(FYPoly{{ma, Rat(1)}}, FYPoly{{mb, Rat(1)}}));
        Slotted factor;
        for (const auto& [m, c] : prod) factor[{{t, m}}] += c;
        term = slotted_mul(term, factor);
        if (term.empty()) break;
      }
      // Convert each slotted term to the quotient presentation.
      for (const auto& [slots, c] : term) {
        DecompElem de;
        de.S = T;
        de.local = slots;
        out = leray_add(out, leray_scale(decomp_monomial(Lm, de), c));
      }
    }
  return Lm.reduce(out);
}

}  // namespace lbs
