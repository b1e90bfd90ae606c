#include "lbs/os.hpp"

#include <algorithm>

namespace lbs {

OSPoly os_scale(const OSPoly& p, const Rat& c) {
  OSPoly out;
  if (c == 0) return out;
  for (auto& [m, v] : p) out[m] = v * c;
  return out;
}

OSPoly os_add(const OSPoly& a, const OSPoly& b) {
  OSPoly out = a;
  for (auto& [m, v] : b) {
    Rat& t = out[m];
    t += v;
    if (t == 0) out.erase(m);
  }
  return out;
}

OSPoly os_term(const std::vector<int>& atoms, const Rat& c) {
  if (c == 0) return {};
  // Insertion sort, tracking the Koszul sign; a repeat kills the term.
  std::vector<int> v = atoms;
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return {};
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return {{v, c * sign}};
}

OSPoly os_wedge(const OSPoly& a, const OSPoly& b) {
  OSPoly out;
  for (auto& [ma, va] : a)
    for (auto& [mb, vb] : b) {
      std::vector<int> cat = ma;
      cat.insert(cat.end(), mb.begin(), mb.end());
      out = os_add(out, os_term(cat, va * vb));
    }
  return out;
}

OSPoly OSAlgebra::delta(const OSPoly& p) {
  OSPoly out;
  for (auto& [m, c] : p) {
    int sign = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      OSMon sub;
      for (std::size_t j = 0; j < m.size(); ++j)
        if (j != i) sub.push_back(m[j]);
      out = os_add(out, {{sub, c * sign}});
      sign = -sign;
    }
  }
  return out;
}

int OSAlgebra::interval_rank(const OSMon& m) const {
  Elem j = lo_;
  for (int p : m) j = L_->join(j, atoms_[p]);
  return L_->rk[j] - L_->rk[lo_];
}

int OSAlgebra::atom_position(Elem ambient) const {
  auto it = pos_.find(ambient);
  check_arg(it != pos_.end(), "unknown_atom",
            "element " + std::to_string(ambient) +
                " is not an atom of the interval");
  return it->second;
}

OSAlgebra::OSAlgebra(const Lattice& L, Elem lo, Elem hi,
                     std::vector<Elem> atom_order)
    : L_(&L), lo_(lo), hi_(hi) {
  check_arg(L.leq(lo, hi), "argument", "not an interval");
  rank_ = L.rk[hi] - L.rk[lo];
  std::vector<Elem> def;
  for (Elem e = 0; e < L.size(); ++e)
    if (L.lt(lo, e) && L.leq(e, hi) && L.rk[e] == L.rk[lo] + 1)
      def.push_back(e);
  if (atom_order.empty()) atom_order = def;
  check_arg(atom_order.size() == def.size(), "argument",
            "atom order must be a permutation of the interval atoms");
  atoms_ = atom_order;
  for (int i = 0; i < static_cast<int>(atoms_.size()); ++i) {
    check_arg(std::find(def.begin(), def.end(), atoms_[i]) != def.end(),
              "unknown_atom", "atom order contains a non-atom");
    check_arg(pos_.emplace(atoms_[i], i).second, "argument",
              "atom order repeats an atom");
  }
  int k = static_cast<int>(atoms_.size());
  check_arg(k <= 20, "size_bound", "too many atoms for subset enumeration");

  // Circuits: enumerate subsets by size; any dependent set none of whose
  // proper subsets contains a smaller circuit is itself a circuit.
  std::vector<Mask> circuit_masks;
  for (Mask s = 1; s < bit(k); ++s) {
    bool has_smaller = false;
    for (Mask c : circuit_masks)
      if ((c & ~s) == 0 && c != s) has_smaller = true;
    if (has_smaller) continue;
    OSMon m;
    for (int i : mask_bits(s)) m.push_back(i);
    if (interval_rank(m) < static_cast<int>(m.size())) {
      circuit_masks.push_back(s);
      circuits_.push_back(m);
    }
  }
  // The mask loop enumerates in numeric, not size, order; fix up by
  // rechecking minimality now that the full list is known.
  {
    std::vector<OSMon> keep;
    std::vector<Mask> keep_m;
    for (std::size_t i = 0; i < circuits_.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < circuits_.size(); ++j)
        if (i != j && (circuit_masks[j] & ~circuit_masks[i]) == 0)
          minimal = false;
      if (minimal) {
        keep.push_back(circuits_[i]);
        keep_m.push_back(circuit_masks[i]);
      }
    }
    circuits_ = keep;
    circuit_masks = keep_m;
  }

  // Broken circuits: a circuit minus its smallest position.
  std::vector<Mask> broken;
  for (std::size_t i = 0; i < circuit_masks.size(); ++i)
    broken.push_back(circuit_masks[i] & ~bit(circuits_[i][0]));

  int dmax = std::min(k, rank_ + 1);
  std::vector<std::vector<OSMon>> nbc(dmax + 1), rest(dmax + 1);
  for (Mask s = 0; s < bit(k); ++s) {
    int d = popcount(s);
    if (d > dmax) continue;
    bool ok = true;
    for (Mask b : broken)
      if ((b & ~s) == 0) ok = false;
    OSMon m;
    for (int i : mask_bits(s)) m.push_back(i);
    (ok ? nbc : rest)[d].push_back(m);
  }

  basis_.assign(dmax + 1, {});
  oracle_dims_.assign(dmax + 1, 0);
  deg_.resize(dmax + 1);
  for (int d = 0; d <= dmax; ++d) {
    Degree& D = deg_[d];
    std::sort(nbc[d].begin(), nbc[d].end());
    std::sort(rest[d].begin(), rest[d].end());
    D.cols = rest[d];
    D.cols.insert(D.cols.end(), nbc[d].begin(), nbc[d].end());
    for (int i = 0; i < static_cast<int>(D.cols.size()); ++i)
      D.col_of[D.cols[i]] = i;
    // Ideal rows: e_T wedge delta(e_C) over circuits C and disjoint T.
    for (std::size_t ci = 0; ci < circuits_.size(); ++ci) {
      int csz = static_cast<int>(circuits_[ci].size());
      int tsz = d - csz + 1;
      if (tsz < 0) continue;
      OSPoly dc = delta({{circuits_[ci], Rat(1)}});
      for (Mask t = 0; t < bit(k); ++t) {
        if (popcount(t) != tsz || popcount(t & circuit_masks[ci]) > 1)
          continue;  // two shared atoms kill every term of the wedge
        OSMon tm;
        for (int i : mask_bits(t)) tm.push_back(i);
        OSPoly row = os_wedge(OSPoly{{tm, Rat(1)}}, dc);
        SVec v;
        for (auto& [m, c] : row) v[D.col_of.at(m)] = c;
        if (!v.empty()) D.rows.add_row(std::move(v));
      }
    }
    oracle_dims_[d] = static_cast<int>(D.cols.size()) - D.rows.rank();
    check_internal(oracle_dims_[d] == static_cast<int>(nbc[d].size()),
                   "nbc count disagrees with ideal rank");
    for (int i = 0; i < static_cast<int>(rest[d].size()); ++i)
      check_internal(D.rows.is_pivot(i),
                     "a broken-circuit monomial survived reduction");
    basis_[d] = nbc[d];
  }
  check_internal(dmax <= rank_ || oracle_dims_[rank_ + 1] == 0,
                 "algebra does not vanish above the rank");

  // Projective subalgebra: kernel of delta on the quotient per degree;
  // verified against the image ranks (ker = im).
  int dtop = std::min(dmax, rank_);
  std::vector<Mat> dmat(dtop + 1);  // dmat[d]: degree d -> degree d-1
  std::vector<int> drank(dtop + 2, 0);
  for (int d = 1; d <= dtop; ++d) {
    dmat[d] = mat_zero(static_cast<int>(basis_[d - 1].size()),
                       static_cast<int>(basis_[d].size()));
    for (std::size_t j = 0; j < basis_[d].size(); ++j) {
      OSPoly img = reduce(delta(OSPoly{{basis_[d][j], Rat(1)}}));
      for (auto& [m, c] : img) {
        auto it =
            std::lower_bound(basis_[d - 1].begin(), basis_[d - 1].end(), m);
        dmat[d][static_cast<int>(it - basis_[d - 1].begin())][j] = c;
      }
    }
    drank[d] = mat_rank(dmat[d]);
  }
  projective_.assign(dtop + 1, {});
  for (int d = 0; d <= dtop; ++d) {
    if (d == 0) {
      // delta(1) = 0, and 1 = delta(e_H) lies in the image as well.
      projective_[0] = {{Rat(1)}};
      continue;
    }
    projective_[d] = mat_kernel(dmat[d]);
    int ker = static_cast<int>(projective_[d].size());
    int im = d + 1 <= dtop ? drank[d + 1] : 0;
    check_internal(ker == im, "ker(delta) differs from im(delta)");
  }
}

std::vector<int> OSAlgebra::hilbert() const {
  std::vector<int> out;
  for (int d = 0; d <= std::min(static_cast<int>(atoms_.size()), rank_); ++d)
    out.push_back(static_cast<int>(basis_[d].size()));
  return out;
}

std::vector<int> OSAlgebra::projective_hilbert() const {
  std::vector<int> out;
  for (auto& b : projective_) out.push_back(static_cast<int>(b.size()));
  return out;
}

OSPoly OSAlgebra::reduce(const OSPoly& p) const {
  std::map<int, SVec> vecs;
  for (auto& [m, c] : p) {
    for (int i : m)
      check_arg(i >= 0 && i < static_cast<int>(atoms_.size()), "unknown_atom",
                "monomial position out of range");
    int d = static_cast<int>(m.size());
    if (d >= static_cast<int>(deg_.size())) continue;  // above the rank
    vecs[d][deg_[d].col_of.at(m)] += c;
  }
  OSPoly out;
  for (auto& [d, v] : vecs) {
    SVec r = deg_[d].rows.reduce(v);
    for (auto& [col, c] : r)
      if (c != 0) out[deg_[d].cols[col]] = c;
  }
  return out;
}

}  // namespace lbs
