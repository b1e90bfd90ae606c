#include "lbs/fy.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lbs {

int fy_degree(const FYMon& m) {
  int d = 0;
  for (auto& [g, e] : m) d += e;
  return d;
}

FYPoly fy_scale(const FYPoly& p, const Rat& c) {
  FYPoly out;
  if (c == 0) return out;
  for (auto& [m, v] : p) out[m] = v * c;
  return out;
}

FYPoly fy_add(const FYPoly& a, const FYPoly& b) {
  FYPoly out = a;
  for (auto& [m, v] : b) {
    Rat& t = out[m];
    t += v;
    if (t == 0) out.erase(m);
  }
  return out;
}

FYPoly fy_mul(const FYPoly& a, const FYPoly& b) {
  FYPoly out;
  for (auto& [ma, va] : a)
    for (auto& [mb, vb] : b) {
      FYMon m = ma;
      for (auto& [g, e] : mb) m[g] += e;
      Rat& t = out[m];
      t += va * vb;
      if (t == 0) out.erase(m);
    }
  return out;
}

FYAlgebra::FYAlgebra(const Lattice& L, const BuildingSet& B, Elem lo, Elem hi)
    : L_(&L), B_(&B), lo_(lo), hi_(hi) {
  check_arg(L.leq(lo, hi), "argument", "not an interval");
  rank_ = L.rk[hi] - L.rk[lo];
  gens_ = induced_members(L, B, lo, hi);
  is_gen_.assign(L.size(), 0);
  for (Elem g : gens_) is_gen_[g] = 1;
  for (Elem e = 0; e < L.size(); ++e)
    if (L.lt(lo, e) && L.leq(e, hi) && L.rk[e] == L.rk[lo] + 1)
      iatoms_.push_back(e);

  // Nested supports available in this interval.
  std::set<std::vector<Elem>> nested;
  for (auto& S : enumerate_nested_sets(L, B, lo, hi, false)) nested.insert(S);

  // Monomials of each degree with nested support, graded by x-degree; the
  // row space of the ideal in that degree; the theorem's normal monomials.
  auto support_of = [](const FYMon& m) {
    std::vector<Elem> s;
    for (auto& [g, e] : m) s.push_back(g);
    return s;
  };
  auto is_normal = [&](const FYMon& m) {
    std::vector<Elem> s = support_of(m);
    for (auto& [g, e] : m)
      if (e >= L.rk[g] - L.rk[tau(L, s, lo, g)]) return false;
    return true;
  };

  // All nested monomials per degree, by distributing exponents over supports.
  std::vector<std::vector<FYMon>> nm(rank_ + 1);
  for (const auto& S : nested) {
    int k = static_cast<int>(S.size());
    if (k > rank_) continue;
    std::function<void(int, int, FYMon&)> spread = [&](int i, int left,
                                                       FYMon& m) {
      if (i == k) {
        nm[fy_degree(m)].push_back(m);
        return;
      }
      int remaining = k - i - 1;
      for (int e = 1; e + remaining <= left; ++e) {
        m[S[i]] = e;
        spread(i + 1, left - e, m);
      }
      m.erase(S[i]);
    };
    if (k == 0) {
      nm[0].push_back({});
    } else {
      FYMon m;
      spread(0, rank_, m);
    }
  }

  basis_.assign(rank_ + 1, {});
  oracle_dims_.assign(rank_ + 1, 0);
  deg_.resize(rank_ + 1);
  for (int d = 0; d <= rank_; ++d) {
    Degree& D = deg_[d];
    std::vector<FYMon> norm, non;
    for (auto& m : nm[d]) (is_normal(m) ? norm : non).push_back(m);
    std::sort(norm.begin(), norm.end());
    std::sort(non.begin(), non.end());
    D.cols = non;
    D.cols.insert(D.cols.end(), norm.begin(), norm.end());
    for (int i = 0; i < static_cast<int>(D.cols.size()); ++i)
      D.col_of[D.cols[i]] = i;
    // Rows: (atom relation) * (nested monomial of degree d-1).  Terms whose
    // support leaves the nested world are already in the ideal and dropped.
    if (d > 0) {
      for (const auto& m : nm[d - 1]) {
        std::vector<Elem> s = support_of(m);
        for (Elem H : iatoms_) {
          SVec row;
          for (Elem g : gens_) {
            if (!L.leq(H, g)) continue;
            FYMon m2 = m;
            m2[g] += 1;
            auto it = D.col_of.find(m2);
            if (it != D.col_of.end()) row[it->second] += 1;
          }
          if (!row.empty()) D.rows.add_row(std::move(row));
        }
      }
    }
    oracle_dims_[d] = static_cast<int>(D.cols.size()) - D.rows.rank();
    check_internal(oracle_dims_[d] == static_cast<int>(norm.size()),
                   "normal monomial count disagrees with ideal rank");
    for (int i = 0; i < static_cast<int>(non.size()); ++i)
      check_internal(D.rows.is_pivot(i),
                     "a non-normal monomial survived reduction");
    basis_[d] = norm;
  }
  check_internal(rank_ == 0 || oracle_dims_[rank_] == 0,
                 "algebra does not vanish above the top degree");
  check_internal(basis_[0].size() == 1, "missing unit");

  // Wonderful presentation: change of basis from reduced x-coordinates to
  // the h-normal monomials, one invertible matrix per degree.
  for (int d = 0; d + 1 <= rank_ || d == 0; ++d) {
    if (d > rank_) break;
    int n = static_cast<int>(basis_[d].size());
    Mat W = mat_zero(n, n);
    for (int j = 0; j < n; ++j) {
      FYPoly h_mon = fy_const(1);
      for (auto& [g, e] : basis_[d][j])
        for (int t = 0; t < e; ++t) h_mon = fy_mul(h_mon, to_x(fy_gen(g)));
      FYPoly red = reduce_affine(h_mon);
      for (auto& [m, c] : red) {
        auto it = std::lower_bound(basis_[d].begin(), basis_[d].end(), m);
        check_internal(it != basis_[d].end() && *it == m,
                       "reduction left the normal basis");
        W[static_cast<int>(it - basis_[d].begin())][j] = c;
      }
    }
    auto inv = mat_inverse(W);
    check_internal(inv.has_value(),
                   "h-normal monomials do not form a basis in some degree");
    wond_inv_.push_back(std::move(*inv));
  }
}

std::vector<int> FYAlgebra::hilbert() const {
  std::vector<int> out;
  for (int d = 0; d < std::max(1, rank_); ++d)
    out.push_back(static_cast<int>(basis_[d].size()));
  return out;
}

FYPoly FYAlgebra::reduce_affine(const FYPoly& p) const {
  // Split by degree, drop non-nested supports, row-reduce the rest.
  std::map<int, SVec> vecs;
  for (auto& [m, c] : p) {
    for (auto& [g, e] : m)
      check_arg(is_gen_[g], "unknown_generator",
                "generator " + std::to_string(g) +
                    " is not an induced building-set member");
    int d = fy_degree(m);
    if (d > rank_) continue;  // vanishes: generated in degree one
    auto it = deg_[d].col_of.find(m);
    if (it == deg_[d].col_of.end()) continue;  // non-nested support: in ideal
    vecs[d][it->second] += c;
  }
  FYPoly out;
  for (auto& [d, v] : vecs) {
    SVec r = deg_[d].rows.reduce(v);
    for (auto& [col, c] : r) {
      if (c == 0) continue;
      out[deg_[d].cols[col]] = c;
    }
  }
  return out;
}

FYPoly FYAlgebra::to_x(const FYPoly& h_poly) const {
  FYPoly out;
  for (auto& [m, c] : h_poly) {
    FYPoly term = fy_const(c);
    for (auto& [g, e] : m) {
      FYPoly hg;
      for (Elem gp : gens_)
        if (L_->leq(g, gp)) hg = fy_add(hg, fy_gen(gp));
      for (int t = 0; t < e; ++t) term = fy_mul(term, hg);
    }
    out = fy_add(out, term);
  }
  return out;
}

FYPoly FYAlgebra::to_h(const FYPoly& x_poly) const {
  // x_G = h_G - sum_{G' > G} x_{G'}, substituted top down.
  std::map<Elem, FYPoly> x_in_h;
  std::vector<Elem> order = gens_;
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return L_->rk[a] > L_->rk[b] || (L_->rk[a] == L_->rk[b] && a > b);
  });
  for (Elem g : order) {
    FYPoly v = fy_gen(g);  // h_g in the output alphabet
    for (Elem gp : gens_)
      if (L_->lt(g, gp)) v = fy_add(v, fy_scale(x_in_h.at(gp), Rat(-1)));
    x_in_h[g] = std::move(v);
  }
  FYPoly out;
  for (auto& [m, c] : x_poly) {
    FYPoly term = fy_const(c);
    for (auto& [g, e] : m)
      for (int t = 0; t < e; ++t) term = fy_mul(term, x_in_h.at(g));
    out = fy_add(out, term);
  }
  return out;
}

FYPoly FYAlgebra::reduce(const FYPoly& p, FYPres pres) const {
  switch (pres) {
    case FYPres::affine:
      return reduce_affine(p);
    case FYPres::projective: {
      for (auto& [m, c] : p)
        check_arg(m.find(hi_) == m.end(), "unknown_generator",
                  "the projective presentation excludes the top generator");
      return reduce_affine(p);
    }
    case FYPres::wonderful: {
      FYPoly red = reduce_affine(to_x(p));
      // Re-express each graded piece in the h-normal monomials.
      std::map<int, std::vector<Rat>> coords;
      for (auto& [m, c] : red) {
        int d = fy_degree(m);
        auto& v = coords[d];
        v.resize(basis_[d].size(), Rat(0));
        auto it = std::lower_bound(basis_[d].begin(), basis_[d].end(), m);
        v[static_cast<int>(it - basis_[d].begin())] = c;
      }
      FYPoly out;
      for (auto& [d, v] : coords) {
        const Mat& inv = wond_inv_[d];
        for (std::size_t j = 0; j < basis_[d].size(); ++j) {
          Rat c(0);
          for (std::size_t i = 0; i < v.size(); ++i) c += inv[j][i] * v[i];
          if (c != 0) out[basis_[d][j]] = c;
        }
      }
      return out;
    }
  }
  throw internal_error("unknown presentation");
}

Rat FYAlgebra::top_coefficient(const FYPoly& p) const {
  FYPoly red = reduce_affine(p);
  FYMon top;
  if (rank_ > 1) top[hi_] = rank_ - 1;
  auto it = red.find(top);
  return it == red.end() ? Rat(0) : it->second;
}

PDReport pd_pairing(const FYAlgebra& A) {
  check_arg(A.rank() == 0 ||
                std::find(A.gens().begin(), A.gens().end(), A.hi()) !=
                    A.gens().end(),
            "not_irreducible", "pairing needs an irreducible built interval");
  PDReport rep;
  int r = A.rank();
  int top = std::max(0, r - 1);
  for (int d = 0; d <= top; ++d) {
    const auto& bd = A.basis()[d];
    const auto& bc = A.basis()[top - d];
    Mat M = mat_zero(static_cast<int>(bd.size()),
                     static_cast<int>(bc.size()));
    for (std::size_t i = 0; i < bd.size(); ++i)
      for (std::size_t j = 0; j < bc.size(); ++j)
        M[i][j] = A.top_coefficient(
            fy_mul(FYPoly{{bd[i], Rat(1)}}, FYPoly{{bc[j], Rat(1)}}));
    bool square = bd.size() == bc.size();
    bool invertible =
        square && (bd.empty() || mat_inverse(M).has_value());
    if (!square || !invertible) rep.nondegenerate = false;
    rep.mats.push_back(std::move(M));
  }
  return rep;
}

}  // namespace lbs
