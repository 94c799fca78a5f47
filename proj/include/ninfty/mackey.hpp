#pragma once

// The Burnside-ring shadow of an indexing system: levelwise Burnside rings
// A(H) with restrictions everywhere, transfers exactly along admissible pairs,
// and multiplicative norms (coinduction of sets) along admissible pairs.
// The verification suites check the double coset formula, its multiplicative
// analogue, and Frobenius reciprocity as exact integer / G-set identities.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ninfty/operads.hpp"

namespace ninfty {

using IntMat = std::vector<std::vector<int64_t>>;  // row major

struct MackeyLevel {
  Subgroup sub;
  GroupPtr child;
  LatticePtr clat;
  int basis_size = 0;  // conjugacy classes of subgroups of the level
};

struct BurnsideMackey {
  GroupPtr group;
  IndexingSystem system;
  LatticePtr lat;
  std::vector<MackeyLevel> levels;  // per lattice index

  // res[(h,k)] for k <= h: matrix basis(K) x basis(H)
  std::map<std::pair<int, int>, IntMat> res;
  // tr[(h,k)] only for admissible pairs: matrix basis(H) x basis(K)
  std::map<std::pair<int, int>, IntMat> tr;
  // norm[(h,k)] only for admissible pairs: per K-basis element, an H-basis
  // decomposition of the coinduced set (norms are not additive)
  std::map<std::pair<int, int>, std::vector<std::vector<int64_t>>> norm;
  // mult[h][i][j]: product of basis orbits i and j in A(H)
  std::vector<std::vector<std::vector<std::vector<int64_t>>>> mult_;

  bool admissible(int h, int k) const { return system.pairs.has(h, k); }

  const IntMat& transfer(int h, int k) const {
    auto it = tr.find({h, k});
    if (it == tr.end())
      throw domain_error("transfer not available: pair (H" + std::to_string(h) +
                         ",H" + std::to_string(k) + ") is not admissible");
    return it->second;
  }
  const std::vector<std::vector<int64_t>>& norm_map(int h, int k) const {
    auto it = norm.find({h, k});
    if (it == norm.end())
      throw domain_error("norm not available: pair (H" + std::to_string(h) +
                         ",H" + std::to_string(k) + ") is not admissible");
    return it->second;
  }
};

namespace detail {

// decompose a set over the level's child group into basis coordinates
inline std::vector<int64_t> decompose(const MackeyLevel& lv, const GSet& t) {
  if (t.group != lv.child) throw domain_error("decompose: wrong group");
  std::vector<int64_t> out(lv.basis_size, 0);
  for (const auto& orb : orbits_of(t))
    out[lv.clat->class_of[lv.clat->index_of_members(orb.stabilizer.members)]]++;
  return out;
}

inline GSet basis_orbit(const MackeyLevel& lv, int i) {
  return orbit_gset(lv.clat->subgroups[lv.clat->class_rep(i)]);
}

}  // namespace detail

inline BurnsideMackey build_burnside(const GroupPtr& g, IndexingSystem a) {
  if (a.lattice()->group != g) throw domain_error("build_burnside: wrong group");
  BurnsideMackey m;
  m.group = g;
  m.lat = a.lattice();
  m.system = std::move(a);
  const auto& lat = *m.lat;

  for (int h = 0; h < lat.count(); ++h) {
    MackeyLevel lv;
    lv.sub = lat.subgroups[h];
    lv.child = subgroup_group(lv.sub).group;
    lv.clat = subgroup_lattice(lv.child);
    lv.basis_size = int(lv.clat->classes.size());
    m.levels.push_back(std::move(lv));
  }

  for (int h = 0; h < lat.count(); ++h) {
    const auto& lvh = m.levels[h];
    const auto& hsg = subgroup_group(lvh.sub);

    // multiplication table of A(H)
    std::vector<std::vector<std::vector<int64_t>>> mt(lvh.basis_size);
    for (int i = 0; i < lvh.basis_size; ++i) {
      auto oi = detail::basis_orbit(lvh, i);
      for (int j = 0; j < lvh.basis_size; ++j)
        mt[i].push_back(
            detail::decompose(lvh, product_gset(oi, detail::basis_orbit(lvh, j))));
    }
    m.mult_.push_back(std::move(mt));

    for (int k = lat.geq[h].first(); k >= 0; k = lat.geq[h].next(k)) {
      const auto& lvk = m.levels[k];
      Subgroup k_in_h = lower_subgroup(hsg, lvk.sub);

      // restriction A(H) -> A(K)
      IntMat rm(lvk.basis_size, std::vector<int64_t>(lvh.basis_size, 0));
      for (int j = 0; j < lvh.basis_size; ++j) {
        auto r = restrict_gset(detail::basis_orbit(lvh, j), k_in_h);
        auto coords = detail::decompose(lvk, r);
        for (int i = 0; i < lvk.basis_size; ++i) rm[i][j] = coords[i];
      }
      m.res[{h, k}] = std::move(rm);

      if (!m.system.pairs.has(h, k)) continue;

      // transfer A(K) -> A(H): induction of orbits, [K/L] -> [H/L]
      IntMat tm(lvh.basis_size, std::vector<int64_t>(lvk.basis_size, 0));
      std::vector<std::vector<int64_t>> nm;
      for (int j = 0; j < lvk.basis_size; ++j) {
        auto x = detail::basis_orbit(lvk, j);
        auto ind = induce_gset(lvk.sub, lvh.sub, x);
        auto coords = detail::decompose(lvh, ind);
        for (int i = 0; i < lvh.basis_size; ++i) tm[i][j] = coords[i];
        nm.push_back(detail::decompose(
            lvh, coinduce_gset(lvk.sub, lvh.sub, x)));
      }
      m.tr[{h, k}] = std::move(tm);
      m.norm[{h, k}] = std::move(nm);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Verification reports

struct MackeyReport {
  std::string check;
  bool ok = true;
  long long verified = 0;
  std::vector<std::string> failures;

  void fail(const std::string& msg) {
    ok = false;
    if (failures.size() < 16) failures.push_back(msg);
  }
};

namespace detail {

inline IntMat mat_mul_int(const IntMat& a, const IntMat& b) {
  IntMat r(a.size(), std::vector<int64_t>(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t t = 0; t < b.size(); ++t)
      if (a[i][t])
        for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

inline IntMat mat_add_int(IntMat a, const IntMat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

// basis-permutation matrix of the conjugation isomorphism A(J1) -> A(J2)
// where J2 = x J1 x^-1
inline IntMat conj_iso(const BurnsideMackey& m, int j1, int j2, int x) {
  const auto& lv1 = m.levels[j1];
  const auto& lv2 = m.levels[j2];
  const auto& g = *m.group;
  IntMat c(lv2.basis_size, std::vector<int64_t>(lv1.basis_size, 0));
  for (int b = 0; b < lv1.basis_size; ++b) {
    const auto& s = lv1.clat->subgroups[lv1.clat->class_rep(b)];
    auto s_parent = lift_subgroup(subgroup_group(lv1.sub), s, m.group);
    std::vector<int> conj_members;
    for (int e : s_parent.members) conj_members.push_back(g.conj(x, e));
    std::sort(conj_members.begin(), conj_members.end());
    auto lowered = lower_subgroup(subgroup_group(lv2.sub),
                                  Subgroup{m.group, conj_members});
    c[lv2.clat->class_of[lv2.clat->index_of_members(lowered.members)]][b] = 1;
  }
  return c;
}

// transport a set over level j1's child to level j2's child along conj by x
inline GSet conj_transport(const BurnsideMackey& m, int j1, int j2, int x,
                           const GSet& t) {
  const auto& sg1 = subgroup_group(m.levels[j1].sub);
  const auto& sg2 = subgroup_group(m.levels[j2].sub);
  const auto& g = *m.group;
  GSet out;
  out.group = sg2.group;
  out.n = t.n;
  out.act.resize(sg2.group->order());
  for (int c2 = 0; c2 < sg2.group->order(); ++c2) {
    int back = g.conj(g.inv(x), sg2.to_parent[c2]);
    out.act[c2] = t.act[sg1.from_parent[back]];
  }
  return out;
}

}  // namespace detail

// res^H_{K'} tr^H_K = sum over K'\H/K of tr c_g res, as exact matrices
inline MackeyReport verify_double_coset(const BurnsideMackey& m) {
  MackeyReport rep;
  rep.check = "double_coset";
  const auto& lat = *m.lat;
  for (int h = 0; h < lat.count(); ++h) {
    const auto& hsg = subgroup_group(m.levels[h].sub);
    for (int k = m.system.pairs.rows[h].first(); k >= 0;
         k = m.system.pairs.rows[h].next(k)) {
      for (int kp = lat.geq[h].first(); kp >= 0; kp = lat.geq[h].next(kp)) {
        IntMat lhs = detail::mat_mul_int(m.res.at({h, kp}), m.transfer(h, k));
        IntMat rhs(m.levels[kp].basis_size,
                   std::vector<int64_t>(m.levels[k].basis_size, 0));
        auto dcs = double_cosets(lower_subgroup(hsg, m.levels[kp].sub),
                                 lower_subgroup(hsg, m.levels[k].sub));
        for (const auto& dc : dcs) {
          int x = hsg.to_parent[dc.rep];
          // J2 = K' ∩ xKx⁻¹ inside H; J1 = x⁻¹K'x ∩ K
          int kx = lat.conj_sub[x][k];
          int j2 = lat.meet(kp, kx);
          int j1 = lat.conj_sub[m.group->inv(x)][j2];
          if (!m.system.pairs.has(kp, j2)) {
            rep.fail("component transfer missing at (" + std::to_string(kp) +
                     "," + std::to_string(j2) + ")");
            continue;
          }
          rhs = detail::mat_add_int(
              rhs, detail::mat_mul_int(
                       m.transfer(kp, j2),
                       detail::mat_mul_int(detail::conj_iso(m, j1, j2, x),
                                           m.res.at({k, j1}))));
        }
        ++rep.verified;
        if (lhs != rhs)
          rep.fail("double coset formula failed at H=H" + std::to_string(h) +
                   " K=H" + std::to_string(k) + " K'=H" + std::to_string(kp));
      }
    }
  }
  return rep;
}

// restriction of a norm = product over double cosets of norms of restrictions,
// as an isomorphism of explicit sets, on basis orbits and small sets
inline MackeyReport verify_multiplicative_double_coset(const BurnsideMackey& m,
                                                       int max_test_size = 3) {
  MackeyReport rep;
  rep.check = "multiplicative_double_coset";
  const auto& lat = *m.lat;
  for (int h = 0; h < lat.count(); ++h) {
    const auto& hsg = subgroup_group(m.levels[h].sub);
    for (int k = m.system.pairs.rows[h].first(); k >= 0;
         k = m.system.pairs.rows[h].next(k)) {
      const auto& lvk = m.levels[k];

      // test sets: K-sets of size <= max_test_size (multisets of orbits)
      std::vector<GSet> tests;
      {
        std::vector<GSet> small_orbits;
        for (int b = 0; b < lvk.basis_size; ++b) {
          auto orb = detail::basis_orbit(lvk, b);
          if (orb.n <= max_test_size) small_orbits.push_back(orb);
          else tests.push_back(orb);  // basis orbits always included
        }
        std::function<void(size_t, const GSet&)> grow = [&](size_t at,
                                                            const GSet& cur) {
          if (cur.n > 0) tests.push_back(cur);
          for (size_t i = at; i < small_orbits.size(); ++i)
            if (cur.n + small_orbits[i].n <= max_test_size)
              grow(i, disjoint_union(cur, small_orbits[i]));
        };
        grow(0, empty_gset(lvk.child));
      }

      for (int kp = lat.geq[h].first(); kp >= 0; kp = lat.geq[h].next(kp)) {
        auto kp_in_h = lower_subgroup(hsg, m.levels[kp].sub);
        auto dcs = double_cosets(kp_in_h, lower_subgroup(hsg, lvk.sub));
        for (const auto& x_set : tests) {
          // guard against pathological blowups
          int64_t lhs_size = 1;
          for (int c = 0; c < m.levels[h].sub.order() / lvk.sub.order(); ++c) {
            lhs_size *= std::max(1, x_set.n);
            if (lhs_size > 500000) break;
          }
          if (lhs_size > 500000) continue;

          auto lhs = restrict_gset(
              coinduce_gset(lvk.sub, m.levels[h].sub, x_set), kp_in_h);

          GSet rhs = trivial_gset(m.levels[kp].child, 1);
          for (const auto& dc : dcs) {
            int x = hsg.to_parent[dc.rep];
            int kx = lat.conj_sub[x][k];
            int j2 = lat.meet(kp, kx);
            int j1 = lat.conj_sub[m.group->inv(x)][j2];
            const auto& sg_k = subgroup_group(lvk.sub);
            auto res_piece =
                restrict_gset(x_set, lower_subgroup(sg_k, m.levels[j1].sub));
            auto moved = detail::conj_transport(m, j1, j2, x, res_piece);
            rhs = product_gset(
                rhs, coinduce_gset(m.levels[j2].sub, m.levels[kp].sub, moved));
          }
          ++rep.verified;
          if (!gsets_isomorphic(lhs, rhs))
            rep.fail("multiplicative formula failed at H=H" + std::to_string(h) +
                     " K=H" + std::to_string(k) + " K'=H" + std::to_string(kp));
        }
      }
    }
  }
  return rep;
}

// tr(res(a) * b) = a * tr(b) for basis elements, exact in A(H)
inline MackeyReport frobenius_check(const BurnsideMackey& m) {
  MackeyReport rep;
  rep.check = "frobenius";
  const auto& lat = *m.lat;
  auto mul_vec = [&](int level, const std::vector<int64_t>& v, int basis_j) {
    std::vector<int64_t> out(m.levels[level].basis_size, 0);
    for (int i = 0; i < (int)v.size(); ++i) {
      if (!v[i]) continue;
      const auto& prod = m.mult_[level][i][basis_j];
      for (size_t t = 0; t < prod.size(); ++t) out[t] += v[i] * prod[t];
    }
    return out;
  };
  for (int h = 0; h < lat.count(); ++h) {
    for (int k = m.system.pairs.rows[h].first(); k >= 0;
         k = m.system.pairs.rows[h].next(k)) {
      const auto& rm = m.res.at({h, k});
      const auto& tm = m.transfer(h, k);
      for (int a = 0; a < m.levels[h].basis_size; ++a) {
        // res(a), as a vector over basis(K)
        std::vector<int64_t> res_a(m.levels[k].basis_size);
        for (int i = 0; i < (int)res_a.size(); ++i) res_a[i] = rm[i][a];
        for (int b = 0; b < m.levels[k].basis_size; ++b) {
          auto prod = mul_vec(k, res_a, b);  // res(a) * b in A(K)
          std::vector<int64_t> lhs(m.levels[h].basis_size, 0);
          for (int i = 0; i < (int)prod.size(); ++i)
            if (prod[i])
              for (int t = 0; t < m.levels[h].basis_size; ++t)
                lhs[t] += prod[i] * tm[t][i];
          // rhs: a * tr(b)
          std::vector<int64_t> tr_b(m.levels[h].basis_size);
          for (int t = 0; t < (int)tr_b.size(); ++t) tr_b[t] = tm[t][b];
          auto rhs = mul_vec(h, tr_b, a);
          ++rep.verified;
          if (lhs != rhs)
            rep.fail("frobenius failed at H=H" + std::to_string(h) + " K=H" +
                     std::to_string(k) + " a=" + std::to_string(a) +
                     " b=" + std::to_string(b));
        }
      }
    }
  }
  return rep;
}

}  // namespace ninfty
