#pragma once

// Exact character theory over a prime field F_p with p = 1 (mod exp(G)) and
// p > 4|G|^2. Irreducible tables are computed Dixon-style from the class-sum
// structure constants: the common eigenvectors of the class matrices are the
// central characters, which normalize to the irreducible rows. Every integer
// quantity the library needs (degrees, fixed-point dimensions, inner
// products) then lifts uniquely from its residue.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ninfty/subgroups.hpp"

namespace ninfty {

enum class CfKind { Permutation, Irreducible, Generic, Virtual };

struct ClassFunction {
  GroupPtr group;
  std::vector<int64_t> vals;  // residue per conjugacy class
  CfKind kind = CfKind::Generic;

  int64_t at_element(int e) const { return vals[group->class_of(e)]; }
};

inline ClassFunction cf_add(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw domain_error("class functions over different groups");
  ClassFunction r{a.group, a.vals, CfKind::Generic};
  int64_t p = a.group->char_modulus();
  for (size_t i = 0; i < r.vals.size(); ++i) r.vals[i] = addmod(r.vals[i], b.vals[i], p);
  return r;
}

inline ClassFunction cf_mul(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw domain_error("class functions over different groups");
  ClassFunction r{a.group, a.vals, CfKind::Generic};
  int64_t p = a.group->char_modulus();
  for (size_t i = 0; i < r.vals.size(); ++i) r.vals[i] = mulmod(r.vals[i], b.vals[i], p);
  return r;
}

// ---------------------------------------------------------------------------
// Dense linear algebra mod p, sized for class counts (tiny matrices).

namespace fpmat {

using Mat = std::vector<std::vector<int64_t>>;  // row major

inline Mat mul(const Mat& a, const Mat& b, int64_t p) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  Mat r(n, std::vector<int64_t>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (size_t j = 0; j < m; ++j)
        r[i][j] = addmod(r[i][j], mulmod(a[i][t], b[t][j], p), p);
    }
  return r;
}

// reduced row echelon form in place; returns pivot columns
inline std::vector<int> rref(Mat& m, int64_t p) {
  std::vector<int> pivots;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    int64_t iv = invmod(m[r][c], p);
    for (size_t j = c; j < cols; ++j) m[r][j] = mulmod(m[r][j], iv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      int64_t f = m[i][c];
      for (size_t j = c; j < cols; ++j)
        m[i][j] = submod(m[i][j], mulmod(f, m[r][j], p), p);
    }
    pivots.push_back(int(c));
    ++r;
  }
  return pivots;
}

// nullspace basis (columns) of an n x m matrix
inline Mat nullspace(Mat m, int64_t p) {
  size_t cols = m.empty() ? 0 : m[0].size();
  auto pivots = rref(m, p);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  Mat basis;  // each row of `basis` is one nullspace vector (length cols)
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<int64_t> v(cols, 0);
    v[free_c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = submod(0, m[r][free_c], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// monic characteristic polynomial coefficients c[0..m] with c[m] = 1
// (Faddeev-LeVerrier; divisions by 1..m are fine since p > m)
inline std::vector<int64_t> char_poly(const Mat& a, int64_t p) {
  size_t m = a.size();
  Mat mk(m, std::vector<int64_t>(m, 0));  // starts as zero; iterate
  std::vector<int64_t> c(m + 1, 0);
  c[m] = 1;
  Mat acc = a;
  // c_{m-k} = -(1/k) tr(A * M_k) with M_1 = I, M_{k+1} = A M_k + c_{m-k} I
  for (size_t i = 0; i < m; ++i) mk[i][i] = 1;
  for (size_t k = 1; k <= m; ++k) {
    Mat am = mul(a, mk, p);
    int64_t tr = 0;
    for (size_t i = 0; i < m; ++i) tr = addmod(tr, am[i][i], p);
    int64_t ck = mulmod(submod(0, tr, p), invmod(int64_t(k), p), p);
    c[m - k] = ck;
    mk = am;
    for (size_t i = 0; i < m; ++i) mk[i][i] = addmod(mk[i][i], ck, p);
  }
  return c;
}

inline int64_t eval_poly(const std::vector<int64_t>& c, int64_t x, int64_t p) {
  int64_t r = 0;
  for (size_t i = c.size(); i-- > 0;) r = addmod(mulmod(r, x, p), c[i], p);
  return r;
}

}  // namespace fpmat

// ---------------------------------------------------------------------------
// Character table

struct CharacterTable {
  GroupPtr group;
  int64_t p;
  std::vector<ClassFunction> irr;  // irr[0] = trivial character
  std::vector<int64_t> degrees;    // lifted integers
  std::vector<int> conj_pair;      // index of the complex conjugate

  int count() const { return int(irr.size()); }
  int trivial_index() const { return 0; }
};

using TablePtr = std::shared_ptr<const CharacterTable>;

// round-trip safe lift of a residue known to be an integer in [0, bound]
inline int64_t lift_residue(int64_t r, int64_t bound, int64_t /*p*/,
                            const char* what) {
  if (r <= bound) return r;
  throw domain_error(std::string("lift out of range in ") + what);
}

inline int64_t cf_inner(const ClassFunction& a, const ClassFunction& b) {
  if (a.group != b.group) throw domain_error("inner: different groups");
  const auto& g = *a.group;
  int64_t p = g.char_modulus(), sum = 0;
  for (int c = 0; c < g.num_classes(); ++c) {
    int64_t term = mulmod(a.vals[c], b.vals[g.inverse_class(c)], p);
    sum = addmod(sum, mulmod(term, int64_t(g.class_members(c).size()), p), p);
  }
  return mulmod(sum, invmod(g.order(), p), p);
}

namespace detail {

inline TablePtr compute_character_table(const GroupPtr& g) {
  if (g->order() > 2048)
    throw resource_error("character table: group order too large");
  const int k = g->num_classes();
  const int64_t p = g->char_modulus();

  // structure constants: class_sum_i * class_sum_j = sum_k a[i](j,k) class_sum_k
  // A_i acts on the omega-vector by A_i w = omega_i w, (A_i)[j][t] = a_{ijt}
  std::vector<fpmat::Mat> A(k, fpmat::Mat(k, std::vector<int64_t>(k, 0)));
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < k; ++t) {
      int zt = g->class_rep(t);
      for (int x : g->class_members(i)) {
        int y = g->mul(g->inv(x), zt);
        A[i][g->class_of(y)][t]++;
      }
    }

  // split the common eigenspaces; a subspace is a list of basis vectors
  using Basis = std::vector<std::vector<int64_t>>;  // rows are basis vectors
  std::vector<Basis> spaces;
  {
    Basis full(k, std::vector<int64_t>(k, 0));
    for (int i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (int i = 1; i < k; ++i) {
    std::vector<Basis> next;
    for (auto& sp : spaces) {
      const int m = int(sp.size());
      if (m == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      // restriction R of A_i to the subspace: A_i * B^T = B^T * R
      // build matrix with subspace vectors as columns
      fpmat::Mat bcols(k, std::vector<int64_t>(m));
      for (int c = 0; c < m; ++c)
        for (int r = 0; r < k; ++r) bcols[r][c] = sp[c][r];
      fpmat::Mat ab = fpmat::mul(A[i], bcols, p);
      // solve bcols * R = ab by row reduction of [bcols | ab]
      fpmat::Mat aug(k, std::vector<int64_t>(2 * m));
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < m; ++c) aug[r][c] = bcols[r][c];
        for (int c = 0; c < m; ++c) aug[r][m + c] = ab[r][c];
      }
      fpmat::rref(aug, p);
      fpmat::Mat rmat(m, std::vector<int64_t>(m));
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) rmat[r][c] = aug[r][m + c];

      auto poly = fpmat::char_poly(rmat, p);
      for (int64_t lam = 0; lam < p; ++lam) {
        if (fpmat::eval_poly(poly, lam, p) != 0) continue;
        fpmat::Mat shifted = rmat;
        for (int d = 0; d < m; ++d)
          shifted[d][d] = submod(shifted[d][d], lam, p);
        auto null_rows = fpmat::nullspace(shifted, p);
        if (null_rows.empty()) continue;
        Basis eig;
        for (auto& x : null_rows) {
          std::vector<int64_t> v(k, 0);
          for (int c = 0; c < m; ++c) {
            if (!x[c]) continue;
            for (int r = 0; r < k; ++r)
              v[r] = addmod(v[r], mulmod(x[c], sp[c][r], p), p);
          }
          eig.push_back(std::move(v));
        }
        next.push_back(std::move(eig));
      }
    }
    spaces = std::move(next);
  }
  if ((int)spaces.size() != k)
    throw domain_error("character table: eigenspace splitting incomplete");

  // normalize each eigenvector to an irreducible character row
  auto table = std::make_shared<CharacterTable>();
  table->group = g;
  table->p = p;
  std::vector<std::vector<int64_t>> rows;
  for (auto& sp : spaces) {
    const auto& w = sp[0];
    int piv = 0;
    while (piv < k && w[piv] == 0) ++piv;
    std::vector<int64_t> omega(k);
    for (int i = 0; i < k; ++i) {
      int64_t dot = 0;  // (A_i w)[piv]
      for (int t = 0; t < k; ++t)
        dot = addmod(dot, mulmod(A[i][piv][t] % p, w[t], p), p);
      omega[i] = mulmod(dot, invmod(w[piv], p), p);
    }
    int64_t s = 0;
    for (int i = 0; i < k; ++i) {
      int64_t term = mulmod(omega[i], omega[g->inverse_class(i)], p);
      s = addmod(s, mulmod(term, invmod(int64_t(g->class_members(i).size()), p), p), p);
    }
    int64_t d2 = mulmod(g->order() % p, invmod(s, p), p);
    int64_t d = sqrtmod(d2, p);
    if (d > g->order()) d = p - d;
    std::vector<int64_t> chi(k);
    for (int i = 0; i < k; ++i)
      chi[i] = mulmod(mulmod(d, omega[i], p),
                      invmod(int64_t(g->class_members(i).size()), p), p);
    rows.push_back(std::move(chi));
  }

  // canonical order: trivial first, then by (degree, residue tuple)
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    bool ta = std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 1; });
    bool tb = std::all_of(b.begin(), b.end(), [](int64_t v) { return v == 1; });
    if (ta != tb) return ta;
    if (a[0] != b[0]) return a[0] < b[0];
    return a < b;
  });

  int64_t deg_sq = 0;
  for (auto& chi : rows) {
    int64_t d = lift_residue(chi[0], g->order(), p, "character degree");
    table->degrees.push_back(d);
    deg_sq += d * d;
    table->irr.push_back({g, chi, CfKind::Irreducible});
  }
  if (deg_sq != g->order())
    throw domain_error("character table: degree check failed");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (lift_residue(cf_inner(table->irr[i], table->irr[j]), 1, p,
                       "orthogonality") != (i == j ? 1 : 0))
        throw domain_error("character table: orthogonality failed");

  table->conj_pair.resize(k);
  for (int i = 0; i < k; ++i) {
    std::vector<int64_t> conj(k);
    for (int c = 0; c < k; ++c) conj[c] = rows[i][g->inverse_class(c)];
    int found = -1;
    for (int j = 0; j < k; ++j)
      if (rows[j] == conj) found = j;
    if (found < 0) throw domain_error("character table: conjugate row missing");
    table->conj_pair[i] = found;
  }
  return table;
}

}  // namespace detail

inline TablePtr character_table(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, TablePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.get());
  if (it != cache.end()) return it->second;
  auto t = detail::compute_character_table(g);
  cache.emplace(g.get(), t);
  return t;
}

// ---------------------------------------------------------------------------
// Class-function operations

inline ClassFunction trivial_character(const GroupPtr& g) {
  return {g, std::vector<int64_t>(g->num_classes(), 1), CfKind::Irreducible};
}

inline ClassFunction regular_character(const GroupPtr& g) {
  std::vector<int64_t> v(g->num_classes(), 0);
  v[0] = g->order() % g->char_modulus();
  return {g, v, CfKind::Permutation};
}

// number of points of T fixed by each class
template <typename GSetT>
inline ClassFunction permutation_character(const GSetT& t) {
  ClassFunction cf{t.group, std::vector<int64_t>(t.group->num_classes(), 0),
                   CfKind::Permutation};
  for (int c = 0; c < t.group->num_classes(); ++c) {
    int rep = t.group->class_rep(c);
    int64_t fixed = 0;
    for (int pt = 0; pt < t.n; ++pt)
      if (t.act[rep][pt] == pt) ++fixed;
    cf.vals[c] = fixed % t.group->char_modulus();
  }
  return cf;
}

// (1/|H|) sum over H of chi(h), lifted into [0, chi(e)]
inline int64_t fixed_dim(const ClassFunction& chi, const Subgroup& h) {
  if (chi.kind == CfKind::Virtual) throw domain_error("fixed_dim: virtual character");
  if (h.parent != chi.group) throw domain_error("fixed_dim: subgroup of another group");
  const auto& g = *chi.group;
  int64_t p = g.char_modulus(), sum = 0;
  for (int m : h.members) sum = addmod(sum, chi.at_element(m), p);
  sum = mulmod(sum, invmod(h.order(), p), p);
  int64_t deg = lift_residue(chi.vals[0], (p - 1) / 2, p, "fixed_dim degree");
  return lift_residue(sum, deg, p, "fixed_dim");
}

inline ClassFunction restrict_cf(const ClassFunction& chi, const Subgroup& h) {
  if (h.parent != chi.group) throw domain_error("restrict: subgroup of another group");
  const auto& sg = subgroup_group(h);
  const auto& child = *sg.group;
  ClassFunction out{sg.group, std::vector<int64_t>(child.num_classes()), chi.kind};
  if (chi.kind == CfKind::Irreducible) out.kind = CfKind::Generic;
  for (int c = 0; c < child.num_classes(); ++c)
    out.vals[c] = chi.at_element(sg.to_parent[child.class_rep(c)]);
  return out;
}

inline ClassFunction induce_cf(const Subgroup& from, const Subgroup& up_to,
                               const ClassFunction& chi) {
  if (from.parent != up_to.parent)
    throw domain_error("induce: subgroups of different groups");
  for (int m : from.members)
    if (!up_to.contains(m)) throw domain_error("induce: containment violated");
  const auto& fg = subgroup_group(from);
  if (chi.group != fg.group) throw domain_error("induce: character over wrong group");
  const auto& tg = subgroup_group(up_to);
  const auto& child = *tg.group;
  const auto& parent = *from.parent;
  int64_t p = parent.char_modulus();

  ClassFunction out{tg.group, std::vector<int64_t>(child.num_classes(), 0),
                    CfKind::Generic};
  int64_t inv_from = invmod(from.order(), p);
  for (int c = 0; c < child.num_classes(); ++c) {
    int t_parent = tg.to_parent[child.class_rep(c)];
    int64_t sum = 0;
    for (int m : up_to.members) {
      int y = parent.conj(parent.inv(m), t_parent);
      int y_child = fg.from_parent[y];
      if (y_child >= 0)
        sum = addmod(sum, chi.vals[fg.group->class_of(y_child)], p);
    }
    out.vals[c] = mulmod(sum, inv_from, p);
  }
  if (chi.kind == CfKind::Permutation) out.kind = CfKind::Permutation;
  return out;
}

// support of a genuine character in the irreducible basis
inline Bits constituents(const ClassFunction& chi) {
  auto table = character_table(chi.group);
  Bits out(table->count());
  int64_t p = chi.group->char_modulus();
  // a genuine character's dimension lifts from the half-prime window; every
  // multiplicity is then bounded by the dimension
  int64_t dim = lift_residue(chi.vals[0], (p - 1) / 2, p, "character dimension");
  for (int i = 0; i < table->count(); ++i) {
    int64_t m = lift_residue(cf_inner(chi, table->irr[i]), dim, p, "multiplicity");
    if (m > 0) out.set(i);
  }
  return out;
}

// every constituent of alpha also appears in beta
inline bool constituents_contained(const ClassFunction& alpha,
                                   const ClassFunction& beta) {
  if (alpha.group != beta.group)
    throw domain_error("constituents_contained: different groups");
  return constituents(alpha).subset_of(constituents(beta));
}

}  // namespace ninfty
