#pragma once

// Finite groups as permutation groups with a full multiplication table.
// The element list is canonical (lexicographic on images), so index 0 is
// always the identity and every derived structure is reproducible.
// Groups are interned by value: building the same element set (with the same
// working prime) twice yields the same shared object, which keeps caches and
// pointer-identity checks coherent across the library.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "ninfty/perm.hpp"
#include "ninfty/util.hpp"

namespace ninfty {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline int64_t default_order_bound() {
  if (const char* env = std::getenv("NINFTY_ORDER_BOUND")) {
    int64_t v = std::atoll(env);
    if (v > 0) return v;
  }
  return 10000;
}

class FiniteGroup {
public:
  // elems must be the full, closed, duplicate-free element set.
  FiniteGroup(int degree, std::vector<Perm> elems, const std::vector<Perm>& gens,
              std::string name, int64_t char_mod)
      : degree_(degree), name_(std::move(name)), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    build_tables();
    for (const auto& g : gens) gen_idx_.push_back(index_of(g));
    std::sort(gen_idx_.begin(), gen_idx_.end());
    gen_idx_.erase(std::unique(gen_idx_.begin(), gen_idx_.end()), gen_idx_.end());
    if (gen_idx_.empty() || (gen_idx_.size() == 1 && gen_idx_[0] == 0 && order() > 1))
      throw domain_error("group: generator list does not generate");
    char_mod_ = char_mod ? char_mod : pick_prime(order(), exponent_);
  }

  static int64_t pick_prime(int64_t order, int64_t exponent) {
    // p = 1 (mod exponent) and p > 4*order^2 keeps every lifted quantity
    // (degrees, fixed dims, multiplicities) in a unique residue window
    int64_t lo = 4 * order * order;
    int64_t p = (lo / exponent + 1) * exponent + 1;
    while (!is_prime(p)) p += exponent;
    return p;
  }

  int degree() const { return degree_; }
  int order() const { return int(elems_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<Perm>& elements() const { return elems_; }
  const Perm& element(int i) const { return elems_[i]; }
  const std::vector<int>& generator_indices() const { return gen_idx_; }

  int mul(int a, int b) const { return mul_[size_t(a) * order() + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1

  int index_of(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    if (it == elems_.end() || *it != p)
      throw domain_error("permutation is not a group element");
    return int(it - elems_.begin());
  }
  bool contains_perm(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    return it != elems_.end() && *it == p;
  }

  int element_order(int a) const { return elem_order_[a]; }
  int exponent() const { return exponent_; }
  int64_t char_modulus() const { return char_mod_; }

  // element conjugacy classes, ordered by least member; class 0 = {identity}
  int num_classes() const { return int(classes_.size()); }
  int class_of(int a) const { return cls_of_[a]; }
  const std::vector<int>& class_members(int c) const { return classes_[c]; }
  int class_rep(int c) const { return classes_[c].front(); }
  int inverse_class(int c) const { return cls_inv_[c]; }

private:
  void build_tables() {
    const int n = order();
    if (n == 0) throw domain_error("empty element set");
    mul_.resize(size_t(n) * n);
    inv_.resize(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Perm prod = perm_mul(elems_[a], elems_[b]);
        auto it = std::lower_bound(elems_.begin(), elems_.end(), prod);
        if (it == elems_.end() || *it != prod)
          throw domain_error("element set is not closed");
        mul_[size_t(a) * n + b] = uint32_t(it - elems_.begin());
      }
    }
    if (elems_[0] != perm_identity(degree_))
      throw domain_error("identity missing from element set");
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (mul(a, b) == 0) {
          inv_[a] = b;
          break;
        }
    }
    elem_order_.assign(n, 1);
    exponent_ = 1;
    for (int a = 0; a < n; ++a) {
      int k = 1, x = a;
      while (x != 0) {
        x = mul(x, a);
        ++k;
      }
      elem_order_[a] = k;
      exponent_ = int(lcm64(exponent_, k));
    }
    cls_of_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      if (cls_of_[a] >= 0) continue;
      int c = int(classes_.size());
      std::vector<int> members;
      for (int g = 0; g < n; ++g) {
        int y = conj(g, a);
        if (cls_of_[y] < 0) {
          cls_of_[y] = c;
          members.push_back(y);
        }
      }
      std::sort(members.begin(), members.end());
      classes_.push_back(std::move(members));
    }
    cls_inv_.resize(classes_.size());
    for (size_t c = 0; c < classes_.size(); ++c)
      cls_inv_[c] = cls_of_[inv_[classes_[c][0]]];
  }

  int degree_;
  std::string name_;
  std::vector<Perm> elems_;
  std::vector<int> gen_idx_;
  std::vector<uint32_t> mul_;
  std::vector<int> inv_;
  std::vector<int> elem_order_;
  int exponent_;
  int64_t char_mod_;
  std::vector<int> cls_of_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> cls_inv_;
};

namespace detail {

inline int perm_order(const Perm& p) {
  int64_t ord = 1;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = p[j];
      ++len;
    }
    ord = lcm64(ord, len);
  }
  return int(ord);
}

struct InternKey {
  int64_t mod;
  int degree;
  std::vector<Perm> elems;  // sorted
  bool operator<(const InternKey& o) const {
    if (mod != o.mod) return mod < o.mod;
    if (degree != o.degree) return degree < o.degree;
    return elems < o.elems;
  }
};

// Global intern table: one FiniteGroup object per (prime, element set).
inline GroupPtr intern_group(std::vector<Perm> sorted_elems, int degree,
                             const std::vector<Perm>& gens, std::string name,
                             int64_t char_mod) {
  static std::mutex mu;
  static std::map<InternKey, GroupPtr> cache;
  if (!char_mod) {
    int64_t exponent = 1;
    for (const auto& p : sorted_elems)
      exponent = lcm64(exponent, perm_order(p));
    char_mod = FiniteGroup::pick_prime(int64_t(sorted_elems.size()), exponent);
  }
  InternKey key{char_mod, degree, sorted_elems};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto g = std::make_shared<FiniteGroup>(degree, std::move(sorted_elems), gens,
                                         std::move(name), char_mod);
  cache.emplace(std::move(key), g);
  return g;
}

}  // namespace detail

inline GroupPtr make_group(std::vector<Perm> gens, std::string name,
                           int64_t inherited_mod = 0,
                           int64_t order_bound = default_order_bound()) {
  int degree = 1;
  for (auto& g : gens) degree = std::max<int>(degree, int(g.size()));
  for (auto& g : gens) {
    g = perm_pad(g, degree);
    if (!perm_valid(g)) throw usage_error("generator is not a permutation");
  }
  // breadth-first closure
  std::set<Perm> seen;
  std::vector<Perm> queue{perm_identity(degree)};
  seen.insert(queue[0]);
  for (size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      Perm prod = perm_mul(queue[head], g);
      if (seen.insert(prod).second) {
        queue.push_back(std::move(prod));
        if ((int64_t)queue.size() > order_bound)
          throw resource_error("group order exceeds bound " +
                               std::to_string(order_bound));
      }
    }
  }
  std::vector<Perm> elems(seen.begin(), seen.end());
  if (gens.empty()) gens.push_back(perm_identity(degree));
  return detail::intern_group(std::move(elems), degree, gens, std::move(name),
                              inherited_mod);
}

// ---------------------------------------------------------------------------
// Group spec grammar: C<n>, D<2n>, S<n>, A<n>, Q8, C<n>xC<m>,
// or perm:<cycles>,<cycles>,...

namespace detail {

inline Perm rot_cycle(int n, int offset = 0) {
  Perm p = perm_identity(offset + n);
  for (int i = 0; i < n; ++i) p[offset + i] = offset + (i + 1) % n;
  return p;
}

inline int parse_positive(const std::string& s, size_t from, size_t to) {
  if (from >= to) throw usage_error("bad group spec");
  int v = 0;
  for (size_t i = from; i < to; ++i) {
    if (!std::isdigit((unsigned char)s[i])) throw usage_error("bad group spec: " + s);
    v = v * 10 + (s[i] - '0');
  }
  if (v < 1) throw usage_error("bad group spec: " + s);
  return v;
}

}  // namespace detail

inline GroupPtr construct_group(const std::string& spec,
                                int64_t order_bound = default_order_bound()) {
  using detail::parse_positive;
  if (spec.rfind("perm:", 0) == 0) {
    std::string body = spec.substr(5);
    std::vector<Perm> gens;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '(') ++depth;
      if (i < body.size() && body[i] == ')') --depth;
      if (i == body.size() || (body[i] == ',' && depth == 0)) {
        std::string tok = body.substr(start, i - start);
        if (tok.find_first_not_of(" \t") != std::string::npos)
          gens.push_back(parse_cycles(tok));
        start = i + 1;
      }
    }
    if (gens.empty()) throw usage_error("perm spec needs generators: " + spec);
    int deg = 0;
    for (auto& g : gens) deg = std::max(deg, int(g.size()));
    for (auto& g : gens) g = perm_pad(g, deg);
    return make_group(std::move(gens), spec, 0, order_bound);
  }
  size_t x = spec.find('x');
  if (x != std::string::npos) {
    if (spec.size() < 4 || spec[0] != 'C' || x + 1 >= spec.size() ||
        spec[x + 1] != 'C')
      throw usage_error("bad group spec: " + spec);
    int n = parse_positive(spec, 1, x);
    int m = parse_positive(spec, x + 2, spec.size());
    std::vector<Perm> gens{perm_pad(detail::rot_cycle(n), n + m),
                           detail::rot_cycle(m, n)};
    return make_group(std::move(gens), spec, 0, order_bound);
  }
  if (spec == "Q8") {
    // left translations on {1,-1,i,-i,j,-j,k,-k}
    Perm pi = parse_cycles("(1 3 2 4)(5 7 6 8)");
    Perm pj = parse_cycles("(1 5 2 6)(3 8 4 7)");
    return make_group({pi, pj}, spec, 0, order_bound);
  }
  if (spec.size() >= 2 && (spec[0] == 'C' || spec[0] == 'D' || spec[0] == 'S' ||
                           spec[0] == 'A')) {
    int n = parse_positive(spec, 1, spec.size());
    switch (spec[0]) {
      case 'C':
        return make_group({detail::rot_cycle(n)}, spec, 0, order_bound);
      case 'D': {
        if (n % 2 || n < 4)
          throw usage_error("dihedral spec D<2n> needs even order >= 4");
        int m = n / 2;
        if (m == 2)  // two points cannot carry a faithful reflection
          return make_group({parse_cycles("(1 2)"), parse_cycles("(3 4)")},
                            spec, 0, order_bound);
        Perm r = detail::rot_cycle(m);
        Perm s = perm_identity(m);
        for (int i = 1; i < m; ++i) s[i] = m - i;
        return make_group({r, s}, spec, 0, order_bound);
      }
      case 'S': {
        if (n == 1) return make_group({perm_identity(1)}, spec, 0, order_bound);
        std::vector<Perm> gens{perm_pad(parse_cycles("(1 2)"), n),
                               detail::rot_cycle(n)};
        return make_group(std::move(gens), spec, 0, order_bound);
      }
      case 'A': {
        if (n <= 2) return make_group({perm_identity(std::max(1, n))}, spec, 0, order_bound);
        if (n == 3) return make_group({parse_cycles("(1 2 3)")}, spec, 0, order_bound);
        Perm a = perm_pad(parse_cycles("(1 2 3)"), n);
        Perm b = perm_identity(n);
        if (n % 2) {
          for (int i = 0; i < n; ++i) b[i] = (i + 1) % n;  // (1 2 ... n)
        } else {
          for (int i = 1; i < n; ++i) b[i] = 1 + i % (n - 1);  // (2 3 ... n)
        }
        return make_group({a, b}, spec, 0, order_bound);
      }
    }
  }
  throw usage_error("unrecognized group spec: " + spec);
}

}  // namespace ninfty
