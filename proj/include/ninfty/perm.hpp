#pragma once

// Permutations on {0, ..., degree-1} stored as image vectors, plus cycle
// notation parsing/printing (1-based points on the text side).

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "ninfty/util.hpp"

namespace ninfty {

using Perm = std::vector<int>;

inline Perm perm_identity(int degree) {
  Perm p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  return p;
}

inline bool perm_valid(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= (int)p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// (a*b)(x) = a(b(x))
inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm perm_inv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = int(i);
  return r;
}

inline Perm perm_pad(Perm p, int degree) {
  for (int i = int(p.size()); i < degree; ++i) p.push_back(i);
  return p;
}

// Parse disjoint-cycle notation, e.g. "(1 2)(3 4)" or "(1,2,3)".
// "()" and "" denote the identity. Points are 1-based.
inline Perm parse_cycles(const std::string& text, int min_degree = 0) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  int max_pt = min_degree;
  while (i < text.size()) {
    if (std::isspace((unsigned char)text[i])) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw usage_error("bad cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    while (i < text.size() && text[i] != ')') {
      if (std::isspace((unsigned char)text[i]) || text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit((unsigned char)text[i]))
        throw usage_error("bad cycle notation: " + text);
      int v = 0;
      while (i < text.size() && std::isdigit((unsigned char)text[i]))
        v = v * 10 + (text[i++] - '0');
      if (v < 1) throw usage_error("cycle points are 1-based: " + text);
      cyc.push_back(v);
      max_pt = std::max(max_pt, v);
    }
    if (i >= text.size()) throw usage_error("unterminated cycle: " + text);
    ++i;  // ')'
    if (!cyc.empty()) cycles.push_back(cyc);
  }
  Perm p = perm_identity(max_pt);
  std::vector<char> used(max_pt, 0);
  for (auto& cyc : cycles) {
    for (size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k] - 1, to = cyc[(k + 1) % cyc.size()] - 1;
      if (used[from]) throw usage_error("point repeated in cycles: " + text);
      used[from] = 1;
      p[from] = to;
    }
  }
  if (!perm_valid(p)) throw usage_error("not a permutation: " + text);
  return p;
}

inline std::string format_cycles(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == (int)i) continue;
    out += '(';
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace ninfty
