#pragma once

// Small shared utilities: dynamic bitsets, modular arithmetic over a word-size
// prime, and error types used across the library.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ninfty {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Bits: fixed-size dynamic bitset with value semantics.

class Bits {
public:
  Bits() : n_(0) {}
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  void set_all() {
    for (auto& x : w_) x = ~uint64_t(0);
    trim();
  }
  void clear() {
    for (auto& x : w_) x = 0;
  }

  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  int count() const {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
  }

  bool subset_of(const Bits& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }
  // deterministic total order (word-wise); used only for canonical tie-breaks
  bool operator<(const Bits& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return w_ < o.w_;
  }

  // iterate set bits: for (int i = b.first(); i >= 0; i = b.next(i)) ...
  int first() const { return next(-1); }
  int next(int i) const {
    ++i;
    if (i >= n_) return -1;
    int word = i >> 6;
    uint64_t cur = w_[word] >> (i & 63);
    if (cur) return i + __builtin_ctzll(cur);
    for (size_t k = word + 1; k < w_.size(); ++k)
      if (w_[k]) return int(k) * 64 + __builtin_ctzll(w_[k]);
    return -1;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = first(); i >= 0; i = next(i)) out.push_back(i);
    return out;
  }

private:
  void trim() {
    if (n_ & 63) w_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
  }
  int n_;
  std::vector<uint64_t> w_;
};

// ---------------------------------------------------------------------------
// Modular arithmetic (prime moduli below 2^31, products via __int128).

inline int64_t mulmod(int64_t a, int64_t b, int64_t p) {
  return int64_t((__int128)a * b % p);
}

inline int64_t addmod(int64_t a, int64_t b, int64_t p) {
  int64_t s = a + b;
  return s >= p ? s - p : s;
}

inline int64_t submod(int64_t a, int64_t b, int64_t p) {
  int64_t s = a - b;
  return s < 0 ? s + p : s;
}

inline int64_t powmod(int64_t a, int64_t e, int64_t p) {
  int64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline int64_t invmod(int64_t a, int64_t p) { return powmod(a, p - 2, p); }

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Tonelli-Shanks; requires p an odd prime and a a quadratic residue.
inline int64_t sqrtmod(int64_t a, int64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1)
    throw domain_error("sqrtmod: not a quadratic residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  int64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  int64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  int64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p),
          r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    int64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    int64_t b = powmod(c, int64_t(1) << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

inline int64_t lcm64(int64_t a, int64_t b) {
  int64_t g = a, h = b;
  while (h) {
    int64_t t = g % h;
    g = h;
    h = t;
  }
  return a / g * b;
}

}  // namespace ninfty
