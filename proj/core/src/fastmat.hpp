#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

#include "stablecentres/errors.hpp"
#include "stablecentres/gf.hpp"
#include "stablecentres/matfq.hpp"

namespace stc::detail {

inline constexpr int kFastMaxDim = 12;
using FastBuf = std::uint8_t[kFastMaxDim * kFastMaxDim];

// Table-driven arithmetic on small square matrices over fields of order <= 256.
class FastKernel {
 public:
  FastKernel(const Field& f, int n) : f_(f), n_(n), bits_(bits_per_entry(f)), words_(packed_words(f, n, n)) {
    if (f.size() > 256 || n > kFastMaxDim) throw Error(ErrorCode::LimitExceeded, "matrix too large for fast kernel");
    const std::uint32_t s = f.size();
    add_.resize(s * s);
    mul_.resize(s * s);
    for (std::uint32_t a = 0; a < s; ++a)
      for (std::uint32_t b = 0; b < s; ++b) {
        add_[a * s + b] = static_cast<std::uint8_t>(f.add(a, b));
        mul_[a * s + b] = static_cast<std::uint8_t>(f.mul(a, b));
      }
  }

  int n() const { return n_; }
  std::size_t words() const { return words_; }

  void unpack(const std::uint64_t* w, std::uint8_t* out) const {
    const std::uint64_t mask = (std::uint64_t(1) << bits_) - 1;
    std::size_t pos = 0;
    for (int i = 0; i < n_ * n_; ++i) {
      std::size_t word = pos / 64, off = pos % 64;
      std::uint64_t v = w[word] >> off;
      if (off + bits_ > 64) v |= w[word + 1] << (64 - off);
      out[i] = static_cast<std::uint8_t>(v & mask);
      pos += bits_;
    }
  }

  void pack(const std::uint8_t* a, std::uint64_t* out) const {
    std::memset(out, 0, words_ * sizeof(std::uint64_t));
    std::size_t pos = 0;
    for (int i = 0; i < n_ * n_; ++i) {
      std::uint64_t v = a[i];
      std::size_t word = pos / 64, off = pos % 64;
      out[word] |= v << off;
      if (off + bits_ > 64) out[word + 1] |= v >> (64 - off);
      pos += bits_;
    }
  }

  void mul(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const {
    const std::uint32_t s = f_.size();
    const std::uint8_t* mt = mul_.data();
    const std::uint8_t* at = add_.data();
    for (int i = 0; i < n_; ++i) {
      std::uint8_t row[kFastMaxDim] = {};
      for (int k = 0; k < n_; ++k) {
        const std::uint8_t x = a[i * n_ + k];
        if (!x) continue;
        const std::uint8_t* br = b + k * n_;
        const std::uint8_t* mrow = mt + x * s;
        for (int j = 0; j < n_; ++j) row[j] = at[row[j] * s + mrow[br[j]]];
      }
      std::memcpy(out + i * n_, row, static_cast<std::size_t>(n_));
    }
  }

  bool commutes(const std::uint8_t* a, const std::uint8_t* b) const {
    FastBuf x, y;
    mul(a, b, x);
    mul(b, a, y);
    return std::memcmp(x, y, static_cast<std::size_t>(n_ * n_)) == 0;
  }

  bool inv(const std::uint8_t* a, std::uint8_t* out) const {
    const int w = 2 * n_;
    std::uint8_t m[kFastMaxDim * 2 * kFastMaxDim] = {};
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) m[i * w + j] = a[i * n_ + j];
      m[i * w + n_ + i] = 1;
    }
    for (int c = 0; c < n_; ++c) {
      int p = -1;
      for (int r = c; r < n_; ++r)
        if (m[r * w + c]) {
          p = r;
          break;
        }
      if (p < 0) return false;
      if (p != c)
        for (int j = 0; j < w; ++j) std::swap(m[p * w + j], m[c * w + j]);
      const std::uint8_t iv = static_cast<std::uint8_t>(f_.inv(m[c * w + c]));
      for (int j = 0; j < w; ++j) m[c * w + j] = mul_[iv * f_.size() + m[c * w + j]];
      for (int r = 0; r < n_; ++r) {
        if (r == c || !m[r * w + c]) continue;
        const std::uint8_t k = static_cast<std::uint8_t>(f_.neg(m[r * w + c]));
        for (int j = 0; j < w; ++j)
          m[r * w + j] = add_[m[r * w + j] * f_.size() + mul_[k * f_.size() + m[c * w + j]]];
      }
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i * n_ + j] = m[i * w + n_ + j];
    return true;
  }

  Mat to_mat(const std::uint8_t* a) const {
    Mat m(f_, n_, n_);
    for (int i = 0; i < n_ * n_; ++i) m.data()[i] = a[i];
    return m;
  }

  void from_mat(const Mat& m, std::uint8_t* out) const {
    for (int i = 0; i < n_ * n_; ++i) out[i] = static_cast<std::uint8_t>(m.data()[i]);
  }

 private:
  const Field& f_;
  int n_;
  unsigned bits_;
  std::size_t words_;
  std::vector<std::uint8_t> add_, mul_;
};

// Open-addressing map from single-word packed keys to ordinals.
class PackedIndex {
 public:
  explicit PackedIndex(const std::vector<std::uint64_t>& keys) {
    std::size_t cap = 16;
    while (cap < 2 * keys.size()) cap <<= 1;
    mask_ = cap - 1;
    slots_.assign(cap, kEmpty);
    vals_.assign(cap, 0);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::size_t h = hash(keys[i]) & mask_;
      while (slots_[h] != kEmpty) h = (h + 1) & mask_;
      slots_[h] = keys[i];
      vals_[h] = static_cast<std::uint32_t>(i);
    }
  }
  // Returns ~0u when absent.
  std::uint32_t find(std::uint64_t key) const {
    std::size_t h = hash(key) & mask_;
    while (slots_[h] != kEmpty) {
      if (slots_[h] == key) return vals_[h];
      h = (h + 1) & mask_;
    }
    return ~0u;
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t(0);
  static std::uint64_t hash(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }
  std::size_t mask_ = 0;
  std::vector<std::uint64_t> slots_;
  std::vector<std::uint32_t> vals_;
};

// Matrices over F_2 with N <= 8 as row masks, matching the packed layout.
struct Bin8 {
  int n;
  std::uint64_t row_mask;
  explicit Bin8(int n_) : n(n_), row_mask((std::uint64_t(1) << n_) - 1) {}
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t ai = (a >> (i * n)) & row_mask, ri = 0;
      while (ai) {
        int k = __builtin_ctzll(ai);
        ri ^= (b >> (k * n)) & row_mask;
        ai &= ai - 1;
      }
      r |= ri << (i * n);
    }
    return r;
  }
};

}  // namespace stc::detail
