#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace twistgame {

// Elements of a finite group are indices into its multiplication table.
// Index 0 is always the identity.
using ElemId = std::uint32_t;
inline constexpr ElemId kIdentity = 0;

// A subset of [0, n) stored as a packed bitset.
class ElemSet {
public:
  ElemSet() = default;
  explicit ElemSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  ElemSet(std::size_t n, std::initializer_list<ElemId> members) : ElemSet(n) {
    for (ElemId x : members) insert(x);
  }
  template <typename Range>
  static ElemSet from_range(std::size_t n, const Range& members) {
    ElemSet s(n);
    for (auto x : members) s.insert(static_cast<ElemId>(x));
    return s;
  }
  static ElemSet full(std::size_t n) {
    ElemSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.insert(static_cast<ElemId>(i));
    return s;
  }
  // Low bits of `mask` become members; only meaningful for n <= 64.
  static ElemSet from_mask(std::size_t n, std::uint64_t mask) {
    ElemSet s(n);
    if (!s.words_.empty()) s.words_[0] = mask & s.tail_mask(0);
    return s;
  }

  std::size_t universe() const noexcept { return n_; }

  bool contains(ElemId x) const noexcept {
    return x < n_ && ((words_[x >> 6] >> (x & 63)) & 1u);
  }
  void insert(ElemId x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void erase(ElemId x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }
  // Returns true when x was not already present.
  bool add(ElemId x) {
    if (contains(x)) return false;
    insert(x);
    return true;
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  bool is_full() const noexcept { return size() == n_; }

  std::uint64_t mask() const noexcept { return words_.empty() ? 0 : words_[0]; }

  bool is_subset_of(const ElemSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElemSet& operator|=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElemSet& operator&=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElemSet& operator-=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
  friend ElemSet operator-(ElemSet a, const ElemSet& b) { return a -= b; }

  ElemSet complement() const {
    ElemSet c(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i] & tail_mask(i);
    return c;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<ElemId>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<ElemId> members() const {
    std::vector<ElemId> out;
    out.reserve(size());
    for_each([&](ElemId x) { out.push_back(x); });
    return out;
  }

  // Smallest member, or n when empty.
  ElemId first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<ElemId>(i * 64 + std::countr_zero(words_[i]));
    return static_cast<ElemId>(n_);
  }

  std::size_t hash() const noexcept {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  friend bool operator==(const ElemSet& a, const ElemSet& b) = default;

  // Membership mask as lowercase hex, bit i = element i.
  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    for (std::size_t i = words_.size(); i-- > 0;)
      for (int nib = 15; nib >= 0; --nib) s += digits[(words_[i] >> (4 * nib)) & 0xf];
    auto nz = s.find_first_not_of('0');
    return nz == std::string::npos ? "0" : s.substr(nz);
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](ElemId x) {
      if (!first) s += ",";
      s += std::to_string(x);
      first = false;
    });
    return s + "}";
  }

private:
  std::uint64_t tail_mask(std::size_t word) const noexcept {
    std::size_t lo = word * 64;
    if (lo + 64 <= n_) return ~std::uint64_t{0};
    return (std::uint64_t{1} << (n_ - lo)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const noexcept { return s.hash(); }
};

// Canonical order used for every tie-break: smaller sets first, then the
// sorted member lists compared lexicographically.
inline bool set_order_less(const ElemSet& a, const ElemSet& b) {
  auto sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  auto ma = a.members(), mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

// Lexicographic comparison of sorted member lists only.
inline bool members_lex_less(const ElemSet& a, const ElemSet& b) {
  auto ma = a.members(), mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

}  // namespace twistgame
