#pragma once

#include <cstddef>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elem_set.hpp"
#include "error.hpp"
#include "group_spec.hpp"

namespace twistgame {

// A finite group stored as its complete Cayley table. Immutable once built;
// the identity is always element 0.
class GroupTable {
public:
  // Validates the table (identity, Latin square, associativity) and
  // relabels so that the identity sits at index 0.
  static GroupTable from_table(std::size_t n, std::vector<ElemId> mul, std::vector<std::string> names,
                               GroupSpec spec);

  std::size_t order() const noexcept { return n_; }
  ElemId mul(ElemId a, ElemId b) const noexcept { return mul_[a * n_ + b]; }
  ElemId inv(ElemId a) const noexcept { return inv_[a]; }
  std::span<const ElemId> row(ElemId a) const noexcept { return {mul_.data() + a * n_, n_}; }
  const std::string& name(ElemId a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const GroupSpec& spec() const noexcept { return spec_; }

  ElemSet empty_set() const { return ElemSet(n_); }
  ElemSet full_set() const { return ElemSet::full(n_); }
  ElemSet singleton(ElemId x) const { return ElemSet(n_, {x}); }

  bool is_abelian() const noexcept {
    for (ElemId a = 0; a < n_; ++a)
      for (ElemId b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

private:
  GroupTable() = default;

  std::size_t n_ = 0;
  std::vector<ElemId> mul_;
  std::vector<ElemId> inv_;
  std::vector<std::string> names_;
  GroupSpec spec_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

inline GroupTable GroupTable::from_table(std::size_t n, std::vector<ElemId> mul, std::vector<std::string> names,
                                         GroupSpec spec) {
  if (n == 0) fail(ErrorCode::InvalidSpec, "group order must be positive");
  if (mul.size() != n * n) fail(ErrorCode::InvalidSpec, "table must have n*n entries");
  for (ElemId v : mul)
    if (v >= n) fail(ErrorCode::InvalidSpec, "table entry out of range");
  if (names.size() != n) {
    names.resize(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  }
  auto at = [&](std::size_t a, std::size_t b) { return mul[a * n + b]; };

  // Locate a two-sided identity.
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = at(c, x) == x && at(x, c) == x;
    if (ok) e = c;
  }
  if (e == n) fail(ErrorCode::InvalidSpec, "table has no identity element");
  if (e != 0) {
    // Swap labels 0 and e.
    std::vector<ElemId> relabel(n);
    std::iota(relabel.begin(), relabel.end(), ElemId{0});
    std::swap(relabel[0], relabel[e]);
    std::vector<ElemId> swapped(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) swapped[relabel[a] * n + relabel[b]] = relabel[at(a, b)];
    mul = std::move(swapped);
    std::swap(names[0], names[e]);
  }

  // Latin square.
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[at(a, b)]++) fail(ErrorCode::InvalidSpec, "row " + std::to_string(a) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[at(b, a)]++) fail(ErrorCode::InvalidSpec, "column " + std::to_string(a) + " is not a permutation");
    }
  }

  // Associativity: exhaustive up to 256 elements, sampled above.
  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      fail(ErrorCode::InvalidSpec, "table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                       "," + std::to_string(c) + ")");
  };
  if (n <= 256) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 1'000'000; ++i) check(pick(rng), pick(rng), pick(rng));
  }

  GroupTable g;
  g.n_ = n;
  g.mul_ = std::move(mul);
  g.names_ = std::move(names);
  g.spec_ = std::move(spec);
  g.inv_.assign(n, 0);
  for (ElemId a = 0; a < n; ++a) {
    auto r = g.row(a);
    for (ElemId b = 0; b < n; ++b)
      if (r[b] == kIdentity) {
        g.inv_[a] = b;
        break;
      }
  }
  return g;
}

namespace detail {

inline long long mod(long long a, long long m) { return ((a % m) + m) % m; }

inline std::string cycle_notation(const std::vector<int>& perm) {
  std::vector<char> done(perm.size());
  std::string s;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (done[i] || perm[i] == static_cast<int>(i)) continue;
    s += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) s += " ";
      s += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(perm[j]);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0;
    for (int x : v) h = h * 1000003u + static_cast<std::size_t>(x);
    return h;
  }
};

inline constexpr std::size_t kMaxOrder = 4096;

inline void require_order(long long n) {
  if (n < 1 || n > static_cast<long long>(kMaxOrder))
    fail(ErrorCode::InvalidSpec, "group order " + std::to_string(n) + " outside [1, " +
                                     std::to_string(kMaxOrder) + "]");
}

GroupTable build_cyclic(const spec::Cyclic& p, const GroupSpec& s);
GroupTable build_dihedral(const spec::Dihedral& p, const GroupSpec& s);
GroupTable build_quaternion8(const GroupSpec& s);
GroupTable build_heisenberg(const spec::Heisenberg& p, const GroupSpec& s);
GroupTable build_semidirect_cyclic(const spec::SemidirectCyclic& p, const GroupSpec& s);
GroupTable build_semidirect_vector(const spec::SemidirectVector& p, const GroupSpec& s);
GroupTable build_direct_product(const spec::DirectProduct& p, const GroupSpec& s);
GroupTable build_permutation(const spec::Permutation& p, const GroupSpec& s);
GroupTable build_table(const spec::Table& p, const GroupSpec& s);

}  // namespace detail

// Builds and validates the group a spec describes. Element ordering is a
// deterministic function of the spec.
inline GroupTable build(const GroupSpec& s) {
  return std::visit(
      [&](const auto& p) -> GroupTable {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, spec::Cyclic>) return detail::build_cyclic(p, s);
        else if constexpr (std::is_same_v<P, spec::Dihedral>) return detail::build_dihedral(p, s);
        else if constexpr (std::is_same_v<P, spec::Quaternion8>) return detail::build_quaternion8(s);
        else if constexpr (std::is_same_v<P, spec::Heisenberg>) return detail::build_heisenberg(p, s);
        else if constexpr (std::is_same_v<P, spec::SemidirectCyclic>) return detail::build_semidirect_cyclic(p, s);
        else if constexpr (std::is_same_v<P, spec::SemidirectVector>) return detail::build_semidirect_vector(p, s);
        else if constexpr (std::is_same_v<P, spec::DirectProduct>) return detail::build_direct_product(p, s);
        else if constexpr (std::is_same_v<P, spec::Permutation>) return detail::build_permutation(p, s);
        else return detail::build_table(p, s);
      },
      s.params);
}

inline GroupPtr build_shared(const GroupSpec& s) { return std::make_shared<const GroupTable>(build(s)); }

namespace detail {

inline GroupTable build_cyclic(const spec::Cyclic& p, const GroupSpec& s) {
  require_order(p.n);
  const std::size_t n = static_cast<std::size_t>(p.n);
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<ElemId>((a + b) % n);
  }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_dihedral(const spec::Dihedral& p, const GroupSpec& s) {
  if (p.n < 1) fail(ErrorCode::InvalidSpec, "dihedral needs n >= 1");
  require_order(2LL * p.n);
  const long long m = p.n;
  const std::size_t n = static_cast<std::size_t>(2 * m);
  // r^a s^x * r^b s^y = r^(a + (-1)^x b) s^(x + y)
  auto idx = [&](long long a, long long x) { return static_cast<ElemId>(x * m + mod(a, m)); };
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  for (long long x = 0; x < 2; ++x)
    for (long long a = 0; a < m; ++a) {
      std::string rot = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
      names[idx(a, x)] = x ? rot + "s" : (rot.empty() ? "e" : rot);
      for (long long y = 0; y < 2; ++y)
        for (long long b = 0; b < m; ++b)
          mul[idx(a, x) * n + idx(b, y)] = idx(a + (x ? -b : b), (x + y) % 2);
    }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_quaternion8(const GroupSpec& s) {
  // a^i x^j with a^4 = 1, x^2 = a^2, x a = a^-1 x; index = 4j + i.
  const std::size_t n = 8;
  std::vector<ElemId> mul(n * n);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 4; ++k) {
          int e = j ? i - k : i + k;
          int f = j + l;
          if (f == 2) {
            e += 2;
            f = 0;
          }
          mul[(4 * j + i) * n + (4 * l + k)] = static_cast<ElemId>(4 * f + mod(e, 4));
        }
  std::vector<std::string> names{"1", "i", "-1", "-i", "j", "k", "-j", "-k"};
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_heisenberg(const spec::Heisenberg& p, const GroupSpec& s) {
  if (p.p < 2) fail(ErrorCode::InvalidSpec, "heisenberg_p needs p >= 2");
  for (int d = 2; d * d <= p.p; ++d)
    if (p.p % d == 0) fail(ErrorCode::InvalidSpec, "heisenberg_p needs p prime");
  const long long q = p.p;
  require_order(q * q * q);
  const std::size_t n = static_cast<std::size_t>(q * q * q);
  // (a, b, c) ~ [[1, a, c], [0, 1, b], [0, 0, 1]]; index a + q b + q^2 c.
  auto idx = [&](long long a, long long b, long long c) {
    return static_cast<ElemId>(mod(a, q) + q * mod(b, q) + q * q * mod(c, q));
  };
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  for (long long c = 0; c < q; ++c)
    for (long long b = 0; b < q; ++b)
      for (long long a = 0; a < q; ++a) {
        names[idx(a, b, c)] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
        for (long long c2 = 0; c2 < q; ++c2)
          for (long long b2 = 0; b2 < q; ++b2)
            for (long long a2 = 0; a2 < q; ++a2)
              mul[idx(a, b, c) * n + idx(a2, b2, c2)] = idx(a + a2, b + b2, c + c2 + a * b2);
      }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_semidirect_cyclic(const spec::SemidirectCyclic& p, const GroupSpec& s) {
  if (p.m < 1 || p.k < 1) fail(ErrorCode::InvalidSpec, "semidirect_cyclic needs m, k >= 1");
  const long long m = p.m, k = p.k;
  require_order(m * k);
  std::vector<long long> rpow(static_cast<std::size_t>(k + 1), 1 % m);
  for (long long i = 1; i <= k; ++i) rpow[i] = mod(rpow[i - 1] * p.r, m);
  if (rpow[k] != 1 % m)
    fail(ErrorCode::InvalidSpec, "action multiplier r must satisfy r^k = 1 mod m");
  const std::size_t n = static_cast<std::size_t>(m * k);
  // (x, y) * (x', y') = (x + r^y x', y + y'); index x + m y.
  auto idx = [&](long long x, long long y) { return static_cast<ElemId>(mod(x, m) + m * mod(y, k)); };
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  for (long long y = 0; y < k; ++y)
    for (long long x = 0; x < m; ++x) {
      std::string nm;
      if (x) nm += x == 1 ? "a" : "a^" + std::to_string(x);
      if (y) nm += y == 1 ? "b" : "b^" + std::to_string(y);
      names[idx(x, y)] = nm.empty() ? "e" : nm;
      for (long long y2 = 0; y2 < k; ++y2)
        for (long long x2 = 0; x2 < m; ++x2) mul[idx(x, y) * n + idx(x2, y2)] = idx(x + rpow[y] * x2, y + y2);
    }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_semidirect_vector(const spec::SemidirectVector& p, const GroupSpec& s) {
  const long long q = p.p, k = p.k;
  const std::size_t d = p.matrix.size();
  if (q < 2 || k < 1 || d == 0) fail(ErrorCode::InvalidSpec, "semidirect_vector needs p >= 2, k >= 1, a matrix");
  for (const auto& row : p.matrix)
    if (row.size() != d) fail(ErrorCode::InvalidSpec, "semidirect_vector matrix must be square");
  long long base = 1;
  for (std::size_t i = 0; i < d; ++i) {
    base *= q;
    require_order(base);
  }
  require_order(base * k);
  using Mat = std::vector<std::vector<long long>>;
  auto matmul = [&](const Mat& a, const Mat& b) {
    Mat c(d, std::vector<long long>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        long long acc = 0;
        for (std::size_t t = 0; t < d; ++t) acc += a[i][t] * b[t][j];
        c[i][j] = mod(acc, q);
      }
    return c;
  };
  Mat ident(d, std::vector<long long>(d, 0));
  for (std::size_t i = 0; i < d; ++i) ident[i][i] = 1;
  Mat m(d, std::vector<long long>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = mod(p.matrix[i][j], q);
  std::vector<Mat> mpow{ident};
  for (long long i = 1; i <= k; ++i) mpow.push_back(matmul(mpow.back(), m));
  if (mpow[static_cast<std::size_t>(k)] != ident)
    fail(ErrorCode::InvalidSpec, "action matrix M must satisfy M^k = I mod p");

  const std::size_t vcount = static_cast<std::size_t>(base);
  const std::size_t n = vcount * static_cast<std::size_t>(k);
  auto digits = [&](std::size_t v) {
    std::vector<long long> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = static_cast<long long>(v % static_cast<std::size_t>(q));
      v /= static_cast<std::size_t>(q);
    }
    return out;
  };
  auto encode = [&](const std::vector<long long>& v) {
    std::size_t x = 0;
    for (std::size_t i = d; i-- > 0;) x = x * static_cast<std::size_t>(q) + static_cast<std::size_t>(mod(v[i], q));
    return x;
  };
  // (v, y) * (v', y') = (v + M^y v', y + y'); index v + p^d y.
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  for (std::size_t y = 0; y < static_cast<std::size_t>(k); ++y)
    for (std::size_t v = 0; v < vcount; ++v) {
      auto vd = digits(v);
      std::string nm = "(";
      for (std::size_t i = 0; i < d; ++i) nm += (i ? "," : "") + std::to_string(vd[i]);
      names[v + vcount * y] = nm + ";" + std::to_string(y) + ")";
      for (std::size_t y2 = 0; y2 < static_cast<std::size_t>(k); ++y2)
        for (std::size_t v2 = 0; v2 < vcount; ++v2) {
          auto wd = digits(v2);
          std::vector<long long> sum(d);
          for (std::size_t i = 0; i < d; ++i) {
            long long acc = vd[i];
            for (std::size_t t = 0; t < d; ++t) acc += mpow[y][i][t] * wd[t];
            sum[i] = acc;
          }
          mul[(v + vcount * y) * n + v2 + vcount * y2] =
              static_cast<ElemId>(encode(sum) + vcount * ((y + y2) % static_cast<std::size_t>(k)));
        }
    }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_direct_product(const spec::DirectProduct& p, const GroupSpec& s) {
  if (p.factors.empty()) fail(ErrorCode::InvalidSpec, "direct_product needs at least one factor");
  std::vector<GroupTable> fs;
  long long total = 1;
  for (const auto& f : p.factors) {
    fs.push_back(build(f));
    total *= static_cast<long long>(fs.back().order());
    require_order(total);
  }
  const std::size_t n = static_cast<std::size_t>(total);
  // Mixed radix, first factor least significant.
  auto split = [&](std::size_t x) {
    std::vector<ElemId> c(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      c[i] = static_cast<ElemId>(x % fs[i].order());
      x /= fs[i].order();
    }
    return c;
  };
  auto join = [&](const std::vector<ElemId>& c) {
    std::size_t x = 0;
    for (std::size_t i = fs.size(); i-- > 0;) x = x * fs[i].order() + c[i];
    return static_cast<ElemId>(x);
  };
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  std::vector<ElemId> prod(fs.size());
  for (std::size_t a = 0; a < n; ++a) {
    auto ca = split(a);
    std::string nm = "(";
    for (std::size_t i = 0; i < fs.size(); ++i) nm += (i ? "," : "") + fs[i].name(ca[i]);
    names[a] = nm + ")";
    for (std::size_t b = 0; b < n; ++b) {
      auto cb = split(b);
      for (std::size_t i = 0; i < fs.size(); ++i) prod[i] = fs[i].mul(ca[i], cb[i]);
      mul[a * n + b] = join(prod);
    }
  }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_permutation(const spec::Permutation& p, const GroupSpec& s) {
  if (p.degree < 1) fail(ErrorCode::InvalidSpec, "permutation degree must be >= 1");
  const std::size_t deg = static_cast<std::size_t>(p.degree);
  for (const auto& g : p.generators) {
    if (g.size() != deg)
      fail(ErrorCode::InvalidSpec, "permutation generator of degree " + std::to_string(g.size()) +
                                       " does not match degree " + std::to_string(deg));
    std::vector<char> hit(deg);
    for (int x : g) {
      if (x < 0 || static_cast<std::size_t>(x) >= deg || hit[x]++)
        fail(ErrorCode::InvalidSpec, "generator is not a permutation of 0..degree-1");
    }
  }
  // (a * b)(i) = b(a(i)): apply a first.
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(deg);
    for (std::size_t i = 0; i < deg; ++i) c[i] = b[static_cast<std::size_t>(a[i])];
    return c;
  };
  std::vector<int> ident(deg);
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<std::vector<int>> elems{ident};
  std::unordered_map<std::vector<int>, ElemId, VectorHash> index{{ident, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : p.generators) {
      auto y = compose(elems[head], g);
      if (index.emplace(y, static_cast<ElemId>(elems.size())).second) {
        elems.push_back(std::move(y));
        require_order(static_cast<long long>(elems.size()));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<ElemId> mul(n * n);
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = cycle_notation(elems[a]);
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = index.at(compose(elems[a], elems[b]));
  }
  return GroupTable::from_table(n, std::move(mul), std::move(names), s);
}

inline GroupTable build_table(const spec::Table& p, const GroupSpec& s) {
  require_order(p.n);
  const std::size_t n = static_cast<std::size_t>(p.n);
  if (p.mul.size() != n * n) fail(ErrorCode::InvalidSpec, "table 'mul' must have n*n entries");
  std::vector<ElemId> mul(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (p.mul[i] < 0 || static_cast<std::size_t>(p.mul[i]) >= n)
      fail(ErrorCode::InvalidSpec, "table entry out of range");
    mul[i] = static_cast<ElemId>(p.mul[i]);
  }
  return GroupTable::from_table(n, std::move(mul), {}, s);
}

}  // namespace detail

}  // namespace twistgame
