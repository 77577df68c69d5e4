#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "group_spec.hpp"

namespace twistgame {

struct CatalogEntry {
  std::string label;
  GroupSpec spec;
  std::size_t order;
};

inline GroupSpec alternating4_spec() { return permutation(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}); }
inline GroupSpec symmetric4_spec() { return permutation(4, {{1, 2, 3, 0}, {1, 0, 2, 3}}); }
// Frobenius group (Z5)^2 x| Z3; the action matrix has characteristic
// polynomial x^2 + x + 1, irreducible over F5.
inline GroupSpec order75_spec() { return semidirect_vector(5, 3, {{0, 4}, {1, 4}}); }
inline GroupSpec order21_spec() { return semidirect_cyclic(7, 3, 2); }

// The fixed default catalog, in census order.
inline const std::vector<CatalogEntry>& default_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> c;
    auto add = [&](std::string label, GroupSpec spec, std::size_t order) {
      c.push_back({std::move(label), std::move(spec), order});
    };
    for (int n = 2; n <= 16; ++n) add("Z" + std::to_string(n), cyclic(n), n);
    for (int n = 17; n <= 45; n += 2) add("Z" + std::to_string(n), cyclic(n), n);

    const std::vector<std::vector<int>> products{
        {2, 2},     {2, 4},  {2, 2, 2}, {3, 3},  {2, 6},  {4, 4},    {2, 8},  {2, 2, 4}, {2, 2, 2, 2},
        {3, 6},     {2, 10}, {2, 12},   {2, 2, 6}, {5, 5}, {3, 9},   {3, 3, 3}, {2, 14}, {2, 16},
        {4, 8},     {2, 2, 2, 2, 2},    {6, 6},  {2, 18}, {3, 12}, {5, 9}};
    for (const auto& p : products) {
      std::vector<GroupSpec> fs;
      std::string label;
      std::size_t order = 1;
      for (int n : p) {
        fs.push_back(cyclic(n));
        label += (label.empty() ? "Z" : "xZ") + std::to_string(n);
        order *= static_cast<std::size_t>(n);
      }
      add(label, direct_product(std::move(fs)), order);
    }
    for (int n = 3; n <= 8; ++n) add("D" + std::to_string(n), dihedral(n), 2 * n);
    add("Q8", quaternion8(), 8);
    add("A4", alternating4_spec(), 12);
    add("S4", symmetric4_spec(), 24);
    add("Heis3", heisenberg(3), 27);
    add("Z7:Z3", order21_spec(), 21);
    add("Z5^2:Z3", order75_spec(), 75);
    return c;
  }();
  return catalog;
}

inline std::optional<CatalogEntry> find_catalog_entry(const std::string& label) {
  const auto& c = default_catalog();
  auto it = std::find_if(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.label == label; });
  if (it != c.end()) return *it;
  // Zn and Dn for any n.
  if (label.size() >= 2 && (label[0] == 'Z' || label[0] == 'D') &&
      std::all_of(label.begin() + 1, label.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    int n = std::stoi(label.substr(1));
    if (label[0] == 'Z') return CatalogEntry{label, cyclic(n), static_cast<std::size_t>(n)};
    return CatalogEntry{label, dihedral(n), static_cast<std::size_t>(2 * n)};
  }
  return std::nullopt;
}

// Catalog entries up to `max_order`, optionally odd-order only.
inline std::vector<CatalogEntry> catalog_up_to(std::size_t max_order, bool odd_only = false) {
  std::vector<CatalogEntry> out;
  for (const auto& e : default_catalog())
    if (e.order <= max_order && (!odd_only || e.order % 2 == 1)) out.push_back(e);
  return out;
}

}  // namespace twistgame
