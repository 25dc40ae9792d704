#include "sptmbqc/cocycle.hpp"

namespace sptmbqc {

namespace {

void check_table_size(const FiniteAbelianGroup& g) {
  if (g.size() > 256) {
    throw ValidationError("cocycle tables are limited to groups of order <= 256");
  }
}

}  // namespace

const RationalPhase& Cocycle::at(const GroupElement& g, const GroupElement& h) const {
  return table[static_cast<size_t>(group.index_of(g) * group.size() + group.index_of(h))];
}

RationalPhase& Cocycle::at(const GroupElement& g, const GroupElement& h) {
  return table[static_cast<size_t>(group.index_of(g) * group.size() + group.index_of(h))];
}

bool Cocycle::satisfies_cocycle_condition() const {
  const auto els = group.elements();
  for (const auto& g : els) {
    for (const auto& h : els) {
      const RationalPhase gh = at(g, h);
      const GroupElement g_plus_h = group.add(g, h);
      for (const auto& k : els) {
        const RationalPhase lhs = gh * at(g_plus_h, k);
        const RationalPhase rhs = at(h, k) * at(g, group.add(h, k));
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

bool Cocycle::is_normalized() const {
  const auto els = group.elements();
  const GroupElement zero = group.zero();
  for (const auto& g : els) {
    if (!at(zero, g).is_one() || !at(g, zero).is_one()) return false;
  }
  return true;
}

Cocycle trivial_cocycle(const FiniteAbelianGroup& g) {
  check_table_size(g);
  Cocycle w{g, {}};
  w.table.assign(static_cast<size_t>(g.size() * g.size()), RationalPhase::one());
  return w;
}

Cocycle weyl_cocycle(long long D) {
  if (D < 2) throw ValidationError("weyl_cocycle requires D >= 2");
  FiniteAbelianGroup g{{D, D}};
  check_table_size(g);
  Cocycle w{g, {}};
  w.table.resize(static_cast<size_t>(g.size() * g.size()));
  const auto els = g.elements();
  for (const auto& lhs : els) {
    for (const auto& rhs : els) {
      w.at(lhs, rhs) = RationalPhase::of(lhs[1] * rhs[0], D);
    }
  }
  return w;
}

Cocycle product_cocycle(const Cocycle& a, const Cocycle& b) {
  std::vector<long long> orders = a.group.orders;
  orders.insert(orders.end(), b.group.orders.begin(), b.group.orders.end());
  FiniteAbelianGroup g{orders};
  check_table_size(g);

  const size_t ra = static_cast<size_t>(a.group.rank());
  const auto split = [&](const GroupElement& e) {
    GroupElement ea(e.begin(), e.begin() + static_cast<long>(ra));
    GroupElement eb(e.begin() + static_cast<long>(ra), e.end());
    return std::pair<GroupElement, GroupElement>{std::move(ea), std::move(eb)};
  };

  Cocycle w{g, {}};
  w.table.resize(static_cast<size_t>(g.size() * g.size()));
  const auto els = g.elements();
  for (const auto& lhs : els) {
    const auto [la, lb] = split(lhs);
    for (const auto& rhs : els) {
      const auto [ma, mb] = split(rhs);
      w.at(lhs, rhs) = a.at(la, ma) * b.at(lb, mb);
    }
  }
  return w;
}

bool is_maximally_noncommutative(const Cocycle& omega) {
  const auto els = omega.group.elements();
  const GroupElement zero = omega.group.zero();
  for (const auto& g : els) {
    if (g == zero) continue;
    bool central = true;
    for (const auto& h : els) {
      if (!omega.pairing(g, h).is_one()) {
        central = false;
        break;
      }
    }
    if (central) return false;
  }
  return true;
}

}  // namespace sptmbqc
