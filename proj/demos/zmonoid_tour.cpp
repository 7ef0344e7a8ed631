// A guided tour of the additive core on the builtin catalog: where pairs are
// centralic, hom-sets grow a commutative monoid of central morphisms with a
// canonical action on all homs — and where they are not, a concrete
// congruence shows why. Build and run:
//
//   cmake --build build && ./build/demos/zmonoid_tour

#include <cstdio>

#include <huq/catalog.hpp>
#include <huq/centrality.hpp>
#include <huq/conditions.hpp>
#include <huq/reflections.hpp>

using namespace huq;

namespace {

std::string map_str(const std::vector<Index>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i)
    s += (i ? "," : "") + std::to_string(m[i]);
  return s + "]";
}

void banner(const char* title) { std::printf("\n== %s ==\n", title); }

}  // namespace

int main() {
  banner("the catalog");
  for (const auto& name : builtin_names()) {
    auto a = builtin(name);
    std::printf("  %-18s size %d, %d operation(s)\n", name.c_str(), a->size(),
                a->num_ops());
  }

  banner("centralic verdicts on a well-behaved slice");
  auto z2 = builtin("group-z2");
  auto n3 = builtin("monoid-trunc3");
  for (const auto& X : {z2, n3})
    for (const auto& Y : {z2, n3})
      std::printf("  %s\n", render_line(centralic_pair_check(X, Y)).c_str());

  banner("the additive core Z(monoid-trunc3, monoid-trunc3)");
  auto mt = z_monoid(n3, n3);
  std::printf("  homs, * marking the central ones:\n");
  for (std::size_t i = 0; i < mt.homs.size(); ++i) {
    bool central = false;
    for (int cidx : mt.central) central |= cidx == static_cast<int>(i);
    std::printf("    h%zu %s %s\n", i, map_str(mt.homs[i].map).c_str(),
                central ? "*" : " ");
  }
  std::printf("  addition on the %zu central homs (unit is position %d):\n",
              mt.central.size(), mt.unit);
  for (std::size_t i = 0; i < mt.central.size(); ++i) {
    std::printf("   ");
    for (std::size_t j = 0; j < mt.central.size(); ++j)
      std::printf(" %d", mt.add[i][j]);
    std::printf("\n");
  }

  banner("a cooperator, rendered as a table");
  std::printf(
      "  the identity of monoid-trunc3 is central; its cooperator with\n"
      "  itself is a map rho : N3 x N3 -> N3 restricting to the identity\n"
      "  on both axes (row x, column y):\n");
  auto w = is_central(identity_hom(n3));
  for (Index x = 0; x < n3->size(); ++x) {
    std::printf("   ");
    for (Index y = 0; y < n3->size(); ++y)
      std::printf(" %d", w->rho.map[w->product.pair(x, y)]);
    std::printf("\n");
  }
  std::printf("  its diagonal x |-> rho(x, x) is the sum id + id = %s\n",
              map_str(star(*w, identity_hom(n3)).map).c_str());

  banner("symmetrizable central homs (those with additive inverses)");
  for (std::size_t i = 0; i < mt.central.size(); ++i) {
    auto sym = is_symmetrizable(mt.cooperators[i]);
    const Hom& f = mt.homs[mt.central[i]];
    if (sym.symmetrizable)
      std::printf("  %s has inverse %s\n", map_str(f.map).c_str(),
                  map_str(sym.inverse->map).c_str());
    else
      std::printf("  %s has no inverse\n", map_str(f.map).c_str());
  }

  banner("commutative and abelian objects");
  for (const auto& name : builtin_names()) {
    auto a = builtin(name);
    bool com = is_commutative_object(a);
    std::printf("  %-18s commutative: %-3s abelian: %s\n", name.c_str(),
                com ? "yes" : "no",
                com ? (is_abelian_object(a).abelian ? "yes" : "no") : "no");
  }

  banner("reflections");
  auto lz = builtin("monoid-leftzero3");
  auto rc = com_reflection(lz);
  std::printf("  com(monoid-leftzero3): %d -> %d elements, quotient map %s\n",
              lz->size(), rc.reflected->size(), map_str(rc.unit.map).c_str());
  auto ra = ab_reflection(n3);
  std::printf("  ab(monoid-trunc3):     %d -> %d element(s) — group-completing"
              " a monoid with absorption collapses it\n",
              n3->size(), ra.reflected->size());

  banner("and a pair that is NOT centralic");
  auto p2 = builtin("pset2");
  std::printf("  %s\n", render_line(centralic_pair_check(p2, p2)).c_str());
  std::printf(
      "  a congruence on pset2 x pset2 relates (1,0) to (0,0) but not\n"
      "  (1,1) to (0,1): relations between points of the axes do not\n"
      "  propagate, so no additive core exists there.\n");
  return 0;
}
