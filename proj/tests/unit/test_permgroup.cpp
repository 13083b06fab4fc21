#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "qpg/errors.hpp"
#include "qpg/permgroup.hpp"

namespace qpg::perm {
namespace {

Permutation P(std::vector<int> one_based) { return Permutation::from_one_based(one_based); }

PermGroup gen(int n, std::vector<std::vector<int>> gens) {
  std::vector<Permutation> ps;
  for (auto& g : gens) ps.push_back(P(g));
  return closure(n, ps);
}

// Independent closure: repeated right multiplication by generators until stable.
std::set<std::vector<int>> brute_closure(int n, const std::vector<std::vector<int>>& gens) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 1);
  std::set<std::vector<int>> seen{id};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto elem : std::vector<std::vector<int>>(seen.begin(), seen.end()))
      for (const auto& g : gens) {
        std::vector<int> prod(n);
        for (int k = 0; k < n; ++k) prod[k] = elem[g[k] - 1];
        grew |= seen.insert(prod).second;
      }
  }
  return seen;
}

// Minimum cover of all (i, j) pairs by element graphs, by subset enumeration.
int brute_level(const PermGroup& g) {
  const int n = g.degree();
  const auto m = g.order();
  int best = 1 << 30;
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    const int size = __builtin_popcountl(mask);
    if (size >= best) continue;
    std::vector<bool> hit(n * n, false);
    for (std::size_t e = 0; e < m; ++e)
      if (mask >> e & 1)
        for (int j = 0; j < n; ++j) hit[g[e](j) * n + j] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) best = size;
  }
  return best;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<PermGroup> transitive_subgroups_of_s4() {
  std::vector<PermGroup> out;
  for (auto& h : all_subgroups(named_group("symmetric:4")))
    if (is_transitive(h)) out.push_back(std::move(h));
  return out;
}

TEST(PermutationTest, CompositionAppliesRightFactorFirst) {
  const auto a = P({2, 3, 1}), b = P({2, 1, 3});
  for (int k = 0; k < 3; ++k) EXPECT_EQ((a * b)(k), a(b(k)));
  EXPECT_TRUE((a * a.inverse()).is_identity());
  EXPECT_THROW(P({1, 1, 2}), InputError);
}

TEST(Closure, Examples) {
  EXPECT_EQ(gen(2, {{2, 1}}).order(), 2u);
  EXPECT_EQ(gen(3, {{2, 3, 1}}).order(), 3u);
  const auto s4 = gen(4, {{2, 1, 3, 4}, {2, 3, 4, 1}});
  const auto oracle = brute_closure(4, {{2, 1, 3, 4}, {2, 3, 4, 1}});
  ASSERT_EQ(s4.order(), oracle.size());
  EXPECT_EQ(s4.order(), 24u);
  for (const auto& e : s4.elements()) EXPECT_TRUE(oracle.count(e.one_based()));
}

TEST(Closure, GroupAxiomsAndLagrange) {
  for (const char* fam : {"dihedral:5", "alternating:4", "affine:5", "hyperoctahedral-segments:2", "pgl2:3"}) {
    const auto g = named_group(fam);
    EXPECT_TRUE(g[0].is_identity()) << fam;
    EXPECT_TRUE(std::is_sorted(g.elements().begin(), g.elements().end())) << fam;
    for (const auto& a : g.elements()) {
      EXPECT_TRUE(g.contains(a.inverse()));
      for (const auto& b : g.elements()) ASSERT_TRUE(g.contains(a * b)) << fam;
    }
    EXPECT_EQ(factorial(g.degree()) % static_cast<long long>(g.order()), 0) << fam;
  }
}

TEST(Closure, CapIsReported) {
  const std::vector<Permutation> gens{P({2, 1, 3, 4, 5, 6, 7, 8}), P({2, 3, 4, 5, 6, 7, 8, 1})};
  try {
    closure(8, gens, 1000);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.cap(), 1000);
    EXPECT_NE(std::string(e.what()).find("group too large"), std::string::npos);
  }
}

TEST(Derangements, Examples) {
  EXPECT_TRUE(derangements(named_group("trivial:3")).empty());
  const auto d3 = derangements(named_group("symmetric:3"));
  ASSERT_EQ(d3.size(), 2u);
  for (const auto& d : d3) EXPECT_EQ(d.one_based() == std::vector<int>({2, 3, 1}) || d.one_based() == std::vector<int>({3, 1, 2}), true);
  // oracle: subfactorial !4 = 9
  EXPECT_EQ(derangements(named_group("symmetric:4")).size(), 9u);
}

TEST(Orbits, Examples) {
  const auto triv = named_group("trivial:3");
  EXPECT_EQ(orbits(triv), (std::vector<std::vector<int>>{{0}, {1}, {2}}));
  EXPECT_FALSE(is_transitive(triv));
  EXPECT_TRUE(is_transitive(gen(4, {{2, 3, 4, 1}})));
  EXPECT_EQ(orbits(gen(4, {{2, 1, 3, 4}})), (std::vector<std::vector<int>>{{0, 1}, {2}, {3}}));
}

TEST(TransitivityLevel, Examples) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(transitivity_level(named_group("cyclic:" + std::to_string(n))), n);
  EXPECT_EQ(transitivity_level(named_group("symmetric:4")), 4);
  EXPECT_EQ(transitivity_level(named_group("symmetric:3")), 3);
  EXPECT_THROW(transitivity_level(named_group("trivial:3")), InputError);
}

TEST(TransitivityLevel, MatchesSubsetEnumeration) {
  for (const char* fam : {"symmetric:3", "cyclic:4", "dihedral:4", "dihedral:5", "alternating:4", "hyperoctahedral-segments:2"}) {
    const auto g = named_group(fam);
    EXPECT_EQ(transitivity_level(g), brute_level(g)) << fam;
  }
}

TEST(SetCover, MatchesBruteForceOnRandomInstances) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    detail::SetCoverProblem prob;
    prob.universe = 8;
    const int m = 9;
    for (int s = 0; s < m; ++s) {
      std::vector<int> set;
      for (int x = 0; x < prob.universe; ++x)
        if (rng() % 3 == 0) set.push_back(x);
      prob.sets.push_back(set);
    }
    for (int x = 0; x < prob.universe; ++x) prob.blocks.push_back({x});
    int best = -1;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      unsigned covered = 0;
      for (int s = 0; s < m; ++s)
        if (mask >> s & 1)
          for (int x : prob.sets[s]) covered |= 1u << x;
      if (covered == (1u << prob.universe) - 1) {
        const int size = __builtin_popcount(mask);
        if (best < 0 || size < best) best = size;
      }
    }
    EXPECT_EQ(detail::exact_set_cover(prob), best) << "trial " << trial;
  }
}

TEST(Certificate, CyclicPowers) {
  const auto z5 = named_group("cyclic:5");
  const auto cert = strongest_transitive_certificate(z5);
  ASSERT_TRUE(cert);
  ASSERT_EQ(cert->size(), 5u);
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      if (a != b) EXPECT_TRUE(((*cert)[a].inverse() * (*cert)[b]).is_derangement());
}

TEST(Certificate, Pgl2FiveHasOne) {
  const auto cert = strongest_transitive_certificate(pgl2(5));
  ASSERT_TRUE(cert);
  for (std::size_t a = 0; a < cert->size(); ++a)
    for (std::size_t b = a + 1; b < cert->size(); ++b) EXPECT_TRUE((*cert)[a].disagrees_everywhere((*cert)[b]));
}

TEST(Certificate, EquivalentToLevelAndLatinTuples) {
  auto groups = transitive_subgroups_of_s4();
  ASSERT_EQ(groups.size(), 9u);  // Z4 x3, V4, D4 x3, A4, S4
  for (const char* fam : {"dihedral:5", "affine:5", "alternating:5", "pgl2:5", "hyperoctahedral-segments:2"})
    groups.push_back(named_group(fam));
  for (const auto& g : groups) {
    const bool cert = strongest_transitive_certificate(g).has_value();
    const int n = g.degree();
    EXPECT_EQ(cert, transitivity_level(g) == n);
    EXPECT_EQ(cert, !latin_tuples(g, 1).empty());
    EXPECT_GE(transitivity_level(g), n);
    if (cert) {
      const auto mu = character_measure(g);
      EXPECT_GE(derangements(g).size(), static_cast<std::size_t>(n - 1));
      EXPECT_GE(mu.weights[0], Rational(n - 1) * mu.weights[static_cast<std::size_t>(n)]);
    }
    if (!deranging_subgroups(g, static_cast<std::size_t>(n)).empty()) EXPECT_TRUE(cert);
  }
}

TEST(Certificate, EveryTransitiveSubgroupOfS4) {
  for (const auto& g : transitive_subgroups_of_s4()) EXPECT_TRUE(strongest_transitive_certificate(g).has_value()) << g.order();
}

TEST(LatinTuples, Z2) {
  const auto t = latin_tuples(named_group("cyclic:2"), 10);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_TRUE(t[0][0].is_identity());
  EXPECT_TRUE(t[1][1].is_identity());
}

TEST(LatinTuples, S4RowsFormLatinSquares) {
  const auto s4 = named_group("symmetric:4");
  const auto tuples = latin_tuples(s4, 4);
  ASSERT_EQ(tuples.size(), 4u);
  for (const auto& t : tuples) {
    const auto sq = LatinSquare::from_rows(t);
    for (int c = 0; c < 4; ++c) {
      std::set<int> col;
      for (int r = 0; r < 4; ++r) col.insert(sq(r, c));
      EXPECT_EQ(col.size(), 4u);
    }
  }
  // the full L_G for S4: 4! orderings of each of the 576/24 = 24 unordered squares
  EXPECT_EQ(latin_tuples(s4, 100000).size(), 576u);
}

TEST(LatinSquareTest, RejectsNonLatin) {
  EXPECT_THROW(LatinSquare({{0, 1}, {0, 1}}), InputError);
  EXPECT_NO_THROW(LatinSquare::from_one_based({{1, 2}, {2, 1}}));
}

TEST(DerangingSubgroups, Examples) {
  EXPECT_FALSE(deranging_subgroups(named_group("hyperoctahedral-segments:2"), 4).empty());
  const auto z5 = named_group("cyclic:5");
  const auto hs = deranging_subgroups(z5, 5);
  ASSERT_EQ(hs.size(), 1u);
  EXPECT_EQ(hs[0].elements(), z5.elements());
}

TEST(DerangingSubgroups, EveryMemberIsDeranging) {
  const auto g = pgl2(5);
  for (const auto& h : deranging_subgroups(g, 6)) {
    EXPECT_EQ(h.order(), 6u);
    for (const auto& e : h.elements()) {
      EXPECT_TRUE(g.contains(e));
      if (!e.is_identity()) EXPECT_TRUE(e.is_derangement());
    }
  }
}

TEST(Pgl2, Orders) {
  EXPECT_EQ(pgl2(3).order(), 24u);
  EXPECT_EQ(pgl2(3).degree(), 4);
  EXPECT_EQ(pgl2(5).order(), 120u);
  EXPECT_EQ(pgl2(5).degree(), 6);
  EXPECT_EQ(pgl2(7).order(), 336u);
  EXPECT_EQ(pgl2(7).degree(), 8);
  EXPECT_TRUE(is_transitive(pgl2(7)));
  EXPECT_THROW(pgl2(9), InputError);
  EXPECT_THROW(pgl2(2), InputError);
}

TEST(CharacterMeasure, Examples) {
  const auto triv = character_measure(named_group("trivial:3"));
  EXPECT_EQ(triv.weights, (std::vector<Rational>{0, 0, 0, 1}));
  const auto s3 = character_measure(named_group("symmetric:3"));
  EXPECT_EQ(s3.weights, (std::vector<Rational>{Rational(1, 3), Rational(1, 2), 0, Rational(1, 6)}));
  const auto p3 = character_measure(pgl2(3));
  EXPECT_EQ(p3.weights, (std::vector<Rational>{Rational(3, 8), Rational(1, 3), Rational(1, 4), 0, Rational(1, 24)}));
}

TEST(CharacterMeasure, InvariantsAndPgl2Formula) {
  for (const char* fam : {"cyclic:6", "dihedral:6", "alternating:5", "affine:7", "pgl2:5", "hyperoctahedral-segments:3"}) {
    const auto mu = character_measure(named_group(fam));
    EXPECT_EQ(mu.total(), Rational(1)) << fam;
    EXPECT_EQ(mu.weights[mu.degree - 1], Rational(0)) << fam;
  }
  for (int p : {3, 5, 7}) EXPECT_EQ(character_measure(pgl2(p)), pgl2_measure_formula(p)) << p;
}

TEST(CharacterMeasure, FirstMomentCountsOrbits) {
  // Burnside: E[fix] = number of orbits
  EXPECT_EQ(character_measure(gen(4, {{2, 1, 3, 4}})).moment(1), Rational(3));
  EXPECT_EQ(character_measure(named_group("symmetric:5")).moment(1), Rational(1));
}

TEST(RegularAction, DegreeEqualsOrderAndOnlyIdentityFixes) {
  const auto r = regular_action(named_group("symmetric:3"));
  EXPECT_EQ(r.degree(), 6);
  EXPECT_EQ(r.order(), 6u);
  const auto mu = character_measure(r);
  EXPECT_EQ(mu.weights[0], Rational(5, 6));
  EXPECT_EQ(mu.weights[6], Rational(1, 6));
}

TEST(NamedGroup, RejectsUnknown) {
  EXPECT_THROW(named_group("bogus:3"), InputError);
  EXPECT_THROW(named_group("cyclic:x"), InputError);
}

}  // namespace
}  // namespace qpg::perm
