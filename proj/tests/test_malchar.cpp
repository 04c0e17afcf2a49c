#include <algorithm>
#include <random>
#include <set>

#include "cgt/malchar.hpp"
#include "cgt/smallcancel.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cgt;
using cgt_test::all_reduced;

namespace {

  Word w(std::string_view s) {
    return parse_word(alphabet_ab(), s);
  }

  bool is_automorphism(Endomorphism const& e) {
    auto g = build_and_fold(2, e.images());
    return g.num_vertices() == 1 && rank(g) == 2;
  }

  // Closed cyclically reduced paths of length <= len at every vertex.
  std::vector<Word> circuits(SubgroupGraph const& g, std::size_t len) {
    std::vector<Word> out;
    for (auto const& c : all_reduced(2, len)) {
      if (c.empty() || !is_cyclically_reduced(c)) {
        continue;
      }
      for (vertex_type v = 0; v < g.num_vertices(); ++v) {
        auto end = g.read(c, v);
        if (end && *end == v) {
          out.push_back(c);
          break;
        }
      }
    }
    return out;
  }

  bool cyclic_cube(Word const& c, std::size_t gen) {
    for (int sign : {1, -1}) {
      Word cube(3, make_letter(gen, sign));
      // c is cyclically reduced, so plain concatenation stays reduced.
      Word ww = c;
      for (int i = 0; i < 3; ++i) {
        ww.insert(ww.end(), c.begin(), c.end());
      }
      if (std::search(ww.begin(), ww.end(), cube.begin(), cube.end()) != ww.end()) {
        return true;
      }
    }
    return false;
  }

  // Naive reading of the semigroup {a^2, a^3, b^2, b^3}^+: positive, and
  // every maximal run has length at least 2.
  bool in_cube_semigroup(Word const& x) {
    if (x.empty() || !is_positive(x)) {
      return false;
    }
    std::size_t i = 0;
    while (i < x.size()) {
      std::size_t j = i;
      while (j < x.size() && x[j] == x[i]) {
        ++j;
      }
      if (j - i < 2) {
        return false;
      }
      i = j;
    }
    return true;
  }

  Word random_cube_word(std::mt19937& rng, std::size_t blocks) {
    std::uniform_int_distribution<int> d(2, 3);
    Word                               out;
    Letter                             l = rng() % 2 ? 1 : 2;
    for (std::size_t i = 0; i < blocks; ++i) {
      out.insert(out.end(), d(rng), l);
      l = l == 1 ? 2 : 1;
    }
    return out;
  }

}  // namespace

TEST_CASE("length-preserving automorphisms") {
  auto autos = length_preserving_autos();
  REQUIRE(autos.size() == 8);
  CHECK(autos[0] == Endomorphism::identity(2));
  CHECK(autos[1] == Endomorphism({w("b"), w("a")}));
  // Oracle: every map sending generators to distinct signed generators.
  std::set<std::vector<Word>> expected;
  for (Letter x : {1, -1, 2, -2}) {
    for (Letter y : {1, -1, 2, -2}) {
      if (gen_of(x) != gen_of(y)) {
        expected.insert({Word{x}, Word{y}});
      }
    }
  }
  std::set<std::vector<Word>> got;
  for (auto const& e : autos) {
    CHECK(is_automorphism(e));
    got.insert(e.images());
  }
  CHECK(got == expected);
}

TEST_CASE("circuit cubes against enumerated circuits") {
  CHECK(every_circuit_has_cube(build_and_fold(2, {w("a^3 b^3")}), 0));
  CHECK(every_circuit_has_cube(build_and_fold(2, {w("a^3 b^3")}), 1));
  CHECK_FALSE(every_circuit_has_cube(build_and_fold(2, {w("a^2 b^2")}), 0));
  auto mixed = build_and_fold(2, {w("a^3 b^2"), w("a^2 b^3")});
  CHECK(every_circuit_has_cube(mixed, 0) == false);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Word> s{random_cube_word(rng, 2 + rng() % 3)};
    if (trial % 2) {
      s.push_back(random_cube_word(rng, 2 + rng() % 3));
    }
    auto g = build_and_fold(2, s);
    auto cs = circuits(g, 12);
    for (std::size_t gen : {0U, 1U}) {
      bool brute_bad = std::any_of(cs.begin(), cs.end(),
                                   [&](Word const& c) { return !cyclic_cube(c, gen); });
      // The enumeration is bounded, so only one direction is decisive.
      if (brute_bad) {
        CHECK_FALSE(every_circuit_has_cube(g, gen));
      }
      if (every_circuit_has_cube(g, gen)) {
        CHECK_FALSE(brute_bad);
      }
    }
  }
}

TEST_CASE("hypotheses of the free decision procedure") {
  auto ok = malcharlem_hypotheses({w("a^3 b^3 a^2 b^3")});
  CHECK(ok.yes);
  auto dup = malcharlem_hypotheses({w("a^3 b^3"), w("a^3 b^3")});
  CHECK_FALSE(dup.distinct);
  CHECK_FALSE(dup.yes);
  auto single = malcharlem_hypotheses({w("a^3 b a b^3")});
  CHECK_FALSE(single.in_semigroup);
  CHECK_FALSE(malcharlem_hypotheses({w("a^3 b^-3")}).in_semigroup);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Word x = cgt_test::random_word(rng, 2, 1 + rng() % 8);
    if (trial % 3 == 0) {
      x = random_cube_word(rng, 1 + rng() % 4);
    }
    x = free_reduce(x);
    if (x.empty()) {
      continue;
    }
    CHECK(malcharlem_hypotheses({x}).in_semigroup == in_cube_semigroup(x));
  }
}

TEST_CASE("free malcharacteristic decisions") {
  for (std::size_t rho : {6U, 8U, 10U}) {
    auto s = seed_words_free(rho);
    CHECK(decide_malcharacteristic_free({s.first, s.second}).yes);
  }

  auto v = decide_malcharacteristic_free({w("a^3 b^3")});
  CHECK_FALSE(v.yes);
  CHECK(v.failed_check == "automorphism");
  REQUIRE(v.automorphism);
  CHECK(*v.automorphism == 1);
  REQUIRE(v.witness);
  auto alpha = length_preserving_autos()[*v.automorphism];
  CHECK_FALSE(free_reduce(v.witness->u).empty());
  CHECK(contains(build_and_fold(2, {apply_endo(alpha, w("a^3 b^3"))}), v.witness->u));
  CHECK(contains(build_and_fold(2, {w("a^3 b^3")}),
                 mul({v.witness->g, v.witness->u, inverse(v.witness->g)})));

  CHECK_THROWS_AS(decide_malcharacteristic_free({w("a^2 b^2")}), Refusal);
}

TEST_CASE("free decisions against a bounded conjugator search") {
  std::vector<std::vector<Word>> cases{{w("a^3 b^3 a^2 b^2")},
                                       {w("a^3 b^2 a^2 b^3")},
                                       {w("a^3 b^3 a^3 b^2"), w("a^2 b^3 a^3 b^3")},
                                       {w("a^3 b^3"), w("a^2 b^3 a^3 b^2")}};
  for (std::size_t rho : {3U, 4U, 5U}) {
    auto seed = seed_words_free(rho);
    cases.push_back({seed.first, seed.second});
  }
  auto        gs    = all_reduced(2, 3);
  auto        autos = length_preserving_autos();
  std::size_t yes   = 0;
  for (auto const& s : cases) {
    REQUIRE(malcharlem_hypotheses(s).yes);
    auto v = decide_malcharacteristic_free(s);
    auto h = build_and_fold(2, s);
    if (!v.yes) {
      REQUIRE(v.witness);
      Word const& u = v.witness->u;
      Word        g = v.witness->g;
      CHECK_FALSE(free_reduce(u).empty());
      if (v.failed_check == "automorphism") {
        REQUIRE(v.automorphism);
        std::vector<Word> image;
        for (auto const& x : s) {
          image.push_back(apply_endo(autos[*v.automorphism], x));
        }
        CHECK(contains(build_and_fold(2, image), u));
      } else {
        CHECK(contains(h, u));
        CHECK_FALSE(contains(h, g));
      }
      CHECK(contains(h, mul({g, u, inverse(g)})));
      continue;
    }
    ++yes;
    for (std::size_t i = 1; i < autos.size(); ++i) {
      for (auto const& x : s) {
        Word u = apply_endo(autos[i], x);
        for (auto const& g : gs) {
          CHECK_FALSE(contains(h, mul({g, u, inverse(g)})));
        }
      }
    }
  }
  // Seed pairs at rho = 4, 5; the rho = 3 pair has an automorphism witness.
  CHECK(yes == 2);
}

TEST_CASE("seed words") {
  auto s2 = seed_words_free(2);
  CHECK(s2.first == w("a^3 b^3 a^3 b^4"));
  CHECK(s2.second == w("a^3 b^5 a^3 b^6"));
  for (std::size_t rho = 2; rho <= 12; ++rho) {
    auto s = seed_words_free(rho);
    CHECK(s.first.size() == 3 * rho + rho * (rho + 5) / 2);
    auto t = seed_words_triangle(rho);
    CHECK(t.flavor == SeedFlavor::triangle);
    CHECK(t.first == apply_endo(block_substitution(), s.first));
    CHECK(t.second == apply_endo(block_substitution(), s.second));
    CHECK(is_freely_reduced(t.first));
  }
  CHECK(seed_words_triangle(2).first == w("(a b^-1)^3 (a^2 b^-1)^3 (a b^-1)^3 (a^2 b^-1)^4"));
  CHECK(is_automorphism(block_substitution()));
  CHECK_THROWS_AS(seed_words_free(1), InputError);
}

TEST_CASE("forbidden factors") {
  auto naive = [](Word const& x, Word const& p) {
    std::size_t n = 0;
    for (std::size_t i = 0; i + p.size() <= x.size(); ++i) {
      n += std::equal(p.begin(), p.end(), x.begin() + i);
    }
    return n;
  };
  CHECK(count_forbidden(w("a^5")).a4 == 2);
  CHECK(count_forbidden(w("b^-4")).b4 == 1);
  CHECK(count_forbidden(w("(a b)^3")).ab3 == 1);
  CHECK(count_forbidden(w("(a b)^3 a")).ab3 == 2);  // (ba)^3 overlaps
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Word x = cgt_test::random_reduced(rng, 2, rng() % 20);
    auto c = count_forbidden(x);
    CHECK(c.a4 == naive(x, w("a^4")) + naive(x, w("a^-4")));
    CHECK(c.b4 == naive(x, w("b^4")) + naive(x, w("b^-4")));
    CHECK(c.ab3
          == naive(x, w("(a b)^3")) + naive(x, w("(a b)^-3")) + naive(x, w("(b a)^3"))
                 + naive(x, w("(b a)^-3")));
  }
}

TEST_CASE("the twelve maps and their transversals") {
  auto maps = psi_maps();
  REQUIRE(maps.size() == 12);
  CHECK(maps[0].map == Endomorphism::identity(2));
  CHECK(maps[0].name() == "psi(1,+1)");
  CHECK(maps[1].map == Endomorphism({w("a^-1"), w("b^-1")}));
  CHECK(maps[6].map == Endomorphism({w("b"), w("a")}));
  CHECK(maps[3].map == Endomorphism({w("a^-1"), w("a b")}));
  std::set<std::vector<Word>> distinct;
  RelatorSet                  t6(2, triangle_relators(6, 6, 6));
  for (auto const& p : maps) {
    CHECK(is_automorphism(p.map));
    distinct.insert(p.map.images());
    // Each map permutes the relators of the equilateral group up to
    // conjugacy and inversion, so relator images die in the quotient.
    for (auto const& r : t6.relators()) {
      CHECK(word_problem(t6, apply_endo(p.map, r)));
    }
  }
  CHECK(distinct.size() == 12);

  CHECK(psi_transversal(6, 7, 8).maps.size() == 2);
  auto iso = psi_transversal(7, 6, 7);
  CHECK(iso.maps.size() == 4);
  CHECK(iso.exponents == std::array<std::size_t, 3>{7, 7, 6});
  CHECK(psi_transversal(6, 6, 9).exponents == std::array<std::size_t, 3>{6, 6, 9});
  CHECK(psi_transversal(9, 6, 6).exponents == std::array<std::size_t, 3>{6, 6, 9});
  CHECK(psi_transversal(6, 6, 6).maps.size() == 12);
  CHECK_THROWS_AS(psi_transversal(5, 6, 6), Refusal);
}

TEST_CASE("rank-n families") {
  auto seed = seed_words_free(2);
  CHECK_THROWS_AS(rank_n_family(seed, 0), InputError);
  auto f3 = rank_n_family(seed, 3);
  REQUIRE(f3.words.size() == 3);
  RelatorSet over(2, f3.over_seed);
  CHECK(check_metric(over, Rational{1, 6}).yes);
  for (auto const& u : f3.over_seed) {
    CHECK_FALSE(proper_power(u));
  }
  // Minimality of the chunk count.
  if (f3.chunks > 1) {
    auto smaller = family_with_chunks(seed, 3, f3.chunks - 1);
    CHECK_FALSE(check_metric(RelatorSet(2, smaller.over_seed), Rational{1, 6}).yes);
  }
  Endomorphism expand({seed.first, seed.second});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(f3.words[i] == apply_endo(expand, f3.over_seed[i]));
  }
  // Families are nested.
  auto f4 = family_with_chunks(seed, 4, f3.chunks);
  CHECK(std::equal(f3.over_seed.begin(), f3.over_seed.end(), f4.over_seed.begin()));

  CHECK_THROWS_AS(rank_n_family(seed_words_triangle(8), 2, triangle_relators(6, 6, 6)),
                  Refusal);
}

TEST_CASE("triangle certificate structure") {
  auto c = decide_malcharacteristic_triangle(6, 6, 6, 4, 3);
  CHECK(c.stages.size() == 1 + 1 + 12 + 11);
  CHECK(c.psi.size() == 12);
  bool all = true;
  for (auto const& st : c.stages) {
    all = all && st.yes;
  }
  CHECK(c.certified == all);
  CHECK(c.first_failure.empty() == all);
  CHECK(c.stages[1].yes);  // free shadow via the block substitution
  for (auto const& rep : c.psi) {
    CHECK(rep.family.yes);
    CHECK(rep.forbidden.total() == 0);
  }
  CHECK_THROWS_AS(decide_malcharacteristic_triangle(6, 5, 6, 4, 3), Refusal);
}
