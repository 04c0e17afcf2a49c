#include <random>

#include "cgt/hnnforge.hpp"
#include "cgt/malchar.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cgt;

namespace {

  Presentation pres(std::vector<std::string> gens, std::string const& rels) {
    Presentation p;
    p.alphabet = Alphabet(gens);
    p.relators = parse_word_list(p.alphabet, rels);
    return p;
  }

  Presentation cyclic(long k) {
    return pres({"z"}, k == 0 ? "" : "z^" + std::to_string(k));
  }

  TPOptions minimal() {
    TPOptions o;
    o.mode = PaddingMode::minimal;
    return o;
  }

  // The displayed kernel set over (x, z): z^k and z^-j x z^j, 0 <= j < k.
  std::vector<Word> displayed(long k) {
    std::vector<Word> out{power(Word{2}, k)};
    for (long j = 0; j < k; ++j) {
      out.push_back(mul({power(Word{2}, -j), Word{1}, power(Word{2}, j)}));
    }
    return out;
  }

  HnnPresentation const& tp2() {
    static HnnPresentation const h = build_TP(cyclic(2), minimal());
    return h;
  }

}  // namespace

TEST_CASE("padded presentations") {
  auto pq = hat_presentation(cyclic(5), PaddingMode::pq);
  CHECK(pq.alphabet.names() == std::vector<std::string>{"p", "q", "z"});
  CHECK(pq.relators == parse_word_list(pq.alphabet, "z^5, p, q"));

  auto m = hat_presentation(cyclic(5), PaddingMode::minimal);
  CHECK(m.alphabet.names() == std::vector<std::string>{"x", "z"});
  CHECK(m.relators == parse_word_list(m.alphabet, "z^5, x"));

  auto ab = pres({"a", "b"}, "a b a^-1 b^-1");
  CHECK(hat_presentation(ab, PaddingMode::minimal) == ab);

  // Fresh names avoid the input's generators.
  auto clash = hat_presentation(pres({"p", "x"}, ""), PaddingMode::pq);
  CHECK(clash.alphabet.names() == std::vector<std::string>{"p1", "q", "p", "x"});
  auto free2 = hat_presentation(pres({"x", "y"}, ""), PaddingMode::minimal);
  CHECK(free2.alphabet.names() == std::vector<std::string>{"x1", "x", "y"});
  CHECK(free2.relators == std::vector<Word>{Word{1}});
  auto none = hat_presentation(Presentation{}, PaddingMode::minimal);
  CHECK(none.num_gens() == 2);
  CHECK(none.relators.size() == 2);
}

TEST_CASE("cyclic inputs, finite quotients") {
  for (long k = 2; k <= 5; ++k) {
    auto h = build_TP(cyclic(k), minimal());
    REQUIRE(h.quotient);
    CHECK(h.quotient->num_cosets() == static_cast<std::size_t>(k));
    CHECK_FALSE(h.truncated);
    CHECK(same_subgroup(build_and_fold(2, h.k_hat), build_and_fold(2, displayed(k))));
    auto sorted = displayed(k);
    std::sort(sorted.begin(), sorted.end(), shortlex_less);
    CHECK(h.k_hat == sorted);
    // Expanded over a, b the subgroup is the image of the displayed set.
    std::vector<Word> expanded;
    for (auto const& w : displayed(k)) {
      expanded.push_back(h.m.expand(w));
    }
    CHECK(same_subgroup(build_and_fold(2, h.k_generators), build_and_fold(2, expanded)));
    CHECK(h.m.names == std::vector<std::string>{"x", "y"});
    auto seed = seed_words_triangle(8);
    CHECK(h.m.words == std::vector<Word>{seed.first, seed.second});
  }
  auto lines = tp2().render();
  CHECK(lines == std::vector<std::string>{"t x t^-1 = phi(x)", "t y^2 t^-1 = phi(y^2)",
                                          "t y^-1 x y t^-1 = phi(y^-1 x y)"});
}

TEST_CASE("free input, infinite quotient") {
  auto o  = minimal();
  o.depth = 3;
  auto h  = build_TP(cyclic(0), o);
  CHECK_FALSE(h.quotient);
  REQUIRE(h.truncated);
  CHECK(*h.truncated == 3);
  std::set<Word> expect;
  for (long j = -3; j <= 3; ++j) {
    expect.insert(mul({power(Word{2}, -j), Word{1}, power(Word{2}, j)}));
  }
  CHECK(std::set<Word>(h.k_hat.begin(), h.k_hat.end()) == expect);
  CHECK(std::find(h.caveats.begin(), h.caveats.end(), TRUNCATED_MARKER) != h.caveats.end());
  CHECK(h.render().back() == "# truncated parametric family, depth 3");
  CHECK(h.file().truncated == 3u);
  CHECK_THROWS_WITH_AS(britton_reduce(HnnGroup(h.file()), BrittonWord{}),
                       "finite quotient required", Refusal);
}

TEST_CASE("pq construction") {
  TPOptions o;
  o.rho  = 4;
  auto h = build_TP(cyclic(2), o);
  CHECK(h.hat.alphabet.names() == std::vector<std::string>{"p", "q", "z"});
  CHECK(h.m.words.size() == 3);
  CHECK(h.m.names == std::vector<std::string>{"m1", "m2", "m3"});
  REQUIRE(h.quotient);
  CHECK(h.quotient->num_cosets() == 2);
  // Nielsen-Schreier: the kernel has rank 2 (3 - 1) + 1.
  CHECK(rank(build_and_fold(3, h.k_hat)) == 5);
  auto mg = build_and_fold(2, h.m.words);
  for (auto const& w : h.k_generators) {
    CHECK(contains(mg, w));
  }
  CHECK_THROWS_AS(build_TP(cyclic(2), [] {
                    TPOptions x;
                    x.exponents = {5, 6, 6};
                    return x;
                  }()),
                  Refusal);
}

TEST_CASE("stable endomorphism") {
  auto phi = stable_endomorphism({6, 6, 6});
  CHECK(endo_power(phi, 3) == Endomorphism::identity(2));
  RelatorSet t6(2, triangle_relators(6, 6, 6));
  CHECK(endo_order_in_quotient(t6, phi, 10) == 3u);
  for (auto const& r : triangle_relators(6, 6, 6)) {
    CHECK(word_problem(t6, apply_endo(phi, r)));
  }
  auto psi = stable_endomorphism({7, 8, 9});
  RelatorSet t789(2, triangle_relators(7, 8, 9));
  CHECK(endo_order_in_quotient(t789, psi, 10) == 2u);
  CHECK(tp2().phi_order == 3);
}

TEST_CASE("file form") {
  auto f = tp2().file();
  CHECK(f.is_hnn());
  CHECK(*f.stable == "t");
  CHECK(f.assoc == tp2().k_generators);
  auto again = parse_presentation(print_presentation(f));
  CHECK(again == f);
  HnnGroup g(again);
  CHECK(g.phi_order() == 3);
  for (auto const& w : tp2().k_generators) {
    CHECK(g.in_associated(w));
    CHECK(g.in_image(g.phi(w)));
  }
}

TEST_CASE("Britton reduction examples") {
  HnnGroup g(tp2().file());
  Word     x = tp2().m.words[0], y = tp2().m.words[1];
  auto     bw = [](std::vector<Word> syl, std::vector<int> signs) {
    return BrittonWord{std::move(syl), std::move(signs)};
  };
  // The defining relator.
  auto r = britton_reduce(g, bw({{}, x, inverse(g.phi(x))}, {1, -1}));
  CHECK(r.trivial);
  CHECK(r.word.stable_letters() == 0);
  REQUIRE(r.log.size() == 1);
  CHECK(r.log[0].syllable == x);
  // a is not in M, and y maps to the nontrivial element of Z/2.
  for (Word const& h : {Word{1}, y, power(y, 3)}) {
    auto s = britton_reduce(g, bw({{}, h, {}}, {1, -1}));
    CHECK_FALSE(s.trivial);
    CHECK(s.word.stable_letters() == 2);
    CHECK(s.log.empty());
  }
  // The inverse direction: t^-1 phi(x) t = x.
  auto q = britton_reduce(g, bw({{}, g.phi(x), inverse(x)}, {-1, 1}));
  CHECK(q.trivial);
  // Two pinches in sequence, and t^-1 t cancelling in front of a pinch.
  auto y2 = power(y, 2);
  auto n  = britton_reduce(
      g, bw({{}, x, inverse(g.phi(x)), y2, inverse(g.phi(y2))}, {1, -1, 1, -1}));
  CHECK(n.trivial);
  CHECK(n.log.size() == 2);
  auto c = britton_reduce(g, bw({{}, {}, x, inverse(g.phi(x))}, {-1, 1, -1}));
  CHECK_FALSE(c.trivial);
  CHECK(c.word.stable_letters() == 1);
  // t phi(x) t^-1 needs phi(x) in K, which fails: only one pinch happens.
  auto d = britton_reduce(g, bw({{}, {}, x, {}, {}}, {1, 1, -1, -1}));
  CHECK(d.log.size() == 1);
  CHECK(d.word.stable_letters() == 2);
  CHECK(is_britton_reduced(g, d.word));
  // Base words.
  CHECK(britton_reduce(g, bw({power(Word{1}, 6)}, {})).trivial);
  CHECK_FALSE(britton_reduce(g, bw({power(Word{1}, 5)}, {})).trivial);
  // Parsing and printing.
  auto p = parse_britton(alphabet_ab(), "t", "a t b^2 t^-1 a");
  CHECK(p.signs == std::vector<int>{1, -1});
  CHECK(p.syllables == std::vector<Word>{Word{1}, Word{2, 2}, Word{1}});
  CHECK(to_string(alphabet_ab(), "t", p) == "a t b^2 t^-1 a");
  CHECK(to_string(alphabet_ab(), "t", BrittonWord{}) == "1");
}

TEST_CASE("Britton reduction of relator products") {
  // Products of conjugates of defining relators are trivial; Britton
  // reduction plus Dehn's algorithm must see that. Products with one
  // relator replaced by a perturbed copy must not reduce to the identity
  // unless the perturbation is itself trivial.
  auto const& h = tp2();
  HnnGroup    g(h.file());
  std::mt19937 rng(5);
  std::vector<std::string> names{"a", "b", "t"};
  Alphabet ext(names);
  Letter const T = 3;
  auto relator = [&](std::size_t i) {
    // t U t^-1 phi(U)^-1 or a base relator.
    if (i < h.k_generators.size()) {
      Word u = h.k_generators[i];
      return mul({Word{T}, u, Word{-T}, inverse(g.phi(u))});
    }
    return h.base.relators[i - h.k_generators.size()];
  };
  auto to_britton = [](Word const& w) {
    BrittonWord b;
    for (Letter l : w) {
      if (gen_of(l) == 2) {
        b.signs.push_back(sign_of(l));
        b.syllables.emplace_back();
      } else {
        b.syllables.back().push_back(l);
      }
    }
    return b;
  };
  std::size_t const nrel = h.k_generators.size() + h.base.relators.size();
  for (int trial = 0; trial < 60; ++trial) {
    Word w;
    for (int f = 0, m = 1 + static_cast<int>(rng() % 3); f < m; ++f) {
      Word c = cgt_test::random_reduced(rng, 3, rng() % 3);
      Word r = relator(rng() % nrel);
      if (rng() % 2) {
        r = inverse(r);
      }
      w = mul({w, inverse(c), r, c});
    }
    auto b = to_britton(free_reduce(w));
    auto res = britton_reduce(g, b);
    CHECK(res.trivial);
    CHECK(res.word.stable_letters() <= b.stable_letters());
  }
  // A lone stable letter survives.
  for (int trial = 0; trial < 30; ++trial) {
    Word c = cgt_test::random_reduced(rng, 2, rng() % 5);
    auto b = to_britton(mul({c, Word{T}, inverse(c)}));
    auto res = britton_reduce(g, b);
    CHECK_FALSE(res.trivial);
    CHECK(res.word.stable_letters() == 1);
    CHECK(is_britton_reduced(g, res.word));
  }
}

TEST_CASE("quotient morphisms") {
  auto o = minimal();
  // z^2 is in the normal closure of z^2 but not of z^4.
  auto m = quotient_morphism(cyclic(4), cyclic(2), o);
  CHECK(std::find(m.u_hat.begin(), m.u_hat.end(), Word{2, 2}) != m.u_hat.end());
  CHECK_FALSE(m.truncated);
  CHECK_THROWS_WITH_AS(quotient_morphism(cyclic(2), cyclic(2), o), "not a proper quotient",
                       InputError);
  CHECK_THROWS_WITH_AS(quotient_morphism(cyclic(0), cyclic(0), o), "not a proper quotient",
                       InputError);
  CHECK_THROWS_AS(quotient_morphism(cyclic(2), cyclic(3), o), InputError);
  CHECK_THROWS_AS(quotient_morphism(cyclic(2), cyclic(0), o), InputError);
  CHECK_THROWS_AS(quotient_morphism(cyclic(2), pres({"w"}, "w"), o), InputError);
  // From the truncated infinite family.
  auto inf = quotient_morphism(cyclic(0), cyclic(3), o);
  CHECK(inf.truncated);
  CHECK(inf.u_hat == std::vector<Word>{Word{2, 2, 2}});

  // Functoriality: Z/12 -> Z/6 -> Z/2 against Z/12 -> Z/2 directly.
  auto k1  = hat_kernel(hat_presentation(cyclic(12), o.mode), o.max_cosets, o.depth);
  auto k3  = hat_kernel(hat_presentation(cyclic(2), o.mode), o.max_cosets, o.depth);
  auto m12 = quotient_morphism(cyclic(12), cyclic(6), o);
  auto m23 = quotient_morphism(cyclic(6), cyclic(2), o);
  auto m13 = quotient_morphism(cyclic(12), cyclic(2), o);
  auto composed = k1.generators;
  composed.insert(composed.end(), m12.u_hat.begin(), m12.u_hat.end());
  composed.insert(composed.end(), m23.u_hat.begin(), m23.u_hat.end());
  auto direct = k1.generators;
  direct.insert(direct.end(), m13.u_hat.begin(), m13.u_hat.end());
  CHECK(same_subgroup(build_and_fold(2, composed), build_and_fold(2, direct)));
  CHECK(same_subgroup(build_and_fold(2, direct), build_and_fold(2, k3.generators)));
}

TEST_CASE("free product morphisms") {
  TPOptions o;
  o.rho = 4;
  // With the trivial group the free product changes nothing.
  auto same = free_product_morphism(cyclic(2), Presentation{}, o);
  CHECK(same.u_hat.empty());
  CHECK_FALSE(same.truncated);
  auto fp = free_product(cyclic(2), pres({"w"}, ""));
  CHECK(fp.alphabet.names() == std::vector<std::string>{"z", "w"});
  auto ren = free_product(cyclic(2), cyclic(3));
  CHECK(ren.alphabet.names() == std::vector<std::string>{"z", "z1"});
  CHECK(ren.relators == std::vector<Word>{Word{1, 1}, Word{2, 2, 2}});

  auto m = free_product_morphism(cyclic(2), pres({"w"}, ""), o);
  REQUIRE(m.truncated);
  CHECK_FALSE(m.u_hat.empty());
  CHECK(m.m.words.size() == 4);
  // Every new generator involves the new block generator w (index 3).
  for (auto const& u : m.u_hat) {
    CHECK(std::any_of(u.begin(), u.end(), [](Letter l) { return gen_of(l) == 3; }));
  }
  // Nesting: M_3 is a prefix of M_4.
  auto m3 = m_family(3, 4, PaddingMode::pq);
  CHECK(std::equal(m3.words.begin(), m3.words.end(), m.m.words.begin()));
}

TEST_CASE("residual witnesses") {
  auto const& h = tp2();
  Word        x = h.m.words[0], y = h.m.words[1];
  auto w = residual_witness(h, BrittonWord{{{}, power(y, 3), {}}, {1, -1}});
  CHECK_FALSE(w.trivial_quotient);
  REQUIRE(w.entries.size() == 1);
  CHECK(w.entries[0].constrained);
  REQUIRE(w.entries[0].image);
  CHECK(image_in_quotient(*h.quotient, *w.entries[0].image) != 0);

  auto a = residual_witness(h, BrittonWord{{{}, Word{1}, {}}, {1, -1}});
  CHECK(a.trivial_quotient);
  CHECK_FALSE(a.entries[0].constrained);

  auto base = residual_witness(h, BrittonWord{{power(Word{1}, 5)}, {}});
  CHECK(base.trivial_quotient);
  CHECK(base.entries.empty());

  CHECK_THROWS_AS(residual_witness(h, BrittonWord{{{}, x, {}}, {1, -1}}), InputError);
  CHECK_THROWS_AS(residual_witness(h, BrittonWord{{power(Word{1}, 6)}, {}}), InputError);
}
