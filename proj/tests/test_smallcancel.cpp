#include <random>
#include <set>

#include "doctest.h"

#include "cgt/smallcancel.hpp"
#include "test_support.hpp"

using namespace cgt;
using cgt_test::random_reduced;
using cgt_test::random_word;

namespace {
  Alphabet const ab({"a", "b"});
  Word           W(std::string const& s) {
    return parse_word(ab, s);
  }
  RelatorSet T6() {
    return RelatorSet(2, triangle_relators(6, 6, 6));
  }

  // Closure by explicit rotation of relators and inverses.
  std::set<Word> naive_closure(std::vector<Word> const& rels) {
    std::set<Word> out;
    for (auto const& r0 : rels) {
      Word r = cyclic_reduce(r0).core;
      for (Word const& b : {r, inverse(r)}) {
        for (std::size_t k = 0; k < b.size(); ++k) {
          out.insert(rotate(b, k));
        }
      }
    }
    return out;
  }

  bool is_prefix(Word const& p, Word const& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
  }

  // p is a piece iff it prefixes two distinct closure elements.
  bool naive_piece(std::set<Word> const& cl, Word const& p) {
    int c = 0;
    for (auto const& r : cl) {
      c += is_prefix(p, r);
    }
    return c >= 2;
  }

  // Fewest pieces concatenating to r (0 if impossible), by DP over prefixes.
  std::size_t naive_cover(std::set<Word> const& cl, Word const& r) {
    std::vector<std::size_t> best(r.size() + 1, SIZE_MAX);
    best[0] = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (best[i] == SIZE_MAX) {
        continue;
      }
      for (std::size_t j = i + 1; j <= r.size(); ++j) {
        if (naive_piece(cl, Word(r.begin() + i, r.begin() + j))) {
          best[j] = std::min(best[j], best[i] + 1);
        }
      }
    }
    return best[r.size()] == SIZE_MAX ? 0 : best[r.size()];
  }

  // Any subword longer than half of some closure element.
  bool naive_has_long_subword(std::set<Word> const& cl, Word const& w) {
    for (auto const& r : cl) {
      for (std::size_t len = r.size() / 2 + 1; len <= r.size(); ++len) {
        Word p(r.begin(), r.begin() + len);
        if (std::search(w.begin(), w.end(), p.begin(), p.end()) != w.end()) {
          return true;
        }
      }
    }
    return false;
  }

  std::vector<std::vector<Word>> sample_sets(std::mt19937& rng, int count) {
    std::vector<std::vector<Word>> out;
    while (static_cast<int>(out.size()) < count) {
      std::vector<Word> rels;
      for (int k = 0; k < 1 + static_cast<int>(rng() % 3); ++k) {
        Word r = cyclic_reduce(random_reduced(rng, 2, 2 + rng() % 7)).core;
        if (!r.empty()) {
          rels.push_back(r);
        }
      }
      if (!rels.empty()) {
        out.push_back(rels);
      }
    }
    return out;
  }
}  // namespace

TEST_CASE("symmetrised closure sizes") {
  CHECK(RelatorSet(2, {W("(a b)^2")}).symmetrised().size() == 4);
  CHECK(RelatorSet(2, {W("a^3")}).symmetrised().size() == 2);
  CHECK(T6().symmetrised().size() == 8);
  CHECK_THROWS_AS(RelatorSet(2, {W("a b a^-1 b^-1 b a b^-1 a^-1")}), InputError);
  CHECK(RelatorSet(2, {W("b a b^-1")}).relators()[0] == W("a"));
}

TEST_CASE("pieces of the triangle relators") {
  auto rs = T6();
  CHECK(rs.pieces().max_piece == std::vector<std::size_t>{1, 1, 1});
  CHECK(RelatorSet(2, {W("a^6")}).pieces().max_piece[0] == 0);
  // (ab)^6 alone: abab.. and baba.. share nothing, nor do the inverses.
  CHECK(RelatorSet(2, {W("(a b)^6")}).pieces().max_piece[0] == 0);
}

TEST_CASE("metric condition with exact boundaries") {
  auto rs = T6();
  CHECK(check_metric(rs, Rational{1, 4}).yes);
  auto v = check_metric(rs, Rational{1, 6});
  CHECK_FALSE(v.yes);
  CHECK(v.piece.size() == 1);
  CHECK(v.relator.size() == 6);
  CHECK(check_metric(RelatorSet(2, {W("a^6")}), Rational{1, 100}).yes);
  CHECK(parse_rational("1/4").den == 4);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}

TEST_CASE("piece table agrees with pairwise comparison") {
  std::mt19937 rng(101);
  for (auto const& rels : sample_sets(rng, 60)) {
    RelatorSet rs(2, rels);
    auto       cl = naive_closure(rels);
    auto const sym = rs.symmetrised();
    REQUIRE(sym.size() == cl.size());
    for (std::size_t i = 0; i < sym.size(); ++i) {
      Word const& r    = sym[i];
      std::size_t best = 0;
      for (auto const& o : cl) {
        if (o != r) {
          std::size_t l = 0;
          while (l < r.size() && l < o.size() && r[l] == o[l]) {
            ++l;
          }
          best = std::max(best, l);
        }
      }
      CHECK(rs.max_piece_at(i) == best);
    }
    // Covers against the naive DP.
    for (std::size_t i = 0; i < rs.relators().size(); ++i) {
      std::size_t want = 0;
      for (auto const& r : cl) {
        if (naive_closure({r}) == naive_closure({rs.relators()[i]})) {
          std::size_t c = naive_cover(cl, r);
          if (c != 0 && (want == 0 || c < want)) {
            want = c;
          }
        }
      }
      CHECK(rs.pieces().min_piece_cover[i] == want);
    }
  }
}

TEST_CASE("C(m) and implications from metric conditions") {
  auto rs = T6();
  CHECK(check_C(rs, 6).yes);
  CHECK_FALSE(check_C(rs, 7).yes);
  CHECK(check_C(RelatorSet(2, {W("(a b)^2")}), 100).yes);
  std::mt19937 rng(103);
  for (auto const& rels : sample_sets(rng, 200)) {
    RelatorSet rs2(2, rels);
    if (check_metric(rs2, Rational{1, 6}).yes) {
      CHECK(check_C(rs2, 6).yes);
    }
    if (check_metric(rs2, Rational{1, 4}).yes) {
      CHECK(check_C(rs2, 4).yes);
    }
    // Monotone in lambda.
    if (check_metric(rs2, Rational{1, 6}).yes) {
      CHECK(check_metric(rs2, Rational{1, 4}).yes);
    }
  }
}

TEST_CASE("T(4) against exhaustive triples") {
  CHECK(check_T(T6()).yes);
  CHECK(check_T(RelatorSet(2, {W("a^2 b^3"), W("a b a b^2")})).yes);
  CHECK_THROWS_AS(check_T(T6(), 5), InputError);
  std::mt19937 rng(107);
  for (auto const& rels : sample_sets(rng, 80)) {
    RelatorSet  rs(2, rels);
    auto const& s   = rs.symmetrised();
    bool        bad = false;
    for (auto const& r1 : s) {
      for (auto const& r2 : s) {
        for (auto const& r3 : s) {
          if (r2 == inverse(r1) || r3 == inverse(r2) || r1 == inverse(r3)) {
            continue;
          }
          if (r1.back() == -r2.front() && r2.back() == -r3.front()
              && r3.back() == -r1.front()) {
            bad = true;
          }
        }
      }
    }
    auto v = check_T(rs);
    CHECK(v.yes == !bad);
  }
}

TEST_CASE("Dehn reduction examples") {
  RelatorSet a6(2, {W("a^6")});
  CHECK(dehn_reduce(a6, W("a^5")) == W("a^-1"));
  CHECK(dehn_reduce(a6, W("a^3")) == W("a^3"));
  auto rs = T6();
  CHECK(dehn_reduce(rs, W("(a b)^6")).empty());
  CHECK(word_problem(rs, W("b^-1 a^6 b")));
  CHECK_FALSE(word_problem(rs, W("a")));
  CHECK_FALSE(is_cyclically_dehn_reduced(a6, W("a^6")));
  CHECK(is_cyclically_dehn_reduced(rs, W("a^3 b^3")));
  // b^-1 (ab)^4 b freely reduces to a rotation-conjugate of (ba)^3 b a:
  // its core (ba)^4 is more than half of (ba)^6.
  CHECK_FALSE(is_cyclically_dehn_reduced(rs, W("b^-1 (a b)^4 b")));
  CHECK_THROWS_AS(word_problem(RelatorSet(2, {W("a b a^-1 b^-1")}), W("a")), Refusal);
}

TEST_CASE("Dehn reduction leaves no long relator subword") {
  std::mt19937 rng(109);
  auto         rs = T6();
  auto         cl = naive_closure(triangle_relators(6, 6, 6));
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 2, 40);
    Word r = dehn_reduce(rs, w);
    CHECK(is_freely_reduced(r));
    CHECK_FALSE(naive_has_long_subword(cl, r));
    // Same exponent sums mod 6 (abelianisation of the triangle group).
    auto sums = [](Word const& x) {
      long s0 = 0, s1 = 0;
      for (Letter l : x) {
        (gen_of(l) == 0 ? s0 : s1) += sign_of(l);
      }
      return std::make_pair(((s0 % 6) + 6) % 6, ((s1 % 6) + 6) % 6);
    };
    CHECK(sums(r) == sums(w));
  }
}

TEST_CASE("word problem on products of conjugated relators") {
  std::mt19937 rng(113);
  auto         rs   = T6();
  auto const&  rels = rs.relators();
  for (int i = 0; i < 300; ++i) {
    Word w;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 3); ++k) {
      Word r = rels[rng() % rels.size()];
      if (rng() % 2) {
        r = inverse(r);
      }
      Word g = random_reduced(rng, 2, rng() % 4);
      w      = mul(w, conjugate(r, g));
    }
    CHECK(word_problem(rs, w));
  }
}

TEST_CASE("order of endomorphisms in the quotient") {
  auto rs  = T6();
  auto phi = parse_endo(ab, "a -> b; b -> b^-1 a^-1");
  CHECK(endo_order_in_quotient(rs, phi, 10) == 3);
  CHECK(endo_order_in_quotient(rs, Endomorphism::identity(2), 10) == 1);
  CHECK(endo_order_in_quotient(rs, parse_endo(ab, "a -> a^-1; b -> b^-1"), 10) == 2);
  CHECK_THROWS_AS(endo_order_in_quotient(rs, parse_endo(ab, "a -> a^2"), 10), Refusal);
}
