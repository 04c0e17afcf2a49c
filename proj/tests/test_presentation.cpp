#include <random>

#include "cgt/presentation.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cgt;

TEST_CASE("parse base presentations") {
  auto t6 = parse_presentation("gens: a b\nrels: a^6, b^6, (a b)^6\n");
  CHECK(t6.base.alphabet.names() == std::vector<std::string>{"a", "b"});
  REQUIRE(t6.base.relators.size() == 3);
  CHECK(t6.base.relators[2] == power(Word{1, 2}, 6));
  CHECK_FALSE(t6.is_hnn());

  auto free = parse_presentation("gens: z\nrels:");
  CHECK(free.base.num_gens() == 1);
  CHECK(free.base.relators.empty());

  auto trivial = parse_presentation("# the trivial group\ngens:\nrels:\n");
  CHECK(trivial.base.num_gens() == 0);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_presentation("gens: a\nrels: a b");
    FAIL("expected a throw");
  } catch (ParseError const& e) {
    CHECK(std::string(e.what()).find("unknown generator b") != std::string::npos);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(e.position() == 8);
  }
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels: a^"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels: (a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rels: a\ngens: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a a\nrels:"), InputError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels:\nrels:"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels:\nfoo: 1"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels:\nassoc: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels:\nstable: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels:\nstable: t\ntruncated: -1"), ParseError);
}

TEST_CASE("HNN sections") {
  auto f = parse_presentation(
      "gens: a b\nrels: a^6, b^6, (a b)^6\nstable: t\nassoc: a b, b^2\n"
      "endo: a -> b; b -> b^-1 a^-1\ntruncated: 3\n");
  CHECK(f.is_hnn());
  CHECK(*f.stable == "t");
  CHECK(f.assoc.size() == 2);
  REQUIRE(f.endo);
  CHECK(f.endo->image(1) == Word{-2, -1});
  CHECK(*f.truncated == 3);
  CHECK(parse_presentation(print_presentation(f)) == f);
}

TEST_CASE("print then parse round trip") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t              n = 1 + rng() % 4;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::string(1, static_cast<char>('a' + i)) + (rng() % 2 ? "" : "1"));
    }
    PresentationFile f;
    f.base.alphabet = Alphabet(names);
    for (std::size_t r = 0, m = rng() % 4; r < m; ++r) {
      f.base.relators.push_back(free_reduce(cgt_test::random_word(rng, n, rng() % 9)));
    }
    if (rng() % 3 == 0) {
      f.stable = "t";
      for (std::size_t r = 0, m = 1 + rng() % 3; r < m; ++r) {
        f.assoc.push_back(free_reduce(cgt_test::random_word(rng, n, 1 + rng() % 6)));
      }
      std::vector<Word> im;
      for (std::size_t g = 0; g < n; ++g) {
        im.push_back(free_reduce(cgt_test::random_word(rng, n, 1 + rng() % 4)));
      }
      f.endo = Endomorphism(im);
      if (rng() % 2) {
        f.truncated = rng() % 5;
      }
    }
    auto text = print_presentation(f);
    CHECK(parse_presentation(text) == f);
    CHECK(print_presentation(parse_presentation(text)) == text);
  }
}
