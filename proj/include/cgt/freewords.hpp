// Words in free groups: alphabets, parsing and printing, free and cyclic
// reduction, proper powers, substitution endomorphisms and positive
// subsemigroup membership.

#ifndef CGT_FREEWORDS_HPP_
#define CGT_FREEWORDS_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cgt {

  // Bad input: parse errors, unknown generators, malformed arguments.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A procedure was asked to run outside its hypotheses.
  class Refusal : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public InputError {
   public:
    ParseError(std::string const& msg, std::size_t pos)
        : InputError(msg + " (at column " + std::to_string(pos + 1) + ")"),
          _msg(msg),
          _pos(pos) {}
    std::size_t position() const noexcept {
      return _pos;
    }
    std::string const& message() const noexcept {
      return _msg;
    }

   private:
    std::string _msg;
    std::size_t _pos;
  };

  // A letter is +(g+1) for generator g and -(g+1) for its inverse.
  using Letter = std::int32_t;
  using Word   = std::vector<Letter>;

  inline Letter make_letter(std::size_t gen, int sign) {
    return sign > 0 ? static_cast<Letter>(gen + 1)
                    : -static_cast<Letter>(gen + 1);
  }
  inline std::size_t gen_of(Letter l) {
    return static_cast<std::size_t>(l > 0 ? l : -l) - 1;
  }
  inline int sign_of(Letter l) {
    return l > 0 ? 1 : -1;
  }
  // Dense index in [0, 2n): 2g for g, 2g+1 for g^-1. This is also the
  // comparison order used for canonical forms (alphabet order, + before -).
  inline std::size_t slot_of(Letter l) {
    return 2 * gen_of(l) + (l < 0 ? 1 : 0);
  }
  inline Letter letter_of_slot(std::size_t s) {
    return make_letter(s / 2, (s % 2) == 0 ? 1 : -1);
  }
  inline bool letter_less(Letter x, Letter y) {
    return slot_of(x) < slot_of(y);
  }
  bool word_less(Word const& u, Word const& v);  // lexicographic, slot order
  bool shortlex_less(Word const& u, Word const& v);

  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const noexcept {
      return _names.size();
    }
    std::string const& name(std::size_t i) const {
      return _names.at(i);
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t                at(std::string_view name) const;  // throws

    // Adds a generator and returns its index; throws on duplicates.
    std::size_t add(std::string const& name);
    // A name not yet in the alphabet, trying `stem`, then stem1, stem2, ...
    std::string fresh_name(std::string const& stem) const;

    bool operator==(Alphabet const& other) const {
      return _names == other._names;
    }

    static bool valid_identifier(std::string_view s);

   private:
    std::vector<std::string> _names;
  };

  // Word syntax: whitespace separated letters, optional integer exponents
  // (which bind to the preceding letter or parenthesised group), and `1` for
  // the empty word. The result is freely reduced.
  Word parse_word(Alphabet const& alphabet, std::string_view text);
  // Splits at top-level commas and parses each part.
  std::vector<Word> parse_word_list(Alphabet const&  alphabet,
                                    std::string_view text);

  // Runs of a letter are printed with exponents: "a^2 b^-1 a".
  std::string to_string(Alphabet const& alphabet, Word const& w);
  std::string to_string(Alphabet const& alphabet, std::vector<Word> const& ws);

  Word inverse(Word const& w);
  Word free_reduce(Word const& w);
  bool is_freely_reduced(Word const& w);
  bool is_cyclically_reduced(Word const& w);
  bool is_positive(Word const& w);
  // Freely reduced product u*v; u and v are assumed freely reduced.
  Word mul(Word const& u, Word const& v);
  Word mul(std::initializer_list<Word> ws);
  Word power(Word const& w, long n);
  // free_reduce(g^-1 w g)
  Word conjugate(Word const& w, Word const& g);
  Word rotate(Word const& w, std::size_t offset);

  struct CyclicReduction {
    Word core;
    Word conjugator;  // w = conjugator^-1 core conjugator
  };
  CyclicReduction cyclic_reduce(Word const& w);

  // Canonical representative of the conjugacy class: lexicographically least
  // rotation of the cyclic core.
  Word canonical_cyclic(Word const& w);

  struct ProperPower {
    Word root;
    long exponent;
  };
  // Maximal decomposition of the cyclic core as root^exponent with
  // exponent >= 2, or nullopt. Throws InputError on the empty word.
  std::optional<ProperPower> proper_power(Word const& w);

  class Endomorphism {
   public:
    Endomorphism() = default;
    explicit Endomorphism(std::vector<Word> images);
    static Endomorphism identity(std::size_t rank);

    std::size_t rank() const noexcept {
      return _images.size();
    }
    Word const& image(std::size_t g) const {
      return _images.at(g);
    }
    std::vector<Word> const& images() const noexcept {
      return _images;
    }
    bool operator==(Endomorphism const& other) const {
      return _images == other._images;
    }

   private:
    std::vector<Word> _images;
  };

  Word apply_endo(Endomorphism const& e, Word const& w);
  // (f after e): x -> f(e(x))
  Endomorphism compose(Endomorphism const& f, Endomorphism const& e);
  Endomorphism endo_power(Endomorphism const& e, std::size_t k);
  // Parses "a -> b; b -> b^-1 a^-1". Generators not mentioned map to
  // themselves.
  Endomorphism parse_endo(Alphabet const& alphabet, std::string_view text);
  std::string  to_string(Alphabet const& alphabet, Endomorphism const& e);

  // True iff w is a nonempty concatenation of words from gens.
  bool positive_subsemigroup_member(Word const& w, std::vector<Word> const& gens);

}  // namespace cgt

#endif  // CGT_FREEWORDS_HPP_
