// Finite presentations and the text format shared by base and HNN files:
//
//   gens: a b
//   rels: a^6, b^6, (a b)^6
//   stable: t                      (HNN files only)
//   assoc: a b a^-1, b^2           (associated subgroup generators)
//   endo: a -> b; b -> b^-1 a^-1   (associated automorphism)
//   truncated: 3                   (assoc is a truncated infinite family)
//
// Blank lines and lines starting with '#' are ignored.

#ifndef CGT_PRESENTATION_HPP_
#define CGT_PRESENTATION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/freewords.hpp"

namespace cgt {

  struct Presentation {
    Alphabet          alphabet;
    std::vector<Word> relators;

    std::size_t num_gens() const noexcept {
      return alphabet.size();
    }
    bool operator==(Presentation const&) const = default;
  };

  struct PresentationFile {
    Presentation                base;
    std::optional<std::string>  stable;
    std::vector<Word>           assoc;
    std::optional<Endomorphism> endo;
    std::optional<std::size_t>  truncated;

    bool is_hnn() const noexcept {
      return stable.has_value();
    }
    bool operator==(PresentationFile const&) const = default;
  };

  // Throws ParseError with the line number in the message and the column
  // as position.
  PresentationFile parse_presentation(std::string_view text);
  // Reads and parses a file; throws InputError if it cannot be read.
  PresentationFile load_presentation(std::string const& path);

  std::string print_presentation(Presentation const& p);
  std::string print_presentation(PresentationFile const& f);

}  // namespace cgt

#endif  // CGT_PRESENTATION_HPP_
