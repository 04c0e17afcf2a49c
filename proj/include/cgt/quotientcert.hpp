// Certificates that lift free-group facts about subgroups to small
// cancellation quotients: freeness, malnormality and trivial intersection
// with conjugates.

#ifndef CGT_QUOTIENTCERT_HPP_
#define CGT_QUOTIENTCERT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cgt/freewords.hpp"
#include "cgt/smallcancel.hpp"
#include "cgt/stallings.hpp"

namespace cgt {

  enum class ClaimKind { free_basis, malnormal, trivial_intersection, conjugacy_lift };
  std::string to_string(ClaimKind k);

  struct Hypothesis {
    std::string condition;
    bool        yes = false;
    std::string detail;
    // Words backing a failure, e.g. a piece and the relator it lies in.
    std::vector<Word> words;
  };

  struct Certificate {
    ClaimKind               kind = ClaimKind::free_basis;
    std::vector<Hypothesis> hypotheses;
    bool                    certified = false;
    // Which small cancellation route held ("1/4-T(4)", "1/6"), if any.
    std::string              route;
    std::vector<std::string> caveats;
    // Set for trivial-intersection claims: the free-group verdict.
    std::optional<IntersectionVerdict> free_verdict;

    // certified = every hypothesis holds.
    void seal();
  };

  // Throws Refusal("presentation not Dehn-admissible") when <x; r> is not.
  Certificate certify_free_basis(std::size_t num_gens, std::vector<Word> const& r,
                                 std::vector<Word> const& s);

  Certificate certify_malnormal_in_quotient(std::size_t num_gens, std::vector<Word> const& r,
                                            std::vector<Word> const& s);

  struct FamilyVerdict {
    bool yes = true;
    // True when the block-length criterion makes the bounded scan decisive
    // for all words over t.
    bool                     unconditional = false;
    std::optional<Word>      counterexample;
    std::size_t              words_checked = 0;
    std::vector<std::string> caveats;
  };

  // Checks that every freely reduced word over t with at most
  // syllable_bound letters is cyclically r*-reduced. Throws InputError when
  // syllable_bound < 3 and Refusal("not a free basis") when t is not a
  // free basis of the subgroup it generates in F.
  FamilyVerdict check_family_cyclically_reduced(std::size_t num_gens,
                                                std::vector<Word> const& r,
                                                std::vector<Word> const& t,
                                                std::size_t syllable_bound);

  // The family check against a prebuilt relator set.
  FamilyVerdict check_family_cyclically_reduced(RelatorSet const&        rs,
                                                std::vector<Word> const& t,
                                                std::size_t              syllable_bound);

  Certificate certify_trivial_intersection_in_quotient(std::size_t              num_gens,
                                                       std::vector<Word> const& r,
                                                       std::vector<Word> const& s,
                                                       std::vector<Word> const& t,
                                                       std::size_t syllable_bound);

  // W with W^-1 u W = v in the free group, if u and v are conjugate.
  std::optional<Word> free_conjugator(Word const& u, Word const& v);

  inline constexpr char const* NO_LIFT_CAVEAT
      = "transfer hypotheses failed; free verdict does not lift";

}  // namespace cgt

#endif  // CGT_QUOTIENTCERT_HPP_
