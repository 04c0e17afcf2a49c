// Malcharacteristic subgroups: length-preserving automorphisms of F(a, b),
// the decision procedure for positive subgroups whose circuits carry cubes,
// the seed words and their rank-n families, the outer automorphism
// transversal of triangle groups, and the composite triangle certificate.

#ifndef CGT_MALCHAR_HPP_
#define CGT_MALCHAR_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cgt/freewords.hpp"
#include "cgt/quotientcert.hpp"
#include "cgt/stallings.hpp"

namespace cgt {

  // Throughout, F(a, b) has a = generator 0 and b = generator 1.
  Alphabet const& alphabet_ab();

  // The eight automorphisms sending each generator to a signed generator;
  // the identity comes first and the swap a <-> b second.
  std::vector<Endomorphism> length_preserving_autos();

  struct MalcharHypotheses {
    bool        yes           = false;
    bool        distinct      = false;
    bool        in_semigroup  = false;  // every word in {a^2, a^3, b^2, b^3}^+
    bool        circuits_a3   = false;  // every circuit has an a^{+-3} term
    bool        circuits_b3   = false;
    std::string detail;
  };
  MalcharHypotheses malcharlem_hypotheses(std::vector<Word> const& s);

  // True iff every cyclically reduced closed path in fold(s) contains three
  // consecutive edges labelled gen with the same sign.
  bool every_circuit_has_cube(SubgroupGraph const& g, std::size_t gen);

  struct MalcharVerdict {
    bool yes = true;
    // "malnormal" or "automorphism" on failure.
    std::string failed_check;
    // Index into length_preserving_autos() of the failing automorphism.
    std::optional<std::size_t> automorphism;
    // For a failing automorphism alpha: u in alpha(C) with g u g^-1 in C.
    // For a malnormality failure: as in is_malnormal.
    std::optional<Witness> witness;
  };
  // Throws Refusal("malcharlem hypotheses violated") when the hypotheses
  // fail.
  MalcharVerdict decide_malcharacteristic_free(std::vector<Word> const& s);

  enum class SeedFlavor { free, triangle };

  struct SeedWords {
    std::size_t rho = 0;
    Word        first;
    Word        second;
    SeedFlavor  flavor = SeedFlavor::free;
  };
  // Products of a^3 b^k over k = 3..rho+2 and k = rho+3..2rho+2.
  SeedWords seed_words_free(std::size_t rho);
  // The same products with a -> ab^-1 and b -> a^2 b^-1.
  SeedWords seed_words_triangle(std::size_t rho);
  // a -> ab^-1, b -> a^2 b^-1; an automorphism carrying the free seed pair
  // to the triangle seed pair.
  Endomorphism block_substitution();

  // n words cut from the infinite word f_1 f_2 f_3 ..., where
  // f_k = u v (u v^2)^k over the seed pair (u, v). Word i is the product of
  // `chunks` consecutive f_k, so families for different n are nested.
  struct RankFamily {
    std::size_t              chunks = 0;
    std::vector<Word>        over_seed;  // words over {u, v} (u = 0, v = 1)
    std::vector<Word>        words;      // expanded over {a, b}
  };

  // The least chunk count whose family passes C'(1/6) over {u, v}; when r
  // is supplied, also requires the quotient certificate for r and the
  // family. Throws Refusal with the failing piece when no chunk count up to
  // the budget works, or immediately when a piece between r and the seed
  // words already violates the bound.
  RankFamily rank_n_family(SeedWords const& seed, std::size_t n,
                           std::optional<std::vector<Word>> const& r = std::nullopt);
  // The family for a given chunk count, without verification.
  RankFamily family_with_chunks(SeedWords const& seed, std::size_t n, std::size_t chunks);

  struct PsiMap {
    int          index = 1;  // 1..6
    int          sign  = 1;  // +1 or -1
    Endomorphism map;
    std::string  name() const;
  };
  // All twelve maps, ordered (1,+1), (1,-1), (2,+1), ...
  std::vector<PsiMap> psi_maps();

  struct PsiTransversal {
    std::vector<PsiMap> maps;
    // Exponents after permuting so an equal pair comes first; the maps act
    // on the triangle group with these exponents.
    std::array<std::size_t, 3> exponents{};
  };
  // Throws Refusal("triangle exponents must be at least 6") if any exponent is below 6.
  PsiTransversal psi_transversal(std::size_t i, std::size_t j, std::size_t k);

  struct ForbiddenCounts {
    std::size_t a4 = 0;  // a^{+-4}
    std::size_t b4 = 0;  // b^{+-4}
    std::size_t ab3 = 0;  // (ab)^{+-3} or (ba)^{+-3}
    std::size_t total() const {
      return a4 + b4 + ab3;
    }
  };
  ForbiddenCounts count_forbidden(Word const& w);

  struct PsiReport {
    PsiMap          psi;
    FamilyVerdict   family;
    ForbiddenCounts forbidden;
  };
  std::vector<PsiReport> verify_psi_images(std::size_t i, std::size_t j, std::size_t k,
                                           std::size_t rho, std::size_t syllable_bound);

  struct StageResult {
    std::string              name;
    bool                     yes = false;
    std::string              detail;
    std::vector<std::string> caveats;
  };

  struct TriangleCertificate {
    std::array<std::size_t, 3> exponents{};
    std::size_t                rho = 0;
    std::vector<StageResult>   stages;
    bool                       certified = false;
    std::vector<PsiReport>     psi;
    // The name of the first failing stage, if any.
    std::string first_failure;
  };
  TriangleCertificate decide_malcharacteristic_triangle(std::size_t i, std::size_t j,
                                                        std::size_t k, std::size_t rho,
                                                        std::size_t syllable_bound);

}  // namespace cgt

#endif  // CGT_MALCHAR_HPP_
