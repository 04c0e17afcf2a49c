// HNN extensions of triangle groups over a malcharacteristic free subgroup:
// the padded presentation, the associated subgroup read off a finite (or
// truncated infinite) quotient, Britton reduction, the morphisms induced by
// quotients and free products, and per-element residual witnesses.

#ifndef CGT_HNNFORGE_HPP_
#define CGT_HNNFORGE_HPP_

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/cosetenum.hpp"
#include "cgt/freewords.hpp"
#include "cgt/presentation.hpp"
#include "cgt/smallcancel.hpp"
#include "cgt/stallings.hpp"

namespace cgt {

  inline constexpr char const* TRUNCATED_MARKER = "truncated parametric family";

  enum class PaddingMode { pq, minimal };
  std::string to_string(PaddingMode m);
  PaddingMode parse_padding_mode(std::string_view text);

  // pq: generators p, q, x... with relators r..., p, q. minimal: fresh killed
  // generators are put first until there are at least two generators and
  // one relator.
  Presentation hat_presentation(Presentation const& p, PaddingMode mode);

  // Generators of the kernel of F(hat gens) onto the group the padded
  // presentation defines. If the enumeration overflows, the conjugates
  // g^-1 r g of the relators for |g| <= depth that are not already in the
  // subgroup of those kept, and `truncated` is set.
  struct HatKernel {
    std::vector<Word>         generators;
    std::optional<CosetTable> table;
    std::optional<std::size_t> truncated;
  };
  HatKernel hat_kernel(Presentation const& hat, std::size_t max_cosets, std::size_t depth);

  // The ambient free basis M of the construction, over F(a, b). Two
  // generators in minimal mode give the triangle seed pair, named x and y;
  // otherwise the rank-n family, named m1, m2, ...
  struct MFamily {
    std::vector<std::string> names;
    std::vector<Word>        words;
    std::size_t              chunks = 0;  // 0 for the seed pair
    std::vector<Word>        over_seed;
    Alphabet                 alphabet() const {
      return Alphabet(names);
    }
    // Substitutes word i of the family for generator i.
    Word expand(Word const& w) const;
  };
  MFamily m_family(std::size_t n, std::size_t rho, PaddingMode mode);

  // a -> b, b -> b^-1 a^-1 for equilateral triangles, a -> a^-1, b -> b^-1
  // otherwise.
  Endomorphism stable_endomorphism(std::array<std::size_t, 3> const& exponents);

  struct TPOptions {
    std::array<std::size_t, 3> exponents{6, 6, 6};
    std::size_t                rho        = 8;
    PaddingMode                mode       = PaddingMode::pq;
    std::size_t                max_cosets = DEFAULT_MAX_COSETS;
    std::size_t                depth      = 3;  // truncation depth
  };

  struct HnnPresentation {
    TPOptions                  options;
    Presentation               input;
    Presentation               hat;
    Presentation               base;  // the triangle group over a, b
    std::string                stable = "t";
    MFamily                    m;
    std::vector<Word>          k_hat;         // over the hat alphabet
    std::vector<Word>          k_generators;  // over a, b
    Endomorphism               phi;
    std::size_t                phi_order = 0;
    std::optional<CosetTable>  quotient;
    std::optional<std::size_t> truncated;
    std::vector<std::string>   caveats;

    PresentationFile file() const;
    // One line "t U t^-1 = phi(U)" per associated generator, U over the
    // names of M, then a marker line if truncated.
    std::vector<std::string> render() const;
  };

  // Throws Refusal if an exponent is below 6.
  HnnPresentation build_TP(Presentation const& p, TPOptions const& options);

  // h_0 t^e_1 h_1 ... t^e_m h_m.
  struct BrittonWord {
    std::vector<Word> syllables{Word{}};
    std::vector<int>  signs;

    std::size_t stable_letters() const noexcept {
      return signs.size();
    }
    bool operator==(BrittonWord const&) const = default;
  };
  BrittonWord parse_britton(Alphabet const& base, std::string const& stable,
                            std::string_view text);
  std::string to_string(Alphabet const& base, std::string const& stable, BrittonWord const& w);

  // The group of an HNN presentation file: base relators, associated
  // subgroup generators and the endomorphism. Membership answers are
  // memoised; copies share the memo, which is safe across threads.
  class HnnGroup {
   public:
    explicit HnnGroup(PresentationFile const& f);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    std::string const& stable() const noexcept {
      return _stable;
    }
    RelatorSet const& base() const noexcept {
      return _rs;
    }
    bool truncated() const noexcept {
      return _truncated;
    }
    // Membership of the base element h in K (resp. phi(K)): h is
    // Dehn-reduced and read in the folded graph of the generators.
    bool        in_associated(Word const& h) const;
    bool        in_image(Word const& h) const;
    Word        phi(Word const& h) const;
    Word        phi_inverse(Word const& h) const;
    std::size_t phi_order() const noexcept {
      return _order;
    }

   private:
    struct Memo;
    bool member(Word const& h, bool image) const;

    Alphabet      _alphabet;
    std::string   _stable;
    RelatorSet    _rs;
    SubgroupGraph _k;
    Endomorphism  _phi;
    Endomorphism  _phi_inv;
    std::size_t   _order     = 0;
    bool          _truncated = false;
    std::shared_ptr<Memo> _memo;
  };

  struct Pinch {
    std::size_t position = 0;  // index of the first stable letter
    int         sign     = 1;  // +1 for t h t^-1, -1 for t^-1 h t
    Word        syllable;
    Word        image;
  };

  struct BrittonResult {
    BrittonWord        word;
    std::vector<Pinch> log;
    bool               trivial = false;
  };

  // Throws Refusal("finite quotient required") for a truncated K.
  BrittonResult britton_reduce(HnnGroup const& g, BrittonWord const& w);
  bool          is_britton_reduced(HnnGroup const& g, BrittonWord const& w);

  // Extra associated generators U (over the hat alphabet) and the family
  // to expand them with.
  struct MorphismData {
    std::vector<Word>          u_hat;
    MFamily                    m;
    std::optional<std::size_t> truncated;
    std::vector<std::string>   caveats;
  };

  // Throws InputError("not a proper quotient") when the presentations give
  // the same group, and InputError with a witness relator when the second
  // is not a quotient of the first (checked when it is finite).
  MorphismData quotient_morphism(Presentation const& p1, Presentation const& p2,
                                 TPOptions const& options);

  // Generators of p followed by those of q (renamed where they clash).
  Presentation free_product(Presentation const& p, Presentation const& q);
  // Always uses pq padding so that p, q and the generators of p keep their
  // positions. Throws Refusal if the M families are not nested.
  MorphismData free_product_morphism(Presentation const& p, Presentation const& q,
                                     TPOptions const& options);

  struct ResidualEntry {
    std::size_t         position = 0;  // syllable index
    bool                constrained = false;
    std::optional<Word> image;  // coset representative over the hat alphabet
    std::string         detail;
  };

  struct ResidualWitness {
    bool                       trivial_quotient = true;  // else P itself
    std::vector<ResidualEntry> entries;
    std::string                detail;
  };

  // Throws Refusal("finite quotient required") without a quotient table
  // and InputError if g is not Britton-reduced or is trivial.
  ResidualWitness residual_witness(HnnPresentation const& h, BrittonWord const& g);

}  // namespace cgt

#endif  // CGT_HNNFORGE_HPP_
