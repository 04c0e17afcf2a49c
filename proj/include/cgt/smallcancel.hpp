// Symmetrised relator sets, pieces, the C'(lambda), C(m) and T(4) small
// cancellation conditions, Dehn reduction and the word problem in
// Dehn-admissible presentations.

#ifndef CGT_SMALLCANCEL_HPP_
#define CGT_SMALLCANCEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgt/freewords.hpp"

namespace cgt {

  // Exact positive fraction num/den.
  struct Rational {
    long num = 1;
    long den = 1;
  };
  // Accepts "p/q" or an integer; throws InputError otherwise.
  Rational    parse_rational(std::string_view text);
  std::string to_string(Rational r);

  struct PieceTable {
    // Indexed like RelatorSet::relators().
    std::vector<std::size_t> max_piece;
    std::vector<Word>        longest_piece;
    // Least number of pieces concatenating to some cyclic shift of the
    // relator or its inverse; 0 when no such cover exists.
    std::vector<std::size_t> min_piece_cover;
  };

  class RelatorSet {
   public:
    RelatorSet() = default;
    // Relators are replaced by their cyclic cores. Throws
    // InputError("trivial relator") when one of them is trivial in F.
    RelatorSet(std::size_t num_gens, std::vector<Word> const& relators);

    std::size_t num_gens() const noexcept {
      return _n;
    }
    std::vector<Word> const& relators() const noexcept {
      return _rels;
    }
    // All cyclic shifts of relators and their inverses, deduplicated and
    // sorted by word_less. Shifts are stored implicitly; this builds copies.
    std::vector<Word> symmetrised() const;
    std::size_t       symmetrised_size() const noexcept {
      return _elems.size();
    }
    // The letters of symmetrised element i, without copying.
    std::span<Letter const> element(std::size_t sym_index) const {
      auto const& e = _elems.at(sym_index);
      return {_doubled[e.base].data() + e.offset, _doubled[e.base].size() / 2};
    }
    // Index into relators() of the relator each symmetrised word comes from.
    std::size_t origin(std::size_t sym_index) const {
      return _origin.at(sym_index);
    }
    // Longest common prefix of symmetrised()[i] with any other element.
    std::size_t max_piece_at(std::size_t sym_index) const {
      return _lcp.at(sym_index);
    }
    std::size_t max_relator_length() const noexcept {
      return _max_len;
    }
    PieceTable const& pieces() const noexcept {
      return _pieces;
    }
    bool empty() const noexcept {
      return _rels.empty();
    }
    // (length, indices into symmetrised() of that length, ascending).
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> const&
    length_classes() const noexcept {
      return _by_len;
    }
    // C'(1/6), or C'(1/4) together with T(4); computed on construction.
    bool admissible() const noexcept {
      return _admissible;
    }

   private:
    std::size_t              _n = 0;
    std::vector<Word>        _rels;
    // A cyclic shift: offset into a doubled relator or inverse relator.
    struct Elem {
      std::uint32_t base;
      std::uint32_t offset;
    };
    std::vector<Word>        _doubled;
    std::vector<Elem>        _elems;
    std::vector<std::size_t> _origin;
    std::vector<std::size_t> _lcp;
    std::size_t              _max_len = 0;
    PieceTable               _pieces;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> _by_len;
    bool                                                          _admissible = true;
  };

  RelatorSet symmetrise(std::size_t num_gens, std::vector<Word> const& relators);
  PieceTable compute_pieces(RelatorSet const& rs);

  struct MetricVerdict {
    bool yes = true;
    // Worst violation: the piece (a prefix of `relator`) and the symmetrised
    // relator it lies in.
    Word piece;
    Word relator;
  };
  // yes iff |p| < lambda |R| for every piece p of every R in the closure.
  MetricVerdict check_metric(RelatorSet const& rs, Rational lambda);

  struct CVerdict {
    bool        yes = true;
    Word        relator;  // a relator covered by too few pieces
    std::size_t pieces = 0;
  };
  // yes iff no symmetrised relator is a product of fewer than m pieces.
  CVerdict check_C(RelatorSet const& rs, std::size_t m);

  struct TVerdict {
    bool              yes = true;
    std::vector<Word> triple;
  };
  // Only q = 4 is supported; other values throw InputError.
  TVerdict check_T(RelatorSet const& rs, std::size_t q = 4);

  // C'(1/6), or C'(1/4) together with T(4).
  bool dehn_admissible(RelatorSet const& rs);

  // A subword w[pos, pos+length) equal to a prefix of the symmetrised
  // relator `relator` (an index into symmetrised()) and longer than half of
  // it.
  struct DehnMatch {
    std::size_t pos;
    std::size_t length;
    std::size_t relator;
  };

  // First match in scan order (leftmost, then longest, then least relator)
  // starting at or after `from`, restricted to matches ending at or before
  // `limit` and of length at most `cap`.
  std::optional<DehnMatch> find_dehn_match(RelatorSet const& rs, Word const& w,
                                           std::size_t from  = 0,
                                           std::size_t limit = SIZE_MAX,
                                           std::size_t cap   = SIZE_MAX);

  // Dehn's algorithm run to a fixpoint; the result is freely reduced and
  // contains no subword longer than half a symmetrised relator.
  Word dehn_reduce(RelatorSet const& rs, Word const& w);
  bool is_dehn_reduced(RelatorSet const& rs, Word const& w);
  // Every free reduction of every cyclic shift of w is nonempty and
  // Dehn-reduced.
  bool is_cyclically_dehn_reduced(RelatorSet const& rs, Word const& w);

  // Throws Refusal("presentation not Dehn-admissible") unless
  // dehn_admissible(rs).
  bool word_problem(RelatorSet const& rs, Word const& w);

  // Least k <= max_k with e^k acting trivially on generators in the
  // quotient. Throws Refusal("does not preserve relators") if some relator
  // image is nontrivial.
  std::optional<std::size_t> endo_order_in_quotient(RelatorSet const&   rs,
                                                    Endomorphism const& e,
                                                    std::size_t         max_k);

  // The relators of the triangle group <a, b; a^i, b^j, (ab)^k>.
  std::vector<Word> triangle_relators(std::size_t i, std::size_t j, std::size_t k);

}  // namespace cgt

#endif  // CGT_SMALLCANCEL_HPP_
