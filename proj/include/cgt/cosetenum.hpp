// Todd-Coxeter coset enumeration, Schreier transversals and generators, and
// images of words in finite quotients.

#ifndef CGT_COSETENUM_HPP_
#define CGT_COSETENUM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cgt/freewords.hpp"
#include "cgt/presentation.hpp"

namespace cgt {

  using coset_type = std::uint32_t;

  inline constexpr std::size_t DEFAULT_MAX_COSETS = 100000;

  // The cap from MALCHAR_MAX_COSETS if set to a positive integer, else
  // `fallback`.
  std::size_t max_cosets_from_env(std::size_t fallback = DEFAULT_MAX_COSETS);

  // A complete coset table. Coset 0 is the subgroup. Cosets are numbered in
  // the discovery order of the transversal, which is a depth-first search
  // trying generators in order and, for each, the inverse letter first.
  class CosetTable {
   public:
    CosetTable() = default;
    CosetTable(std::size_t num_gens, std::vector<coset_type> rows);

    std::size_t num_gens() const noexcept {
      return _n;
    }
    std::size_t num_cosets() const noexcept {
      return _reps.size();
    }
    coset_type target(coset_type c, Letter l) const {
      return _rows[c * 2 * _n + slot_of(l)];
    }
    // Prefix-closed: the representative of a non-subgroup coset is the
    // representative of its parent followed by one letter.
    Word const& representative(coset_type c) const {
      return _reps.at(c);
    }

   private:
    std::size_t             _n = 0;
    std::vector<coset_type> _rows;
    std::vector<Word>       _reps;
  };

  struct Enumeration {
    std::optional<CosetTable> table;
    // Cosets alive when the enumeration stopped or completed.
    std::size_t cosets_defined = 0;
    bool        overflow() const noexcept {
      return !table.has_value();
    }
  };

  // HLT enumeration of the cosets of <subgroup> in the group presented by
  // pres. Overflow (more than max_cosets cosets alive at once) is reported
  // in the result, not thrown.
  Enumeration todd_coxeter(Presentation const& pres, std::vector<Word> const& subgroup,
                           std::size_t max_cosets = DEFAULT_MAX_COSETS);

  // Schreier generators rep(c) g rep(cg)^-1 of the subgroup the table
  // enumerates, freely reduced, without trivial words, sorted shortlex.
  std::vector<Word> schreier_generators(CosetTable const& table);

  // Generators of the kernel of F(gens) onto the group presented by pres
  // with the generators in `killed` also made trivial. Throws
  // Refusal("finite quotient required") when enumeration overflows.
  std::vector<Word> schreier_kernel_generators(Presentation const&          pres,
                                               std::set<std::size_t> const& killed,
                                               std::size_t max_cosets = DEFAULT_MAX_COSETS);

  // The coset reached by tracing w from the subgroup coset.
  coset_type image_in_quotient(CosetTable const& table, Word const& w);

}  // namespace cgt

#endif  // CGT_COSETENUM_HPP_
