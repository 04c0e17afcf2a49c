// Stallings subgroup graphs of free groups: folding, membership, bases,
// rewriting over a free basis, fibre products and the malnormality and
// conjugate-intersection decisions built on them.

#ifndef CGT_STALLINGS_HPP_
#define CGT_STALLINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cgt/freewords.hpp"

namespace cgt {

  using vertex_type                   = std::uint32_t;
  inline constexpr vertex_type NO_VERTEX = std::numeric_limits<vertex_type>::max();

  // Folded, core-trimmed, basepointed graph. Vertices are numbered
  // breadth-first from the basepoint (vertex 0) visiting labels in slot
  // order, so two graphs of the same subgroup compare equal.
  class SubgroupGraph {
   public:
    explicit SubgroupGraph(std::size_t num_gens = 0);

    std::size_t num_gens() const noexcept {
      return _n;
    }
    std::size_t num_vertices() const noexcept {
      return _nv;
    }
    // Number of positively oriented edges.
    std::size_t num_edges() const noexcept {
      return _ne;
    }
    vertex_type basepoint() const noexcept {
      return 0;
    }
    vertex_type target(vertex_type v, Letter l) const {
      return _out[v * 2 * _n + slot_of(l)];
    }
    std::size_t degree(vertex_type v) const;

    // End vertex of reading w from `from`, or nullopt if w falls off.
    std::optional<vertex_type> read(Word const& w, vertex_type from = 0) const;

    // Labels of the breadth-first spanning tree path from the basepoint.
    Word tree_path(vertex_type v) const;
    // True iff the positive edge (v, g) belongs to the spanning tree.
    bool is_tree_edge(vertex_type v, std::size_t g) const;

    bool operator==(SubgroupGraph const& other) const {
      return _n == other._n && _nv == other._nv && _out == other._out;
    }

    // Builds from a raw table (targets may be NO_VERTEX) with basepoint 0:
    // trims to the core and renumbers canonically.
    static SubgroupGraph from_table(std::size_t n, std::vector<vertex_type> table,
                                    vertex_type base);

   private:
    void compute_tree();

    std::size_t              _n;
    std::size_t              _nv;
    std::size_t              _ne;
    std::vector<vertex_type> _out;  // _nv * 2n
    std::vector<vertex_type> _tree_parent;
    std::vector<Letter>      _tree_letter;  // letter read into the vertex
  };

  SubgroupGraph build_and_fold(std::size_t num_gens, std::vector<Word> const& gens);

  bool              contains(SubgroupGraph const& g, Word const& w);
  std::size_t       rank(SubgroupGraph const& g);
  std::vector<Word> basis(SubgroupGraph const& g);
  bool              same_subgroup(SubgroupGraph const& g1, SubgroupGraph const& g2);

  // A letter over a list of generators: (index, sign).
  using GenLetter = std::pair<std::size_t, int>;

  // Reads words through a folded graph whose edges carry words over the
  // generators, so that the labels collected along a closed path at the
  // basepoint spell the path's element as a reduced word in the generators.
  class GeneratorRewriter {
   public:
    // Throws Refusal("not a free basis") when the folded graph has rank less
    // than gens.size().
    GeneratorRewriter(std::size_t num_gens, std::vector<Word> const& gens);

    std::optional<std::vector<GenLetter>> rewrite(Word const& w) const;
    bool                                  contains(Word const& w) const;
    std::size_t                           num_generators() const noexcept {
      return _k;
    }

   private:
    // Weights are words over the generators, letters encoded as in Word.
    Word const& weight(vertex_type v, std::size_t slot) const;

    std::size_t                             _n;
    std::size_t                             _k;
    std::vector<vertex_type>                _out;
    std::unordered_map<std::uint64_t, Word> _weights;
  };

  std::optional<std::vector<GenLetter>>
  rewrite_over_generators(std::size_t num_gens, std::vector<Word> const& gens,
                          Word const& w);

  // Evaluates a word over generators back to a word over the alphabet.
  Word evaluate(std::vector<Word> const& gens, std::vector<GenLetter> const& w);

  struct FibreComponent {
    std::vector<std::pair<vertex_type, vertex_type>> vertices;  // sorted
    std::size_t                                      edges = 0;
    // Vertices and edges remaining after repeatedly deleting vertices of
    // degree at most one; empty exactly when the component is a forest.
    std::vector<std::pair<vertex_type, vertex_type>> core_vertices;
    std::size_t                                      core_edges = 0;
    bool                                             forest() const {
      return core_vertices.empty();
    }
    // A cyclically reduced closed path at core_vertices.front(), if any.
    Word cycle;
  };

  struct FibreComponents {
    std::vector<FibreComponent> components;
    std::optional<std::size_t>  diagonal_index;
  };

  // Components are ordered by their least vertex pair. Pairs without any
  // incident edge are omitted.
  FibreComponents fibre_product(SubgroupGraph const& g1, SubgroupGraph const& g2);

  struct Witness {
    Word g;  // conjugator
    Word u;  // u lies in the first subgroup and g u g^-1 in the second
  };

  struct IntersectionVerdict {
    bool                   yes = true;
    std::optional<Witness> witness;
    std::size_t            rank            = 0;
    std::size_t            component_count = 0;
  };

  // yes iff every non-diagonal component of fold(gens) x fold(gens) is a
  // forest. A "no" carries g not in H and 1 != u in H with g u g^-1 in H.
  IntersectionVerdict is_malnormal(std::size_t num_gens, std::vector<Word> const& gens);

  // yes iff <s> meets every conjugate of <t> trivially. A "no" carries
  // 1 != u in <s> with g u g^-1 in <t>.
  IntersectionVerdict trivial_intersection_all_conjugates(std::size_t              num_gens,
                                                          std::vector<Word> const& s,
                                                          std::vector<Word> const& t);

}  // namespace cgt

#endif  // CGT_STALLINGS_HPP_
