#include "cgt/cosetenum.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <string>

namespace cgt {

  namespace {

    constexpr coset_type UNDEF = std::numeric_limits<coset_type>::max();

    // HLT enumeration with Holt's coincidence procedure. Row storage is
    // never reused; dead cosets point at a smaller live coset via `parent`.
    class Enumerator {
     public:
      Enumerator(std::size_t n, std::size_t max_cosets) : _n2(2 * n), _max(max_cosets) {
        new_coset();
      }

      bool overflowed() const noexcept {
        return _overflow;
      }
      std::size_t alive() const noexcept {
        return _alive;
      }

      void run(std::vector<Word> const& rels, std::vector<Word> const& subgroup) {
        for (auto const& w : subgroup) {
          scan_and_fill(0, w);
          if (_overflow) {
            return;
          }
        }
        for (coset_type c = 0; c < _parent.size(); ++c) {
          for (auto const& r : rels) {
            if (!live(c)) {
              break;
            }
            scan_and_fill(c, r);
            if (_overflow) {
              return;
            }
          }
          // Close the row so every coset has every edge.
          for (std::size_t s = 0; s < _n2 && live(c); ++s) {
            if (at(c, s) == UNDEF) {
              define(c, s);
              if (_overflow) {
                return;
              }
            }
          }
        }
      }

      // Live cosets' rows, renumbered consecutively.
      std::vector<coset_type> compact() const {
        std::vector<coset_type> index(_parent.size(), UNDEF);
        coset_type              next = 0;
        for (coset_type c = 0; c < _parent.size(); ++c) {
          if (_parent[c] == c) {
            index[c] = next++;
          }
        }
        std::vector<coset_type> rows;
        rows.reserve(static_cast<std::size_t>(next) * _n2);
        for (coset_type c = 0; c < _parent.size(); ++c) {
          if (_parent[c] == c) {
            for (std::size_t s = 0; s < _n2; ++s) {
              rows.push_back(index[at(c, s)]);
            }
          }
        }
        return rows;
      }

     private:
      std::size_t             _n2;
      std::size_t             _max;
      std::vector<coset_type> _table;
      std::vector<coset_type> _parent;
      std::size_t             _alive    = 0;
      bool                    _overflow = false;

      coset_type& at(coset_type c, std::size_t s) {
        return _table[static_cast<std::size_t>(c) * _n2 + s];
      }
      coset_type at(coset_type c, std::size_t s) const {
        return _table[static_cast<std::size_t>(c) * _n2 + s];
      }
      bool live(coset_type c) const {
        return _parent[c] == c;
      }

      coset_type new_coset() {
        coset_type c = static_cast<coset_type>(_parent.size());
        _parent.push_back(c);
        _table.resize(_table.size() + _n2, UNDEF);
        ++_alive;
        return c;
      }

      void define(coset_type c, std::size_t s) {
        if (_alive >= _max) {
          _overflow = true;
          return;
        }
        coset_type d = new_coset();
        at(c, s)     = d;
        at(d, s ^ 1U) = c;
      }

      void scan_and_fill(coset_type c, Word const& w) {
        coset_type     f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        while (true) {
          while (i <= j && at(f, slot_of(w[i])) != UNDEF) {
            f = at(f, slot_of(w[i++]));
          }
          if (i > j) {
            if (f != b) {
              coincidence(f, b);
            }
            return;
          }
          while (j >= i && at(b, slot_of(w[j]) ^ 1U) != UNDEF) {
            b = at(b, slot_of(w[j--]) ^ 1U);
          }
          if (j < i) {
            coincidence(f, b);
            return;
          }
          if (i == j) {
            // Deduction: the gap is a single letter.
            at(f, slot_of(w[i]))      = b;
            at(b, slot_of(w[i]) ^ 1U) = f;
            return;
          }
          define(f, slot_of(w[i]));
          if (_overflow) {
            return;
          }
        }
      }

      coset_type rep(coset_type c) {
        coset_type r = c;
        while (_parent[r] != r) {
          r = _parent[r];
        }
        while (_parent[c] != r) {
          coset_type next = _parent[c];
          _parent[c]      = r;
          c               = next;
        }
        return r;
      }

      void merge(coset_type a, coset_type b, std::vector<coset_type>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) {
          return;
        }
        if (a > b) {
          std::swap(a, b);
        }
        _parent[b] = a;
        --_alive;
        queue.push_back(b);
      }

      void coincidence(coset_type a, coset_type b) {
        std::vector<coset_type> queue;
        merge(a, b, queue);
        for (std::size_t q = 0; q < queue.size(); ++q) {
          coset_type e = queue[q];
          for (std::size_t s = 0; s < _n2; ++s) {
            coset_type f = at(e, s);
            if (f == UNDEF) {
              continue;
            }
            // Remove the back edge from f, then transfer e's edge to rep(e).
            if (at(f, s ^ 1U) == e) {
              at(f, s ^ 1U) = UNDEF;
            }
            coset_type e1 = rep(e), f1 = rep(f);
            if (at(e1, s) != UNDEF) {
              merge(f1, at(e1, s), queue);
            } else if (at(f1, s ^ 1U) != UNDEF) {
              merge(e1, at(f1, s ^ 1U), queue);
            } else {
              at(e1, s)      = f1;
              at(f1, s ^ 1U) = e1;
            }
          }
        }
      }
    };

  }  // namespace

  std::size_t max_cosets_from_env(std::size_t fallback) {
    char const* v = std::getenv("MALCHAR_MAX_COSETS");
    if (v == nullptr) {
      return fallback;
    }
    try {
      std::size_t used = 0;
      long long   n    = std::stoll(v, &used);
      if (used == std::string(v).size() && n > 0) {
        return static_cast<std::size_t>(n);
      }
    } catch (std::exception const&) {
    }
    return fallback;
  }

  CosetTable::CosetTable(std::size_t num_gens, std::vector<coset_type> rows) : _n(num_gens) {
    std::size_t const n2    = 2 * num_gens;
    std::size_t const count = num_gens == 0 ? 1 : rows.size() / n2;
    // Depth-first transversal, inverse letter first for each generator.
    std::vector<coset_type> order(count, UNDEF);
    std::vector<coset_type> seen;
    std::vector<Word>       reps(count);
    std::vector<std::pair<coset_type, std::size_t>> stack{{0, 0}};
    order[0] = 0;
    seen.push_back(0);
    auto slot_at = [](std::size_t k) { return k ^ 1U; };  // 1, 0, 3, 2, ...
    while (!stack.empty()) {
      auto& [c, k] = stack.back();
      if (k == n2) {
        stack.pop_back();
        continue;
      }
      std::size_t s = slot_at(k++);
      coset_type  d = rows[c * n2 + s];
      if (order[d] == UNDEF) {
        order[d] = static_cast<coset_type>(seen.size());
        seen.push_back(d);
        reps[d] = reps[c];
        reps[d].push_back(letter_of_slot(s));
        stack.emplace_back(d, 0);
      }
    }
    if (seen.size() != count) {
      throw std::logic_error("coset table is not connected");
    }
    _rows.resize(rows.size());
    _reps.resize(count);
    for (coset_type c = 0; c < count; ++c) {
      _reps[order[c]] = std::move(reps[c]);
      for (std::size_t s = 0; s < n2; ++s) {
        _rows[order[c] * n2 + s] = order[rows[c * n2 + s]];
      }
    }
  }

  Enumeration todd_coxeter(Presentation const& pres, std::vector<Word> const& subgroup,
                           std::size_t max_cosets) {
    Enumeration out;
    if (max_cosets == 0) {
      return out;
    }
    Enumerator e(pres.num_gens(), max_cosets);
    std::vector<Word> rels;
    for (auto const& r : pres.relators) {
      rels.push_back(free_reduce(r));
    }
    e.run(rels, subgroup);
    out.cosets_defined = e.alive();
    if (!e.overflowed()) {
      out.table = CosetTable(pres.num_gens(), e.compact());
    }
    return out;
  }

  std::vector<Word> schreier_generators(CosetTable const& table) {
    std::vector<Word> out;
    for (coset_type c = 0; c < table.num_cosets(); ++c) {
      for (std::size_t g = 0; g < table.num_gens(); ++g) {
        Letter     l = make_letter(g, 1);
        coset_type d = table.target(c, l);
        Word       w = mul({table.representative(c), Word{l}, inverse(table.representative(d))});
        if (!w.empty()) {
          out.push_back(std::move(w));
        }
      }
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Word> schreier_kernel_generators(Presentation const&          pres,
                                               std::set<std::size_t> const& killed,
                                               std::size_t                  max_cosets) {
    Presentation q = pres;
    for (std::size_t g : killed) {
      if (g >= pres.num_gens()) {
        throw InputError("killed generator out of range");
      }
      q.relators.push_back(Word{make_letter(g, 1)});
    }
    auto e = todd_coxeter(q, {}, max_cosets);
    if (e.overflow()) {
      throw Refusal("finite quotient required");
    }
    return schreier_generators(*e.table);
  }

  coset_type image_in_quotient(CosetTable const& table, Word const& w) {
    coset_type c = 0;
    for (Letter l : w) {
      c = table.target(c, l);
    }
    return c;
  }

}  // namespace cgt
