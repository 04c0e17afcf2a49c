#include "cgt/smallcancel.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace cgt {

  Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
      }
      while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
      }
      return s;
    };
    auto number = [&trim](std::string_view s) {
      s      = trim(s);
      long v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || p != s.data() + s.size() || v <= 0) {
        throw InputError("malformed rational \"" + std::string(s) + "\"");
      }
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational{number(text), 1};
    }
    return Rational{number(text.substr(0, slash)), number(text.substr(slash + 1))};
  }

  std::string to_string(Rational r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
  }

  namespace {

    // Three-way comparison of letter ranges in slot order.
    int compare(Letter const* a, std::size_t na, Letter const* b, std::size_t nb) {
      std::size_t n = std::min(na, nb);
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) {
          return slot_of(a[i]) < slot_of(b[i]) ? -1 : 1;
        }
      }
      return na == nb ? 0 : (na < nb ? -1 : 1);
    }

    std::size_t lcp(Letter const* a, std::size_t na, Letter const* b, std::size_t nb) {
      std::size_t n = std::min(na, nb), i = 0;
      while (i < n && a[i] == b[i]) {
        ++i;
      }
      return i;
    }

    // Least number of pieces covering some cyclic shift, where reach[j] is
    // the longest piece starting at j. Pieces are closed under subwords, so
    // from a fixed start the greedy maximal jump is optimal; binary lifting
    // evaluates it from every start.
    std::size_t min_cyclic_cover(std::vector<std::size_t> const& reach) {
      std::size_t const len = reach.size();
      if (std::find(reach.begin(), reach.end(), 0) != reach.end()) {
        return 0;
      }
      // up[k][j]: position and distance after 2^k greedy jumps from j.
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> up(1);
      up[0].resize(len);
      for (std::size_t j = 0; j < len; ++j) {
        std::size_t d = std::min(reach[j], len);
        up[0][j]      = {(j + d) % len, d};
      }
      while ((std::size_t{1} << (up.size() - 1)) < len) {
        auto const& prev = up.back();
        std::vector<std::pair<std::size_t, std::size_t>> next(len);
        for (std::size_t j = 0; j < len; ++j) {
          auto [p, d]  = prev[j];
          auto [p2, d2] = prev[p];
          next[j]      = {p2, std::min(d + d2, len)};
        }
        up.push_back(std::move(next));
      }
      std::size_t best = 0;
      for (std::size_t s = 0; s < len; ++s) {
        std::size_t pos = s, dist = 0, jumps = 0;
        for (std::size_t k = up.size(); k-- > 0;) {
          auto [p, d] = up[k][pos];
          if (dist + d < len) {
            dist += d;
            pos = p;
            jumps += std::size_t{1} << k;
          }
        }
        ++jumps;  // the final, possibly truncated, piece
        if (best == 0 || jumps < best) {
          best = jumps;
        }
      }
      return best;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // RelatorSet
  ////////////////////////////////////////////////////////////////////////

  RelatorSet::RelatorSet(std::size_t num_gens, std::vector<Word> const& relators)
      : _n(num_gens) {
    for (auto const& r : relators) {
      for (Letter l : r) {
        if (gen_of(l) >= num_gens) {
          throw InputError("relator uses a letter outside the alphabet");
        }
      }
      Word core = cyclic_reduce(free_reduce(r)).core;
      if (core.empty()) {
        throw InputError("trivial relator");
      }
      _max_len = std::max(_max_len, core.size());
      _rels.push_back(std::move(core));
    }
    // Bases 2i and 2i+1 are relator i and its inverse, each stored twice
    // over so every cyclic shift is a contiguous range.
    std::vector<Elem> all;
    for (std::size_t i = 0; i < _rels.size(); ++i) {
      for (Word const& base : {_rels[i], inverse(_rels[i])}) {
        Word d = base;
        d.insert(d.end(), base.begin(), base.end());
        _doubled.push_back(std::move(d));
        for (std::size_t k = 0; k < base.size(); ++k) {
          all.push_back(Elem{static_cast<std::uint32_t>(_doubled.size() - 1),
                             static_cast<std::uint32_t>(k)});
        }
      }
    }
    auto letters = [this](Elem e) {
      return std::span<Letter const>(_doubled[e.base].data() + e.offset,
                                     _doubled[e.base].size() / 2);
    };
    auto cmp = [&letters](Elem x, Elem y) {
      auto u = letters(x), v = letters(y);
      return compare(u.data(), u.size(), v.data(), v.size());
    };
    std::stable_sort(all.begin(), all.end(),
                     [&cmp](Elem x, Elem y) { return cmp(x, y) < 0; });
    // where[base][offset] = index of that shift after deduplication.
    std::vector<std::vector<std::size_t>> where(_doubled.size());
    for (std::size_t b = 0; b < _doubled.size(); ++b) {
      where[b].resize(_doubled[b].size() / 2);
    }
    for (Elem e : all) {
      if (_elems.empty() || cmp(_elems.back(), e) != 0) {
        _elems.push_back(e);
        _origin.push_back(e.base / 2);
      }
      where[e.base][e.offset] = _elems.size() - 1;
    }
    _lcp.assign(_elems.size(), 0);
    for (std::size_t i = 0; i + 1 < _elems.size(); ++i) {
      auto        u = letters(_elems[i]), v = letters(_elems[i + 1]);
      std::size_t l = lcp(u.data(), u.size(), v.data(), v.size());
      _lcp[i]       = std::max(_lcp[i], l);
      _lcp[i + 1]   = std::max(_lcp[i + 1], l);
    }
    std::map<std::size_t, std::vector<std::size_t>> by_len;
    for (std::size_t i = 0; i < _elems.size(); ++i) {
      by_len[_doubled[_elems[i].base].size() / 2].push_back(i);
    }
    _by_len.assign(by_len.begin(), by_len.end());

    for (std::size_t i = 0; i < _rels.size(); ++i) {
      std::size_t best = 0, cover = 0;
      Word        best_piece;
      for (std::size_t b : {2 * i, 2 * i + 1}) {
        std::vector<std::size_t> reach(where[b].size());
        for (std::size_t k = 0; k < reach.size(); ++k) {
          std::size_t idx = where[b][k];
          reach[k]        = _lcp[idx];
          if (reach[k] > best) {
            best      = reach[k];
            auto u    = element(idx);
            best_piece = Word(u.begin(), u.begin() + reach[k]);
          }
        }
        std::size_t c = min_cyclic_cover(reach);
        if (c != 0 && (cover == 0 || c < cover)) {
          cover = c;
        }
      }
      _pieces.max_piece.push_back(best);
      _pieces.longest_piece.push_back(best_piece);
      _pieces.min_piece_cover.push_back(cover);
    }
    _admissible = dehn_admissible(*this);
  }

  std::vector<Word> RelatorSet::symmetrised() const {
    std::vector<Word> out;
    out.reserve(_elems.size());
    for (std::size_t i = 0; i < _elems.size(); ++i) {
      auto u = element(i);
      out.emplace_back(u.begin(), u.end());
    }
    return out;
  }

  RelatorSet symmetrise(std::size_t num_gens, std::vector<Word> const& relators) {
    return RelatorSet(num_gens, relators);
  }

  PieceTable compute_pieces(RelatorSet const& rs) {
    return rs.pieces();
  }

  ////////////////////////////////////////////////////////////////////////
  // Conditions
  ////////////////////////////////////////////////////////////////////////

  MetricVerdict check_metric(RelatorSet const& rs, Rational lambda) {
    MetricVerdict v;
    std::size_t   worst_p = 0, worst_len = 1;
    for (std::size_t i = 0; i < rs.symmetrised_size(); ++i) {
      auto        r = rs.element(i);
      std::size_t p = rs.max_piece_at(i), len = r.size();
      if (static_cast<long>(p) * lambda.den < lambda.num * static_cast<long>(len)) {
        continue;
      }
      // Keep the largest ratio p / len.
      if (v.yes || p * worst_len > worst_p * len) {
        v.yes     = false;
        worst_p   = p;
        worst_len = len;
        v.piece   = Word(r.begin(), r.begin() + p);
        v.relator = Word(r.begin(), r.end());
      }
    }
    return v;
  }

  CVerdict check_C(RelatorSet const& rs, std::size_t m) {
    CVerdict    v;
    auto const& covers = rs.pieces().min_piece_cover;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      if (covers[i] != 0 && covers[i] < m && (v.yes || covers[i] < v.pieces)) {
        v.yes     = false;
        v.pieces  = covers[i];
        v.relator = rs.relators()[i];
      }
    }
    return v;
  }

  TVerdict check_T(RelatorSet const& rs, std::size_t q) {
    if (q != 4) {
      throw InputError("only T(4) is supported");
    }
    // A product uv cancels iff last(u) = first(v)^-1, so only the
    // (first, last) letter class matters, up to the three exclusions
    // r2 != r1^-1, r3 != r2^-1, r1 != r3^-1; three representatives per class
    // are enough to dodge two forbidden values.
    std::size_t const n2 = 2 * rs.num_gens();
    std::vector<std::vector<std::size_t>> cls(n2 * n2);
    for (std::size_t i = 0; i < rs.symmetrised_size(); ++i) {
      auto  r = rs.element(i);
      auto& c = cls[slot_of(r.front()) * n2 + slot_of(r.back())];
      if (c.size() < 3) {
        c.push_back(i);
      }
    }
    auto is_inverse = [&rs](std::size_t x, std::size_t y) {
      auto u = rs.element(x);
      auto w = rs.element(y);
      if (u.size() != w.size()) {
        return false;
      }
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != -w[w.size() - 1 - i]) {
          return false;
        }
      }
      return true;
    };
    auto inv = [](std::size_t s) { return s ^ 1U; };
    TVerdict v;
    for (std::size_t f1 = 0; f1 < n2; ++f1) {
      for (std::size_t l1 = 0; l1 < n2; ++l1) {
        std::size_t f2 = inv(l1);
        for (std::size_t l2 = 0; l2 < n2; ++l2) {
          std::size_t f3 = inv(l2), l3 = inv(f1);
          auto const& c1 = cls[f1 * n2 + l1];
          auto const& c2 = cls[f2 * n2 + l2];
          auto const& c3 = cls[f3 * n2 + l3];
          for (std::size_t r1 : c1) {
            for (std::size_t r2 : c2) {
              if (is_inverse(r1, r2)) {
                continue;
              }
              for (std::size_t r3 : c3) {
                if (is_inverse(r2, r3) || is_inverse(r3, r1)) {
                  continue;
                }
                v.yes    = false;
                for (std::size_t r : {r1, r2, r3}) {
                  auto e = rs.element(r);
                  v.triple.emplace_back(e.begin(), e.end());
                }
                return v;
              }
            }
          }
        }
      }
    }
    return v;
  }

  bool dehn_admissible(RelatorSet const& rs) {
    if (check_metric(rs, Rational{1, 6}).yes) {
      return true;
    }
    return check_metric(rs, Rational{1, 4}).yes && check_T(rs, 4).yes;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dehn's algorithm
  ////////////////////////////////////////////////////////////////////////

  std::optional<DehnMatch> find_dehn_match(RelatorSet const& rs, Word const& w,
                                           std::size_t from, std::size_t limit,
                                           std::size_t cap) {
    std::size_t const end = std::min(limit, w.size());
    for (std::size_t p = from; p < end; ++p) {
      Letter const*            s  = w.data() + p;
      std::size_t const        ns = std::min(end - p, cap);
      std::optional<DehnMatch> best;
      for (auto const& [len, idx] : rs.length_classes()) {
        if (2 * ns <= len) {
          continue;
        }
        auto it = std::lower_bound(idx.begin(), idx.end(), 0, [&](std::size_t e, int) {
          auto r = rs.element(e);
          return compare(r.data(), r.size(), s, ns) < 0;
        });
        std::size_t l = 0;
        if (it != idx.end()) {
          l = std::max(l, lcp(rs.element(*it).data(), len, s, ns));
        }
        if (it != idx.begin()) {
          l = std::max(l, lcp(rs.element(*(it - 1)).data(), len, s, ns));
        }
        if (2 * l <= len) {
          continue;
        }
        // Least relator carrying the prefix s[0, l).
        auto first = std::lower_bound(idx.begin(), idx.end(), 0, [&](std::size_t e, int) {
          auto r = rs.element(e);
          return compare(r.data(), r.size(), s, l) < 0;
        });
        if (!best || l > best->length || (l == best->length && *first < best->relator)) {
          best = DehnMatch{p, l, *first};
        }
      }
      if (best) {
        return best;
      }
    }
    return std::nullopt;
  }

  Word dehn_reduce(RelatorSet const& rs, Word const& w) {
    Word        cur  = free_reduce(w);
    std::size_t from = 0;
    std::size_t maxl = rs.max_relator_length();
    while (auto m = find_dehn_match(rs, cur, from)) {
      auto        r = rs.element(m->relator);
      Word        out(cur.begin(), cur.begin() + m->pos);
      std::size_t low  = m->pos;
      auto        push = [&out, &low](Letter x) {
        if (!out.empty() && out.back() == -x) {
          out.pop_back();
          low = std::min(low, out.size());
        } else {
          out.push_back(x);
        }
      };
      for (std::size_t i = r.size(); i > m->length; --i) {
        push(-r[i - 1]);
      }
      for (std::size_t i = m->pos + m->length; i < cur.size(); ++i) {
        push(cur[i]);
      }
      from = low + 1 >= maxl ? low + 1 - maxl : 0;
      cur  = std::move(out);
    }
    return cur;
  }

  bool is_dehn_reduced(RelatorSet const& rs, Word const& w) {
    return !find_dehn_match(rs, w).has_value();
  }

  bool is_cyclically_dehn_reduced(RelatorSet const& rs, Word const& w) {
    Word r = free_reduce(w);
    if (r.empty() || find_dehn_match(rs, r)) {
      return false;
    }
    Word k  = cyclic_reduce(r).core;
    Word kk = k;
    kk.insert(kk.end(), k.begin(), k.end());
    return !find_dehn_match(rs, kk, 0, kk.size(), k.size()).has_value();
  }

  bool word_problem(RelatorSet const& rs, Word const& w) {
    if (!rs.admissible()) {
      throw Refusal("presentation not Dehn-admissible");
    }
    return dehn_reduce(rs, w).empty();
  }

  std::optional<std::size_t> endo_order_in_quotient(RelatorSet const&   rs,
                                                    Endomorphism const& e,
                                                    std::size_t         max_k) {
    if (e.rank() != rs.num_gens()) {
      throw InputError("endomorphism rank does not match the presentation");
    }
    for (auto const& r : rs.relators()) {
      if (!word_problem(rs, apply_endo(e, r))) {
        throw Refusal("does not preserve relators");
      }
    }
    Endomorphism cur = e;
    for (std::size_t k = 1; k <= max_k; ++k) {
      bool trivial = true;
      for (std::size_t g = 0; g < rs.num_gens() && trivial; ++g) {
        trivial = word_problem(rs, mul(cur.image(g), Word{make_letter(g, -1)}));
      }
      if (trivial) {
        return k;
      }
      cur = compose(e, cur);
    }
    return std::nullopt;
  }

  std::vector<Word> triangle_relators(std::size_t i, std::size_t j, std::size_t k) {
    Word a{1}, b{2};
    return {power(a, static_cast<long>(i)), power(b, static_cast<long>(j)),
            power(Word{1, 2}, static_cast<long>(k))};
  }

}  // namespace cgt
