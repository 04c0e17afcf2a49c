#include "cgt/freewords.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace cgt {

  bool word_less(Word const& u, Word const& v) {
    return std::lexicographical_compare(
        u.begin(), u.end(), v.begin(), v.end(), letter_less);
  }

  bool shortlex_less(Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return word_less(u, v);
  }

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  bool Alphabet::valid_identifier(std::string_view s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) {
      return false;
    }
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

  Alphabet::Alphabet(std::vector<std::string> names) {
    for (auto const& n : names) {
      add(n);
    }
  }

  std::size_t Alphabet::add(std::string const& name) {
    if (!valid_identifier(name)) {
      throw InputError("invalid generator name \"" + name + "\"");
    }
    if (index_of(name)) {
      throw InputError("duplicate generator \"" + name + "\"");
    }
    _names.push_back(name);
    return _names.size() - 1;
  }

  std::optional<std::size_t> Alphabet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (_names[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Alphabet::at(std::string_view name) const {
    auto i = index_of(name);
    if (!i) {
      throw InputError("unknown generator " + std::string(name));
    }
    return *i;
  }

  std::string Alphabet::fresh_name(std::string const& stem) const {
    if (!index_of(stem)) {
      return stem;
    }
    for (std::size_t k = 1;; ++k) {
      auto cand = stem + std::to_string(k);
      if (!index_of(cand)) {
        return cand;
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class WordParser {
     public:
      WordParser(Alphabet const& a, std::string_view s) : _a(a), _s(s) {}

      Word parse() {
        Word w = sequence(0);
        skip_ws();
        if (_pos != _s.size()) {
          if (_s[_pos] == ')') {
            throw ParseError("unbalanced parentheses", _pos);
          }
          throw ParseError("unexpected character '" + std::string(1, _s[_pos])
                               + "'",
                           _pos);
        }
        return free_reduce(w);
      }

     private:
      void skip_ws() {
        while (_pos < _s.size()
               && std::isspace(static_cast<unsigned char>(_s[_pos]))) {
          ++_pos;
        }
      }

      Word sequence(int depth) {
        Word w;
        while (true) {
          skip_ws();
          if (_pos == _s.size() || _s[_pos] == ')') {
            if (_pos < _s.size() && depth == 0) {
              throw ParseError("unbalanced parentheses", _pos);
            }
            return w;
          }
          Word f = factor(depth);
          w.insert(w.end(), f.begin(), f.end());
        }
      }

      Word factor(int depth) {
        Word        base;
        std::size_t start = _pos;
        char        c     = _s[_pos];
        if (c == '(') {
          ++_pos;
          base = sequence(depth + 1);
          if (_pos == _s.size()) {
            throw ParseError("unbalanced parentheses", start);
          }
          ++_pos;  // ')'
        } else if (c == '1'
                   && (_pos + 1 == _s.size()
                       || !std::isalnum(
                           static_cast<unsigned char>(_s[_pos + 1])))) {
          ++_pos;
        } else if (c >= 'a' && c <= 'z') {
          while (_pos < _s.size()
                 && (std::isalnum(static_cast<unsigned char>(_s[_pos]))
                     || _s[_pos] == '_')) {
            ++_pos;
          }
          auto name = _s.substr(start, _pos - start);
          auto g    = _a.index_of(name);
          if (!g) {
            throw ParseError("unknown generator " + std::string(name), start);
          }
          base.push_back(make_letter(*g, 1));
        } else {
          throw ParseError("unexpected character '" + std::string(1, c) + "'",
                           start);
        }
        skip_ws();
        if (_pos < _s.size() && _s[_pos] == '^') {
          ++_pos;
          skip_ws();
          std::size_t epos = _pos;
          bool        neg  = false;
          if (_pos < _s.size() && (_s[_pos] == '-' || _s[_pos] == '+')) {
            neg = _s[_pos] == '-';
            ++_pos;
          }
          std::size_t dstart = _pos;
          long        e      = 0;
          while (_pos < _s.size()
                 && std::isdigit(static_cast<unsigned char>(_s[_pos]))) {
            e = e * 10 + (_s[_pos] - '0');
            if (e > 1000000) {
              throw ParseError("exponent too large", epos);
            }
            ++_pos;
          }
          if (dstart == _pos) {
            throw ParseError("malformed exponent", epos);
          }
          return power(free_reduce(base), neg ? -e : e);
        }
        return base;
      }

      Alphabet const&  _a;
      std::string_view _s;
      std::size_t      _pos = 0;
    };

  }  // namespace

  Word parse_word(Alphabet const& alphabet, std::string_view text) {
    return WordParser(alphabet, text).parse();
  }

  std::vector<Word> parse_word_list(Alphabet const&  alphabet,
                                    std::string_view text) {
    std::vector<Word> out;
    int               depth = 0;
    std::size_t       start = 0;
    bool              any   = false;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i < text.size()) {
        char c = text[i];
        if (c == '(') {
          ++depth;
        } else if (c == ')') {
          --depth;
        }
        if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
          any = true;
        }
        if (c != ',' || depth != 0) {
          continue;
        }
      }
      auto part = text.substr(start, i - start);
      bool blank = std::all_of(part.begin(), part.end(), [](char ch) {
        return std::isspace(static_cast<unsigned char>(ch));
      });
      if (blank) {
        if (i < text.size() || any) {
          throw ParseError("empty word in list (use 1 for the identity)", i);
        }
      } else {
        try {
          out.push_back(parse_word(alphabet, part));
        } catch (ParseError const& e) {
          throw ParseError(e.message(), start + e.position());
        }
      }
      start = i + 1;
    }
    return out;
  }

  std::string to_string(Alphabet const& alphabet, Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      long e = static_cast<long>(j - i) * sign_of(w[i]);
      if (!out.empty()) {
        out += ' ';
      }
      out += alphabet.name(gen_of(w[i]));
      if (e != 1) {
        out += '^' + std::to_string(e);
      }
      i = j;
    }
    return out;
  }

  std::string to_string(Alphabet const& alphabet, std::vector<Word> const& ws) {
    std::string out;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += to_string(alphabet, ws[i]);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reduction
  ////////////////////////////////////////////////////////////////////////

  Word inverse(Word const& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& l : out) {
      l = -l;
    }
    return out;
  }

  Word free_reduce(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  bool is_freely_reduced(Word const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == -w[i - 1]) {
        return false;
      }
    }
    return true;
  }

  bool is_cyclically_reduced(Word const& w) {
    return is_freely_reduced(w) && (w.size() < 2 || w.front() != -w.back());
  }

  bool is_positive(Word const& w) {
    return std::all_of(w.begin(), w.end(), [](Letter l) { return l > 0; });
  }

  Word mul(Word const& u, Word const& v) {
    std::size_t k = 0;
    while (k < u.size() && k < v.size() && u[u.size() - 1 - k] == -v[k]) {
      ++k;
    }
    Word out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(k));
    out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return out;
  }

  Word mul(std::initializer_list<Word> ws) {
    Word out;
    for (auto const& w : ws) {
      out = mul(out, w);
    }
    return out;
  }

  Word power(Word const& w, long n) {
    Word base = n < 0 ? inverse(w) : w;
    n         = n < 0 ? -n : n;
    auto cr   = cyclic_reduce(base);
    Word out  = inverse(cr.conjugator);
    for (long i = 0; i < n; ++i) {
      out.insert(out.end(), cr.core.begin(), cr.core.end());
    }
    out.insert(out.end(), cr.conjugator.begin(), cr.conjugator.end());
    return free_reduce(out);
  }

  Word conjugate(Word const& w, Word const& g) {
    return mul(mul(inverse(g), w), g);
  }

  Word rotate(Word const& w, std::size_t offset) {
    if (w.empty()) {
      return w;
    }
    offset %= w.size();
    Word out(w.begin() + static_cast<std::ptrdiff_t>(offset), w.end());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(offset));
    return out;
  }

  CyclicReduction cyclic_reduce(Word const& w) {
    Word        r = free_reduce(w);
    std::size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
      ++i;
      --j;
    }
    CyclicReduction out;
    out.core.assign(r.begin() + static_cast<std::ptrdiff_t>(i),
                    r.begin() + static_cast<std::ptrdiff_t>(j));
    // r = c^-1 core c where c is the inverse of the peeled prefix.
    out.conjugator = inverse(Word(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i)));
    return out;
  }

  namespace {
    // Least rotation offset in slot order (two-pointer scan).
    std::size_t least_rotation(Word const& s) {
      std::size_t const n = s.size();
      std::size_t       i = 0, j = 1, k = 0;
      while (i < n && j < n && k < n) {
        auto x = slot_of(s[(i + k) % n]);
        auto y = slot_of(s[(j + k) % n]);
        if (x == y) {
          ++k;
          continue;
        }
        if (x > y) {
          i += k + 1;
        } else {
          j += k + 1;
        }
        if (i == j) {
          ++j;
        }
        k = 0;
      }
      return std::min(i, j);
    }
  }  // namespace

  Word canonical_cyclic(Word const& w) {
    Word core = cyclic_reduce(w).core;
    if (core.empty()) {
      return core;
    }
    return rotate(core, least_rotation(core));
  }

  std::optional<ProperPower> proper_power(Word const& w) {
    Word core = cyclic_reduce(w).core;
    if (core.empty()) {
      throw InputError("empty input");
    }
    std::size_t const n = core.size();
    // Smallest period dividing n gives the maximal exponent.
    for (std::size_t p = 1; p <= n / 2; ++p) {
      if (n % p != 0) {
        continue;
      }
      bool ok = true;
      for (std::size_t i = p; i < n && ok; ++i) {
        ok = core[i] == core[i - p];
      }
      if (ok) {
        return ProperPower{Word(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(p)),
                           static_cast<long>(n / p)};
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Endomorphisms
  ////////////////////////////////////////////////////////////////////////

  Endomorphism::Endomorphism(std::vector<Word> images) : _images() {
    for (auto& w : images) {
      _images.push_back(free_reduce(w));
    }
  }

  Endomorphism Endomorphism::identity(std::size_t rank) {
    std::vector<Word> im;
    for (std::size_t g = 0; g < rank; ++g) {
      im.push_back(Word{make_letter(g, 1)});
    }
    return Endomorphism(std::move(im));
  }

  Word apply_endo(Endomorphism const& e, Word const& w) {
    Word out;
    auto push = [&out](Letter x) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    };
    for (Letter l : w) {
      std::size_t g = gen_of(l);
      if (g >= e.rank()) {
        throw InputError("letter outside the endomorphism's domain");
      }
      auto const& im = e.image(g);
      if (l > 0) {
        for (Letter x : im) {
          push(x);
        }
      } else {
        for (auto it = im.rbegin(); it != im.rend(); ++it) {
          push(-*it);
        }
      }
    }
    return out;
  }

  Endomorphism compose(Endomorphism const& f, Endomorphism const& e) {
    std::vector<Word> im;
    for (auto const& w : e.images()) {
      im.push_back(apply_endo(f, w));
    }
    return Endomorphism(std::move(im));
  }

  Endomorphism endo_power(Endomorphism const& e, std::size_t k) {
    Endomorphism out = Endomorphism::identity(e.rank());
    for (std::size_t i = 0; i < k; ++i) {
      out = compose(e, out);
    }
    return out;
  }

  Endomorphism parse_endo(Alphabet const& alphabet, std::string_view text) {
    std::vector<Word> im = Endomorphism::identity(alphabet.size()).images();
    std::vector<bool> seen(alphabet.size(), false);
    std::size_t       start = 0;
    while (start <= text.size()) {
      std::size_t end  = text.find(';', start);
      end              = end == std::string_view::npos ? text.size() : end;
      auto        part = text.substr(start, end - start);
      std::size_t arrow = part.find("->");
      bool blank = std::all_of(part.begin(), part.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
      });
      if (!blank) {
        if (arrow == std::string_view::npos) {
          throw ParseError("expected '->' in endomorphism", start);
        }
        auto lhs = part.substr(0, arrow);
        while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.front()))) {
          lhs.remove_prefix(1);
        }
        while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) {
          lhs.remove_suffix(1);
        }
        auto g = alphabet.index_of(lhs);
        if (!g) {
          throw ParseError("unknown generator " + std::string(lhs), start);
        }
        if (seen[*g]) {
          throw ParseError("generator " + std::string(lhs) + " mapped twice", start);
        }
        seen[*g] = true;
        try {
          im[*g] = parse_word(alphabet, part.substr(arrow + 2));
        } catch (ParseError const& e) {
          throw ParseError(e.message(), start + arrow + 2 + e.position());
        }
      }
      start = end + 1;
    }
    return Endomorphism(std::move(im));
  }

  std::string to_string(Alphabet const& alphabet, Endomorphism const& e) {
    std::string out;
    for (std::size_t g = 0; g < e.rank(); ++g) {
      if (g > 0) {
        out += "; ";
      }
      out += alphabet.name(g) + " -> " + to_string(alphabet, e.image(g));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subsemigroups
  ////////////////////////////////////////////////////////////////////////

  bool positive_subsemigroup_member(Word const&              w,
                                    std::vector<Word> const& gens) {
    for (auto const& g : gens) {
      if (!is_positive(g)) {
        throw InputError("positive generators required");
      }
    }
    if (w.empty()) {
      return false;
    }
    // reach[i]: the prefix of length i is a concatenation of generators.
    std::vector<bool> reach(w.size() + 1, false);
    reach[0] = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!reach[i]) {
        continue;
      }
      for (auto const& g : gens) {
        if (!g.empty() && i + g.size() <= w.size()
            && std::equal(g.begin(), g.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
          reach[i + g.size()] = true;
        }
      }
    }
    return reach[w.size()];
  }

}  // namespace cgt
