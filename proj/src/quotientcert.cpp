#include "cgt/quotientcert.hpp"

#include <algorithm>

namespace cgt {

  std::string to_string(ClaimKind k) {
    switch (k) {
      case ClaimKind::free_basis:
        return "free-basis";
      case ClaimKind::malnormal:
        return "malnormal";
      case ClaimKind::trivial_intersection:
        return "trivial-intersection";
      case ClaimKind::conjugacy_lift:
        return "conjugacy-lift";
    }
    return "unknown";
  }

  void Certificate::seal() {
    certified = std::all_of(hypotheses.begin(), hypotheses.end(),
                            [](Hypothesis const& h) { return h.yes; });
  }

  namespace {

    std::vector<Word> join(std::vector<Word> a, std::vector<Word> const& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }

    std::string metric_detail(MetricVerdict const& v) {
      if (v.yes) {
        return "yes";
      }
      return "no (piece of length " + std::to_string(v.piece.size()) + " in relator of length "
             + std::to_string(v.relator.size()) + ")";
    }

    // Cyclic class of w up to inversion.
    Word cyclic_class(Word const& w) {
      Word k = canonical_cyclic(free_reduce(w));
      Word i = canonical_cyclic(inverse(k));
      return word_less(i, k) ? i : k;
    }

    char const* const DUPLICATE_DETAIL
        = "two relators are equal up to cyclic conjugacy and inversion";

    std::optional<std::vector<Word>> duplicate_pair(std::vector<Word> const& words) {
      std::vector<Word> cls;
      for (auto const& w : words) {
        cls.push_back(cyclic_class(w));
      }
      for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (cls[i] == cls[j]) {
            return std::vector<Word>{words[j], words[i]};
          }
        }
      }
      return std::nullopt;
    }

    // Tries C'(1/4)-T(4) first, then C'(1/6); records the evaluated
    // conditions in one hypothesis. Two input words in the same cyclic class
    // share a whole relator as a piece, which the symmetrised closure hides.
    Hypothesis small_cancellation_route(std::size_t num_gens, std::vector<Word> const& words,
                                        std::string const& what, std::string& route) {
      Hypothesis h;
      h.condition = "C'(1/4)-T(4) or C'(1/6) on " + what;
      if (auto dup = duplicate_pair(words)) {
        h.detail = DUPLICATE_DETAIL;
        h.words  = *dup;
        return h;
      }
      RelatorSet rs(num_gens, words);
      auto quarter = check_metric(rs, Rational{1, 4});
      auto t4      = check_T(rs, 4);
      h.detail     = "C'(1/4): " + metric_detail(quarter) + "; T(4): " + (t4.yes ? "yes" : "no");
      if (!quarter.yes) {
        h.words = {quarter.piece, quarter.relator};
      } else if (!t4.yes) {
        h.words = t4.triple;
      }
      if (quarter.yes && t4.yes) {
        h.yes = true;
        route = "1/4-T(4)";
        return h;
      }
      auto sixth = check_metric(rs, Rational{1, 6});
      h.detail += "; C'(1/6): " + metric_detail(sixth);
      if (sixth.yes) {
        h.yes = true;
        route = "1/6";
        h.words.clear();
      }
      return h;
    }

    bool is_free_basis(std::size_t num_gens, std::vector<Word> const& s) {
      for (auto const& w : s) {
        if (free_reduce(w).empty()) {
          return false;
        }
      }
      return rank(build_and_fold(num_gens, s)) == s.size();
    }

  }  // namespace

  Certificate certify_free_basis(std::size_t num_gens, std::vector<Word> const& r,
                                 std::vector<Word> const& s) {
    RelatorSet base(num_gens, r);
    if (!base.admissible()) {
      throw Refusal("presentation not Dehn-admissible");
    }
    Certificate c;
    c.kind = ClaimKind::free_basis;
    c.hypotheses.push_back({"base presentation Dehn-admissible", true, "", {}});
    c.hypotheses.push_back({"s is a free basis in F", is_free_basis(num_gens, s), "", {}});
    Hypothesis h{"C'(1/4) on r and s", false, DUPLICATE_DETAIL, {}};
    if (auto dup = duplicate_pair(join(r, s))) {
      h.words = *dup;
    } else {
      auto v   = check_metric(RelatorSet(num_gens, join(r, s)), Rational{1, 4});
      h.yes    = v.yes;
      h.detail = metric_detail(v);
      if (!v.yes) {
        h.words = {v.piece, v.relator};
      }
    }
    c.hypotheses.push_back(std::move(h));
    c.seal();
    return c;
  }

  Certificate certify_malnormal_in_quotient(std::size_t num_gens, std::vector<Word> const& r,
                                            std::vector<Word> const& s) {
    Certificate c;
    c.kind = ClaimKind::malnormal;
    c.hypotheses.push_back(small_cancellation_route(num_gens, join(r, s), "r and s", c.route));
    Hypothesis pw{"no element of s is a proper power", true, "", {}};
    for (auto const& w : s) {
      if (!free_reduce(w).empty() && proper_power(free_reduce(w))) {
        pw.yes    = false;
        pw.detail = "proper power";
        pw.words.push_back(w);
      }
    }
    c.hypotheses.push_back(std::move(pw));
    c.seal();
    return c;
  }

  FamilyVerdict check_family_cyclically_reduced(RelatorSet const&        rs,
                                                std::vector<Word> const& t,
                                                std::size_t              syllable_bound) {
    if (syllable_bound < 3) {
      throw InputError("syllable bound must be at least 3");
    }
    if (!is_free_basis(rs.num_gens(), t)) {
      throw Refusal("not a free basis");
    }
    FamilyVerdict     v;
    std::vector<Word> letters;  // t^{+-1}; letter 2i is t_i, 2i+1 its inverse
    for (auto const& w : t) {
      letters.push_back(free_reduce(w));
      letters.push_back(inverse(letters.back()));
    }
    // Block-length criterion.
    bool unconditional = true;
    for (std::size_t x = 0; x < letters.size(); ++x) {
      std::size_t left = 0, right = 0;
      for (std::size_t y = 0; y < letters.size(); ++y) {
        if (y == (x ^ 1U)) {
          continue;
        }
        auto lcp = [](Word const& a, Word const& b) {
          std::size_t i = 0;
          while (i < a.size() && i < b.size() && a[i] == b[i]) {
            ++i;
          }
          return i;
        };
        left  = std::max(left, lcp(inverse(letters[y]), letters[x]));
        right = std::max(right, lcp(inverse(letters[x]), letters[y]));
      }
      std::size_t len = letters[x].size();
      if (left + right >= len || len - left - right <= rs.max_relator_length()) {
        unconditional = false;
      }
    }
    v.unconditional = unconditional;
    // Bounded scan over freely reduced words in the letters.
    std::vector<std::size_t> seq;
    auto                     scan = [&](auto&& self, Word const& acc) -> bool {
      if (!seq.empty()) {
        ++v.words_checked;
        if (!is_cyclically_dehn_reduced(rs, acc)) {
          v.yes            = false;
          v.counterexample = acc;
          return false;
        }
      }
      if (seq.size() == syllable_bound) {
        return true;
      }
      for (std::size_t x = 0; x < letters.size(); ++x) {
        if (!seq.empty() && x == (seq.back() ^ 1U)) {
          continue;
        }
        seq.push_back(x);
        bool ok = self(self, mul(acc, letters[x]));
        seq.pop_back();
        if (!ok) {
          return false;
        }
      }
      return true;
    };
    scan(scan, Word());
    if (!unconditional) {
      v.caveats.push_back("t-family check bounded at syllable length "
                          + std::to_string(syllable_bound));
    }
    return v;
  }

  FamilyVerdict check_family_cyclically_reduced(std::size_t num_gens,
                                                std::vector<Word> const& r,
                                                std::vector<Word> const& t,
                                                std::size_t syllable_bound) {
    return check_family_cyclically_reduced(RelatorSet(num_gens, r), t, syllable_bound);
  }

  Certificate certify_trivial_intersection_in_quotient(std::size_t              num_gens,
                                                       std::vector<Word> const& r,
                                                       std::vector<Word> const& s,
                                                       std::vector<Word> const& t,
                                                       std::size_t syllable_bound) {
    Certificate c;
    c.kind = ClaimKind::trivial_intersection;
    c.hypotheses.push_back(small_cancellation_route(num_gens, join(r, s), "r and s", c.route));
    Hypothesis fam{"every word over t is cyclically r*-reduced", false, "", {}};
    try {
      auto fv = check_family_cyclically_reduced(num_gens, r, t, syllable_bound);
      fam.yes = fv.yes;
      fam.detail = std::to_string(fv.words_checked) + " words checked"
                   + (fv.unconditional ? ", block-length criterion holds" : "");
      if (fv.counterexample) {
        fam.words.push_back(*fv.counterexample);
      }
      c.caveats.insert(c.caveats.end(), fv.caveats.begin(), fv.caveats.end());
    } catch (Refusal const& e) {
      fam.detail = e.what();
    }
    c.hypotheses.push_back(std::move(fam));
    c.free_verdict = trivial_intersection_all_conjugates(num_gens, s, t);
    c.seal();
    if (!c.certified) {
      c.caveats.emplace_back(NO_LIFT_CAVEAT);
    }
    return c;
  }

  std::optional<Word> free_conjugator(Word const& u, Word const& v) {
    auto cu = cyclic_reduce(free_reduce(u));
    auto cv = cyclic_reduce(free_reduce(v));
    if (cu.core.size() != cv.core.size()) {
      return std::nullopt;
    }
    std::size_t const n = cu.core.size();
    std::size_t       offset = 0;
    if (n != 0) {
      Word kk = cu.core;
      kk.insert(kk.end(), cu.core.begin(), cu.core.end());
      auto it = std::search(kk.begin(), kk.end(), cv.core.begin(), cv.core.end());
      if (it == kk.end()) {
        return std::nullopt;
      }
      offset = static_cast<std::size_t>(it - kk.begin()) % n;
    }
    // v's core is p^-1 (u's core) p for the rotation prefix p.
    Word p(cu.core.begin(), cu.core.begin() + offset);
    Word w = mul({inverse(cu.conjugator), p, cv.conjugator});
    if (mul({inverse(w), free_reduce(u), w}) != free_reduce(v)) {
      throw std::logic_error("free_conjugator: verification failed");
    }
    return w;
  }

}  // namespace cgt
