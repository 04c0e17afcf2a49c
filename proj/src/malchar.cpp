#include "cgt/malchar.hpp"

#include <algorithm>

#include "cgt/smallcancel.hpp"

namespace cgt {

  namespace {

    Letter const A = 1, B = 2;

    Word letters(std::initializer_list<Letter> ls) {
      return Word(ls);
    }

    std::vector<Word> apply_all(Endomorphism const& e, std::vector<Word> const& ws) {
      std::vector<Word> out;
      for (auto const& w : ws) {
        out.push_back(apply_endo(e, w));
      }
      return out;
    }

    // Word i of the family: f_{ic+1} ... f_{(i+1)c} with f_k = u v (u v^2)^k.
    Word family_word(std::size_t i, std::size_t chunks) {
      Word w;
      for (std::size_t k = i * chunks + 1; k <= (i + 1) * chunks; ++k) {
        w.push_back(1);
        w.push_back(2);
        for (std::size_t r = 0; r < k; ++r) {
          w.insert(w.end(), {1, 2, 2});
        }
      }
      return w;
    }

    constexpr std::size_t CHUNK_BUDGET = 64;
    // Longest expanded family the quotient check is attempted on.
    constexpr std::size_t MAX_CERTIFIED_LENGTH = 50000;

  }  // namespace

  Alphabet const& alphabet_ab() {
    static Alphabet const ab({"a", "b"});
    return ab;
  }

  std::vector<Endomorphism> length_preserving_autos() {
    auto e = [](Letter x, Letter y) { return Endomorphism({Word{x}, Word{y}}); };
    return {e(A, B),  e(B, A),   e(-A, B), e(A, -B),
            e(-A, -B), e(-B, A), e(B, -A), e(-B, -A)};
  }

  bool every_circuit_has_cube(SubgroupGraph const& g, std::size_t gen) {
    std::size_t const n2 = 2 * g.num_gens();
    // State (v, slot of the last letter, run length 1 or 2).
    auto id = [n2](std::size_t v, std::size_t s, std::size_t r) {
      return (v * n2 + s) * 2 + (r - 1);
    };
    std::size_t const            ns = g.num_vertices() * n2 * 2;
    std::vector<unsigned char>   colour(ns, 0);
    auto successors = [&](std::size_t state) {
      std::size_t r = state % 2 + 1, s = (state / 2) % n2, v = state / (2 * n2);
      std::vector<std::size_t> out;
      for (std::size_t s2 = 0; s2 < n2; ++s2) {
        if (s2 == (s ^ 1U)) {
          continue;
        }
        vertex_type t = g.target(static_cast<vertex_type>(v), letter_of_slot(s2));
        if (t == NO_VERTEX) {
          continue;
        }
        std::size_t r2 = s2 == s ? r + 1 : 1;
        if (s2 / 2 == gen && r2 >= 3) {
          continue;
        }
        out.push_back(id(t, s2, std::min<std::size_t>(r2, 2)));
      }
      return out;
    };
    // Iterative DFS looking for a back edge.
    for (std::size_t start = 0; start < ns; ++start) {
      if (colour[start] != 0) {
        continue;
      }
      std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack;
      stack.emplace_back(start, successors(start));
      colour[start] = 1;
      while (!stack.empty()) {
        auto& [state, next] = stack.back();
        if (next.empty()) {
          colour[state] = 2;
          stack.pop_back();
          continue;
        }
        std::size_t t = next.back();
        next.pop_back();
        if (colour[t] == 1) {
          return false;
        }
        if (colour[t] == 0) {
          colour[t] = 1;
          stack.emplace_back(t, successors(t));
        }
      }
    }
    return true;
  }

  MalcharHypotheses malcharlem_hypotheses(std::vector<Word> const& s) {
    MalcharHypotheses h;
    std::vector<Word> red;
    for (auto const& w : s) {
      red.push_back(free_reduce(w));
    }
    std::vector<Word> sorted = red;
    std::sort(sorted.begin(), sorted.end());
    h.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    std::vector<Word> cubes{letters({A, A}), letters({A, A, A}), letters({B, B}),
                            letters({B, B, B})};
    h.in_semigroup = !red.empty() && std::all_of(red.begin(), red.end(), [&](Word const& w) {
      return positive_subsemigroup_member(w, cubes);
    });
    auto g        = build_and_fold(2, red);
    h.circuits_a3 = every_circuit_has_cube(g, 0);
    h.circuits_b3 = every_circuit_has_cube(g, 1);
    h.yes         = h.distinct && h.in_semigroup && h.circuits_a3 && h.circuits_b3;
    if (!h.distinct) {
      h.detail = "words not pairwise distinct";
    } else if (!h.in_semigroup) {
      h.detail = "a word lies outside {a^2, a^3, b^2, b^3}^+";
    } else if (!h.circuits_a3) {
      h.detail = "a circuit has no a^3 term";
    } else if (!h.circuits_b3) {
      h.detail = "a circuit has no b^3 term";
    }
    return h;
  }

  MalcharVerdict decide_malcharacteristic_free(std::vector<Word> const& s) {
    if (!malcharlem_hypotheses(s).yes) {
      throw Refusal("malcharlem hypotheses violated");
    }
    MalcharVerdict v;
    auto           mal = is_malnormal(2, s);
    if (!mal.yes) {
      v.yes          = false;
      v.failed_check = "malnormal";
      v.witness      = mal.witness;
      return v;
    }
    auto autos = length_preserving_autos();
    for (std::size_t i = 1; i < autos.size(); ++i) {
      auto r = trivial_intersection_all_conjugates(2, apply_all(autos[i], s), s);
      if (!r.yes) {
        v.yes          = false;
        v.failed_check = "automorphism";
        v.automorphism = i;
        v.witness      = r.witness;
        return v;
      }
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Seed words and families
  ////////////////////////////////////////////////////////////////////////

  SeedWords seed_words_free(std::size_t rho) {
    if (rho < 2) {
      throw InputError("rho must be at least 2");
    }
    auto block = [](std::size_t lo, std::size_t hi) {
      Word w;
      for (std::size_t k = lo; k <= hi; ++k) {
        w.insert(w.end(), 3, A);
        w.insert(w.end(), k, B);
      }
      return w;
    };
    SeedWords s;
    s.rho    = rho;
    s.first  = block(3, rho + 2);
    s.second = block(rho + 3, 2 * rho + 2);
    s.flavor = SeedFlavor::free;
    return s;
  }

  Endomorphism block_substitution() {
    return Endomorphism({letters({A, -B}), letters({A, A, -B})});
  }

  SeedWords seed_words_triangle(std::size_t rho) {
    SeedWords s = seed_words_free(rho);
    auto      e = block_substitution();
    s.first     = apply_endo(e, s.first);
    s.second    = apply_endo(e, s.second);
    s.flavor    = SeedFlavor::triangle;
    return s;
  }

  RankFamily family_with_chunks(SeedWords const& seed, std::size_t n, std::size_t chunks) {
    RankFamily   f;
    Endomorphism expand({seed.first, seed.second});
    f.chunks = chunks;
    for (std::size_t i = 0; i < n; ++i) {
      f.over_seed.push_back(family_word(i, chunks));
      f.words.push_back(apply_endo(expand, f.over_seed.back()));
    }
    return f;
  }

  RankFamily rank_n_family(SeedWords const& seed, std::size_t n,
                           std::optional<std::vector<Word>> const& r) {
    if (n == 0) {
      throw InputError("family size must be at least 1");
    }
    if (r) {
      // Pieces between r and the seed words persist in every family.
      std::vector<Word> base = *r;
      base.push_back(seed.first);
      base.push_back(seed.second);
      auto c = certify_malnormal_in_quotient(2, *r, {seed.first, seed.second});
      if (!c.certified) {
        RelatorSet rs(2, base);
        auto       q = check_metric(rs, Rational{1, 4});
        throw Refusal("seed pair not certified against the relators: "
                      + c.hypotheses.front().detail
                      + (q.yes ? std::string() : "; worst piece " + to_string(alphabet_ab(), q.piece)
                                                     + " in " + to_string(alphabet_ab(), q.relator)));
      }
    }
    std::size_t const probe = std::max<std::size_t>(n, 2);
    std::string       last_failure;
    for (std::size_t chunks = 1; chunks <= CHUNK_BUDGET; ++chunks) {
      RankFamily f = family_with_chunks(seed, probe, chunks);
      RelatorSet rs(2, f.over_seed);
      auto       v = check_metric(rs, Rational{1, 6});
      if (!v.yes) {
        Alphabet uv({"u", "v"});
        last_failure = "piece " + to_string(uv, v.piece) + " in " + std::to_string(v.relator.size())
                       + "-letter relator";
        continue;
      }
      f.over_seed.resize(n);
      f.words.resize(n);
      if (r) {
        std::size_t total = 0;
        for (auto const& w : f.words) {
          total += w.size();
        }
        if (total > MAX_CERTIFIED_LENGTH) {
          throw Refusal("family too long to certify in the quotient ("
                        + std::to_string(total) + " letters)");
        }
        auto c = certify_malnormal_in_quotient(2, *r, f.words);
        if (!c.certified) {
          last_failure = c.hypotheses.front().detail;
          continue;
        }
      }
      return f;
    }
    throw Refusal("no family within the chunk budget passes: " + last_failure);
  }

  ////////////////////////////////////////////////////////////////////////
  // Triangle groups
  ////////////////////////////////////////////////////////////////////////

  std::string PsiMap::name() const {
    return "psi(" + std::to_string(index) + "," + (sign > 0 ? "+1" : "-1") + ")";
  }

  std::vector<PsiMap> psi_maps() {
    std::vector<PsiMap> out;
    for (int l = 1; l <= 6; ++l) {
      for (int e : {1, -1}) {
        Word a  = e > 0 ? letters({A}) : letters({-A});
        Word b  = e > 0 ? letters({B}) : letters({-B});
        Word ab = e > 0 ? letters({A, B}) : letters({-B, -A});  // (ab)^e
        Word im_a, im_b;
        switch (l) {
          case 1:
            im_a = a, im_b = b;
            break;
          case 2:
            im_a = a, im_b = inverse(ab);
            break;
          case 3:
            im_a = ab, im_b = inverse(b);
            break;
          case 4:
            im_a = b, im_b = a;
            break;
          case 5:
            im_a = b, im_b = inverse(ab);
            break;
          default:
            im_a = ab, im_b = inverse(a);
            break;
        }
        out.push_back(PsiMap{l, e, Endomorphism({im_a, im_b})});
      }
    }
    return out;
  }

  PsiTransversal psi_transversal(std::size_t i, std::size_t j, std::size_t k) {
    if (i < 6 || j < 6 || k < 6) {
      throw Refusal("triangle exponents must be at least 6");
    }
    PsiTransversal t;
    auto           all = psi_maps();
    t.exponents        = {i, j, k};
    if (i == j && j == k) {
      t.maps = all;
    } else if (i == j || j == k || i == k) {
      std::size_t eq    = (i == j || i == k) ? i : j;
      std::size_t other = (i == j) ? k : (i == k ? j : i);
      t.exponents       = {eq, eq, other};
      t.maps            = {all[0], all[1], all[6], all[7]};
    } else {
      t.maps = {all[0], all[1]};
    }
    return t;
  }

  ForbiddenCounts count_forbidden(Word const& w) {
    ForbiddenCounts c;
    auto occurrences = [&w](Word const& p) {
      std::size_t n = 0;
      for (auto it = w.begin();; ++it) {
        it = std::search(it, w.end(), p.begin(), p.end());
        if (it == w.end()) {
          return n;
        }
        ++n;
      }
    };
    c.a4 = occurrences(Word(4, A)) + occurrences(Word(4, -A));
    c.b4 = occurrences(Word(4, B)) + occurrences(Word(4, -B));
    Word ab3 = power(letters({A, B}), 3), ba3 = power(letters({B, A}), 3);
    c.ab3    = occurrences(ab3) + occurrences(inverse(ab3)) + occurrences(ba3)
            + occurrences(inverse(ba3));
    return c;
  }

  std::vector<PsiReport> verify_psi_images(std::size_t i, std::size_t j, std::size_t k,
                                           std::size_t rho, std::size_t syllable_bound) {
    if (i < 6 || j < 6 || k < 6) {
      throw Refusal("triangle exponents must be at least 6");
    }
    auto       seed = seed_words_triangle(rho);
    RelatorSet rs(2, triangle_relators(i, j, k));
    std::vector<PsiReport> out;
    for (auto const& psi : psi_maps()) {
      PsiReport rep;
      rep.psi              = psi;
      std::vector<Word> im = {apply_endo(psi.map, seed.first), apply_endo(psi.map, seed.second)};
      rep.family           = check_family_cyclically_reduced(rs, im, syllable_bound);
      // Forbidden factors in the images and across every admissible junction.
      std::vector<Word> lets;
      for (auto const& w : im) {
        lets.push_back(w);
        lets.push_back(inverse(w));
      }
      for (std::size_t x = 0; x < lets.size(); ++x) {
        ForbiddenCounts c = count_forbidden(lets[x]);
        if (x % 2 == 0) {
          rep.forbidden.a4 += c.a4;
          rep.forbidden.b4 += c.b4;
          rep.forbidden.ab3 += c.ab3;
        }
        for (std::size_t y = 0; y < lets.size(); ++y) {
          if (y == (x ^ 1U)) {
            continue;
          }
          // Only factors straddling the junction are new.
          ForbiddenCounts both = count_forbidden(mul(lets[x], lets[y]));
          ForbiddenCounts cx = count_forbidden(lets[x]), cy = count_forbidden(lets[y]);
          auto extra = [](std::size_t t, std::size_t p, std::size_t q) {
            return t > p + q ? t - p - q : 0;
          };
          rep.forbidden.a4 += extra(both.a4, cx.a4, cy.a4);
          rep.forbidden.b4 += extra(both.b4, cx.b4, cy.b4);
          rep.forbidden.ab3 += extra(both.ab3, cx.ab3, cy.ab3);
        }
      }
      out.push_back(std::move(rep));
    }
    return out;
  }

  TriangleCertificate decide_malcharacteristic_triangle(std::size_t i, std::size_t j,
                                                        std::size_t k, std::size_t rho,
                                                        std::size_t syllable_bound) {
    if (i < 6 || j < 6 || k < 6) {
      throw Refusal("triangle exponents must be at least 6");
    }
    TriangleCertificate cert;
    cert.exponents         = {i, j, k};
    cert.rho               = rho;
    auto              seed = seed_words_triangle(rho);
    std::vector<Word> s{seed.first, seed.second};
    auto              rels = triangle_relators(i, j, k);
    auto              add  = [&cert](StageResult st) {
      if (!st.yes && cert.first_failure.empty()) {
        cert.first_failure = st.name;
      }
      cert.stages.push_back(std::move(st));
    };

    // Stage 1: M free and malnormal in the triangle group.
    {
      auto        c = certify_malnormal_in_quotient(2, rels, s);
      StageResult st{"malnormal in quotient", c.certified, "", c.caveats};
      for (auto const& h : c.hypotheses) {
        st.detail += (st.detail.empty() ? "" : "; ") + h.condition + ": "
                     + (h.yes ? "yes" : "no") + (h.detail.empty() ? "" : " [" + h.detail + "]");
      }
      add(std::move(st));
    }

    // Stage 2: the free shadow is malcharacteristic, via the automorphism
    // carrying the free seed pair to the triangle seed pair.
    {
      StageResult st{"free shadow malcharacteristic", false, "", {}};
      auto        sigma   = block_substitution();
      auto        free    = seed_words_free(rho);
      bool        orbit   = apply_endo(sigma, free.first) == seed.first
                   && apply_endo(sigma, free.second) == seed.second;
      auto        image   = build_and_fold(2, sigma.images());
      bool        is_auto = image.num_vertices() == 1 && rank(image) == 2;
      if (!orbit || !is_auto) {
        st.detail = "block substitution does not carry the free seed pair";
      } else {
        try {
          auto v    = decide_malcharacteristic_free({free.first, free.second});
          st.yes    = v.yes;
          st.detail = v.yes ? "route: block substitution orbit; free seed pair malcharacteristic"
                            : "route: block substitution orbit; failed " + v.failed_check;
        } catch (Refusal const& e) {
          st.detail = std::string("route: block substitution orbit; ") + e.what();
        }
      }
      add(std::move(st));
    }

    // Stage 3: every psi image family is cyclically Dehn reduced, free of
    // forbidden factors, and meets M trivially up to conjugacy.
    cert.psi = verify_psi_images(i, j, k, rho, syllable_bound);
    for (auto const& rep : cert.psi) {
      StageResult st{rep.psi.name() + " images", rep.family.yes && rep.forbidden.total() == 0,
                     "", rep.family.caveats};
      st.detail = std::to_string(rep.family.words_checked) + " words checked"
                  + (rep.family.yes ? "" : ", found a word that is not cyclically Dehn reduced")
                  + ", forbidden factors " + std::to_string(rep.forbidden.total());
      add(std::move(st));
      if (rep.psi.index == 1 && rep.psi.sign == 1) {
        continue;
      }
      std::vector<Word> t{apply_endo(rep.psi.map, seed.first),
                          apply_endo(rep.psi.map, seed.second)};
      auto        c = certify_trivial_intersection_in_quotient(2, rels, s, t, syllable_bound);
      bool        free_yes = c.free_verdict && c.free_verdict->yes;
      StageResult tr{rep.psi.name() + " intersection", c.certified && free_yes, "", c.caveats};
      tr.detail = std::string("transfer ") + (c.certified ? "certified" : "not certified")
                  + "; free intersection " + (free_yes ? "trivial" : "nontrivial");
      add(std::move(tr));
    }
    cert.certified = cert.first_failure.empty();
    return cert;
  }

}  // namespace cgt
