#include "cgt/hnnforge.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>

#include "cgt/malchar.hpp"

namespace cgt {

  namespace {

    // Reduced words over n generators of length at most len, shortlex.
    std::vector<Word> reduced_words(std::size_t n, std::size_t len) {
      std::vector<Word> out{Word{}};
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == len) {
          continue;
        }
        for (std::size_t s = 0; s < 2 * n; ++s) {
          Letter l = letter_of_slot(s);
          if (!out[i].empty() && out[i].back() == -l) {
            continue;
          }
          Word w = out[i];
          w.push_back(l);
          out.push_back(std::move(w));
        }
      }
      return out;
    }

    Word shift(Word const& w, std::size_t by) {
      Word out;
      out.reserve(w.size());
      for (Letter l : w) {
        out.push_back(make_letter(gen_of(l) + by, sign_of(l)));
      }
      return out;
    }

    void check_exponents(std::array<std::size_t, 3> const& e) {
      for (std::size_t x : e) {
        if (x < 6) {
          throw Refusal("triangle exponents must be at least 6");
        }
      }
    }

    // Canonical cyclic classes of the relators, for comparing presentations
    // whose quotients could not be enumerated.
    std::set<Word> relator_classes(std::vector<Word> const& rels) {
      std::set<Word> out;
      for (auto const& r : rels) {
        Word c = canonical_cyclic(r);
        if (!c.empty()) {
          Word ci = canonical_cyclic(inverse(c));
          out.insert(std::min(c, ci));
        }
      }
      return out;
    }

  }  // namespace

  std::string to_string(PaddingMode m) {
    return m == PaddingMode::pq ? "pq" : "minimal";
  }

  PaddingMode parse_padding_mode(std::string_view text) {
    if (text == "pq") {
      return PaddingMode::pq;
    }
    if (text == "minimal") {
      return PaddingMode::minimal;
    }
    throw InputError("unknown padding mode \"" + std::string(text) + "\"");
  }

  Presentation hat_presentation(Presentation const& p, PaddingMode mode) {
    std::vector<std::string> names = p.alphabet.names();
    std::size_t              pad   = 0;
    std::vector<std::string> fresh;
    Alphabet                 taken = p.alphabet;
    auto add_fresh = [&](std::string const& stem) {
      std::string name = taken.fresh_name(stem);
      taken.add(name);
      fresh.push_back(name);
    };
    if (mode == PaddingMode::pq) {
      add_fresh("p");
      add_fresh("q");
    } else {
      std::size_t gens = names.size(), rels = p.relators.size();
      while (gens < 2 || rels == 0) {
        add_fresh("x");
        ++gens;
        ++rels;
      }
    }
    pad = fresh.size();
    Presentation out;
    std::vector<std::string> all = fresh;
    all.insert(all.end(), names.begin(), names.end());
    out.alphabet = Alphabet(all);
    for (auto const& r : p.relators) {
      out.relators.push_back(shift(r, pad));
    }
    for (std::size_t g = 0; g < pad; ++g) {
      out.relators.push_back(Word{make_letter(g, 1)});
    }
    return out;
  }

  HatKernel hat_kernel(Presentation const& hat, std::size_t max_cosets, std::size_t depth) {
    HatKernel out;
    auto      e = todd_coxeter(hat, {}, max_cosets);
    if (e.table) {
      out.generators = schreier_generators(*e.table);
      out.table      = std::move(e.table);
      return out;
    }
    std::size_t const n = hat.num_gens();
    SubgroupGraph     kept_graph(n);
    for (auto const& g : reduced_words(n, depth)) {
      for (auto const& r : hat.relators) {
        Word c = free_reduce(mul({inverse(g), r, g}));
        if (c.empty() || contains(kept_graph, c)) {
          continue;
        }
        out.generators.push_back(std::move(c));
        kept_graph = build_and_fold(n, out.generators);
      }
    }
    out.truncated = depth;
    return out;
  }

  Word MFamily::expand(Word const& w) const {
    return apply_endo(Endomorphism(words), w);
  }

  MFamily m_family(std::size_t n, std::size_t rho, PaddingMode mode) {
    MFamily out;
    auto    seed = seed_words_triangle(rho);
    if (mode == PaddingMode::minimal && n == 2) {
      out.names = {"x", "y"};
      out.words = {seed.first, seed.second};
      return out;
    }
    auto f        = rank_n_family(seed, n);
    out.chunks    = f.chunks;
    out.words     = std::move(f.words);
    out.over_seed = std::move(f.over_seed);
    for (std::size_t i = 1; i <= n; ++i) {
      out.names.push_back("m" + std::to_string(i));
    }
    return out;
  }

  Endomorphism stable_endomorphism(std::array<std::size_t, 3> const& e) {
    if (e[0] == e[1] && e[1] == e[2]) {
      return Endomorphism({Word{2}, Word{-2, -1}});
    }
    return Endomorphism({Word{-1}, Word{-2}});
  }

  PresentationFile HnnPresentation::file() const {
    PresentationFile f;
    f.base      = base;
    f.stable    = stable;
    f.assoc     = k_generators;
    f.endo      = phi;
    f.truncated = truncated;
    return f;
  }

  std::vector<std::string> HnnPresentation::render() const {
    std::vector<std::string> out;
    Alphabet const           ma = m.alphabet();
    for (auto const& u : k_hat) {
      std::string s = to_string(ma, u);
      out.push_back(stable + " " + s + " " + stable + "^-1 = phi(" + s + ")");
    }
    if (truncated) {
      out.push_back("# " + std::string(TRUNCATED_MARKER) + ", depth " + std::to_string(*truncated));
    }
    return out;
  }

  HnnPresentation build_TP(Presentation const& p, TPOptions const& options) {
    check_exponents(options.exponents);
    HnnPresentation h;
    h.options = options;
    h.input   = p;
    h.hat     = hat_presentation(p, options.mode);
    auto const& [i, j, k] = options.exponents;
    h.base.alphabet       = alphabet_ab();
    h.base.relators       = triangle_relators(i, j, k);

    auto kernel = hat_kernel(h.hat, options.max_cosets, options.depth);
    h.k_hat     = std::move(kernel.generators);
    h.quotient  = std::move(kernel.table);
    h.truncated = kernel.truncated;
    if (h.truncated) {
      h.caveats.push_back(TRUNCATED_MARKER);
    }

    h.m = m_family(h.hat.num_gens(), options.rho, options.mode);
    h.caveats.push_back("M is taken malcharacteristic from the construction; "
                        "its certificate is reported by malchar --triangle");
    SubgroupGraph mg = build_and_fold(2, h.m.words);
    for (auto const& u : h.k_hat) {
      Word w = h.m.expand(u);
      if (!contains(mg, w)) {
        throw std::logic_error("associated generator outside M");
      }
      h.k_generators.push_back(std::move(w));
    }

    h.phi = stable_endomorphism(options.exponents);
    RelatorSet rs(2, h.base.relators);
    auto       order = endo_order_in_quotient(rs, h.phi, 24);
    if (!order) {
      throw Refusal("stable endomorphism has no finite order in the base group");
    }
    h.phi_order = *order;
    h.stable    = Alphabet({"a", "b"}).fresh_name("t");
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Britton words
  ////////////////////////////////////////////////////////////////////////

  BrittonWord parse_britton(Alphabet const& base, std::string const& stable,
                            std::string_view text) {
    std::vector<std::string> names = base.names();
    names.push_back(stable);
    Alphabet    ext(names);
    Word        w = parse_word(ext, text);
    BrittonWord out;
    for (Letter l : w) {
      if (gen_of(l) == base.size()) {
        out.signs.push_back(sign_of(l));
        out.syllables.emplace_back();
      } else {
        out.syllables.back().push_back(l);
      }
    }
    for (auto& s : out.syllables) {
      s = free_reduce(s);
    }
    return out;
  }

  std::string to_string(Alphabet const& base, std::string const& stable, BrittonWord const& w) {
    std::string out;
    auto        add = [&out](std::string const& s) {
      if (!out.empty()) {
        out += ' ';
      }
      out += s;
    };
    for (std::size_t i = 0; i < w.syllables.size(); ++i) {
      if (i > 0) {
        add(w.signs[i - 1] > 0 ? stable : stable + "^-1");
      }
      if (!w.syllables[i].empty()) {
        add(to_string(base, w.syllables[i]));
      }
    }
    return out.empty() ? "1" : out;
  }

  ////////////////////////////////////////////////////////////////////////
  // HnnGroup and Britton reduction
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct WordHash {
      std::size_t operator()(Word const& w) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (Letter l : w) {
          h = (h ^ static_cast<std::uint32_t>(l)) * 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
      }
    };
  }  // namespace

  struct HnnGroup::Memo {
    std::mutex                                  lock;
    std::unordered_map<Word, bool, WordHash>    associated, image;
  };

  HnnGroup::HnnGroup(PresentationFile const& f)
      : _alphabet(f.base.alphabet),
        _rs(f.base.num_gens(), f.base.relators),
        _k(build_and_fold(f.base.num_gens(), f.assoc)),
        _truncated(f.truncated.has_value()),
        _memo(std::make_shared<Memo>()) {
    if (!f.stable) {
      throw InputError("not an HNN presentation: missing 'stable:'");
    }
    _stable = *f.stable;
    _phi    = f.endo ? *f.endo : Endomorphism::identity(f.base.num_gens());
    auto order = endo_order_in_quotient(_rs, _phi, 24);
    if (!order) {
      throw Refusal("endomorphism has no finite order in the base group");
    }
    _order   = *order;
    _phi_inv = endo_power(_phi, _order - 1);
  }

  bool HnnGroup::member(Word const& h, bool image) const {
    Word r = free_reduce(h);
    {
      std::lock_guard<std::mutex> g(_memo->lock);
      auto&                       m  = image ? _memo->image : _memo->associated;
      auto                        it = m.find(r);
      if (it != m.end()) {
        return it->second;
      }
    }
    Word k   = image ? apply_endo(_phi_inv, r) : r;
    bool yes = contains(_k, k) || contains(_k, dehn_reduce(_rs, k));
    std::lock_guard<std::mutex> g(_memo->lock);
    (image ? _memo->image : _memo->associated).emplace(std::move(r), yes);
    return yes;
  }

  bool HnnGroup::in_associated(Word const& h) const {
    return member(h, false);
  }

  bool HnnGroup::in_image(Word const& h) const {
    return member(h, true);
  }

  Word HnnGroup::phi(Word const& h) const {
    return apply_endo(_phi, h);
  }

  Word HnnGroup::phi_inverse(Word const& h) const {
    return apply_endo(_phi_inv, h);
  }

  BrittonResult britton_reduce(HnnGroup const& g, BrittonWord const& w) {
    if (g.truncated()) {
      throw Refusal("finite quotient required");
    }
    if (w.syllables.size() != w.signs.size() + 1) {
      throw InputError("malformed Britton word");
    }
    BrittonResult out;
    auto&         hs = out.word.syllables;
    auto&         es = out.word.signs;
    hs               = {free_reduce(w.syllables[0])};
    // Original index of each stable letter kept on the stack.
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < w.signs.size(); ++i) {
      int         e    = w.signs[i];
      Word const& next = w.syllables[i + 1];
      if (!es.empty() && es.back() == -e) {
        Word const& mid = hs.back();
        bool ok = es.back() > 0 ? g.in_associated(mid) : g.in_image(mid);
        if (ok) {
          Word image = es.back() > 0 ? g.phi(mid) : g.phi_inverse(mid);
          out.log.push_back({at.back(), es.back(), mid, image});
          hs.pop_back();
          es.pop_back();
          at.pop_back();
          hs.back() = free_reduce(mul({hs.back(), image, next}));
          continue;
        }
      }
      es.push_back(e);
      at.push_back(i);
      hs.push_back(free_reduce(next));
    }
    out.trivial = es.empty() && word_problem(g.base(), hs[0]);
    return out;
  }

  bool is_britton_reduced(HnnGroup const& g, BrittonWord const& w) {
    for (std::size_t i = 0; i + 1 < w.signs.size(); ++i) {
      if (w.signs[i] != -w.signs[i + 1]) {
        continue;
      }
      Word const& mid = w.syllables[i + 1];
      if (w.signs[i] > 0 ? g.in_associated(mid) : g.in_image(mid)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms
  ////////////////////////////////////////////////////////////////////////

  MorphismData quotient_morphism(Presentation const& p1, Presentation const& p2,
                                 TPOptions const& options) {
    if (p1.alphabet.names() != p2.alphabet.names()) {
      throw InputError("presentations must share their generators");
    }
    Presentation h1 = hat_presentation(p1, options.mode);
    Presentation h2 = hat_presentation(p2, options.mode);
    auto         k1 = hat_kernel(h1, options.max_cosets, options.depth);
    auto         k2 = hat_kernel(h2, options.max_cosets, options.depth);
    MorphismData out;
    if (k2.table) {
      for (auto const& r : h1.relators) {
        if (image_in_quotient(*k2.table, r) != 0) {
          throw InputError("not a quotient presentation: relator "
                           + to_string(h1.alphabet, r) + " is nontrivial in the second group");
        }
      }
      if (k1.table && k1.table->num_cosets() == k2.table->num_cosets()) {
        throw InputError("not a proper quotient");
      }
    } else if (k1.table) {
      throw InputError("not a quotient presentation: the first group is finite, the second is not");
    } else {
      if (relator_classes(h1.relators) == relator_classes(h2.relators)) {
        throw InputError("not a proper quotient");
      }
      out.caveats.push_back("the second presentation is taken to be a quotient presentation "
                            "of the first on the caller's assertion");
    }
    SubgroupGraph g1 = build_and_fold(h1.num_gens(), k1.generators);
    for (auto const& w : k2.generators) {
      if (!contains(g1, w)) {
        out.u_hat.push_back(w);
      }
    }
    out.truncated = k1.truncated ? k1.truncated : k2.truncated;
    if (out.truncated) {
      out.caveats.push_back(TRUNCATED_MARKER);
    }
    out.m = m_family(h2.num_gens(), options.rho, options.mode);
    return out;
  }

  Presentation free_product(Presentation const& p, Presentation const& q) {
    Alphabet                 names = p.alphabet;
    std::vector<std::string> all   = p.alphabet.names();
    for (auto const& n : q.alphabet.names()) {
      std::string m = names.fresh_name(n);
      names.add(m);
      all.push_back(m);
    }
    Presentation out;
    out.alphabet = Alphabet(all);
    out.relators = p.relators;
    for (auto const& r : q.relators) {
      out.relators.push_back(shift(r, p.num_gens()));
    }
    return out;
  }

  MorphismData free_product_morphism(Presentation const& p, Presentation const& q,
                                     TPOptions const& options) {
    Presentation pq = free_product(p, q);
    Presentation hp = hat_presentation(p, PaddingMode::pq);
    Presentation hq = hat_presentation(pq, PaddingMode::pq);
    auto         kp = hat_kernel(hp, options.max_cosets, options.depth);
    auto         kq = hat_kernel(hq, options.max_cosets, options.depth);

    MorphismData out;
    MFamily small = m_family(hp.num_gens(), options.rho, PaddingMode::pq);
    out.m         = m_family(hq.num_gens(), options.rho, PaddingMode::pq);
    if (small.chunks != out.m.chunks
        || !std::equal(small.over_seed.begin(), small.over_seed.end(), out.m.over_seed.begin())) {
      throw Refusal("incompatible family convention: the smaller family is not a prefix of the larger");
    }
    // Words over hp embed into the hq alphabet unchanged.
    SubgroupGraph gp = build_and_fold(hq.num_gens(), kp.generators);
    for (auto const& w : kq.generators) {
      if (!contains(gp, w)) {
        out.u_hat.push_back(w);
      }
    }
    out.truncated = kp.truncated ? kp.truncated : kq.truncated;
    if (out.truncated) {
      out.caveats.push_back(TRUNCATED_MARKER);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Residual witnesses
  ////////////////////////////////////////////////////////////////////////

  ResidualWitness residual_witness(HnnPresentation const& h, BrittonWord const& g) {
    if (!h.quotient) {
      throw Refusal("finite quotient required");
    }
    HnnGroup grp(h.file());
    if (g.syllables.size() != g.signs.size() + 1) {
      throw InputError("malformed Britton word");
    }
    if (!is_britton_reduced(grp, g)) {
      throw InputError("word is not Britton-reduced");
    }
    ResidualWitness out;
    if (g.signs.empty()) {
      if (word_problem(grp.base(), g.syllables[0])) {
        throw InputError("word is trivial");
      }
      out.detail = "no stable letters: nontrivial in the base group by Dehn's algorithm";
      return out;
    }
    GeneratorRewriter m(2, h.m.words);
    for (std::size_t i = 1; i + 1 < g.syllables.size(); ++i) {
      ResidualEntry e;
      e.position = i;
      if (g.signs[i - 1] != -g.signs[i]) {
        e.detail = "stable letters of equal sign: no constraint";
        out.entries.push_back(std::move(e));
        continue;
      }
      Word hi = g.signs[i - 1] > 0 ? g.syllables[i] : grp.phi_inverse(g.syllables[i]);
      auto rw = m.rewrite(dehn_reduce(grp.base(), hi));
      if (!rw) {
        e.detail = "not in M: no constraint";
        out.entries.push_back(std::move(e));
        continue;
      }
      Word over_hat;
      for (auto const& [gen, sign] : *rw) {
        over_hat.push_back(make_letter(gen, sign));
      }
      coset_type c = image_in_quotient(*h.quotient, over_hat);
      if (c == 0) {
        throw std::logic_error("syllable in M with trivial image is pinchable");
      }
      e.constrained = true;
      e.image       = h.quotient->representative(c);
      e.detail      = "in M with nontrivial image";
      out.entries.push_back(std::move(e));
      out.trivial_quotient = false;
    }
    out.detail = out.trivial_quotient
                     ? "no syllable between opposite stable letters lies in M: the trivial quotient separates"
                     : "the finite quotient itself separates";
    return out;
  }

}  // namespace cgt
