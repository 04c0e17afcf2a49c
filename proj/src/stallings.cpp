#include "cgt/stallings.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

namespace cgt {

  namespace {

    std::size_t inv_slot(std::size_t s) {
      return s ^ 1U;
    }

    // Union-find folding of an edge-labelled graph with a worklist of
    // label clashes.
    class Folder {
     public:
      explicit Folder(std::size_t n) : _n2(2 * n) {}

      vertex_type add_vertex() {
        vertex_type v = static_cast<vertex_type>(_parent.size());
        _parent.push_back(v);
        _out.resize(_out.size() + _n2, NO_VERTEX);
        return v;
      }

      void add_edge(vertex_type u, Letter l, vertex_type v) {
        set(find(u), slot_of(l), find(v));
        set(find(v), inv_slot(slot_of(l)), find(u));
      }

      vertex_type find(vertex_type v) {
        vertex_type r = v;
        while (_parent[r] != r) {
          r = _parent[r];
        }
        while (_parent[v] != r) {
          vertex_type next = _parent[v];
          _parent[v]       = r;
          v                = next;
        }
        return r;
      }

      void fold() {
        while (!_queue.empty()) {
          auto [x, y] = _queue.front();
          _queue.pop_front();
          x = find(x);
          y = find(y);
          if (x == y) {
            continue;
          }
          if (y < x) {
            std::swap(x, y);
          }
          _parent[y] = x;
          for (std::size_t s = 0; s < _n2; ++s) {
            vertex_type t = _out[y * _n2 + s];
            if (t != NO_VERTEX) {
              set(x, s, find(t));
            }
          }
        }
      }

      // Table over root vertices with resolved targets; non-roots are left
      // without edges and are unreachable.
      std::vector<vertex_type> table() {
        std::vector<vertex_type> out(_out.size(), NO_VERTEX);
        for (vertex_type v = 0; v < _parent.size(); ++v) {
          if (find(v) != v) {
            continue;
          }
          for (std::size_t s = 0; s < _n2; ++s) {
            vertex_type t = _out[v * _n2 + s];
            if (t != NO_VERTEX) {
              out[v * _n2 + s] = find(t);
            }
          }
        }
        return out;
      }

      std::size_t size() const {
        return _parent.size();
      }

     private:
      void set(vertex_type u, std::size_t s, vertex_type v) {
        vertex_type& slot = _out[u * _n2 + s];
        if (slot == NO_VERTEX) {
          slot = v;
        } else if (slot != v) {
          _queue.emplace_back(slot, v);
        }
      }

      std::size_t                                       _n2;
      std::vector<vertex_type>                          _parent;
      std::vector<vertex_type>                          _out;
      std::deque<std::pair<vertex_type, vertex_type>>   _queue;
    };

    // Lays out the bouquet of the (freely reduced, nonempty) generators.
    template <typename AddEdge, typename AddVertex>
    void bouquet(std::vector<Word> const& gens, AddVertex add_vertex,
                 AddEdge add_edge) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Word const& w = gens[i];
        vertex_type prev = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
          vertex_type next = (j + 1 == w.size()) ? 0 : add_vertex();
          add_edge(i, j, prev, w[j], next);
          prev = next;
        }
      }
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // SubgroupGraph
  ////////////////////////////////////////////////////////////////////////

  SubgroupGraph::SubgroupGraph(std::size_t num_gens)
      : _n(num_gens), _nv(1), _ne(0), _out(2 * num_gens, NO_VERTEX) {
    compute_tree();
  }

  SubgroupGraph SubgroupGraph::from_table(std::size_t n, std::vector<vertex_type> table,
                                          vertex_type base) {
    std::size_t const n2 = 2 * n;
    std::size_t const nv = n2 == 0 ? 1 : table.size() / n2;
    std::vector<std::size_t> deg(nv, 0);
    std::vector<bool>        alive(nv, true);
    for (std::size_t v = 0; v < nv; ++v) {
      for (std::size_t s = 0; s < n2; ++s) {
        deg[v] += table[v * n2 + s] != NO_VERTEX;
      }
    }
    std::vector<vertex_type> stack;
    for (vertex_type v = 0; v < nv; ++v) {
      if (v != base && deg[v] <= 1) {
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      vertex_type v = stack.back();
      stack.pop_back();
      if (!alive[v]) {
        continue;
      }
      alive[v] = false;
      for (std::size_t s = 0; s < n2; ++s) {
        vertex_type t = table[v * n2 + s];
        if (t == NO_VERTEX) {
          continue;
        }
        table[v * n2 + s] = NO_VERTEX;
        if (table[t * n2 + inv_slot(s)] == v) {
          table[t * n2 + inv_slot(s)] = NO_VERTEX;
          --deg[t];
        }
        if (t != base && alive[t] && deg[t] <= 1) {
          stack.push_back(t);
        }
      }
    }
    // Canonical breadth-first renumbering.
    std::vector<vertex_type> id(nv, NO_VERTEX);
    std::vector<vertex_type> order{base};
    id[base] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      vertex_type v = order[i];
      for (std::size_t s = 0; s < n2; ++s) {
        vertex_type t = table[v * n2 + s];
        if (t != NO_VERTEX && id[t] == NO_VERTEX) {
          id[t] = static_cast<vertex_type>(order.size());
          order.push_back(t);
        }
      }
    }
    SubgroupGraph g(n);
    g._nv = order.size();
    g._out.assign(g._nv * n2, NO_VERTEX);
    g._ne = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t s = 0; s < n2; ++s) {
        vertex_type t = table[order[i] * n2 + s];
        if (t != NO_VERTEX) {
          g._out[i * n2 + s] = id[t];
          g._ne += (s % 2 == 0);
        }
      }
    }
    g.compute_tree();
    return g;
  }

  void SubgroupGraph::compute_tree() {
    std::size_t const n2 = 2 * _n;
    _tree_parent.assign(_nv, NO_VERTEX);
    _tree_letter.assign(_nv, 0);
    std::vector<bool> seen(_nv, false);
    seen[0] = true;
    std::vector<vertex_type> order{0};
    for (std::size_t i = 0; i < order.size(); ++i) {
      vertex_type v = order[i];
      for (std::size_t s = 0; s < n2; ++s) {
        vertex_type t = _out[v * n2 + s];
        if (t != NO_VERTEX && !seen[t]) {
          seen[t]         = true;
          _tree_parent[t] = v;
          _tree_letter[t] = letter_of_slot(s);
          order.push_back(t);
        }
      }
    }
  }

  Word SubgroupGraph::tree_path(vertex_type v) const {
    Word out;
    for (vertex_type u = v; u != 0; u = _tree_parent.at(u)) {
      out.push_back(_tree_letter[u]);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::size_t SubgroupGraph::degree(vertex_type v) const {
    std::size_t d = 0;
    for (std::size_t s = 0; s < 2 * _n; ++s) {
      d += _out[v * 2 * _n + s] != NO_VERTEX;
    }
    return d;
  }

  bool SubgroupGraph::is_tree_edge(vertex_type v, std::size_t g) const {
    vertex_type t = _out[v * 2 * _n + 2 * g];
    if (t == NO_VERTEX) {
      return false;
    }
    Letter l = make_letter(g, 1);
    return (_tree_parent[t] == v && _tree_letter[t] == l)
           || (_tree_parent[v] == t && _tree_letter[v] == -l);
  }

  std::optional<vertex_type> SubgroupGraph::read(Word const& w, vertex_type from) const {
    vertex_type v = from;
    for (Letter l : w) {
      if (gen_of(l) >= _n) {
        return std::nullopt;
      }
      v = _out[v * 2 * _n + slot_of(l)];
      if (v == NO_VERTEX) {
        return std::nullopt;
      }
    }
    return v;
  }

  SubgroupGraph build_and_fold(std::size_t num_gens, std::vector<Word> const& gens) {
    std::vector<Word> reduced;
    for (auto const& w : gens) {
      Word r = free_reduce(w);
      for (Letter l : r) {
        if (gen_of(l) >= num_gens) {
          throw InputError("generator word uses a letter outside the alphabet");
        }
      }
      if (!r.empty()) {
        reduced.push_back(std::move(r));
      }
    }
    if (num_gens == 0) {
      return SubgroupGraph(0);
    }
    Folder f(num_gens);
    f.add_vertex();
    bouquet(
        reduced, [&f] { return f.add_vertex(); },
        [&f](std::size_t, std::size_t, vertex_type u, Letter l, vertex_type v) {
          f.add_edge(u, l, v);
        });
    f.fold();
    return SubgroupGraph::from_table(num_gens, f.table(), 0);
  }

  bool contains(SubgroupGraph const& g, Word const& w) {
    auto end = g.read(free_reduce(w));
    return end && *end == g.basepoint();
  }

  std::size_t rank(SubgroupGraph const& g) {
    return g.num_edges() + 1 - g.num_vertices();
  }

  std::vector<Word> basis(SubgroupGraph const& g) {
    std::vector<Word> out;
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      for (std::size_t a = 0; a < g.num_gens(); ++a) {
        vertex_type t = g.target(v, make_letter(a, 1));
        if (t == NO_VERTEX || g.is_tree_edge(v, a)) {
          continue;
        }
        Word w = g.tree_path(v);
        w.push_back(make_letter(a, 1));
        Word back = inverse(g.tree_path(t));
        w.insert(w.end(), back.begin(), back.end());
        out.push_back(free_reduce(w));
      }
    }
    return out;
  }

  bool same_subgroup(SubgroupGraph const& g1, SubgroupGraph const& g2) {
    return g1 == g2;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rewriting over generators
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Folding where every edge carries a word over the generators. Merging
    // vertex y into x with correction c prefixes the weights of edges
    // leaving y by c (and suffixes edges entering y by c^-1), which keeps
    // the weight of every closed path at the basepoint unchanged.
    class WeightedFolder {
     public:
      explicit WeightedFolder(std::size_t n) : _n2(2 * n) {}

      vertex_type add_vertex() {
        vertex_type v = static_cast<vertex_type>(_parent.size());
        _parent.push_back(v);
        _pot.emplace_back();
        _out.resize(_out.size() + _n2, NO_VERTEX);
        return v;
      }

      void add_edge(vertex_type u, Letter l, vertex_type v, Word const& w) {
        set(u, slot_of(l), v, w);
        set(v, inv_slot(slot_of(l)), u, inverse(w));
      }

      void fold() {
        while (!_queue.empty()) {
          auto [x, y, c] = std::move(_queue.front());
          _queue.pop_front();
          auto [rx, cx] = find(x);
          auto [ry, cy] = find(y);
          Word cc       = mul(mul(cx, c), inverse(cy));
          if (rx == ry) {
            if (!cc.empty()) {
              throw Refusal("not a free basis");
            }
            continue;
          }
          if (ry < rx) {
            std::swap(rx, ry);
            cc = inverse(cc);
          }
          _parent[ry] = rx;
          _pot[ry]    = cc;
          for (std::size_t s = 0; s < _n2; ++s) {
            vertex_type t = _out[ry * _n2 + s];
            if (t != NO_VERTEX) {
              set(rx, s, t, mul(cc, weight(ry, s)));
              _out[ry * _n2 + s] = NO_VERTEX;
              _w.erase(key(ry, s));
            }
          }
        }
      }

      // Resolved targets and weights at every root.
      void export_to(std::vector<vertex_type>&                 out,
                     std::unordered_map<std::uint64_t, Word>& weights) {
        out.assign(_out.size(), NO_VERTEX);
        weights.clear();
        for (vertex_type v = 0; v < _parent.size(); ++v) {
          if (_parent[v] != v) {
            continue;
          }
          for (std::size_t s = 0; s < _n2; ++s) {
            vertex_type t = _out[v * _n2 + s];
            if (t == NO_VERTEX) {
              continue;
            }
            auto [rt, ct]       = find(t);
            out[v * _n2 + s]    = rt;
            Word w              = mul(weight(v, s), inverse(ct));
            if (!w.empty()) {
              weights.emplace(key(v, s), std::move(w));
            }
          }
        }
      }

     private:
      std::uint64_t key(vertex_type v, std::size_t s) const {
        return static_cast<std::uint64_t>(v) * _n2 + s;
      }

      Word const& weight(vertex_type v, std::size_t s) const {
        static Word const empty;
        auto              it = _w.find(key(v, s));
        return it == _w.end() ? empty : it->second;
      }

      std::pair<vertex_type, Word> find(vertex_type v) {
        std::vector<vertex_type> path;
        while (_parent[v] != v) {
          path.push_back(v);
          v = _parent[v];
        }
        vertex_type r = v;
        Word        acc;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
          acc         = mul(acc, _pot[*it]);
          _pot[*it]   = acc;
          _parent[*it] = r;
        }
        return {r, path.empty() ? Word() : _pot[path.front()]};
      }

      void set(vertex_type u, std::size_t s, vertex_type v, Word const& w) {
        vertex_type& slot = _out[u * _n2 + s];
        if (slot == NO_VERTEX) {
          slot = v;
          if (!w.empty()) {
            _w[key(u, s)] = w;
          }
        } else {
          _queue.emplace_back(slot, v, mul(inverse(weight(u, s)), w));
        }
      }

      std::size_t                                          _n2;
      std::vector<vertex_type>                             _parent;
      std::vector<Word>                                    _pot;
      std::vector<vertex_type>                             _out;
      std::unordered_map<std::uint64_t, Word>              _w;
      std::deque<std::tuple<vertex_type, vertex_type, Word>> _queue;
    };

  }  // namespace

  GeneratorRewriter::GeneratorRewriter(std::size_t num_gens, std::vector<Word> const& gens)
      : _n(num_gens), _k(gens.size()) {
    std::vector<Word> reduced;
    for (auto const& w : gens) {
      reduced.push_back(free_reduce(w));
      if (reduced.back().empty()) {
        throw Refusal("not a free basis");
      }
    }
    if (rank(build_and_fold(num_gens, reduced)) != reduced.size()) {
      throw Refusal("not a free basis");
    }
    WeightedFolder f(num_gens);
    f.add_vertex();
    bouquet(
        reduced, [&f] { return f.add_vertex(); },
        [&f](std::size_t i, std::size_t j, vertex_type u, Letter l, vertex_type v) {
          f.add_edge(u, l, v, j == 0 ? Word{make_letter(i, 1)} : Word());
        });
    f.fold();
    f.export_to(_out, _weights);
  }

  Word const& GeneratorRewriter::weight(vertex_type v, std::size_t slot) const {
    static Word const empty;
    auto it = _weights.find(static_cast<std::uint64_t>(v) * 2 * _n + slot);
    return it == _weights.end() ? empty : it->second;
  }

  std::optional<std::vector<GenLetter>> GeneratorRewriter::rewrite(Word const& w) const {
    if (_n == 0) {
      return w.empty() ? std::optional<std::vector<GenLetter>>(std::vector<GenLetter>{})
                       : std::nullopt;
    }
    Word        r = free_reduce(w);
    vertex_type v = 0;
    Word        acc;
    auto push = [&acc](Letter x) {
      if (!acc.empty() && acc.back() == -x) {
        acc.pop_back();
      } else {
        acc.push_back(x);
      }
    };
    for (Letter l : r) {
      if (gen_of(l) >= _n) {
        return std::nullopt;
      }
      std::size_t s = slot_of(l);
      vertex_type t = _out[v * 2 * _n + s];
      if (t == NO_VERTEX) {
        return std::nullopt;
      }
      for (Letter x : weight(v, s)) {
        push(x);
      }
      v = t;
    }
    if (v != 0) {
      return std::nullopt;
    }
    std::vector<GenLetter> out;
    for (Letter x : acc) {
      out.emplace_back(gen_of(x), sign_of(x));
    }
    return out;
  }

  bool GeneratorRewriter::contains(Word const& w) const {
    return rewrite(w).has_value();
  }

  std::optional<std::vector<GenLetter>>
  rewrite_over_generators(std::size_t num_gens, std::vector<Word> const& gens, Word const& w) {
    return GeneratorRewriter(num_gens, gens).rewrite(w);
  }

  Word evaluate(std::vector<Word> const& gens, std::vector<GenLetter> const& w) {
    Word out;
    for (auto [i, e] : w) {
      Word const& g = gens.at(i);
      Word        piece = e > 0 ? g : inverse(g);
      out.insert(out.end(), piece.begin(), piece.end());
    }
    return free_reduce(out);
  }

  ////////////////////////////////////////////////////////////////////////
  // Fibre products
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct PairEdge {
      vertex_type src, dst;
      std::size_t gen;
    };

    struct PairGraph {
      std::vector<std::pair<vertex_type, vertex_type>> pairs;  // sorted
      std::vector<PairEdge>                            edges;
      // Incidence lists: (edge index, outgoing?) sorted by slot then target.
      std::vector<std::vector<std::pair<std::size_t, bool>>> inc;
    };

    PairGraph pair_graph(SubgroupGraph const& g1, SubgroupGraph const& g2) {
      if (g1.num_gens() != g2.num_gens()) {
        throw InputError("fibre product of graphs over different alphabets");
      }
      std::size_t const n = g1.num_gens();
      std::vector<std::tuple<vertex_type, vertex_type, vertex_type, vertex_type, std::size_t>> raw;
      for (std::size_t a = 0; a < n; ++a) {
        Letter                                           l = make_letter(a, 1);
        std::vector<std::pair<vertex_type, vertex_type>> e2;
        for (vertex_type u2 = 0; u2 < g2.num_vertices(); ++u2) {
          vertex_type v2 = g2.target(u2, l);
          if (v2 != NO_VERTEX) {
            e2.emplace_back(u2, v2);
          }
        }
        for (vertex_type u1 = 0; u1 < g1.num_vertices(); ++u1) {
          vertex_type v1 = g1.target(u1, l);
          if (v1 == NO_VERTEX) {
            continue;
          }
          for (auto [u2, v2] : e2) {
            raw.emplace_back(u1, u2, v1, v2, a);
          }
        }
      }
      PairGraph pg;
      for (auto const& [u1, u2, v1, v2, a] : raw) {
        pg.pairs.emplace_back(u1, u2);
        pg.pairs.emplace_back(v1, v2);
      }
      std::sort(pg.pairs.begin(), pg.pairs.end());
      pg.pairs.erase(std::unique(pg.pairs.begin(), pg.pairs.end()), pg.pairs.end());
      auto id = [&pg](vertex_type x, vertex_type y) {
        return static_cast<vertex_type>(
            std::lower_bound(pg.pairs.begin(), pg.pairs.end(), std::make_pair(x, y))
            - pg.pairs.begin());
      };
      for (auto const& [u1, u2, v1, v2, a] : raw) {
        pg.edges.push_back(PairEdge{id(u1, u2), id(v1, v2), a});
      }
      pg.inc.assign(pg.pairs.size(), {});
      for (std::size_t e = 0; e < pg.edges.size(); ++e) {
        pg.inc[pg.edges[e].src].emplace_back(e, true);
        pg.inc[pg.edges[e].dst].emplace_back(e, false);
      }
      for (auto& lst : pg.inc) {
        std::sort(lst.begin(), lst.end(), [&pg](auto const& x, auto const& y) {
          auto key = [&pg](auto const& p) {
            PairEdge const& e = pg.edges[p.first];
            return std::make_tuple(2 * e.gen + (p.second ? 0 : 1),
                                   p.second ? e.dst : e.src, p.first);
          };
          return key(x) < key(y);
        });
      }
      return pg;
    }

    // A closed reduced path at `root` through the core, chosen as the
    // shortest tree-path cycle closed by a single non-tree edge.
    Word core_cycle(PairGraph const& pg, std::vector<bool> const& alive,
                    std::vector<bool> const& edge_alive, vertex_type root) {
      std::vector<std::size_t> dist(pg.pairs.size(), SIZE_MAX);
      std::vector<Word>        path(pg.pairs.size());
      std::vector<bool>        tree_edge(pg.edges.size(), false);
      std::vector<vertex_type> order{root};
      dist[root] = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        vertex_type v = order[i];
        for (auto [e, outgoing] : pg.inc[v]) {
          if (!edge_alive[e]) {
            continue;
          }
          PairEdge const& pe = pg.edges[e];
          vertex_type     t  = outgoing ? pe.dst : pe.src;
          if (!alive[t] || dist[t] != SIZE_MAX) {
            continue;
          }
          dist[t]      = dist[v] + 1;
          tree_edge[e] = true;
          path[t]      = path[v];
          path[t].push_back(make_letter(pe.gen, outgoing ? 1 : -1));
          order.push_back(t);
        }
      }
      std::size_t best = SIZE_MAX, best_len = SIZE_MAX;
      for (vertex_type v : order) {
        for (auto [e, outgoing] : pg.inc[v]) {
          if (!outgoing || !edge_alive[e] || tree_edge[e]) {
            continue;
          }
          PairEdge const& pe  = pg.edges[e];
          std::size_t     len = dist[pe.src] + dist[pe.dst] + 1;
          if (dist[pe.dst] != SIZE_MAX && len < best_len) {
            best     = e;
            best_len = len;
          }
        }
      }
      if (best == SIZE_MAX) {
        return Word();
      }
      PairEdge const& pe = pg.edges[best];
      Word            w  = path[pe.src];
      w.push_back(make_letter(pe.gen, 1));
      Word back = inverse(path[pe.dst]);
      w.insert(w.end(), back.begin(), back.end());
      return free_reduce(w);
    }

  }  // namespace

  FibreComponents fibre_product(SubgroupGraph const& g1, SubgroupGraph const& g2) {
    PairGraph         pg = pair_graph(g1, g2);
    std::size_t const nv = pg.pairs.size();
    // Components by union-find.
    std::vector<vertex_type> uf(nv);
    for (vertex_type v = 0; v < nv; ++v) {
      uf[v] = v;
    }
    auto find = [&uf](vertex_type v) {
      while (uf[v] != v) {
        uf[v] = uf[uf[v]];
        v     = uf[v];
      }
      return v;
    };
    for (auto const& e : pg.edges) {
      vertex_type a = find(e.src), b = find(e.dst);
      if (a != b) {
        uf[std::max(a, b)] = std::min(a, b);
      }
    }
    // Trim to the core.
    std::vector<std::size_t> deg(nv, 0);
    for (auto const& e : pg.edges) {
      ++deg[e.src];
      ++deg[e.dst];
    }
    std::vector<bool>        alive(nv, true), edge_alive(pg.edges.size(), true);
    std::vector<vertex_type> stack;
    for (vertex_type v = 0; v < nv; ++v) {
      if (deg[v] <= 1) {
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      vertex_type v = stack.back();
      stack.pop_back();
      if (!alive[v]) {
        continue;
      }
      alive[v] = false;
      for (auto [e, outgoing] : pg.inc[v]) {
        if (!edge_alive[e]) {
          continue;
        }
        edge_alive[e]   = false;
        vertex_type t   = outgoing ? pg.edges[e].dst : pg.edges[e].src;
        if (t == v) {
          continue;
        }
        if (--deg[t] <= 1 && alive[t]) {
          stack.push_back(t);
        }
      }
    }
    FibreComponents                        out;
    std::unordered_map<vertex_type, std::size_t> comp_of_root;
    for (vertex_type v = 0; v < nv; ++v) {
      vertex_type r  = find(v);
      auto        it = comp_of_root.find(r);
      if (it == comp_of_root.end()) {
        it = comp_of_root.emplace(r, out.components.size()).first;
        out.components.emplace_back();
      }
      FibreComponent& c = out.components[it->second];
      c.vertices.push_back(pg.pairs[v]);
      if (alive[v]) {
        c.core_vertices.push_back(pg.pairs[v]);
      }
    }
    for (std::size_t e = 0; e < pg.edges.size(); ++e) {
      FibreComponent& c = out.components[comp_of_root[find(pg.edges[e].src)]];
      ++c.edges;
      c.core_edges += edge_alive[e];
    }
    for (auto& c : out.components) {
      if (!c.core_vertices.empty()) {
        auto const& p    = c.core_vertices.front();
        vertex_type root = static_cast<vertex_type>(
            std::lower_bound(pg.pairs.begin(), pg.pairs.end(), p) - pg.pairs.begin());
        c.cycle = core_cycle(pg, alive, edge_alive, root);
      }
    }
    if (g1 == g2) {
      for (std::size_t i = 0; i < out.components.size(); ++i) {
        auto const& vs = out.components[i].vertices;
        if (std::binary_search(vs.begin(), vs.end(), std::make_pair(vertex_type(0), vertex_type(0)))) {
          out.diagonal_index = i;
        }
      }
    }
    return out;
  }

  namespace {

    IntersectionVerdict verdict_from(SubgroupGraph const& g1, SubgroupGraph const& g2,
                                     FibreComponents const&     fc,
                                     std::optional<std::size_t> skip) {
      IntersectionVerdict v;
      v.component_count = fc.components.size();
      for (std::size_t i = 0; i < fc.components.size(); ++i) {
        auto const& c = fc.components[i];
        if ((skip && *skip == i) || c.forest()) {
          continue;
        }
        auto [v1, v2] = c.core_vertices.front();
        Word const p1 = g1.tree_path(v1);
        Word const p2 = g2.tree_path(v2);
        Witness     w;
        w.u = mul(mul(p1, c.cycle), inverse(p1));
        w.g = mul(p2, inverse(p1));
        v.yes     = false;
        v.witness = std::move(w);
        return v;
      }
      return v;
    }

  }  // namespace

  IntersectionVerdict is_malnormal(std::size_t num_gens, std::vector<Word> const& gens) {
    SubgroupGraph g  = build_and_fold(num_gens, gens);
    auto          fc = fibre_product(g, g);
    auto          v  = verdict_from(g, g, fc, fc.diagonal_index);
    v.rank           = rank(g);
    return v;
  }

  IntersectionVerdict trivial_intersection_all_conjugates(std::size_t              num_gens,
                                                          std::vector<Word> const& s,
                                                          std::vector<Word> const& t) {
    SubgroupGraph gs = build_and_fold(num_gens, s);
    SubgroupGraph gt = build_and_fold(num_gens, t);
    auto          fc = fibre_product(gs, gt);
    auto          v  = verdict_from(gs, gt, fc, std::nullopt);
    v.rank           = rank(gs);
    return v;
  }

}  // namespace cgt
