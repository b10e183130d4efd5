#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "linkvol/error.hpp"

namespace linkvol {

// Each crossing lists its four edge labels counterclockwise, starting at the
// incoming under-strand.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;
  std::vector<std::size_t> meridians;  // optional, 1-based generator per component
};

namespace detail {

class PDTextParser {
 public:
  explicit PDTextParser(std::string_view text) : text_(text) {}

  PDCode parse() {
    PDCode pd;
    skip_separators();
    bool wrapped = false;
    if (peek_word("PD")) {
      advance(2);
      skip_space();
      expect('[');
      wrapped = true;
    }
    skip_separators();
    while (pos_ < text_.size() && text_[pos_] != ']') {
      expect('X');
      skip_space();
      expect('[');
      std::array<int, 4> x{};
      for (int q = 0; q < 4; ++q) {
        skip_space();
        x[q] = read_int();
        skip_space();
        if (q < 3) expect(',');
      }
      expect(']');
      pd.crossings.push_back(x);
      skip_separators();
    }
    if (wrapped) {
      expect(']');
      skip_separators();
    }
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return pd;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  void advance(std::size_t k = 1) {
    for (std::size_t i = 0; i < k && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  bool peek_word(std::string_view w) const { return text_.substr(pos_, w.size()) == w; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  void skip_separators() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ','))
      advance();
  }
  void expect(char c) {
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "', got end of input");
    if (text_[pos_] != c) fail(std::string("expected '") + c + "', got '" + text_[pos_] + "'");
    advance();
  }
  int read_int() {
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000000) fail("edge label too large");
      advance();
    }
    if (pos_ == start) fail("expected a positive integer edge label");
    if (v == 0) fail("edge labels must be positive");
    return static_cast<int>(v);
  }
};

inline void validate_pd(const PDCode& pd) {
  if (pd.crossings.empty()) throw InputError("PD code has no crossings");
  std::map<int, int> count;
  for (const auto& x : pd.crossings)
    for (int e : x) {
      if (e <= 0) throw InputError("edge labels must be positive");
      ++count[e];
    }
  for (const auto& [e, n] : count)
    if (n != 2)
      throw InputError("arc label count ≠ 2 (label " + std::to_string(e) + " appears " +
                       std::to_string(n) + " time" + (n == 1 ? "" : "s") + ")");
}

}  // namespace detail

// Accepts "X[a,b,c,d] X[...]" (optionally wrapped in PD[...]) or a JSON
// document {"pd": [[a,b,c,d], ...], "meridians": [g, ...]}.
inline PDCode parse_pd(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  PDCode pd;
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("diagram JSON: ") + e.what());
    }
    if (!doc.contains("pd") || !doc["pd"].is_array())
      throw InputError("diagram JSON: missing \"pd\" array");
    for (const auto& x : doc["pd"]) {
      if (!x.is_array() || x.size() != 4)
        throw InputError("diagram JSON: each crossing must have 4 labels");
      std::array<int, 4> c{};
      for (int q = 0; q < 4; ++q) {
        if (!x[q].is_number_integer()) throw InputError("diagram JSON: labels must be integers");
        c[q] = x[q].get<int>();
      }
      pd.crossings.push_back(c);
    }
    if (doc.contains("meridians")) {
      for (const auto& g : doc["meridians"]) {
        if (!g.is_number_integer() || g.get<long long>() < 1)
          throw InputError("diagram JSON: meridians must be 1-based generator numbers");
        pd.meridians.push_back(g.get<std::size_t>());
      }
    }
  } else {
    pd = detail::PDTextParser(text).parse();
  }
  detail::validate_pd(pd);
  return pd;
}

struct Slot {
  std::size_t crossing = 0;
  int position = 0;  // 0..3 = a, b, c, d
  bool operator==(const Slot&) const = default;
};

struct Edge {
  int label = 0;
  Slot tail, head;
  std::size_t component = 0;
  std::size_t arc = 0;
  std::size_t left_region = 0, right_region = 0;
};

// A Wirtinger arc: runs from one under-crossing to the next, passing over
// the crossings listed in over_crossings.
struct Arc {
  std::size_t component = 0;
  std::vector<std::size_t> edges;  // in orientation order
  std::size_t start_crossing = 0, end_crossing = 0;
  std::vector<std::size_t> over_crossings;
};

// Maximal piece of a component that does not pass over anything.
struct UnderArc {
  std::size_t component = 0;
  std::size_t start_crossing = 0, end_crossing = 0;
  std::vector<std::size_t> under_crossings;
};

struct Component {
  std::vector<std::size_t> edges;  // orientation order, from the start of the meridian arc
  std::size_t meridian = 0;        // generator index
};

// Region labels follow the octahedron picture: j is the face between the two
// outgoing strands, k, l, m follow counterclockwise. For a positive crossing
// alpha is the under component and beta the over one; for a negative
// crossing it is the other way round.
struct Crossing {
  int sign = 1;
  std::array<int, 4> pd{};
  std::array<std::size_t, 4> corner{};  // corner q lies between slots q and q+1
  std::size_t j = 0, k = 0, l = 0, m = 0;
  std::size_t alpha = 0, beta = 0;
  std::size_t over_component = 0, under_component = 0;
  std::size_t under_in_arc = 0, under_out_arc = 0, over_arc = 0;
  std::size_t under_in_edge = 0, under_out_edge = 0, over_in_edge = 0, over_out_edge = 0;

  std::array<std::size_t, 4> regions() const { return {j, k, l, m}; }
};

struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::vector<Edge> edges;
  std::vector<Arc> arcs;  // generator g_{i+1} is arcs[i]
  std::vector<UnderArc> under_arcs;
  std::vector<Component> components;
  std::size_t n_regions = 0;

  std::size_t n_crossings() const { return crossings.size(); }
  std::size_t n_components() const { return components.size(); }
  std::size_t n_generators() const { return arcs.size(); }
};

inline LinkDiagram build_diagram(const PDCode& pd) {
  detail::validate_pd(pd);
  LinkDiagram d;
  const std::size_t nc = pd.crossings.size();

  std::vector<int> labels;
  for (const auto& x : pd.crossings) labels.insert(labels.end(), x.begin(), x.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto edge_of = [&](int label) {
    return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), label) -
                                    labels.begin());
  };
  const std::size_t ne = labels.size();
  std::vector<std::array<Slot, 2>> occ(ne);
  std::vector<int> nocc(ne, 0);
  std::vector<std::array<std::size_t, 4>> at(nc);
  for (std::size_t c = 0; c < nc; ++c)
    for (int q = 0; q < 4; ++q) {
      std::size_t e = edge_of(pd.crossings[c][q]);
      at[c][q] = e;
      occ[e][nocc[e]++] = Slot{c, q};
    }
  auto other = [&](Slot s) {
    std::size_t e = at[s.crossing][s.position];
    return occ[e][0] == s ? occ[e][1] : occ[e][0];
  };

  // Connectivity of the crossing graph.
  std::vector<std::size_t> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < ne; ++e) parent[find(occ[e][0].crossing)] = find(occ[e][1].crossing);
  for (std::size_t c = 1; c < nc; ++c)
    if (find(c) != find(0)) throw InputError("disconnected (split) diagrams are not supported");

  // Orientation: walk from every incoming under-strand.
  const Slot unset{static_cast<std::size_t>(-1), -1};
  std::vector<Slot> head(ne, unset), tail(ne, unset);
  std::vector<std::size_t> comp_of(ne, static_cast<std::size_t>(-1));
  std::vector<std::vector<std::size_t>> comp_edges;
  std::vector<std::size_t> starts;
  for (std::size_t c = 0; c < nc; ++c) starts.push_back(at[c][0]);
  std::sort(starts.begin(), starts.end());
  for (std::size_t e0 : starts) {
    if (comp_of[e0] != static_cast<std::size_t>(-1)) continue;
    std::size_t cid = comp_edges.size();
    comp_edges.emplace_back();
    std::size_t e = e0;
    Slot h = occ[e0][0].position == 0 ? occ[e0][0] : occ[e0][1];
    if (occ[e0][0].position == 0 && occ[e0][1].position == 0)
      throw InputError("edge " + std::to_string(labels[e0]) + " enters two crossings as under-strand");
    while (comp_of[e] == static_cast<std::size_t>(-1)) {
      comp_of[e] = cid;
      comp_edges[cid].push_back(e);
      head[e] = h;
      if (h.position == 2)
        throw InputError("inconsistent orientation at crossing " + std::to_string(h.crossing + 1));
      Slot t{h.crossing, (h.position + 2) % 4};
      std::size_t next = at[t.crossing][t.position];
      if (tail[next] != unset && !(tail[next] == t))
        throw InputError("inconsistent orientation at edge " + std::to_string(labels[next]));
      tail[next] = t;
      h = other(t);
      e = next;
    }
    if (e != e0 || !(head[e0] == h))
      throw InputError("inconsistent orientation along edge " + std::to_string(labels[e]));
  }
  for (std::size_t e = 0; e < ne; ++e)
    if (comp_of[e] == static_cast<std::size_t>(-1))
      throw InputError("a component has no under-passing crossing; apply a Reidemeister move so "
                       "every component passes both over and under");

  // Components ordered by smallest label.
  std::vector<std::size_t> corder(comp_edges.size());
  std::iota(corder.begin(), corder.end(), 0);
  auto min_edge = [&](std::size_t cid) {
    return *std::min_element(comp_edges[cid].begin(), comp_edges[cid].end());
  };
  std::sort(corder.begin(), corder.end(),
            [&](std::size_t a, std::size_t b) { return min_edge(a) < min_edge(b); });
  std::vector<std::size_t> crank(comp_edges.size());
  for (std::size_t r = 0; r < corder.size(); ++r) crank[corder[r]] = r;
  for (auto& c : comp_of) c = crank[c];
  const std::size_t h = comp_edges.size();

  // Faces: from corner (c, q) follow the edge at slot q; the face continues
  // at the corner just clockwise of where that edge lands.
  std::vector<std::array<std::size_t, 4>> face(nc);
  for (auto& f : face) f.fill(static_cast<std::size_t>(-1));
  std::size_t nf = 0;
  for (std::size_t c = 0; c < nc; ++c)
    for (int q = 0; q < 4; ++q) {
      if (face[c][q] != static_cast<std::size_t>(-1)) continue;
      Slot cur{c, q};
      while (face[cur.crossing][cur.position] == static_cast<std::size_t>(-1)) {
        face[cur.crossing][cur.position] = nf;
        Slot o = other(cur);
        cur = Slot{o.crossing, (o.position + 3) % 4};
      }
      ++nf;
    }
  if (nf != nc + 2)
    throw InputError("face count " + std::to_string(nf) + " does not match crossings + 2");
  d.n_regions = nf;

  // Wirtinger arcs: the over-strand continues through slots b and d.
  std::vector<std::size_t> arc_parent(ne);
  std::iota(arc_parent.begin(), arc_parent.end(), 0);
  auto afind = [&](std::size_t x) {
    while (arc_parent[x] != x) x = arc_parent[x] = arc_parent[arc_parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < nc; ++c) arc_parent[afind(at[c][1])] = afind(at[c][3]);
  std::vector<std::size_t> roots;
  for (std::size_t e = 0; e < ne; ++e)
    if (afind(e) == e) roots.push_back(e);
  std::map<std::size_t, std::size_t> root_min;
  for (std::size_t e = 0; e < ne; ++e) {
    std::size_t r = afind(e);
    if (!root_min.count(r)) root_min[r] = e;  // edges are visited in label order
  }
  std::sort(roots.begin(), roots.end(),
            [&](std::size_t a, std::size_t b) { return root_min[a] < root_min[b]; });
  std::vector<std::size_t> arc_of(ne);
  for (std::size_t e = 0; e < ne; ++e)
    arc_of[e] = static_cast<std::size_t>(
        std::find(roots.begin(), roots.end(), afind(e)) - roots.begin());

  d.edges.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    Edge& E = d.edges[e];
    E.label = labels[e];
    E.tail = tail[e];
    E.head = head[e];
    E.component = comp_of[e];
    E.arc = arc_of[e];
    E.left_region = face[tail[e].crossing][tail[e].position];
    E.right_region = face[tail[e].crossing][(tail[e].position + 3) % 4];
  }

  d.arcs.resize(roots.size());
  for (std::size_t a = 0; a < roots.size(); ++a) {
    Arc& A = d.arcs[a];
    std::size_t first = ne;
    for (std::size_t e = 0; e < ne; ++e)
      if (arc_of[e] == a && tail[e].position == 2) first = e;
    // an arc without an under-out end is a whole component that never passes under
    if (first == ne) throw InputError("a component has no under-passing crossing");
    A.component = comp_of[first];
    A.start_crossing = tail[first].crossing;
    std::size_t e = first;
    while (true) {
      A.edges.push_back(e);
      Slot hd = head[e];
      if (hd.position == 0) {
        A.end_crossing = hd.crossing;
        break;
      }
      A.over_crossings.push_back(hd.crossing);
      e = at[hd.crossing][(hd.position + 2) % 4];
    }
  }

  d.crossings.resize(nc);
  std::vector<int> over_count(h, 0), under_count(h, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    Crossing& X = d.crossings[c];
    X.pd = pd.crossings[c];
    X.corner = face[c];
    X.under_in_edge = at[c][0];
    X.under_out_edge = at[c][2];
    const bool positive = head[at[c][3]] == Slot{c, 3};
    if (positive) {
      if (!(tail[at[c][1]] == Slot{c, 1}))
        throw InputError("inconsistent over-strand orientation at crossing " + std::to_string(c + 1));
      X.over_in_edge = at[c][3];
      X.over_out_edge = at[c][1];
    } else {
      if (!(head[at[c][1]] == Slot{c, 1}) || !(tail[at[c][3]] == Slot{c, 3}))
        throw InputError("inconsistent over-strand orientation at crossing " + std::to_string(c + 1));
      X.over_in_edge = at[c][1];
      X.over_out_edge = at[c][3];
    }
    X.sign = positive ? 1 : -1;
    X.under_component = comp_of[at[c][0]];
    X.over_component = comp_of[at[c][1]];
    X.under_in_arc = arc_of[at[c][0]];
    X.under_out_arc = arc_of[at[c][2]];
    X.over_arc = arc_of[at[c][1]];
    if (positive) {
      X.j = face[c][1];
      X.k = face[c][2];
      X.l = face[c][3];
      X.m = face[c][0];
      X.alpha = X.under_component;
      X.beta = X.over_component;
    } else {
      X.j = face[c][2];
      X.k = face[c][3];
      X.l = face[c][0];
      X.m = face[c][1];
      X.alpha = X.over_component;
      X.beta = X.under_component;
    }
    ++over_count[X.over_component];
    ++under_count[X.under_component];
  }
  for (std::size_t i = 0; i < h; ++i)
    if (over_count[i] == 0 || under_count[i] == 0)
      throw InputError("component " + std::to_string(i + 1) +
                       " lacks an over-passing or under-passing crossing; apply a Reidemeister "
                       "move so every component passes both over and under");

  // Meridians and component walks.
  if (!pd.meridians.empty() && pd.meridians.size() != h)
    throw InputError("meridian overrides: expected " + std::to_string(h) + " entries");
  d.components.resize(h);
  for (std::size_t i = 0; i < h; ++i) {
    Component& C = d.components[i];
    if (!pd.meridians.empty()) {
      std::size_t g = pd.meridians[i];
      if (g < 1 || g > d.arcs.size() || d.arcs[g - 1].component != i)
        throw InputError("meridian override g" + std::to_string(g) + " is not an arc of component " +
                         std::to_string(i + 1));
      C.meridian = g - 1;
    } else {
      C.meridian = static_cast<std::size_t>(
          std::find_if(d.arcs.begin(), d.arcs.end(),
                       [&](const Arc& a) { return a.component == i; }) -
          d.arcs.begin());
    }
    std::size_t e0 = d.arcs[C.meridian].edges.front();
    std::size_t e = e0;
    do {
      C.edges.push_back(e);
      Slot hd = head[e];
      e = at[hd.crossing][(hd.position + 2) % 4];
    } while (e != e0);
  }

  // Under-arcs: cut each component where it passes over.
  for (std::size_t i = 0; i < h; ++i) {
    const auto& E = d.components[i].edges;
    std::size_t n = E.size(), s0 = 0;
    while (!(tail[E[s0]].position == 1 || tail[E[s0]].position == 3)) ++s0;
    UnderArc cur;
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t e = E[(s0 + t) % n];
      if (tail[e].position == 1 || tail[e].position == 3) {
        cur = UnderArc{};
        cur.component = i;
        cur.start_crossing = tail[e].crossing;
      }
      Slot hd = head[e];
      if (hd.position == 0) {
        cur.under_crossings.push_back(hd.crossing);
      } else {
        cur.end_crossing = hd.crossing;
        d.under_arcs.push_back(cur);
      }
    }
  }
  return d;
}

struct WirtingerRelation {
  std::size_t out = 0, over = 0, in = 0;
  int sign = 1;  // g_out = g_over^sign g_in g_over^-sign
};

struct Presentation {
  std::size_t n_generators = 0;
  std::vector<WirtingerRelation> relations;
};

inline Presentation wirtinger(const LinkDiagram& d) {
  Presentation p;
  p.n_generators = d.n_generators();
  for (const auto& c : d.crossings)
    p.relations.push_back({c.under_out_arc, c.over_arc, c.under_in_arc, c.sign});
  return p;
}

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

inline void check_component(const LinkDiagram& d, std::size_t i) {
  if (i >= d.n_components())
    throw InputError("component index " + std::to_string(i + 1) + " out of range");
}

// Sum of signs of the crossings where component i passes over itself.
inline int writhe(const LinkDiagram& d, std::size_t i) {
  check_component(d, i);
  int w = 0;
  for (const auto& c : d.crossings)
    if (c.over_component == i && c.under_component == i) w += c.sign;
  return w;
}

// Canonical longitude of component i based at the start of its meridian
// arc: the over-generators met while walking the component, multiplied in
// reverse order, then mu^-writhe.
inline Word longitude_word(const LinkDiagram& d, std::size_t i) {
  check_component(d, i);
  Word w;
  for (std::size_t e : d.components[i].edges) {
    const Slot& hd = d.edges[e].head;
    if (hd.position == 0) {
      const Crossing& c = d.crossings[hd.crossing];
      w.push_back({c.over_arc, c.sign});
    }
  }
  std::reverse(w.begin(), w.end());
  int wr = writhe(d, i);
  for (int t = 0; t < std::abs(wr); ++t) w.push_back({d.components[i].meridian, wr > 0 ? -1 : 1});
  return w;
}

inline Word meridian_word(const LinkDiagram& d, std::size_t i) {
  check_component(d, i);
  return {{d.components[i].meridian, 1}};
}

}  // namespace linkvol
