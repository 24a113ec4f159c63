#include "linkforge/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace linkforge {

namespace {

struct Passage {
  int crossing;
  int in;   // slot entered
  int out;  // slot left
};

struct Cycle {
  std::vector<int> labels;  // in-labels along the traversal
  std::vector<Passage> passages;
};

class UnionFind {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end() || it->second == x) return x;
    int r = find(it->second);
    parent_[x] = r;
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::map<int, int> parent_;
};

}  // namespace

Diagram Diagram::from_pd(std::vector<PdCrossing> crossings,
                         const std::vector<BasepointNote>& basepoints,
                         const std::vector<int>& unknot_components,
                         const std::vector<int>& over_in) {
  Diagram d;
  d.crossings_ = std::move(crossings);
  const auto& xs = d.crossings_;

  std::map<int, std::vector<Slot>> occ;
  for (int x = 0; x < static_cast<int>(xs.size()); ++x)
    for (int p = 0; p < 4; ++p) occ[xs[x][p]].push_back({x, p});
  for (const auto& [label, slots] : occ)
    if (slots.size() != 2)
      throw DiagramError("arc multiplicity: arc appears " + std::to_string(slots.size()) +
                             " times, expected 2",
                         label);

  auto other = [&](int label, Slot s) {
    const auto& v = occ.at(label);
    return v[0] == s ? v[1] : v[0];
  };

  std::vector<std::array<bool, 4>> seen(xs.size(), {false, false, false, false});
  std::vector<Cycle> cycles;
  for (int x0 = 0; x0 < static_cast<int>(xs.size()); ++x0) {
    for (int p0 = 0; p0 < 4; ++p0) {
      if (seen[x0][p0]) continue;
      Cycle cy;
      Slot s{x0, p0};
      while (true) {
        int out = (s.position + 2) % 4;
        seen[s.crossing][s.position] = true;
        seen[s.crossing][out] = true;
        cy.labels.push_back(xs[s.crossing][s.position]);
        cy.passages.push_back({s.crossing, s.position, out});
        Slot nxt = other(xs[s.crossing][out], Slot{s.crossing, out});
        if (nxt == Slot{x0, p0}) break;
        if (seen[nxt.crossing][nxt.position])
          throw DiagramError("broken component cycle", xs[nxt.crossing][nxt.position]);
        s = nxt;
      }
      cycles.push_back(std::move(cy));
    }
  }

  std::map<int, int> cycle_of_label;
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i)
    for (int l : cycles[i].labels) cycle_of_label[l] = i;

  std::map<int, const BasepointNote*> note_of_cycle;
  for (const auto& note : basepoints) {
    auto it = cycle_of_label.find(note.arc);
    if (it == cycle_of_label.end())
      throw DiagramError("broken component cycle: basepoint arc not in diagram", note.arc);
    if (note_of_cycle.count(it->second))
      throw DiagramError("broken component cycle: two basepoints on one component", note.arc);
    note_of_cycle[it->second] = &note;
  }

  // Orientation of each traversal: +1 keeps it, -1 reverses it.
  std::vector<int> dir(cycles.size(), 0);
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    const Cycle& cy = cycles[i];
    for (const Passage& p : cy.passages) {
      int vote = 0;
      if (p.in == 0) vote = 1;
      if (p.in == 2) vote = -1;
      if (vote == 0 && !over_in.empty() && over_in.at(static_cast<std::size_t>(p.crossing)) != 0)
        vote = over_in[static_cast<std::size_t>(p.crossing)] == p.in ? 1 : -1;
      if (vote == 0) continue;
      if (dir[i] != 0 && dir[i] != vote)
        throw DiagramError("orientation conflict", xs[p.crossing][p.in]);
      dir[i] = vote;
    }
    auto nit = note_of_cycle.find(i);
    if (nit != note_of_cycle.end() && nit->second->next) {
      int a = nit->second->arc, b = *nit->second->next;
      int vote = 0;
      for (const Passage& p : cy.passages) {
        int in = xs[p.crossing][p.in], out = xs[p.crossing][p.out];
        if (in == a && out == b) vote = vote == -1 ? 2 : 1;
        if (in == b && out == a) vote = vote == 1 ? 2 : -1;
      }
      if (vote == 0) throw DiagramError("orientation hint names arcs that are not adjacent", a);
      if (vote != 2) {
        if (dir[i] != 0 && dir[i] != vote) throw DiagramError("orientation conflict", a);
        dir[i] = vote;
      }
    }
    if (dir[i] == 0) {
      // Over-only component without a hint: labels increase along it.
      int m = *std::min_element(cy.labels.begin(), cy.labels.end());
      std::size_t k = static_cast<std::size_t>(
          std::find(cy.labels.begin(), cy.labels.end(), m) - cy.labels.begin());
      int after = cy.labels[(k + 1) % cy.labels.size()];
      int before = cy.labels[(k + cy.labels.size() - 1) % cy.labels.size()];
      dir[i] = (after != m + 1 && before == m + 1) ? -1 : 1;
    }
  }

  for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
    for (const Passage& p : cycles[i].passages) {
      int in = xs[p.crossing][p.in], out = xs[p.crossing][p.out];
      if (dir[i] > 0) {
        d.ends_[in].head = {p.crossing, p.in};
        d.ends_[out].tail = {p.crossing, p.out};
      } else {
        d.ends_[out].head = {p.crossing, p.out};
        d.ends_[in].tail = {p.crossing, p.in};
      }
    }
  }

  // Component indices.
  const int total = static_cast<int>(cycles.size() + unknot_components.size());
  std::vector<int> slot_owner(static_cast<std::size_t>(total), -2);  // -1 = unknot
  auto claim = [&](int index, int owner) {
    if (index < 0 || index >= total)
      throw DiagramError("component index " + std::to_string(index + 1) + " out of range");
    if (slot_owner[index] != -2)
      throw DiagramError("component index " + std::to_string(index + 1) + " given twice");
    slot_owner[index] = owner;
  };
  for (int u : unknot_components) claim(u, -1);
  for (const auto& [cyc, note] : note_of_cycle) claim(note->component, cyc);
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(cycles.size()); ++i)
    if (!note_of_cycle.count(i)) rest.push_back(i);
  std::sort(rest.begin(), rest.end(), [&](int a, int b) {
    return *std::min_element(cycles[a].labels.begin(), cycles[a].labels.end()) <
           *std::min_element(cycles[b].labels.begin(), cycles[b].labels.end());
  });
  std::size_t ri = 0;
  for (int idx = 0; idx < total; ++idx)
    if (slot_owner[idx] == -2) slot_owner[idx] = rest.at(ri++);

  d.components_.assign(static_cast<std::size_t>(total), {});
  for (int idx = 0; idx < total; ++idx) {
    int cyc = slot_owner[idx];
    if (cyc < 0) continue;
    std::vector<int> labels = cycles[cyc].labels;
    if (dir[cyc] < 0) std::reverse(labels.begin(), labels.end());
    auto nit = note_of_cycle.find(cyc);
    int base = nit != note_of_cycle.end() ? nit->second->arc
                                          : *std::min_element(labels.begin(), labels.end());
    std::rotate(labels.begin(), std::find(labels.begin(), labels.end(), base), labels.end());
    for (int l : labels) d.arc_component_[l] = idx;
    d.components_[idx] = std::move(labels);
  }

  d.signs_.resize(xs.size());
  for (int x = 0; x < static_cast<int>(xs.size()); ++x)
    d.signs_[x] = d.ends_.at(xs[x][3]).head == Slot{x, 3} ? 1 : -1;
  return d;
}

int Diagram::writhe(int component) const {
  int w = 0;
  for (int x = 0; x < crossing_count(); ++x)
    if (under_component(x) == component && over_component(x) == component) w += sign(x);
  return w;
}

std::optional<int> Diagram::basepoint(int c) const {
  const auto& arcs = component_arcs(c);
  if (arcs.empty()) return std::nullopt;
  return arcs.front();
}

int Diagram::component_of_arc(int arc) const {
  auto it = arc_component_.find(arc);
  if (it == arc_component_.end()) throw DiagramError("unknown arc", arc);
  return it->second;
}

const ArcEnds& Diagram::ends(int arc) const {
  auto it = ends_.find(arc);
  if (it == ends_.end()) throw DiagramError("unknown arc", arc);
  return it->second;
}

std::vector<int> Diagram::arcs() const {
  std::vector<int> out;
  for (const auto& [l, c] : arc_component_) out.push_back(l);
  return out;
}

int Diagram::max_arc() const { return arc_component_.empty() ? 0 : arc_component_.rbegin()->first; }

namespace {

std::vector<int> over_in_of(const Diagram& d) {
  std::vector<int> v(static_cast<std::size_t>(d.crossing_count()));
  for (int x = 0; x < d.crossing_count(); ++x) v[x] = d.over_in_position(x);
  return v;
}

std::vector<int> free_loop_indices(const Diagram& d) {
  std::vector<int> v;
  for (int c = 0; c < d.component_count(); ++c)
    if (d.is_free_loop(c)) v.push_back(c);
  return v;
}

}  // namespace

Diagram Diagram::compacted() const {
  std::map<int, int> relabel;
  int next = 1;
  for (const auto& comp : components_)
    for (int l : comp) relabel[l] = next++;
  std::vector<PdCrossing> xs = crossings_;
  for (auto& x : xs)
    for (int& l : x) l = relabel.at(l);
  std::vector<BasepointNote> notes;
  for (int c = 0; c < component_count(); ++c)
    if (!is_free_loop(c)) notes.push_back({c, relabel.at(components_[c].front()), std::nullopt});
  return from_pd(std::move(xs), notes, free_loop_indices(*this), over_in_of(*this));
}

Diagram parse_pd(std::string_view text) {
  std::vector<PdCrossing> xs;
  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  static const std::regex x_re(
      R"(X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]])");
  static const std::regex comp_re(R"(^\s*component\s+(\d+)\s+basepoint\s+(-?\d+)(\s+then\s+(-?\d+))?\s*$)");
  static const std::regex unknot_re(R"(^\s*unknot-component\s+(\d+)\s*$)");
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_match(line, m, comp_re)) {
      int k = std::stoi(m[1]);
      if (k < 1) throw DiagramError("line " + std::to_string(lineno) + ": components are numbered from 1");
      BasepointNote note{k - 1, std::stoi(m[2]), std::nullopt};
      if (m[4].matched) note.next = std::stoi(m[4]);
      notes.push_back(note);
      continue;
    }
    if (std::regex_match(line, m, unknot_re)) {
      int k = std::stoi(m[1]);
      if (k < 1) throw DiagramError("line " + std::to_string(lineno) + ": components are numbered from 1");
      unknots.push_back(k - 1);
      continue;
    }
    std::string rest = line;
    bool any = false;
    for (std::sregex_iterator it(line.begin(), line.end(), x_re), end; it != end; ++it) {
      const auto& mm = *it;
      xs.push_back({std::stoi(mm[1]), std::stoi(mm[2]), std::stoi(mm[3]), std::stoi(mm[4])});
      any = true;
    }
    std::string stripped = std::regex_replace(line, x_re, "");
    for (const char* junk : {"PD", "[", "]", "(", ")", ","}) {
      for (std::size_t pos; (pos = stripped.find(junk)) != std::string::npos;)
        stripped.erase(pos, std::char_traits<char>::length(junk));
    }
    if (!any || stripped.find_first_not_of(" \t\r") != std::string::npos)
      throw DiagramError("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
  }
  return Diagram::from_pd(std::move(xs), notes, unknots);
}

std::string render_pd(const Diagram& d) {
  std::ostringstream os;
  for (const auto& x : d.crossings())
    os << "X(" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ")\n";
  for (int c = 0; c < d.component_count(); ++c) {
    if (d.is_free_loop(c)) {
      os << "unknot-component " << c + 1 << '\n';
      continue;
    }
    const auto& arcs = d.component_arcs(c);
    os << "component " << c + 1 << " basepoint " << arcs.front();
    bool passes_under = false;
    for (int l : arcs) passes_under |= d.ends(l).head.position == 0;
    if (!passes_under && arcs.size() > 1) os << " then " << arcs[1];
    os << '\n';
  }
  return os.str();
}

std::vector<std::vector<int>> linking_matrix(const Diagram& d) {
  const int m = d.component_count();
  std::vector<std::vector<int>> twice(m, std::vector<int>(m, 0));
  for (int x = 0; x < d.crossing_count(); ++x) {
    int i = d.under_component(x), j = d.over_component(x);
    if (i == j) continue;
    twice[i][j] += d.sign(x);
    twice[j][i] += d.sign(x);
  }
  for (auto& row : twice)
    for (int& v : row) v /= 2;
  return twice;
}

Diagram sublink(const Diagram& d, const std::vector<int>& keep) {
  std::vector<int> new_index(static_cast<std::size_t>(d.component_count()), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    int c = keep[i];
    if (c < 0 || c >= d.component_count()) throw DiagramError("invalid component index");
    if (new_index[c] != -1) throw DiagramError("component listed twice");
    new_index[c] = i;
  }
  UnionFind uf;
  std::vector<PdCrossing> xs;
  std::vector<int> hints;
  std::vector<bool> has_crossing(keep.size(), false);
  for (int x = 0; x < d.crossing_count(); ++x) {
    const auto& X = d.crossing(x);
    int u = new_index[d.under_component(x)], o = new_index[d.over_component(x)];
    if (u >= 0 && o >= 0) {
      xs.push_back(X);
      hints.push_back(d.over_in_position(x));
      has_crossing[u] = has_crossing[o] = true;
    } else if (u >= 0) {
      uf.unite(X[0], X[2]);
    } else if (o >= 0) {
      uf.unite(X[1], X[3]);
    }
  }
  for (auto& X : xs)
    for (int& l : X) l = uf.find(l);
  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    if (d.is_free_loop(keep[i]) || !has_crossing[i])
      unknots.push_back(i);
    else
      notes.push_back({i, uf.find(*d.basepoint(keep[i])), std::nullopt});
  }
  return Diagram::from_pd(std::move(xs), notes, unknots, hints).compacted();
}

Diagram permute_components(const Diagram& d, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != d.component_count())
    throw DiagramError("permutation size does not match component count");
  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  std::vector<bool> used(order.size(), false);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    int c = order[i];
    if (c < 0 || c >= d.component_count() || used[c]) throw DiagramError("invalid permutation");
    used[c] = true;
    if (d.is_free_loop(c))
      unknots.push_back(i);
    else
      notes.push_back({i, *d.basepoint(c), std::nullopt});
  }
  return Diagram::from_pd(d.crossings(), notes, unknots, over_in_of(d)).compacted();
}

namespace {

// Relabels every arc of d by adding offset.
std::vector<PdCrossing> shifted(const Diagram& d, int offset) {
  std::vector<PdCrossing> xs = d.crossings();
  for (auto& x : xs)
    for (int& l : x) l += offset;
  return xs;
}

}  // namespace

Diagram split_union(const Diagram& d1, const Diagram& d2) {
  const int offset = d1.max_arc();
  std::vector<PdCrossing> xs = d1.crossings();
  auto xs2 = shifted(d2, offset);
  xs.insert(xs.end(), xs2.begin(), xs2.end());
  std::vector<int> hints = over_in_of(d1);
  auto h2 = over_in_of(d2);
  hints.insert(hints.end(), h2.begin(), h2.end());
  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  const int m1 = d1.component_count();
  for (int c = 0; c < m1; ++c) {
    if (d1.is_free_loop(c))
      unknots.push_back(c);
    else
      notes.push_back({c, *d1.basepoint(c), std::nullopt});
  }
  for (int c = 0; c < d2.component_count(); ++c) {
    if (d2.is_free_loop(c))
      unknots.push_back(m1 + c);
    else
      notes.push_back({m1 + c, *d2.basepoint(c) + offset, std::nullopt});
  }
  return Diagram::from_pd(std::move(xs), notes, unknots, hints).compacted();
}

Diagram connected_sum(const Diagram& d1, int c1, const Diagram& d2, int c2) {
  if (c1 < 0 || c1 >= d1.component_count()) throw DiagramError("invalid component index");
  if (c2 < 0 || c2 >= d2.component_count()) throw DiagramError("invalid component index");
  const int m1 = d1.component_count();
  Diagram u = split_union(d1, d2);
  const int j = m1 + c2;  // c2's index in u
  std::vector<int> order;
  if (d2.is_free_loop(c2)) {
    for (int c = 0; c < u.component_count(); ++c)
      if (c != j) order.push_back(c);
    return sublink(u, order);
  }
  if (d1.is_free_loop(c1)) {
    for (int c = 0; c < u.component_count(); ++c) {
      if (c == j) continue;
      order.push_back(c == c1 ? j : c);
    }
    return sublink(u, order);
  }
  int e1 = *u.basepoint(c1), e2 = *u.basepoint(j);
  Slot h1 = u.ends(e1).head, h2 = u.ends(e2).head;
  std::vector<PdCrossing> xs = u.crossings();
  xs[h2.crossing][h2.position] = e1;
  xs[h1.crossing][h1.position] = e2;
  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  int idx = 0;
  for (int c = 0; c < u.component_count(); ++c) {
    if (c == j) continue;
    if (u.is_free_loop(c))
      unknots.push_back(idx);
    else
      notes.push_back({idx, *u.basepoint(c), std::nullopt});
    ++idx;
  }
  return Diagram::from_pd(std::move(xs), notes, unknots, over_in_of(u)).compacted();
}

void AnnularPattern::validate() const {
  if (strand_count < 1) throw DiagramError("pattern needs at least one strand");
  if (orientations.size() != static_cast<std::size_t>(strand_count) ||
      bottom.size() != orientations.size() || top.size() != orientations.size())
    throw DiagramError("pattern endpoint mismatch");
  for (int o : orientations)
    if (o != 1 && o != -1) throw DiagramError("pattern orientations must be +1 or -1");
  if (!over_in.empty() && over_in.size() != crossings.size())
    throw DiagramError("pattern over_in hints do not match crossings");
  // Every label is used twice across crossings and boundary ends.
  std::map<int, int> count;
  for (const auto& x : crossings)
    for (int l : x) ++count[l];
  for (int l : bottom) ++count[l];
  for (int l : top) ++count[l];
  for (const auto& [l, n] : count)
    if (n != 2) throw DiagramError("pattern endpoint mismatch", l);
}

AnnularPattern identity_pattern(int strand_count) {
  TangleBuilder tb;
  tb.open(std::vector<int>(static_cast<std::size_t>(strand_count), 1));
  for (int k = 0; k < strand_count; ++k) tb.tag(k, k);
  return tb.finish();
}

AnnularPattern bing_pattern() {
  // Two antiparallel tracks and two clasps. The tracks belong to the long
  // loop; the short loop lives between the clasps.
  TangleBuilder tb;
  tb.open({1, -1});
  tb.tag(0, 0);
  tb.cup(2, true);
  tb.cross(1, true);
  tb.cross(0, false);
  tb.cap(1);
  tb.tag(0, 1);
  tb.cup(2, true);
  tb.cross(1, false);
  tb.cross(0, true);
  tb.cap(1);
  return tb.finish();
}

AnnularPattern borromean_axis_pattern(const Word& eta) {
  if (eta.empty()) throw DiagramError("axis word is empty");
  for (int l : eta)
    if (std::abs(l) > 2) throw DiagramError("axis word may only use x1 and x2");
  const int n = static_cast<int>(eta.size());
  TangleBuilder tb;
  std::vector<int> orient;
  for (int l : eta) orient.push_back(l > 0 ? 1 : -1);
  tb.open(orient);
  // Borromean rings as a closed 3-braid west of the tracks.
  for (int i = 0; i < 3; ++i) tb.cup(n + i, true);
  for (int g : {1, -2, 1, -2, 1, -2}) tb.cross_signed(n + std::abs(g) - 1, g > 0 ? 1 : -1);
  for (int i = 0; i < 3; ++i) tb.tag(n + i, i);
  // One finger per letter, east to west: the component's strand reaches over
  // to track p and back, passing over everything in between.
  for (int p = 0; p < n; ++p) {
    const int v = n + std::abs(eta[p]) - 1;
    for (int q = v - 1; q > p; --q) tb.cross(q, true);
    if (eta[p] > 0) {
      tb.cross(p, true);
    } else {
      tb.cap(p);
      tb.cup(p, false);
    }
    for (int q = p + 1; q < v; ++q) tb.cross(q, false);
  }
  for (int i = 2; i >= 0; --i) tb.cap(n + i);
  return tb.finish();
}

namespace {

// Concatenates two tangles, b stacked on top of a.
AnnularPattern stack(const AnnularPattern& a, const AnnularPattern& b) {
  if (a.strand_count != b.strand_count || a.orientations != b.orientations)
    throw DiagramError("pattern endpoint mismatch");
  int amax = 0;
  for (const auto& x : a.crossings)
    for (int l : x) amax = std::max(amax, l);
  for (int l : a.bottom) amax = std::max(amax, l);
  for (int l : a.top) amax = std::max(amax, l);
  int bmin = std::numeric_limits<int>::max();
  for (const auto& x : b.crossings)
    for (int l : x) bmin = std::min(bmin, l);
  for (int l : b.bottom) bmin = std::min(bmin, l);
  for (int l : b.top) bmin = std::min(bmin, l);
  const int offset = amax + 1 - bmin;
  std::map<int, int> rename;
  for (int k = 0; k < b.strand_count; ++k) rename[b.bottom[k] + offset] = a.top[k];
  auto map = [&](int l) {
    l += offset;
    auto it = rename.find(l);
    return it == rename.end() ? l : it->second;
  };
  AnnularPattern out = a;
  for (auto x : b.crossings) {
    for (int& l : x) l = map(l);
    out.crossings.push_back(x);
  }
  if (out.over_in.empty() && !a.crossings.empty()) out.over_in.assign(a.crossings.size(), 0);
  if (b.over_in.empty())
    out.over_in.insert(out.over_in.end(), b.crossings.size(), 0);
  else
    out.over_in.insert(out.over_in.end(), b.over_in.begin(), b.over_in.end());
  for (int k = 0; k < b.strand_count; ++k) out.top[k] = map(b.top[k]);
  for (int l : b.component_basepoints) out.component_basepoints.push_back(map(l));
  out.free_loops += b.free_loops;
  return out;
}

AnnularPattern shifted_pattern(AnnularPattern p, int offset) {
  for (auto& x : p.crossings)
    for (int& l : x) l += offset;
  for (int& l : p.bottom) l += offset;
  for (int& l : p.top) l += offset;
  for (int& l : p.component_basepoints) l += offset;
  return p;
}

int max_label(const AnnularPattern& p) {
  int m = 0;
  for (const auto& x : p.crossings)
    for (int l : x) m = std::max(m, l);
  for (int l : p.bottom) m = std::max(m, l);
  for (int l : p.top) m = std::max(m, l);
  return m;
}

int min_label(const AnnularPattern& p) {
  int m = std::numeric_limits<int>::max();
  for (const auto& x : p.crossings)
    for (int l : x) m = std::min(m, l);
  for (int l : p.bottom) m = std::min(m, l);
  for (int l : p.top) m = std::min(m, l);
  return m;
}

}  // namespace

Diagram satellite(const Diagram& d, int c, const AnnularPattern& pattern) {
  if (c < 0 || c >= d.component_count()) throw DiagramError("invalid component index");
  pattern.validate();
  const int n = pattern.strand_count;
  const auto& orient = pattern.orientations;

  AnnularPattern body = pattern;
  const int w = d.writhe(c);
  if (n >= 2 && w != 0) {
    TangleBuilder tb;
    tb.open(orient);
    for (int i = 0; i < std::abs(w); ++i) tb.full_twist(w > 0 ? -1 : 1);
    body = stack(tb.finish(), pattern);
  }
  body = shifted_pattern(body, d.max_arc() + 1 - min_label(body));
  int next_label = max_label(body) + 1;
  if (body.over_in.empty()) body.over_in.assign(body.crossings.size(), 0);

  std::vector<PdCrossing> xs;
  std::vector<int> hints;
  std::set<int> unknot_labels;  // labels of crossing-free loops, if any

  if (d.is_free_loop(c)) {
    UnionFind uf;
    for (int k = 0; k < n; ++k) uf.unite(body.top[k], body.bottom[k]);
    for (auto x : body.crossings) {
      for (int& l : x) l = uf.find(l);
      xs.push_back(x);
    }
    hints = body.over_in;
    std::set<int> used;
    for (const auto& x : xs) used.insert(x.begin(), x.end());
    for (int k = 0; k < n; ++k)
      if (!used.count(uf.find(body.bottom[k]))) unknot_labels.insert(uf.find(body.bottom[k]));
    for (int& l : body.component_basepoints) l = uf.find(l);
  } else {
    const int e0 = *d.basepoint(c);
    std::map<int, std::vector<int>> cable;
    for (int e : d.component_arcs(c)) {
      if (e == e0) continue;
      auto& v = cable[e];
      for (int k = 0; k < n; ++k) v.push_back(next_label++);
    }
    auto ext = [&](int x, int pos, int copy) {
      int l = d.crossing(x)[pos];
      if (d.component_of_arc(l) != c) return l;
      if (l == e0) {
        return d.ends(e0).head == Slot{x, pos} ? body.top[copy] : body.bottom[copy];
      }
      return cable.at(l)[copy];
    };

    for (int x = 0; x < d.crossing_count(); ++x) {
      const bool under_c = d.under_component(x) == c;
      const bool over_c = d.over_component(x) == c;
      if (!under_c && !over_c) {
        xs.push_back(d.crossing(x));
        hints.push_back(d.over_in_position(x));
        continue;
      }
      const int nu = under_c ? n : 1, no = over_c ? n : 1;
      const bool positive = d.sign(x) > 0;  // over-strand runs west to east
      auto uor = [&](int k) { return under_c ? orient[k] : 1; };
      auto oor = [&](int j) { return over_c ? orient[j] : 1; };
      // Over copy j sits at height j (positive) or -j; rank t in south-to-north order.
      auto rank_j = [&](int j) { return positive ? j : no - 1 - j; };
      // Under copy k sits at x = -k; rank s in west-to-east order.
      auto rank_k = [&](int k) { return nu - 1 - k; };

      std::vector<std::vector<int>> useg(nu, std::vector<int>(no + 1));
      for (int k = 0; k < nu; ++k) {
        useg[k][0] = ext(x, 0, k);
        for (int t = 1; t < no; ++t) useg[k][t] = next_label++;
        useg[k][no] = ext(x, 2, k);
      }
      std::vector<std::vector<int>> oseg(no, std::vector<int>(nu + 1));
      for (int j = 0; j < no; ++j) {
        oseg[j][0] = ext(x, 3, j);
        for (int s = 1; s < nu; ++s) oseg[j][s] = next_label++;
        oseg[j][nu] = ext(x, 1, j);
      }
      for (int k = 0; k < nu; ++k) {
        for (int j = 0; j < no; ++j) {
          int t = rank_j(j), s = rank_k(k);
          int S = useg[k][t], N = useg[k][t + 1], W = oseg[j][s], E = oseg[j][s + 1];
          bool west_to_east = (positive == (oor(j) > 0));
          if (uor(k) > 0) {
            xs.push_back({S, E, N, W});
            hints.push_back(west_to_east ? 3 : 1);
          } else {
            xs.push_back({N, W, S, E});
            hints.push_back(west_to_east ? 1 : 3);
          }
        }
      }
    }
    xs.insert(xs.end(), body.crossings.begin(), body.crossings.end());
    hints.insert(hints.end(), body.over_in.begin(), body.over_in.end());
  }

  // First pass finds the components; the second orders them.
  std::set<int> used;
  for (const auto& x : xs) used.insert(x.begin(), x.end());
  const int loops = body.free_loops + static_cast<int>(unknot_labels.size());
  const Diagram first = Diagram::from_pd(xs, {}, {}, hints);
  const int cycles = first.component_count();

  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  // Original components other than c keep their arcs.
  std::vector<int> old_of_first(static_cast<std::size_t>(cycles), -1);
  for (int k = 0; k < cycles; ++k) {
    int l = first.component_arcs(k).front();
    if (l <= d.max_arc() && d.component_of_arc(l) != c) old_of_first[k] = d.component_of_arc(l);
  }
  // New components: tagged ones first in tag order, then by discovery.
  std::vector<int> new_cycles;
  std::set<int> placed;
  for (int l : body.component_basepoints) {
    if (!used.count(l)) continue;
    int k = first.component_of_arc(l);
    if (old_of_first[k] >= 0 || placed.count(k)) continue;
    placed.insert(k);
    new_cycles.push_back(k);
  }
  for (int k = 0; k < cycles; ++k)
    if (old_of_first[k] < 0 && !placed.count(k)) new_cycles.push_back(k);
  const int new_count = static_cast<int>(new_cycles.size()) + loops;
  if (new_count == 0) throw DiagramError("pattern produced no components");
  auto index_of_old = [&](int oc) { return oc < c ? oc : oc + new_count - 1; };

  std::map<int, int> tag_base;
  for (int l : body.component_basepoints)
    if (used.count(l)) tag_base.emplace(first.component_of_arc(l), l);
  for (int k = 0; k < cycles; ++k) {
    if (old_of_first[k] >= 0) {
      int oc = old_of_first[k];
      notes.push_back({index_of_old(oc), *d.basepoint(oc), std::nullopt});
    }
  }
  for (int i = 0; i < static_cast<int>(new_cycles.size()); ++i) {
    int k = new_cycles[i];
    auto it = tag_base.find(k);
    notes.push_back({c + i, it != tag_base.end() ? it->second : first.component_arcs(k).front(),
                     std::nullopt});
  }
  for (int i = 0; i < loops; ++i) unknots.push_back(c + static_cast<int>(new_cycles.size()) + i);
  for (int oc = 0; oc < d.component_count(); ++oc)
    if (oc != c && d.is_free_loop(oc)) unknots.push_back(index_of_old(oc));
  return Diagram::from_pd(std::move(xs), notes, unknots, hints).compacted();
}

Diagram bing_double(const Diagram& d, int c) { return satellite(d, c, bing_pattern()); }

Diagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw DiagramError("braid needs at least one strand");
  TangleBuilder tb;
  for (int i = 0; i < strands; ++i) tb.cup(i, true);
  for (int i = 0; i < strands; ++i) tb.tag(i, i);
  for (int g : word)
    if (std::abs(g) >= strands) throw DiagramError("braid generator out of range");
  tb.braid(word);
  for (int i = strands - 1; i >= 0; --i) tb.cap(i);
  return tb.close();
}

Diagram unknot() { return Diagram::from_pd({}, {}, {0}); }

// ---------------------------------------------------------------------------

void TangleBuilder::open(const std::vector<int>& orientations) {
  if (!row_.empty() || !crossings_.empty() || !bottom_.empty())
    throw DiagramError("open() must come first");
  for (int o : orientations) {
    int l = fresh();
    row_.push_back({l, o > 0});
    bottom_.push_back(l);
    bottom_orientations_.push_back(o > 0 ? 1 : -1);
  }
}

void TangleBuilder::cup(int p, bool east_up) {
  if (p < 0 || p > width()) throw DiagramError("cup position out of range");
  int l = fresh();
  row_.insert(row_.begin() + p, {{l, east_up}, {l, !east_up}});
}

void TangleBuilder::rename(int from, int to) {
  for (auto& x : crossings_)
    for (int& l : x)
      if (l == from) l = to;
  for (auto& s : row_)
    if (s.label == from) s.label = to;
  for (int& l : bottom_)
    if (l == from) l = to;
  if (auto it = tags_.find(from); it != tags_.end()) {
    int t = it->second;
    tags_.erase(it);
    auto [jt, inserted] = tags_.emplace(to, t);
    if (!inserted) jt->second = std::min(jt->second, t);
  }
}

void TangleBuilder::cap(int p) {
  if (p < 0 || p + 1 >= width()) throw DiagramError("cap position out of range");
  Strand a = row_[p], b = row_[p + 1];
  if (a.up == b.up) throw DiagramError("cap joins strands of the same direction");
  row_.erase(row_.begin() + p, row_.begin() + p + 2);
  if (a.label == b.label) {
    auto it = tags_.find(a.label);
    free_loop_tags_.push_back(it == tags_.end() ? -1 : it->second);
    if (it != tags_.end()) tags_.erase(it);
    return;
  }
  rename(b.label, a.label);
}

void TangleBuilder::cross(int p, bool west_mover_under) {
  if (p < 0 || p + 1 >= width()) throw DiagramError("crossing position out of range");
  Strand A = row_[p], B = row_[p + 1];  // A moves SE -> NW, B moves SW -> NE
  int nA = fresh(), nB = fresh();
  const int SE = A.label, NW = nA, SW = B.label, NE = nB;
  PdCrossing x;
  int over_in;
  if (west_mover_under) {
    x = A.up ? PdCrossing{SE, NE, NW, SW} : PdCrossing{NW, SW, SE, NE};
    // Over strand B enters at SW if it points north, else at NE.
    if (A.up)
      over_in = B.up ? 3 : 1;
    else
      over_in = B.up ? 1 : 3;
  } else {
    x = B.up ? PdCrossing{SW, SE, NE, NW} : PdCrossing{NE, NW, SW, SE};
    // Over strand A enters at SE if it points north, else at NW.
    if (B.up)
      over_in = A.up ? 1 : 3;
    else
      over_in = A.up ? 3 : 1;
  }
  crossings_.push_back(x);
  over_in_.push_back(over_in);
  row_[p] = {nB, B.up};
  row_[p + 1] = {nA, A.up};
}

void TangleBuilder::tag(int p, int t) {
  int l = label_at(p);
  auto [it, inserted] = tags_.emplace(l, t);
  if (!inserted) it->second = std::min(it->second, t);
}

void TangleBuilder::braid(const std::vector<int>& generators) {
  for (int g : generators) {
    if (g == 0) throw DiagramError("braid generator 0");
    cross_signed(std::abs(g) - 1, g > 0 ? 1 : -1);
  }
}

void TangleBuilder::full_twist(int sign) {
  const int n = width();
  for (int r = 0; r < n; ++r)
    for (int i = 0; i + 1 < n; ++i) cross_signed(i, sign);
}

Diagram TangleBuilder::close() const {
  if (!row_.empty() || !bottom_.empty()) throw DiagramError("close() needs a closed diagram");
  // Rank tags over crossing components and tagged free loops together.
  Diagram raw = Diagram::from_pd(crossings_, {}, {}, over_in_);
  std::map<int, int> comp_tag;  // raw component -> min tag
  for (const auto& [l, t] : tags_) {
    int k = raw.component_of_arc(l);
    auto [it, ins] = comp_tag.emplace(k, t);
    if (!ins) it->second = std::min(it->second, t);
  }
  struct Entry {
    int tag;
    int raw;       // raw component, or -1 for a free loop
    int base;
  };
  std::vector<Entry> tagged;
  std::map<int, int> base_of;
  for (const auto& [l, t] : tags_) {
    int k = raw.component_of_arc(l);
    if (comp_tag[k] == t && !base_of.count(k)) base_of[k] = l;
  }
  for (const auto& [k, t] : comp_tag) tagged.push_back({t, k, base_of[k]});
  for (int t : free_loop_tags_)
    if (t >= 0) tagged.push_back({t, -1, 0});
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const Entry& a, const Entry& b) { return a.tag < b.tag; });
  std::vector<BasepointNote> notes;
  std::vector<int> unknots;
  int idx = 0;
  for (const Entry& e : tagged) {
    if (e.raw < 0)
      unknots.push_back(idx);
    else
      notes.push_back({idx, e.base, std::nullopt});
    ++idx;
  }
  int untagged_loops = 0;
  for (int t : free_loop_tags_)
    if (t < 0) ++untagged_loops;
  const int total = raw.component_count() + static_cast<int>(free_loop_tags_.size());
  for (int i = 0; i < untagged_loops; ++i) unknots.push_back(total - untagged_loops + i);
  return Diagram::from_pd(crossings_, notes, unknots, over_in_).compacted();
}

AnnularPattern TangleBuilder::finish() const {
  if (width() != static_cast<int>(bottom_.size()))
    throw DiagramError("pattern endpoint mismatch: open strand count changed");
  AnnularPattern p;
  p.strand_count = width();
  p.orientations = bottom_orientations_;
  for (int k = 0; k < width(); ++k)
    if ((row_[k].up ? 1 : -1) != bottom_orientations_[k])
      throw DiagramError("pattern endpoint mismatch: orientation differs at track " +
                         std::to_string(k));
  p.crossings = crossings_;
  p.over_in = over_in_;
  p.bottom = bottom_;
  for (const auto& s : row_) p.top.push_back(s.label);
  p.free_loops = static_cast<int>(free_loop_tags_.size());
  std::vector<std::pair<int, int>> by_tag;
  for (const auto& [l, t] : tags_) by_tag.push_back({t, l});
  std::sort(by_tag.begin(), by_tag.end());
  for (const auto& [t, l] : by_tag) p.component_basepoints.push_back(l);
  return p;
}

}  // namespace linkforge
