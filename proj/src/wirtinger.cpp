#include "linkforge/wirtinger.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace linkforge {

OverarcMap overarcs(const Diagram& d) {
  OverarcMap om;
  int next = 1;
  for (int c = 0; c < d.component_count(); ++c) {
    om.first_generator.push_back(next);
    const auto& arcs = d.component_arcs(c);
    if (arcs.empty()) {
      om.component_of_generator.push_back(c);
      ++next;
      continue;
    }
    std::vector<int> run(arcs.size());
    int local = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      run[i] = local;
      if (d.ends(arcs[i]).head.position == 0) ++local;
    }
    // A run that is still open at the end wraps round into the first one.
    const bool wraps = d.ends(arcs.back()).head.position != 0;
    int count = wraps ? std::max(local, 1) : local;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      int r = run[i];
      if (wraps && r == local) r = 0;
      om.generator_of_arc[arcs[i]] = next + r;
    }
    for (int k = 0; k < count; ++k) om.component_of_generator.push_back(c);
    next += count;
  }
  return om;
}

std::vector<UnderPassage> under_passages(const Diagram& d, const OverarcMap& om, int c) {
  std::vector<UnderPassage> out;
  for (int e : d.component_arcs(c)) {
    Slot h = d.ends(e).head;
    if (h.position != 0) continue;
    int o = om.generator_of_arc.at(d.crossing(h.crossing)[1]);
    out.push_back({h.crossing, o, d.sign(h.crossing)});
  }
  return out;
}

namespace {

Word longitude_from(const Diagram& d, const OverarcMap& om, int c) {
  if (d.is_free_loop(c)) return {};
  Word w;
  auto passages = under_passages(d, om, c);
  for (auto it = passages.rbegin(); it != passages.rend(); ++it)
    w.push_back(it->sign > 0 ? it->over_generator : -it->over_generator);
  long self = 0;
  for (Letter l : w)
    if (om.component_of_generator[std::abs(l) - 1] == c) self += l > 0 ? 1 : -1;
  const int g0 = om.first_generator[c];
  for (long i = 0; i < std::abs(self); ++i) w.push_back(self > 0 ? -g0 : g0);
  return free_reduce(w);
}

}  // namespace

Presentation wirtinger_presentation(const Diagram& d) {
  OverarcMap om = overarcs(d);
  Presentation p;
  p.generator_count = static_cast<int>(om.component_of_generator.size());
  p.component_of_generator = om.component_of_generator;
  p.meridians = om.first_generator;
  for (int x = 0; x < d.crossing_count(); ++x) {
    const auto& X = d.crossing(x);
    int o = om.generator_of_arc.at(X[1]);
    int u = om.generator_of_arc.at(X[0]);
    int v = om.generator_of_arc.at(X[2]);
    p.relators.push_back(free_reduce(d.sign(x) > 0 ? Word{o, u, -o, -v} : Word{o, v, -o, -u}));
  }
  for (int c = 0; c < d.component_count(); ++c) p.longitudes.push_back(longitude_from(d, om, c));
  return p;
}

Word longitude_word(const Diagram& d, int c) {
  if (c < 0 || c >= d.component_count()) throw DiagramError("invalid component index");
  return longitude_from(d, overarcs(d), c);
}

Presentation zero_surgery_presentation(const Diagram& d, const std::set<int>& surgered) {
  Presentation p = wirtinger_presentation(d);
  for (int c : surgered) {
    if (c < 0 || c >= d.component_count()) throw DiagramError("invalid component index");
    p.relators.push_back(*p.longitudes[c]);
  }
  return p;
}

namespace {

int parse_generator(const std::string& tok, int lineno) {
  if (tok.size() >= 2 && (tok[0] == 'x' || tok[0] == 'X')) {
    try {
      std::size_t used = 0;
      int g = std::stoi(tok.substr(1), &used);
      if (used == tok.size() - 1 && g >= 1) return tok[0] == 'x' ? g : -g;
    } catch (const std::exception&) {
    }
  }
  throw PresentationError("line " + std::to_string(lineno) + ": bad generator '" + tok + "'");
}

}  // namespace

Presentation load_presentation(std::string_view text) {
  Presentation p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  auto check_range = [&](const Word& w, int ln) {
    for (Letter l : w)
      if (std::abs(l) > p.generator_count)
        throw PresentationError("line " + std::to_string(ln) + ": generator x" +
                                std::to_string(std::abs(l)) + " out of range 1.." +
                                std::to_string(p.generator_count));
  };
  std::map<int, int> meridian_lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    auto fail = [&](const std::string& why) {
      throw PresentationError("line " + std::to_string(lineno) + ": " + why);
    };
    if (key == "generators") {
      if (header) fail("repeated generators line");
      std::istringstream rs(rest);
      if (!(rs >> p.generator_count) || p.generator_count < 0) fail("bad generator count");
      p.images.assign(static_cast<std::size_t>(p.generator_count), std::nullopt);
      header = true;
      continue;
    }
    if (!header) fail("expected 'generators N' first");
    if (key == "relator") {
      Word w;
      try {
        w = parse_word(rest);
      } catch (const std::invalid_argument& e) {
        fail(std::string("malformed word: ") + e.what());
      }
      check_range(w, lineno);
      Word r = free_reduce(w);
      if (r.empty())
        p.warnings.push_back("line " + std::to_string(lineno) + ": relator reduces to the empty word");
      p.relators.push_back(r);
    } else if (key == "meridian") {
      std::istringstream rs(rest);
      int k;
      std::string tok;
      if (!(rs >> k >> tok) || k < 1) fail("expected 'meridian k xi'");
      int g = parse_generator(tok, lineno);
      if (g < 0) fail("meridian must be a generator, not an inverse");
      check_range(Word{g}, lineno);
      if (meridian_lines.count(k - 1)) fail("meridian of component " + std::to_string(k) + " given twice");
      meridian_lines[k - 1] = g;
    } else if (key == "word") {
      std::istringstream rs(rest);
      std::string name;
      if (!(rs >> name)) fail("expected 'word NAME w'");
      std::string body;
      std::getline(rs, body);
      Word w;
      try {
        w = parse_word(body);
      } catch (const std::invalid_argument& e) {
        fail(std::string("malformed word: ") + e.what());
      }
      check_range(w, lineno);
      p.words[name] = w;
    } else if (key == "modulus") {
      std::istringstream rs(rest);
      int m;
      if (!(rs >> m) || m < 2) fail("bad modulus");
      p.modulus = m;
    } else if (key == "image") {
      std::istringstream rs(rest);
      std::string tok;
      std::array<int, 4> e{};
      if (!(rs >> tok >> e[0] >> e[1] >> e[2] >> e[3])) fail("expected 'image xi a b c d'");
      int g = parse_generator(tok, lineno);
      if (g < 0) fail("image must name a generator");
      check_range(Word{g}, lineno);
      p.images[g - 1] = e;
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  for (const auto& [k, g] : meridian_lines) {
    if (k >= static_cast<int>(p.meridians.size())) p.meridians.resize(k + 1, 0);
    p.meridians[k] = g;
  }
  for (std::size_t k = 0; k < p.meridians.size(); ++k)
    if (p.meridians[k] == 0)
      throw PresentationError("meridian of component " + std::to_string(k + 1) + " missing");
  std::set<int> distinct(p.meridians.begin(), p.meridians.end());
  if (distinct.size() != p.meridians.size())
    throw PresentationError("two components share a meridian generator");
  p.longitudes.assign(p.meridians.size(), std::nullopt);
  return p;
}

std::string render_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "generators " << p.generator_count << '\n';
  for (const auto& r : p.relators) os << "relator " << (r.empty() ? "1" : format_word(r)) << '\n';
  for (int c = 0; c < p.component_count(); ++c)
    os << "meridian " << c + 1 << " x" << p.meridians[c] << '\n';
  for (const auto& [name, w] : p.words) os << "word " << name << ' ' << (w.empty() ? "1" : format_word(w)) << '\n';
  if (p.modulus) os << "modulus " << *p.modulus << '\n';
  for (std::size_t g = 0; g < p.images.size(); ++g) {
    if (!p.images[g]) continue;
    const auto& e = *p.images[g];
    os << "image x" << g + 1 << ' ' << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << '\n';
  }
  return os.str();
}

std::optional<ConjugationShape> conjugation_shape(const Word& r) {
  if (r.size() != 4) return std::nullopt;
  int o = r[0], a = r[1];
  if (o <= 0 || a <= 0 || r[2] != -o || r[3] >= 0) return std::nullopt;
  int b = -r[3];
  if (o == a) return std::nullopt;
  return ConjugationShape{o, a, b};
}

namespace {

Word substitute(const Word& w, int g, const Word& image) {
  Word out;
  for (Letter l : w) {
    if (std::abs(l) != g)
      out.push_back(l);
    else
      out *= l > 0 ? image : image.inverse();
  }
  return free_reduce(out);
}

}  // namespace

Presentation eliminate_generators(const Presentation& p) {
  Presentation q = p;
  std::set<int> meridian_set(p.meridians.begin(), p.meridians.end());
  std::vector<bool> gone(static_cast<std::size_t>(p.generator_count) + 1, false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < q.relators.size(); ++i) {
      const Word& r = q.relators[i];
      int target = 0;
      Word image;
      if (auto s = conjugation_shape(r)) {
        if (!meridian_set.count(s->b) && s->a != s->b) {
          target = s->b;
          image = Word{s->o, s->a, -s->o};
        } else if (!meridian_set.count(s->a) && s->a != s->b) {
          target = s->a;
          image = Word{-s->o, s->b, s->o};
        }
      } else if (r.size() == 2 && (r[0] < 0) != (r[1] < 0) && std::abs(r[0]) != std::abs(r[1])) {
        // x_a^{-1} x_b or x_a x_b^{-1}: identify the two generators.
        int a = std::abs(r[0]), b = std::abs(r[1]);
        if (!meridian_set.count(b)) {
          target = b;
          image = Word{a};
        } else if (!meridian_set.count(a)) {
          target = a;
          image = Word{b};
        }
      }
      if (target == 0) continue;
      q.relators.erase(q.relators.begin() + static_cast<long>(i));
      for (auto& other : q.relators) other = substitute(other, target, image);
      for (auto& [name, w] : q.words) w = substitute(w, target, image);
      for (auto& l : q.longitudes)
        if (l) l = substitute(*l, target, image);
      gone[target] = true;
      progress = true;
      break;
    }
  }
  std::vector<int> renumber(static_cast<std::size_t>(p.generator_count) + 1, 0);
  int next = 1;
  for (int g = 1; g <= p.generator_count; ++g)
    if (!gone[g]) renumber[g] = next++;
  auto rn = [&](const Word& w) {
    Word out;
    for (Letter l : w) out.push_back(l > 0 ? renumber[l] : -renumber[-l]);
    return out;
  };
  for (auto& r : q.relators) r = rn(r);
  for (auto& [name, w] : q.words) w = rn(w);
  for (auto& l : q.longitudes)
    if (l) l = rn(*l);
  for (int& m : q.meridians) m = renumber[m];
  std::vector<int> comp;
  std::vector<std::optional<std::array<int, 4>>> images;
  for (int g = 1; g <= p.generator_count; ++g) {
    if (gone[g]) continue;
    if (!p.component_of_generator.empty()) comp.push_back(p.component_of_generator[g - 1]);
    if (!p.images.empty()) images.push_back(p.images[g - 1]);
  }
  q.component_of_generator = comp;
  q.images = images;
  q.generator_count = next - 1;
  return q;
}

}  // namespace linkforge
