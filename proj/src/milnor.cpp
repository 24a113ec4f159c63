#include "linkforge/milnor.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <thread>

namespace linkforge {

MagnusSeries::MagnusSeries(int variables, int degree) : m_(variables), q_(degree) {
  if (variables < 0 || degree < 0) throw std::invalid_argument("negative series size");
  std::size_t total = 0, power = 1;
  for (int len = 0; len <= degree; ++len) {
    offset_.push_back(total);
    total += power;
    power *= static_cast<std::size_t>(variables);
  }
  offset_.push_back(total);
  c_.assign(total, 0);
}

MagnusSeries MagnusSeries::one(int variables, int degree) {
  MagnusSeries s(variables, degree);
  s.c_[0] = 1;
  return s;
}

MagnusSeries MagnusSeries::generator(int variables, int degree, int i, int sign) {
  if (i < 0 || i >= variables) throw std::out_of_range("series variable out of range");
  MagnusSeries s = one(variables, degree);
  std::vector<int> mono;
  for (int k = 1; k <= degree; ++k) {
    mono.push_back(i);
    if (sign > 0 && k > 1) break;
    s.set_coefficient(mono, sign > 0 ? 1 : (k % 2 ? -1 : 1));
  }
  return s;
}

std::size_t MagnusSeries::index(const std::vector<int>& monomial) const {
  if (static_cast<int>(monomial.size()) > q_) throw std::out_of_range("monomial beyond truncation degree");
  std::size_t k = 0;
  for (int v : monomial) {
    if (v < 0 || v >= m_) throw std::out_of_range("series variable out of range");
    k = k * static_cast<std::size_t>(m_) + static_cast<std::size_t>(v);
  }
  return offset_[monomial.size()] + k;
}

std::int64_t MagnusSeries::coefficient(const std::vector<int>& monomial) const {
  return c_[index(monomial)];
}

void MagnusSeries::set_coefficient(const std::vector<int>& monomial, std::int64_t c) {
  c_[index(monomial)] = c;
}

MagnusSeries MagnusSeries::operator*(const MagnusSeries& o) const {
  if (m_ != o.m_ || q_ != o.q_) throw std::invalid_argument("series of different shapes");
  MagnusSeries r(m_, q_);
  for (int la = 0; la <= q_; ++la) {
    const std::size_t na = offset_[la + 1] - offset_[la];
    for (std::size_t a = 0; a < na; ++a) {
      const std::int64_t ca = c_[offset_[la] + a];
      if (ca == 0) continue;
      std::size_t scale = 1;
      for (int lb = 0; la + lb <= q_; ++lb) {
        const std::size_t nb = offset_[lb + 1] - offset_[lb];
        const std::size_t base = offset_[la + lb] + a * scale;
        const std::int64_t* cb = &o.c_[offset_[lb]];
        std::int64_t* out = &r.c_[base];
        for (std::size_t b = 0; b < nb; ++b) out[b] += ca * cb[b];
        scale *= static_cast<std::size_t>(m_);
      }
    }
  }
  return r;
}

MagnusSeries MagnusSeries::operator+(const MagnusSeries& o) const {
  if (m_ != o.m_ || q_ != o.q_) throw std::invalid_argument("series of different shapes");
  MagnusSeries r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

MagnusSeries MagnusSeries::operator-(const MagnusSeries& o) const {
  if (m_ != o.m_ || q_ != o.q_) throw std::invalid_argument("series of different shapes");
  MagnusSeries r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

MagnusSeries MagnusSeries::inverse() const {
  if (c_[0] != 1) throw std::domain_error("series with constant term other than 1");
  MagnusSeries neg_a = one(m_, q_) - *this;  // -(S - 1)
  MagnusSeries result = one(m_, q_), term = one(m_, q_);
  for (int k = 1; k <= q_; ++k) {
    term = term * neg_a;
    result = result + term;
  }
  return result;
}

bool MagnusSeries::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t x) { return x == 0; });
}

int MagnusSeries::lowest_nonconstant_degree() const {
  for (int len = 1; len <= q_; ++len)
    for (std::size_t i = offset_[len]; i < offset_[len + 1]; ++i)
      if (c_[i] != 0) return len;
  return 0;
}

std::vector<std::pair<std::vector<int>, std::int64_t>> MagnusSeries::nonzero_terms() const {
  std::vector<std::pair<std::vector<int>, std::int64_t>> out;
  for (int len = 0; len <= q_; ++len) {
    for (std::size_t i = offset_[len]; i < offset_[len + 1]; ++i) {
      if (c_[i] == 0) continue;
      std::vector<int> mono(static_cast<std::size_t>(len));
      std::size_t k = i - offset_[len];
      for (int p = len - 1; p >= 0; --p) {
        mono[p] = static_cast<int>(k % static_cast<std::size_t>(m_));
        k /= static_cast<std::size_t>(m_);
      }
      out.emplace_back(std::move(mono), c_[i]);
    }
  }
  return out;
}

MagnusSeries magnus_expand(const Word& w, int degree, int variables) {
  const int m = variables > 0 ? variables : w.max_generator();
  std::vector<MagnusSeries> images;
  for (int i = 0; i < m; ++i) images.push_back(MagnusSeries::generator(m, degree, i));
  return evaluate<MagnusSeries>(w, images, MagnusSeries::one(m, degree));
}

bool lcs_nontrivial(const Word& w, int q) {
  if (q < 2) return false;  // F/F_1 is trivial
  return !magnus_expand(w, q - 1, std::max(1, w.max_generator())).is_one();
}

std::vector<MeridianForm> meridian_reduction(const Presentation& p, int q) {
  const int n = p.generator_count;
  if (static_cast<int>(p.component_of_generator.size()) != n)
    throw MilnorError("presentation lacks the component of each generator");
  struct Edge {
    int to;
    int over;  // 0 for an equality
    int sign;  // to = over^sign * from * over^-sign
  };
  std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(n) + 1);
  for (const Word& r : p.relators) {
    if (r.empty()) continue;
    if (auto s = conjugation_shape(r)) {
      if (s->o == s->b) {
        adj[s->a].push_back({s->b, 0, 0});
        adj[s->b].push_back({s->a, 0, 0});
      } else {
        adj[s->a].push_back({s->b, s->o, 1});
        adj[s->b].push_back({s->a, s->o, -1});
      }
    } else if (r.size() == 2 && (r[0] > 0) != (r[1] > 0) && std::abs(r[0]) != std::abs(r[1])) {
      int a = std::abs(r[0]), b = std::abs(r[1]);
      adj[a].push_back({b, 0, 0});
      adj[b].push_back({a, 0, 0});
    } else {
      throw MilnorError("relator '" + format_word(r) + "' is not of Wirtinger shape");
    }
  }
  // Spanning forest grown from the meridians.
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, -1);
  std::vector<Edge> via(static_cast<std::size_t>(n) + 1, Edge{0, 0, 0});
  std::deque<int> queue;
  for (int c = 0; c < p.component_count(); ++c) {
    parent[p.meridians[c]] = 0;
    queue.push_back(p.meridians[c]);
  }
  std::vector<int> order;
  while (!queue.empty()) {
    int g = queue.front();
    queue.pop_front();
    order.push_back(g);
    for (const Edge& e : adj[g]) {
      if (parent[e.to] >= 0) continue;
      parent[e.to] = g;
      via[e.to] = e;
      queue.push_back(e.to);
    }
  }
  for (int g = 1; g <= n; ++g)
    if (parent[g] < 0) throw MilnorError("generator x" + std::to_string(g) + " is not connected to a meridian");

  std::vector<Word> conj(static_cast<std::size_t>(n) + 1);
  auto element = [&](const std::vector<Word>& cj, int g) {
    Word w = cj[g];
    w.push_back(p.component_of_generator[g - 1] + 1);
    w *= cj[g].inverse();
    return free_reduce(w);
  };
  for (int pass = 0; pass < q; ++pass) {
    std::vector<Word> next = conj;
    for (int g : order) {
      if (parent[g] == 0) continue;
      const Edge& e = via[g];
      const int from = parent[g];
      if (e.over == 0) {
        next[g] = conj[from];
      } else {
        Word o = element(conj, e.over);
        next[g] = (e.sign > 0 ? o : o.inverse()) * conj[from];
      }
    }
    conj = std::move(next);
  }
  std::vector<MeridianForm> out;
  for (int g = 1; g <= n; ++g) out.push_back({p.component_of_generator[g - 1], conj[g]});
  return out;
}

namespace {

struct Passage {
  int u, o, v, sign;  // 1-based generators
};

struct Traversal {
  OverarcMap om;
  std::vector<std::vector<Passage>> passages;  // per component
};

Traversal traverse(const Diagram& d) {
  Traversal t{overarcs(d), {}};
  for (int c = 0; c < d.component_count(); ++c) {
    std::vector<Passage> ps;
    if (!d.is_free_loop(c)) {
      for (const auto& up : under_passages(d, t.om, c)) {
        const auto& X = d.crossing(up.crossing);
        ps.push_back({t.om.generator_of_arc.at(X[0]), up.over_generator, t.om.generator_of_arc.at(X[2]), up.sign});
      }
    }
    t.passages.push_back(std::move(ps));
  }
  return t;
}

// Series for every generator with component c sent to variable var_of[c]
// (or to 1 when var_of[c] < 0).
std::vector<MagnusSeries> series_images(const Traversal& t, const std::vector<int>& var_of, int vars,
                                        int degree, int passes) {
  const int n = static_cast<int>(t.om.component_of_generator.size());
  std::vector<MagnusSeries> img;
  img.push_back(MagnusSeries::one(vars, degree));  // unused slot 0
  for (int g = 1; g <= n; ++g) {
    int v = var_of[t.om.component_of_generator[g - 1]];
    img.push_back(v < 0 ? MagnusSeries::one(vars, degree) : MagnusSeries::generator(vars, degree, v));
  }
  std::vector<MagnusSeries> inv = img;
  for (int g = 1; g <= n; ++g) inv[g] = img[g].inverse();
  for (int pass = 0; pass < passes; ++pass) {
    for (std::size_t c = 0; c < t.passages.size(); ++c) {
      const int first = t.om.first_generator[c];
      for (const Passage& p : t.passages[c]) {
        if (p.v == first) continue;
        const MagnusSeries& o = p.sign > 0 ? img[p.o] : inv[p.o];
        const MagnusSeries& oi = p.sign > 0 ? inv[p.o] : img[p.o];
        img[p.v] = o * img[p.u] * oi;
        inv[p.v] = o * inv[p.u] * oi;
      }
    }
  }
  img.erase(img.begin());
  return img;
}

MagnusSeries longitude_series(const Traversal& t, const std::vector<MagnusSeries>& img, int c) {
  const MagnusSeries& g0 = img[t.om.first_generator[c] - 1];
  MagnusSeries w = MagnusSeries::one(g0.variables(), g0.degree());
  long self = 0;
  const auto& ps = t.passages[c];
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const MagnusSeries& o = img[it->o - 1];
    w = w * (it->sign > 0 ? o : o.inverse());
    if (t.om.component_of_generator[it->o - 1] == c) self += it->sign;
  }
  const MagnusSeries g0inv = g0.inverse();
  for (long i = 0; i < std::abs(self); ++i) w = w * (self > 0 ? g0inv : g0);
  return w;
}

void check_index(const Diagram& d, const std::vector<int>& index) {
  if (index.size() < 2) throw MilnorError("multi-index needs at least two entries");
  for (int i : index)
    if (i < 1 || i > d.component_count())
      throw MilnorError("index " + std::to_string(i) + " out of range 1.." + std::to_string(d.component_count()));
}

std::int64_t coefficient_with(const Diagram& d, const Traversal& t, const std::vector<int>& index, int q) {
  const int r = static_cast<int>(index.size());
  if (q == 0) q = r;
  if (q < r) throw MilnorError("truncation q must be at least the index length");
  std::vector<int> var_of(static_cast<std::size_t>(d.component_count()), -1);
  int vars = 0;
  for (int i : index)
    if (var_of[i - 1] < 0) var_of[i - 1] = vars++;
  auto img = series_images(t, var_of, vars, r - 1, q);
  MagnusSeries lam = longitude_series(t, img, index.back() - 1);
  std::vector<int> mono;
  for (int k = 0; k + 1 < r; ++k) mono.push_back(var_of[index[k] - 1]);
  return lam.coefficient(mono);
}

// Indices obtained from cyclic permutations of `index` by deleting at least
// one entry, keeping at least two.
std::set<std::vector<int>> shorter_cyclic(const std::vector<int>& index) {
  std::set<std::vector<int>> out;
  const std::size_t r = index.size();
  for (std::size_t s = 0; s < r; ++s) {
    std::vector<int> rot(index.begin() + static_cast<long>(s), index.end());
    rot.insert(rot.end(), index.begin(), index.begin() + static_cast<long>(s));
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
      int bits = __builtin_popcount(mask);
      if (bits < 2 || bits == static_cast<int>(r)) continue;
      std::vector<int> sub;
      for (std::size_t k = 0; k < r; ++k)
        if (mask & (1u << k)) sub.push_back(rot[k]);
      out.insert(sub);
    }
  }
  return out;
}

MilnorValue reduce(std::int64_t value, std::int64_t delta) {
  if (delta == 0) return {value, 0};
  std::int64_t v = value % delta;
  if (v < 0) v += delta;
  return {v, delta};
}

}  // namespace

std::vector<MagnusSeries> generator_series(const Diagram& d, int degree, int passes) {
  Traversal t = traverse(d);
  std::vector<int> var_of(static_cast<std::size_t>(d.component_count()));
  std::iota(var_of.begin(), var_of.end(), 0);
  return series_images(t, var_of, d.component_count(), degree, passes);
}

std::int64_t milnor_coefficient(const Diagram& d, const std::vector<int>& index, int q) {
  check_index(d, index);
  return coefficient_with(d, traverse(d), index, q);
}

MilnorValue milnor_mu(const Diagram& d, const std::vector<int>& index, int q) {
  check_index(d, index);
  Traversal t = traverse(d);
  std::int64_t value = coefficient_with(d, t, index, q);
  std::int64_t delta = 0;
  for (const auto& sub : shorter_cyclic(index))
    delta = std::gcd(delta, std::abs(coefficient_with(d, t, sub, 0)));
  return reduce(value, delta);
}

std::string index_key(const std::vector<int>& index) {
  std::string s;
  bool wide = std::any_of(index.begin(), index.end(), [](int i) { return i > 9; });
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (wide && k > 0) s += ',';
    s += std::to_string(index[k]);
  }
  return s;
}

std::map<std::string, MilnorValue> mu_all_upto(const Diagram& d, int max_length, int workers) {
  const int m = d.component_count();
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() >= 2) all.push_back(cur);
    if (static_cast<int>(cur.size()) == max_length) return;
    for (int i = 1; i <= m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(i);
      self(self);
      cur.pop_back();
      used[i] = false;
    }
  };
  rec(rec);

  Traversal t = traverse(d);
  std::vector<std::int64_t> coeff(all.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < all.size();) coeff[i] = coefficient_with(d, t, all[i], 0);
  };
  const int nw = std::max(1, workers);
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::map<std::vector<int>, std::int64_t> known;
  for (std::size_t i = 0; i < all.size(); ++i) known[all[i]] = coeff[i];

  std::map<std::string, MilnorValue> table;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::int64_t delta = 0;
    for (const auto& sub : shorter_cyclic(all[i])) delta = std::gcd(delta, std::abs(known.at(sub)));
    table[index_key(all[i])] = reduce(coeff[i], delta);
  }
  return table;
}

}  // namespace linkforge
