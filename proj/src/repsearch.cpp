#include "linkforge/repsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace linkforge {

namespace {

struct Term {
  int gen;  // 0-based
  bool inv;
};

struct Relator {
  std::vector<Term> terms;
  std::vector<int> gens;  // distinct generators
};

class Solver {
 public:
  Solver(const Presentation& P, const Sl2Table& T) : T_(T), n_(P.generator_count) {
    rels_of_.resize(static_cast<std::size_t>(n_));
    for (const Word& w : P.relators) {
      Relator r;
      for (Letter l : w) r.terms.push_back({std::abs(l) - 1, l < 0});
      for (const Term& t : r.terms)
        if (std::find(r.gens.begin(), r.gens.end(), t.gen) == r.gens.end()) r.gens.push_back(t.gen);
      const int ri = static_cast<int>(rels_.size());
      for (int g : r.gens) rels_of_[g].push_back(ri);
      count_.push_back(static_cast<int>(r.gens.size()));
      rels_.push_back(std::move(r));
    }
    val_.assign(static_cast<std::size_t>(n_), -1);
  }

  int generator_count() const { return n_; }
  int value(int g) const { return val_[g]; }
  std::size_t mark() const { return trail_.size(); }

  // Relators with no generators (empty words) are trivially satisfied.
  bool assign(int g, int v) {
    queue_.clear();
    set(g, v);
    return run_queue();
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      int g = trail_.back();
      trail_.pop_back();
      for (int r : rels_of_[g]) ++count_[r];
      val_[g] = -1;
    }
  }

  // Unassigned generator that completes or unlocks the most relators.
  int choose(SeedOrder order) const {
    int best = -1;
    long best_score = -1;
    for (int g = 0; g < n_; ++g) {
      if (val_[g] >= 0) continue;
      if (order == SeedOrder::Index) return g;
      long score = 0;
      for (int r : rels_of_[g]) {
        if (count_[r] == 1) score += 4;
        else if (count_[r] == 2) score += 3;
        else score += 1;
      }
      if (score > best_score) {
        best_score = score;
        best = g;
      }
    }
    return best;
  }

  int eval(const std::vector<Term>& terms, std::size_t from, std::size_t to) const {
    int acc = T_.identity();
    for (std::size_t i = from; i < to; ++i) {
      int x = val_[terms[i].gen];
      acc = T_.mul(acc, terms[i].inv ? T_.inv(x) : x);
    }
    return acc;
  }

  std::uint64_t nodes = 0;

 private:
  void set(int g, int v) {
    val_[g] = v;
    trail_.push_back(g);
    for (int r : rels_of_[g]) {
      --count_[r];
      queue_.push_back(r);
    }
  }

  bool run_queue() {
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const int ri = queue_[qi];
      const Relator& r = rels_[ri];
      if (count_[ri] == 0) {
        if (eval(r.terms, 0, r.terms.size()) != T_.identity()) return false;
        continue;
      }
      if (count_[ri] != 1) continue;
      std::size_t pos = 0;
      int unknown = -1, occurrences = 0;
      for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (val_[r.terms[i].gen] < 0) {
          unknown = r.terms[i].gen;
          pos = i;
          ++occurrences;
        }
      }
      if (occurrences != 1) continue;
      // L g^e R = 1  =>  g^e = L^-1 R^-1
      int L = eval(r.terms, 0, pos), R = eval(r.terms, pos + 1, r.terms.size());
      int ge = T_.mul(T_.inv(L), T_.inv(R));
      set(unknown, r.terms[pos].inv ? T_.inv(ge) : ge);
    }
    return true;
  }

  const Sl2Table& T_;
  int n_;
  std::vector<Relator> rels_;
  std::vector<std::vector<int>> rels_of_;
  std::vector<int> count_;
  std::vector<int> val_;
  std::vector<int> trail_;
  std::vector<int> queue_;
};

Sl2Assignment to_matrices(const Solver& s, const Sl2Table& T) {
  Sl2Assignment a;
  for (int g = 0; g < s.generator_count(); ++g) a.push_back(T.element(s.value(g)));
  return a;
}

// Depth-first search below the current state. `emit` returns false to stop.
template <typename Emit>
bool dfs(Solver& s, const Sl2Table& T, SeedOrder order, Emit& emit) {
  ++s.nodes;
  int g = s.choose(order);
  if (g < 0) return emit(s);
  for (int v = 0; v < T.size(); ++v) {
    auto m = s.mark();
    if (s.assign(g, v) && !dfs(s, T, order, emit)) {
      s.undo(m);
      return false;
    }
    s.undo(m);
  }
  return true;
}

void check_prime(int p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

// Runs the search with the root branch split across workers. For each root
// value, collect(solver) is called on every solution in DFS order until it
// returns false; results are merged in root-value order.
template <typename Result, typename Visit>
std::vector<Result> split_search(const Presentation& P, const Sl2Table& T, const SearchConfig& cfg,
                                 const std::vector<int>& root_values, std::size_t limit,
                                 Visit visit, SearchStats* stats) {
  Solver proto(P, T);
  std::vector<Result> out;
  const int root = proto.choose(cfg.seed_order);
  if (root < 0) {
    // No generators at all: the empty assignment.
    Solver s = proto;
    std::vector<Result> one;
    visit(s, one);
    if (stats) stats->nodes += 1;
    return one;
  }
  const std::size_t nv = root_values.size();
  std::vector<std::vector<Result>> per_value(nv);
  std::vector<char> done(nv, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mu;

  // True once the finished prefix of root values already holds `limit` results.
  auto prefix_full = [&](std::size_t upto) {
    std::lock_guard<std::mutex> lock(mu);
    std::size_t total = 0;
    for (std::size_t i = 0; i < upto; ++i) {
      if (!done[i]) return false;
      total += per_value[i].size();
      if (total >= limit) return true;
    }
    return false;
  };

  auto worker = [&] {
    Solver s = proto;
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= nv) break;
      std::vector<Result> local;
      if (!prefix_full(i)) {
        auto m = s.mark();
        if (s.assign(root, root_values[i])) {
          auto emit = [&](Solver& st) {
            visit(st, local);
            return local.size() < limit;
          };
          dfs(s, T, cfg.seed_order, emit);
        }
        s.undo(m);
      }
      std::lock_guard<std::mutex> lock(mu);
      per_value[i] = std::move(local);
      done[i] = 1;
    }
    nodes += s.nodes;
  };

  const int workers = std::max(1, cfg.worker_count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& v : per_value) {
    for (auto& r : v) {
      if (out.size() >= limit) break;
      out.push_back(std::move(r));
    }
  }
  if (stats) {
    stats->nodes += nodes.load();
    stats->solutions += out.size();
  }
  return out;
}

}  // namespace

std::optional<PartialAssignment> propagate(const Presentation& P, const PartialAssignment& partial) {
  if (partial.size() != static_cast<std::size_t>(P.generator_count))
    throw std::invalid_argument("partial assignment has the wrong length");
  PartialAssignment out = partial;
  int p = 0;
  for (const auto& m : partial)
    if (m) p = m->p();
  if (p == 0) return out;
  Sl2Table T(p);
  Solver s(P, T);
  for (int g = 0; g < P.generator_count; ++g) {
    if (!partial[g]) continue;
    if (s.value(g) >= 0) {
      if (s.value(g) != T.index_of(*partial[g])) return std::nullopt;
      continue;
    }
    if (!s.assign(g, T.index_of(*partial[g]))) return std::nullopt;
  }
  for (int g = 0; g < P.generator_count; ++g)
    if (s.value(g) >= 0) out[g] = T.element(s.value(g));
  return out;
}

std::vector<Sl2Assignment> search(const Presentation& P, const SearchConfig& cfg, SearchStats* stats) {
  check_prime(cfg.p);
  Sl2Table T(cfg.p);
  std::vector<int> values(static_cast<std::size_t>(T.size()));
  for (int v = 0; v < T.size(); ++v) values[v] = v;
  const std::size_t limit = cfg.max_solutions.value_or(static_cast<std::size_t>(-1));
  if (limit == 0) return {};
  auto visit = [&](Solver& s, std::vector<Sl2Assignment>& out) { out.push_back(to_matrices(s, T)); };
  return split_search<Sl2Assignment>(P, T, cfg, values, limit, visit, stats);
}

FpMatrix2 evaluate_sl2(const Word& w, const Sl2Assignment& a) {
  if (a.empty()) {
    if (!w.empty()) throw MissingImage(std::abs(w[0]));
    return FpMatrix2::identity(2);
  }
  return evaluate<FpMatrix2>(w, a, FpMatrix2::identity(a.front().p()));
}

VerifyResult verify(const Presentation& P, const Sl2Assignment& a) {
  if (a.size() != static_cast<std::size_t>(P.generator_count))
    throw std::invalid_argument("assignment does not cover every generator");
  VerifyResult res;
  for (std::size_t i = 0; i < P.relators.size(); ++i) {
    if (!evaluate_sl2(P.relators[i], a).is_identity()) {
      res.valid = false;
      res.failing_relators.push_back(static_cast<int>(i));
    }
  }
  return res;
}

std::optional<Witness> witness_nontrivial(const Presentation& P, const Word& word,
                                          const SearchConfig& cfg, SearchStats* stats) {
  check_prime(cfg.p);
  if (free_reduce(word).empty()) return std::nullopt;
  for (Letter l : word)
    if (std::abs(l) > P.generator_count) throw MissingImage(std::abs(l));
  Sl2Table T(cfg.p);
  std::vector<Term> terms;
  for (Letter l : word) terms.push_back({std::abs(l) - 1, l < 0});
  // Conjugating a solution gives a solution with a conjugate image, so the
  // first branch only needs one value per conjugacy class.
  auto visit = [&](Solver& s, std::vector<Witness>& out) {
    int img = s.eval(terms, 0, terms.size());
    if (img != T.identity()) out.push_back({to_matrices(s, T), T.element(img)});
  };
  auto found = split_search<Witness>(P, T, cfg, T.class_representatives(), 1, visit, stats);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::optional<Sl2Assignment> stored_assignment(const Presentation& P) {
  if (!P.modulus) return std::nullopt;
  Sl2Assignment a;
  for (const auto& e : P.images) {
    if (!e) return std::nullopt;
    a.emplace_back(*P.modulus, (*e)[0], (*e)[1], (*e)[2], (*e)[3]);
  }
  if (a.size() != static_cast<std::size_t>(P.generator_count)) return std::nullopt;
  return a;
}

}  // namespace linkforge
