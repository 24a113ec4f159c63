#pragma once

#include "linkforge/sl2.hpp"
#include "linkforge/wirtinger.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace linkforge {

using Sl2Assignment = std::vector<FpMatrix2>;
using PartialAssignment = std::vector<std::optional<FpMatrix2>>;

enum class SeedOrder { Greedy, Index };

struct SearchConfig {
  int p = 5;
  std::optional<std::size_t> max_solutions;  // nullopt = all
  SeedOrder seed_order = SeedOrder::Greedy;
  int worker_count = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
};

// Closes a partial assignment under the relators: a relator whose other
// generators are all known and whose one unknown generator occurs once
// determines it. Returns nullopt on a contradiction (a fully assigned relator
// that is not the identity).
std::optional<PartialAssignment> propagate(const Presentation& P, const PartialAssignment& partial);

// All representations into SL(2,F_p), or the first max_solutions of them in
// the search order. The result does not depend on worker_count.
std::vector<Sl2Assignment> search(const Presentation& P, const SearchConfig& cfg,
                                  SearchStats* stats = nullptr);

struct VerifyResult {
  bool valid = true;
  std::vector<int> failing_relators;  // 0-based
};
VerifyResult verify(const Presentation& P, const Sl2Assignment& a);

FpMatrix2 evaluate_sl2(const Word& w, const Sl2Assignment& a);

struct Witness {
  Sl2Assignment assignment;
  FpMatrix2 image;
};
// First representation (up to conjugation) under which `word` is not the
// identity, or nullopt if every representation kills it.
std::optional<Witness> witness_nontrivial(const Presentation& P, const Word& word,
                                          const SearchConfig& cfg, SearchStats* stats = nullptr);

// Stored assignment of a loaded presentation, if complete.
std::optional<Sl2Assignment> stored_assignment(const Presentation& P);

}  // namespace linkforge
