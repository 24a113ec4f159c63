#pragma once

#include "linkforge/word.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linkforge {

// X(a,b,c,d): arcs listed counterclockwise starting at the incoming
// under-arc a. The under-strand runs a -> c; the crossing is positive iff
// the over-strand runs d -> b.
using PdCrossing = std::array<int, 4>;

struct Slot {
  int crossing = -1;
  int position = -1;  // 0..3 = a,b,c,d
  bool operator==(const Slot&) const = default;
};

struct ArcEnds {
  Slot tail;  // where the arc leaves a crossing
  Slot head;  // where the arc enters a crossing
};

class DiagramError : public std::runtime_error {
 public:
  DiagramError(const std::string& what, std::optional<int> arc = std::nullopt)
      : std::runtime_error(arc ? what + " (arc " + std::to_string(*arc) + ")" : what), arc(arc) {}
  std::optional<int> arc;
};

struct BasepointNote {
  int component;  // 0-based
  int arc;
  // Arc following `arc` along the orientation. Only needed for components
  // that never pass under, whose orientation a PD code cannot express.
  std::optional<int> next;
};

class Diagram {
 public:
  Diagram() = default;

  // Validates the crossing list and infers components and orientations.
  // Components named in `basepoints` / `unknot_components` get those
  // indices; the rest fill the remaining indices ordered by smallest arc.
  // over_in optionally gives, per crossing, the over-strand's incoming slot
  // (1 or 3, 0 = unknown); it orients components that never pass under.
  static Diagram from_pd(std::vector<PdCrossing> crossings,
                         const std::vector<BasepointNote>& basepoints = {},
                         const std::vector<int>& unknot_components = {},
                         const std::vector<int>& over_in = {});

  int component_count() const { return static_cast<int>(components_.size()); }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  const std::vector<PdCrossing>& crossings() const { return crossings_; }
  const PdCrossing& crossing(int x) const { return crossings_.at(static_cast<std::size_t>(x)); }

  int sign(int x) const { return signs_.at(static_cast<std::size_t>(x)); }
  int writhe(int component) const;

  bool is_free_loop(int c) const { return components_.at(static_cast<std::size_t>(c)).empty(); }
  // Arcs of component c in orientation order starting at its basepoint.
  const std::vector<int>& component_arcs(int c) const {
    return components_.at(static_cast<std::size_t>(c));
  }
  // Basepoint arc, or nullopt for a crossing-free unknot component.
  std::optional<int> basepoint(int c) const;

  int component_of_arc(int arc) const;
  const ArcEnds& ends(int arc) const;
  std::vector<int> arcs() const;
  int max_arc() const;

  int under_component(int x) const { return component_of_arc(crossing(x)[0]); }
  int over_component(int x) const { return component_of_arc(crossing(x)[1]); }
  // The over-strand's incoming slot (1 or 3).
  int over_in_position(int x) const { return sign(x) > 0 ? 3 : 1; }

  // Renumbers arcs 1..2n along components in order. Keeps crossing order.
  Diagram compacted() const;

  bool operator==(const Diagram& o) const {
    return crossings_ == o.crossings_ && components_ == o.components_;
  }

 private:
  std::vector<PdCrossing> crossings_;
  std::vector<int> signs_;
  std::vector<std::vector<int>> components_;
  std::map<int, int> arc_component_;
  std::map<int, ArcEnds> ends_;
};

Diagram parse_pd(std::string_view text);
std::string render_pd(const Diagram& d);

std::vector<std::vector<int>> linking_matrix(const Diagram& d);

// Keeps the listed components in the given order.
Diagram sublink(const Diagram& d, const std::vector<int>& keep);
Diagram permute_components(const Diagram& d, const std::vector<int>& order);
// Disjoint union with d2's components appended.
Diagram split_union(const Diagram& d1, const Diagram& d2);

Diagram connected_sum(const Diagram& d1, int c1, const Diagram& d2, int c2);

// Closure of a braid word on `strands` strands; generator ±(i+1) crosses
// strands i and i+1. Components are ordered by their lowest starting strand.
Diagram braid_closure(int strands, const std::vector<int>& word);
// The 0-crossing unknot.
Diagram unknot();

// A tangle in a box whose strands run south to north. Track k enters the box
// at the south side through arc `bottom[k]` and leaves through `top[k]`;
// tracks are indexed from the east (right) side, i.e. track k sits k places
// to the left of track 0 when looking along the companion's orientation.
struct AnnularPattern {
  int strand_count = 0;
  std::vector<int> orientations;  // +1 along the companion, -1 against
  std::vector<PdCrossing> crossings;
  std::vector<int> bottom;
  std::vector<int> top;
  int free_loops = 0;
  std::vector<int> over_in;  // per crossing, as in Diagram::from_pd; may be empty
  // Arcs that become the basepoints of the output components, in output
  // order. Components not listed follow in order of discovery.
  std::vector<int> component_basepoints;

  void validate() const;
};

AnnularPattern identity_pattern(int strand_count = 1);
AnnularPattern bing_pattern();
// Borromean rings inside the solid torus whose core meets the box in the
// tracks. Track p is a finger of component |eta[p]|-1 (0 or 1), oriented by
// the sign of the letter, so the axis reads eta in the meridians of those two
// components.
AnnularPattern borromean_axis_pattern(const Word& eta);

// Replaces component c by the pattern's tracks running parallel to it
// (blackboard framing corrected to the zero framing with -writhe(c) full
// twists), with the pattern tangle spliced in at c's basepoint arc. The new
// components take indices c, c+1, ...
Diagram satellite(const Diagram& d, int c, const AnnularPattern& pattern);
Diagram bing_double(const Diagram& d, int c);

// Builds planar diagrams and tangles from a bottom-to-top sequence of
// elementary moves on a row of vertical strands. Position 0 is the east end
// of the row.
class TangleBuilder {
 public:
  explicit TangleBuilder(int first_label = 1) : next_label_(first_label) {}

  // Opens boundary strands at the bottom of the box (east to west).
  void open(const std::vector<int>& orientations);
  // New U-shaped strand occupying positions p, p+1.
  void cup(int p, bool east_up = true);
  // Joins the strands at positions p, p+1.
  void cap(int p);
  // Swaps strands at p, p+1. The strand moving west (from p) goes under
  // iff west_mover_under.
  void cross(int p, bool west_mover_under);
  // Crossing whose sign is `sign` when both strands point north.
  void cross_signed(int p, int sign) { cross(p, sign > 0); }
  // Marks the arc currently at position p as the basepoint of output
  // component `tag` (smaller tags come first).
  void tag(int p, int tag);
  void braid(const std::vector<int>& generators);  // ±(i+1) acts on i, i+1
  void full_twist(int sign);                        // on all strands

  int width() const { return static_cast<int>(row_.size()); }
  int label_at(int p) const { return row_.at(static_cast<std::size_t>(p)).label; }
  bool up_at(int p) const { return row_.at(static_cast<std::size_t>(p)).up; }

  Diagram close() const;
  AnnularPattern finish() const;

 private:
  struct Strand {
    int label;
    bool up;
  };
  int fresh() { return next_label_++; }
  void rename(int from, int to);

  int next_label_;
  std::vector<Strand> row_;
  std::vector<PdCrossing> crossings_;
  std::vector<int> over_in_;
  std::vector<int> bottom_;
  std::vector<int> bottom_orientations_;
  std::map<int, int> tags_;  // label -> tag
  std::vector<int> free_loop_tags_;  // -1 if untagged
};

}  // namespace linkforge
