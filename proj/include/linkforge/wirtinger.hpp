#pragma once

#include "linkforge/diagram.hpp"
#include "linkforge/word.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace linkforge {

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;
  // meridians[c] is the generator (1-based) chosen as the meridian of component c.
  std::vector<int> meridians;
  std::vector<std::optional<Word>> longitudes;
  // component_of_generator[g-1]; empty when unknown (loaded presentations).
  std::vector<int> component_of_generator;
  std::map<std::string, Word> words;

  // Optional stored SL(2,F_p) assignment, row-major [a,b,c,d] per generator.
  std::optional<int> modulus;
  std::vector<std::optional<std::array<int, 4>>> images;

  std::vector<std::string> warnings;

  int component_count() const { return static_cast<int>(meridians.size()); }
};

class PresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Overarc structure of a diagram: generator g (1-based) is a maximal run of
// arcs broken only at undercrossings.
struct OverarcMap {
  std::map<int, int> generator_of_arc;
  std::vector<int> component_of_generator;  // [g-1]
  std::vector<int> first_generator;         // per component
};
OverarcMap overarcs(const Diagram& d);

// One generator per overarc, numbered per component from the basepoint; one
// relator per crossing: x_o x_u X_o X_v at positive crossings and
// x_o x_v X_o X_u at negative ones (u, v = incoming, outgoing under-arcs).
Presentation wirtinger_presentation(const Diagram& d);

// Zero-framed longitude of component c as a word in the Wirtinger generators.
Word longitude_word(const Diagram& d, int c);

// Undercrossings met along component c from its basepoint: the over
// generator and the crossing sign.
struct UnderPassage {
  int crossing;
  int over_generator;
  int sign;
};
std::vector<UnderPassage> under_passages(const Diagram& d, const OverarcMap& om, int c);

Presentation zero_surgery_presentation(const Diagram& d, const std::set<int>& surgered);

// .fpg text: `generators N`, `relator w`, `meridian k gi`, `word NAME w`,
// `modulus p`, `image gi a b c d`. Components in `meridian` lines are 1-based.
Presentation load_presentation(std::string_view text);
std::string render_presentation(const Presentation& p);

// Substitutes away generators defined by conjugation relators, never
// removing a meridian. Distinguished words are rewritten accordingly.
Presentation eliminate_generators(const Presentation& p);

// Relator of the form x_o x_a X_o X_b with o distinct from a and b.
struct ConjugationShape {
  int o, a, b;
};
std::optional<ConjugationShape> conjugation_shape(const Word& r);

}  // namespace linkforge
