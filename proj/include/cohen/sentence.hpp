#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cohen/errors.hpp"
#include "cohen/obstacles.hpp"

namespace cohen {

// An existential sentence in the language of inclusion, amalgamability
// predicates, and a partial meet: EXISTS x0,...,xm : lit AND lit AND ...
struct Sentence {
  struct Inclusion {
    std::size_t i = 0, j = 0;
    bool negated = false;
  };
  struct Amalgamable {
    std::vector<std::size_t> vars;
    bool negated = false;
  };
  struct MeetEquation {
    std::size_t i = 0, j = 0, k = 0;  // xi = xj MEET xk
  };
  using Literal = std::variant<Inclusion, Amalgamable, MeetEquation>;

  std::vector<std::string> variables;
  std::vector<Literal> literals;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position(position) {}
  std::size_t position;
};

// Grammar: EXISTS x0,...,xm : lit (AND lit)* with
// lit ::= xi <= xj | NOT xi <= xj | A(xi,...,xk) | NOT A(xi,...,xk)
//       | xi = xj MEET xk
Sentence parse_sentence(const std::string& text);

// Canonical rendering; parse(print(s)) reproduces s exactly.
std::string print_sentence(const Sentence& s);

struct SatWitness {
  ObstacleFamily family;
  std::vector<IndexSet> assignment;  // one member per variable, in order
};

struct DecisionOutcome {
  bool sat = false;
  std::optional<SatWitness> witness;
};

// Decides the sentence over obstacle-defined families: inclusion literals are
// set inclusion, A(S) is obstacle-freeness of the union, meets are
// intersections. Witnesses are built from one ground point per needed
// separation and are checked mechanically before being returned. UNSAT is
// returned only when some required separation is impossible for every
// admissible point type, which refutes every candidate family at once.
DecisionOutcome decide_sentence(const Sentence& s, std::size_t max_vars = 8);

// Truth of the (quantifier-free part of the) sentence under an assignment of
// the variables to members of the family.
bool eval_sentence(const Sentence& s, const ObstacleFamily& family,
                   const std::vector<IndexSet>& assignment);

// The witness really is a family plus a member assignment making the sentence
// true.
bool check_witness(const Sentence& s, const SatWitness& witness);

}  // namespace cohen
