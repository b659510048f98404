#include "cohen/sentence.hpp"

#include <algorithm>
#include <set>

namespace cohen {

namespace {

struct Token {
  enum Kind { Word, Le, Eq, Comma, Colon, LParen, RParen, End } kind = End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c == ',') {
      out.push_back({Token::Comma, ",", i++});
    } else if (c == ':') {
      out.push_back({Token::Colon, ":", i++});
    } else if (c == '(') {
      out.push_back({Token::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::RParen, ")", i++});
    } else if (c == '<') {
      if (i + 1 >= text.size() || text[i + 1] != '=') {
        throw SyntaxError("expected '<=' ", i);
      }
      out.push_back({Token::Le, "<=", i});
      i += 2;
    } else if (c == '=') {
      out.push_back({Token::Eq, "=", i++});
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out.push_back({Token::Word, text.substr(start, i - start), start});
    } else {
      throw SyntaxError("unexpected character '" + std::string(1, c) + "'", i);
    }
  }
  out.push_back({Token::End, "", text.size()});
  return out;
}

struct Parser {
  std::vector<Token> tokens;
  std::size_t at = 0;

  const Token& peek() const { return tokens[at]; }
  Token take() { return tokens[at++]; }

  Token expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) {
      throw SyntaxError("expected " + what + ", got '" + peek().text + "'", peek().pos);
    }
    return take();
  }

  std::string expect_word(const std::string& what) { return expect(Token::Word, what).text; }
};

std::size_t variable_index(const Sentence& s, const std::string& name, std::size_t pos) {
  auto it = std::find(s.variables.begin(), s.variables.end(), name);
  if (it == s.variables.end()) {
    throw SyntaxError("undeclared variable '" + name + "'", pos);
  }
  return static_cast<std::size_t>(it - s.variables.begin());
}

}  // namespace

Sentence parse_sentence(const std::string& text) {
  Parser p{tokenize(text)};
  Sentence s;

  if (p.expect_word("EXISTS") != "EXISTS") {
    throw SyntaxError("sentence must start with EXISTS", 0);
  }
  while (true) {
    std::size_t pos = p.peek().pos;
    std::string name = p.expect_word("a variable name");
    if (name == "EXISTS" || name == "AND" || name == "NOT" || name == "MEET" || name == "A") {
      throw SyntaxError("'" + name + "' is reserved and cannot be a variable", pos);
    }
    if (std::find(s.variables.begin(), s.variables.end(), name) != s.variables.end()) {
      throw SyntaxError("variable '" + name + "' declared twice", pos);
    }
    s.variables.push_back(name);
    if (p.peek().kind == Token::Comma) {
      p.take();
      continue;
    }
    break;
  }
  p.expect(Token::Colon, "':'");

  while (true) {
    bool negated = false;
    if (p.peek().kind == Token::Word && p.peek().text == "NOT") {
      p.take();
      negated = true;
    }
    if (p.peek().kind == Token::Word && p.peek().text == "A" &&
        p.tokens[p.at + 1].kind == Token::LParen) {
      p.take();
      p.take();
      Sentence::Amalgamable lit;
      lit.negated = negated;
      while (true) {
        std::size_t pos = p.peek().pos;
        lit.vars.push_back(variable_index(s, p.expect_word("a variable name"), pos));
        if (p.peek().kind == Token::Comma) {
          p.take();
          continue;
        }
        break;
      }
      p.expect(Token::RParen, "')'");
      s.literals.emplace_back(std::move(lit));
    } else {
      std::size_t pos = p.peek().pos;
      std::size_t lhs = variable_index(s, p.expect_word("a variable name"), pos);
      if (p.peek().kind == Token::Le) {
        p.take();
        std::size_t rpos = p.peek().pos;
        std::size_t rhs = variable_index(s, p.expect_word("a variable name"), rpos);
        s.literals.emplace_back(Sentence::Inclusion{lhs, rhs, negated});
      } else if (p.peek().kind == Token::Eq) {
        if (negated) {
          throw SyntaxError("meet terms cannot be negated", p.peek().pos);
        }
        p.take();
        std::size_t jpos = p.peek().pos;
        std::size_t j = variable_index(s, p.expect_word("a variable name"), jpos);
        std::size_t mpos = p.peek().pos;
        if (p.expect_word("MEET") != "MEET") {
          throw SyntaxError("expected MEET", mpos);
        }
        std::size_t kpos = p.peek().pos;
        std::size_t k = variable_index(s, p.expect_word("a variable name"), kpos);
        s.literals.emplace_back(Sentence::MeetEquation{lhs, j, k});
      } else {
        throw SyntaxError("expected '<=' or '=' after the variable", p.peek().pos);
      }
    }
    if (p.peek().kind == Token::Word && p.peek().text == "AND") {
      p.take();
      continue;
    }
    break;
  }
  p.expect(Token::End, "end of sentence");
  if (s.literals.empty()) {
    throw SyntaxError("a sentence needs at least one literal", text.size());
  }
  return s;
}

std::string print_sentence(const Sentence& s) {
  std::string out = "EXISTS ";
  for (std::size_t i = 0; i < s.variables.size(); ++i) {
    if (i) out += ",";
    out += s.variables[i];
  }
  out += " : ";
  for (std::size_t i = 0; i < s.literals.size(); ++i) {
    if (i) out += " AND ";
    const auto& lit = s.literals[i];
    if (const auto* inc = std::get_if<Sentence::Inclusion>(&lit)) {
      if (inc->negated) out += "NOT ";
      out += s.variables[inc->i] + " <= " + s.variables[inc->j];
    } else if (const auto* am = std::get_if<Sentence::Amalgamable>(&lit)) {
      if (am->negated) out += "NOT ";
      out += "A(";
      for (std::size_t v = 0; v < am->vars.size(); ++v) {
        if (v) out += ",";
        out += s.variables[am->vars[v]];
      }
      out += ")";
    } else {
      const auto& meet = std::get<Sentence::MeetEquation>(lit);
      out += s.variables[meet.i] + " = " + s.variables[meet.j] + " MEET " + s.variables[meet.k];
    }
  }
  return out;
}

bool eval_sentence(const Sentence& s, const ObstacleFamily& family,
                   const std::vector<IndexSet>& assignment) {
  if (assignment.size() != s.variables.size()) {
    throw DomainError("assignment size does not match the variable count");
  }
  for (const auto& set : assignment) {
    if (!family.is_member(set)) return false;
  }
  for (const auto& lit : s.literals) {
    if (const auto* inc = std::get_if<Sentence::Inclusion>(&lit)) {
      bool holds = assignment[inc->i].subset_of(assignment[inc->j]);
      if (holds == inc->negated) return false;
    } else if (const auto* am = std::get_if<Sentence::Amalgamable>(&lit)) {
      IndexSet u;
      for (std::size_t v : am->vars) u = u.unioned(assignment[v]);
      bool holds = family.is_member(u);
      if (holds == am->negated) return false;
    } else {
      const auto& meet = std::get<Sentence::MeetEquation>(lit);
      if (assignment[meet.i] != assignment[meet.j].intersect(assignment[meet.k])) return false;
    }
  }
  return true;
}

bool check_witness(const Sentence& s, const SatWitness& witness) {
  return eval_sentence(s, witness.family, witness.assignment);
}

namespace {

using VarMask = std::uint32_t;

VarMask union_mask(const std::vector<std::size_t>& vars) {
  VarMask m = 0;
  for (std::size_t v : vars) m |= VarMask{1} << v;
  return m;
}

}  // namespace

DecisionOutcome decide_sentence(const Sentence& s, std::size_t max_vars) {
  const std::size_t n = s.variables.size();
  if (n > max_vars || n > 20) {
    throw ResourceError("decide_sentence: " + std::to_string(n) +
                        " variables exceed the configured bound");
  }

  // Admissible point types: a ground point's membership pattern across the
  // variables must respect the positive inclusions and the meet equations.
  std::vector<VarMask> types;
  const VarMask all = static_cast<VarMask>((std::uint64_t{1} << n) - 1);
  for (VarMask t = 0; t <= all; ++t) {
    bool ok = true;
    for (const auto& lit : s.literals) {
      if (const auto* inc = std::get_if<Sentence::Inclusion>(&lit)) {
        if (!inc->negated && (t >> inc->i & 1) && !(t >> inc->j & 1)) ok = false;
      } else if (const auto* meet = std::get_if<Sentence::MeetEquation>(&lit)) {
        bool in_i = t >> meet->i & 1;
        bool in_jk = (t >> meet->j & 1) && (t >> meet->k & 1);
        if (in_i != in_jk) ok = false;
      }
      if (!ok) break;
    }
    if (ok && t != 0) types.push_back(t);
    if (all == 0) break;  // no variables: only the empty mask exists
  }

  // Generator sets: every variable's set, plus the union behind each positive
  // amalgamability literal. A point lies in a generator iff its type meets
  // the generator's variable mask.
  std::vector<VarMask> generators;
  for (std::size_t v = 0; v < n; ++v) generators.push_back(VarMask{1} << v);
  for (const auto& lit : s.literals) {
    if (const auto* am = std::get_if<Sentence::Amalgamable>(&lit)) {
      if (!am->negated) generators.push_back(union_mask(am->vars));
    }
  }

  // Each separation the sentence demands must be witnessed by some admissible
  // type; the needed types become the ground points.
  std::set<VarMask> used;
  for (const auto& lit : s.literals) {
    if (const auto* inc = std::get_if<Sentence::Inclusion>(&lit)) {
      if (!inc->negated) continue;
      bool found = false;
      for (VarMask t : types) {
        if ((t >> inc->i & 1) && !(t >> inc->j & 1)) {
          used.insert(t);
          found = true;
          break;
        }
      }
      if (!found) return DecisionOutcome{false, std::nullopt};
    } else if (const auto* am = std::get_if<Sentence::Amalgamable>(&lit)) {
      if (!am->negated) continue;
      VarMask su = union_mask(am->vars);
      for (VarMask gen : generators) {
        bool found = false;
        for (VarMask t : types) {
          if ((t & su) != 0 && (t & gen) == 0) {
            used.insert(t);
            found = true;
            break;
          }
        }
        if (!found) return DecisionOutcome{false, std::nullopt};
      }
    }
  }

  // Assemble the witness: one point per needed type.
  std::vector<VarMask> points(used.begin(), used.end());
  std::vector<Label> ground_labels;
  for (std::size_t i = 0; i < points.size(); ++i) ground_labels.emplace_back("t" + std::to_string(i));
  IndexSet ground(ground_labels);

  std::vector<IndexSet> assignment(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Label> in;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] >> v & 1) in.push_back(ground_labels[i]);
    }
    assignment[v] = IndexSet(std::move(in));
  }

  // Members: everything under some generator set.
  std::vector<IndexSet> gen_sets;
  for (VarMask gen : generators) {
    std::vector<Label> in;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if ((points[i] & gen) != 0) in.push_back(ground_labels[i]);
    }
    gen_sets.emplace_back(std::move(in));
  }
  std::vector<IndexSet> members;
  const std::uint64_t total = std::uint64_t{1} << points.size();
  if (points.size() > 20) throw ResourceError("decide_sentence: witness ground set too large");
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Label> subset;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if ((mask >> i) & 1) subset.push_back(ground_labels[i]);
    }
    IndexSet candidate(std::move(subset));
    for (const auto& gen : gen_sets) {
      if (candidate.subset_of(gen)) {
        members.push_back(candidate);
        break;
      }
    }
  }

  SatWitness witness{family_from_members(ground, members), std::move(assignment)};
  if (!check_witness(s, witness)) {
    throw Error("decide_sentence: constructed witness failed its own check");
  }
  return DecisionOutcome{true, std::move(witness)};
}

}  // namespace cohen
