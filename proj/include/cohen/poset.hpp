#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohen/obstacles.hpp"
#include "cohen/report.hpp"

namespace cohen {

// A finite poset with the order axioms checked on construction. Built from a
// relation given as pairs; the reflexive-transitive closure is taken and
// antisymmetry is then required.
class FinitePoset {
public:
  FinitePoset(std::vector<std::string> elements,
              std::vector<std::pair<std::string, std::string>> below);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  bool le(std::size_t a, std::size_t b) const { return le_[a][b]; }
  bool le(const std::string& a, const std::string& b) const;
  std::size_t index_of(const std::string& name) const;

  // Index of the least element, if there is one.
  std::optional<std::size_t> bottom() const;

  // Greatest lower bound of a and b, when it exists.
  std::optional<std::size_t> meet(std::size_t a, std::size_t b) const;
  bool is_meet_semilattice() const;

  bool has_upper_bound(const std::vector<std::size_t>& xs) const;
  // A lower bound strictly above the least element.
  bool has_nonzero_lower_bound(const std::vector<std::size_t>& xs) const;

private:
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> le_;
};

// The order embedding of a poset into its induced family of sets: p maps to
// the elements strictly between bottom and p, the family consists of those
// sets and their subsets, and the obstacles are the minimal sets the family
// misses. Requires a least element.
struct DownsetEmbedding {
  ObstacleFamily family;
  std::map<std::string, IndexSet> image;  // element name -> its down-set
};

DownsetEmbedding downset_embedding(const FinitePoset& p);

// Brute-force check that f : P -> Q is injective, order preserving and
// reflecting, and preserves existence and nonexistence of upper bounds and
// nonzero lower bounds for every subset. Both posets need least elements.
Report check_star_embedding(const std::map<std::string, std::string>& f, const FinitePoset& p,
                            const FinitePoset& q);

// The family members ordered by inclusion, as a poset (element names are the
// member sets' brace notation).
FinitePoset family_poset(const ObstacleFamily& family);

}  // namespace cohen
