#pragma once

#include <vector>

#include "cohen/condition.hpp"

namespace cohen {

// An index set I with a set of forbidden subsets (obstacles). The induced
// family consists of the subsets of I containing no obstacle; it is closed
// under subsets and contains all singletons because obstacles have at least
// two elements. Obstacles are normalized to the inclusion-minimal ones, since
// a superset obstacle's coding would alias a subset's.
class ObstacleFamily {
public:
  ObstacleFamily() = default;
  ObstacleFamily(IndexSet ground, std::vector<IndexSet> obstacles);

  const IndexSet& ground() const { return ground_; }
  const std::vector<IndexSet>& obstacles() const { return obstacles_; }

  // No obstacle is contained in a.
  bool is_member(const IndexSet& a) const;
  // The obstacle exactly as listed.
  bool is_obstacle(const IndexSet& b) const;
  // First listed obstacle contained in b, if any.
  const IndexSet* contained_obstacle(const IndexSet& b) const;

  bool operator==(const ObstacleFamily&) const = default;

private:
  IndexSet ground_;
  std::vector<IndexSet> obstacles_;  // sorted, inclusion-minimal
};

// Every member of the induced family, by enumeration of the power set.
// ground sets above the bound are a ResourceError (the enumeration is 2^|I|).
std::vector<IndexSet> family_members(const ObstacleFamily& fam, std::size_t max_ground = 16);

// A subset-closed family containing all singletons, given explicitly as its
// member list, turned into obstacle form (obstacles = minimal non-members).
ObstacleFamily family_from_members(const IndexSet& ground, const std::vector<IndexSet>& members);

}  // namespace cohen
