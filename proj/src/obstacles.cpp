#include "cohen/obstacles.hpp"

#include <algorithm>
#include <set>

#include "cohen/errors.hpp"

namespace cohen {

ObstacleFamily::ObstacleFamily(IndexSet ground, std::vector<IndexSet> obstacles)
    : ground_(std::move(ground)) {
  for (const auto& b : obstacles) {
    if (b.size() < 2) {
      throw MalformedFamily("obstacle " + b.str() + " has fewer than two elements");
    }
    if (!b.subset_of(ground_)) {
      throw MalformedFamily("obstacle " + b.str() + " not within ground set " + ground_.str());
    }
  }
  // Keep only the inclusion-minimal obstacles.
  std::sort(obstacles.begin(), obstacles.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
  for (const auto& b : obstacles) {
    bool redundant = false;
    for (const auto& kept : obstacles_) {
      if (kept.subset_of(b)) {
        redundant = true;
        break;
      }
    }
    if (!redundant && !(std::find(obstacles_.begin(), obstacles_.end(), b) != obstacles_.end())) {
      obstacles_.push_back(b);
    }
  }
  std::sort(obstacles_.begin(), obstacles_.end());
}

bool ObstacleFamily::is_member(const IndexSet& a) const {
  for (const auto& b : obstacles_) {
    if (b.subset_of(a)) return false;
  }
  return true;
}

bool ObstacleFamily::is_obstacle(const IndexSet& b) const {
  return std::find(obstacles_.begin(), obstacles_.end(), b) != obstacles_.end();
}

const IndexSet* ObstacleFamily::contained_obstacle(const IndexSet& b) const {
  for (const auto& obstacle : obstacles_) {
    if (obstacle.subset_of(b)) return &obstacle;
  }
  return nullptr;
}

std::vector<IndexSet> family_members(const ObstacleFamily& fam, std::size_t max_ground) {
  const auto& labels = fam.ground().labels();
  if (labels.size() > max_ground) {
    throw ResourceError("family_members: ground set of size " + std::to_string(labels.size()) +
                        " exceeds the enumeration bound " + std::to_string(max_ground));
  }
  std::vector<IndexSet> out;
  const std::uint64_t total = std::uint64_t{1} << labels.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Label> subset;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if ((mask >> i) & 1) subset.push_back(labels[i]);
    }
    IndexSet candidate(std::move(subset));
    if (fam.is_member(candidate)) out.push_back(std::move(candidate));
  }
  std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

ObstacleFamily family_from_members(const IndexSet& ground, const std::vector<IndexSet>& members) {
  if (ground.size() > 20) throw ResourceError("family_from_members: ground set too large");
  std::set<IndexSet> member_set(members.begin(), members.end());
  // Validate: subset-closed, singletons present.
  for (const Label& l : ground) {
    if (!member_set.count(IndexSet({l}))) {
      throw MalformedFamily("family is missing the singleton {" + l.text() + "}");
    }
  }
  // Closure under single removals implies closure under subsets.
  for (const IndexSet& m : member_set) {
    if (!m.subset_of(ground)) {
      throw MalformedFamily("member " + m.str() + " not within ground set " + ground.str());
    }
    for (const Label& l : m) {
      IndexSet smaller = m.minus(IndexSet({l}));
      if (!member_set.count(smaller)) {
        throw MalformedFamily("family is not closed under subsets: " + smaller.str() +
                              " missing below " + m.str());
      }
    }
  }
  if (!member_set.count(IndexSet())) {
    throw MalformedFamily("family is missing the empty set");
  }
  const auto& labels = ground.labels();
  const std::uint64_t total = std::uint64_t{1} << labels.size();
  auto subset_at = [&](std::uint64_t mask) {
    std::vector<Label> subset;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if ((mask >> i) & 1) subset.push_back(labels[i]);
    }
    return IndexSet(std::move(subset));
  };
  // Minimal non-members become the obstacles: every proper subset is a member.
  std::vector<IndexSet> obstacles;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    IndexSet candidate = subset_at(mask);
    if (member_set.count(candidate)) continue;
    bool minimal = true;
    for (std::uint64_t s = (mask - 1) & mask;; s = (s - 1) & mask) {
      if (!member_set.count(subset_at(s))) {
        minimal = false;
        break;
      }
      if (s == 0) break;
    }
    if (minimal) obstacles.push_back(std::move(candidate));
  }
  return ObstacleFamily(ground, std::move(obstacles));
}

}  // namespace cohen
