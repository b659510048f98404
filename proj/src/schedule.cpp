#include "cohen/schedule.hpp"

#include <algorithm>
#include <random>

#include "cohen/errors.hpp"

namespace cohen {

void RequirementSchedule::validate(const ObstacleFamily& family) const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    if (const auto* dense = std::get_if<DenseStep>(&step)) {
      if (dense->coords != dense->requirement.coordinates) {
        throw DomainError("step " + std::to_string(i) + ": dense step coordinates " +
                          dense->coords.str() + " differ from requirement coordinates " +
                          dense->requirement.coordinates.str());
      }
      if (!dense->coords.subset_of(family.ground())) {
        throw DomainError("step " + std::to_string(i) + ": coordinates outside the ground set");
      }
      if (!family.is_member(dense->coords)) {
        throw DomainError("step " + std::to_string(i) + ": " + dense->coords.str() +
                          " is not a member of the induced family");
      }
    } else if (const auto* obstacle = std::get_if<ObstacleStep>(&step)) {
      if (!family.is_obstacle(obstacle->obstacle)) {
        throw DomainError("step " + std::to_string(i) + ": " + obstacle->obstacle.str() +
                          " is not a listed obstacle");
      }
    } else if (const auto* sep = std::get_if<SeparationStep>(&step)) {
      if (!family.is_member(sep->a) || !family.is_member(sep->a_prime)) {
        throw DomainError("step " + std::to_string(i) + ": separation sets must be family members");
      }
      if (sep->sigma.coordinates != sep->a || sep->tau.coordinates != sep->a_prime) {
        throw DomainError("step " + std::to_string(i) + ": separation names on wrong coordinates");
      }
    }
  }
}

std::string step_signature(const ScheduleStep& step) {
  if (const auto* dense = std::get_if<DenseStep>(&step)) {
    return "dense " + dense->coords.str() + " " + dense->requirement.description;
  }
  if (const auto* obstacle = std::get_if<ObstacleStep>(&step)) {
    return "obstacle " + obstacle->obstacle.str();
  }
  const auto& sep = std::get<SeparationStep>(step);
  return "separation " + sep.a.str() + "/" + sep.a_prime.str();
}

std::map<std::string, std::size_t> RequirementSchedule::repetition_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& step : steps) ++counts[step_signature(step)];
  return counts;
}

std::size_t RequirementSchedule::obstacle_step_count(const IndexSet& b) const {
  std::size_t n = 0;
  for (const auto& step : steps) {
    if (const auto* obstacle = std::get_if<ObstacleStep>(&step)) {
      if (obstacle->obstacle == b) ++n;
    }
  }
  return n;
}

std::size_t RequirementSchedule::max_obstacle_repetition() const {
  std::map<IndexSet, std::size_t> counts;
  std::size_t best = 0;
  for (const auto& step : steps) {
    if (const auto* obstacle = std::get_if<ObstacleStep>(&step)) {
      best = std::max(best, ++counts[obstacle->obstacle]);
    }
  }
  return best;
}

namespace {

std::uint64_t rnd(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

IndexSet random_subset(std::mt19937_64& rng, const IndexSet& ground, std::size_t size) {
  std::vector<Label> pool(ground.labels().begin(), ground.labels().end());
  std::vector<Label> picked;
  for (std::size_t i = 0; i < size && !pool.empty(); ++i) {
    std::size_t at = static_cast<std::size_t>(rnd(rng, pool.size()));
    picked.push_back(pool[at]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return IndexSet(std::move(picked));
}

// A nonempty member of the family, by rejection; singletons always qualify.
IndexSet random_member(std::mt19937_64& rng, const ObstacleFamily& family) {
  const IndexSet& ground = family.ground();
  for (int tries = 0; tries < 8; ++tries) {
    IndexSet candidate = random_subset(rng, ground, 1 + rnd(rng, ground.size()));
    if (!candidate.empty() && family.is_member(candidate)) return candidate;
  }
  return IndexSet({ground.labels()[rnd(rng, ground.size())]});
}

BitString random_bits(std::mt19937_64& rng, std::size_t len) {
  BitString out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(static_cast<int>(rnd(rng, 2)));
  return out;
}

DenseRequirement random_requirement(std::mt19937_64& rng, const IndexSet& coords) {
  switch (rnd(rng, coords.size() >= 2 ? 4 : 3)) {
    case 0:
      return min_length(coords, 1 + rnd(rng, 6));
    case 1: {
      Label column = coords.labels()[rnd(rng, coords.size())];
      return contains_pattern(coords, random_bits(rng, 1 + rnd(rng, 3)), column);
    }
    case 2:
      return marker_chaff(coords);
    default: {
      std::size_t i = rnd(rng, coords.size());
      std::size_t j = rnd(rng, coords.size() - 1);
      if (j >= i) ++j;
      return splits_columns(coords, coords.labels()[i], coords.labels()[j]);
    }
  }
}

FiniteName random_name(std::mt19937_64& rng, const IndexSet& coords) {
  FiniteName name;
  name.coordinates = coords;
  std::size_t entries = rnd(rng, 3);
  for (std::size_t e = 0; e < entries; ++e) {
    MatrixCondition cond(coords);
    for (const Label& l : coords) {
      if (rnd(rng, 2)) cond.set_column(l, random_bits(rng, 1 + rnd(rng, 2)));
    }
    name.entries.emplace_back(std::move(cond), rnd(rng, 4));
  }
  return name;
}

}  // namespace

namespace {

RequirementSchedule random_schedule_with(std::mt19937_64& rng, const ObstacleFamily& family,
                                         std::size_t max_steps, std::size_t payload_len,
                                         bool include_separations) {
  RequirementSchedule schedule;
  std::map<IndexSet, std::size_t> reps;
  auto& steps = schedule.steps;

  // Noise for the family members sitting inside obstacles, so no proper
  // subfamily sees a clean marker sequence.
  for (const IndexSet& b : family.obstacles()) {
    for (const Label& l : b) {
      IndexSet c = b.minus(IndexSet({l}));
      if (!c.empty() && family.is_member(c)) {
        steps.push_back(DenseStep{c, marker_chaff(c)});
        break;
      }
    }
    if (steps.size() >= max_steps) break;
  }

  while (steps.size() < max_steps) {
    std::uint64_t kind = rnd(rng, 10);
    if (kind < 5) {
      IndexSet a = random_member(rng, family);
      steps.push_back(DenseStep{a, random_requirement(rng, a)});
    } else if (kind < 9 && !family.obstacles().empty()) {
      const IndexSet& b = family.obstacles()[rnd(rng, family.obstacles().size())];
      if (reps[b] >= payload_len) continue;
      ++reps[b];
      steps.push_back(ObstacleStep{b});
    } else if (include_separations) {
      IndexSet a = random_member(rng, family);
      IndexSet a2 = random_member(rng, family);
      steps.push_back(SeparationStep{a, a2, random_name(rng, a), random_name(rng, a2)});
    }
    if (rnd(rng, max_steps) < 2) break;  // occasional short schedules
  }
  schedule.validate(family);
  return schedule;
}

}  // namespace

RequirementSchedule random_schedule(const ObstacleFamily& family, std::size_t max_steps,
                                    std::size_t payload_len, std::uint64_t seed,
                                    bool include_separations) {
  std::mt19937_64 rng(seed);
  return random_schedule_with(rng, family, max_steps, payload_len, include_separations);
}

Session random_session(std::uint64_t seed, const SessionParams& params) {
  std::mt19937_64 rng(seed);
  Session session;

  std::size_t ground_size = 2 + rnd(rng, params.max_ground - 1);
  IndexSet ground = IndexSet::range(ground_size);

  std::vector<IndexSet> obstacles;
  std::size_t want = 1 + rnd(rng, params.max_obstacles);
  for (int tries = 0; tries < 40 && obstacles.size() < want; ++tries) {
    IndexSet b = random_subset(rng, ground, 2 + rnd(rng, std::min<std::size_t>(3, ground_size - 1)));
    if (b.size() < 2) continue;
    obstacles.push_back(std::move(b));
    ObstacleFamily normalized(ground, obstacles);
    obstacles.assign(normalized.obstacles().begin(), normalized.obstacles().end());
  }
  if (obstacles.empty()) obstacles.push_back(random_subset(rng, ground, 2));
  session.family = ObstacleFamily(ground, obstacles);

  std::size_t payload_len = 1 + rnd(rng, params.max_payload);
  session.payload = random_bits(rng, payload_len);
  session.schedule = random_schedule_with(rng, session.family, params.max_steps, payload_len,
                                          params.include_separations);
  return session;
}

}  // namespace cohen
