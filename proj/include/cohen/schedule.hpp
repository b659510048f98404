#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cohen/dense.hpp"
#include "cohen/names.hpp"
#include "cohen/obstacles.hpp"

namespace cohen {

// One round of a blockchain build: extend some member's columns into a dense
// set, code a payload bit across an obstacle, or run a name-separation round.
struct DenseStep {
  IndexSet coords;  // must equal requirement.coordinates and be a family member
  DenseRequirement requirement;
};

struct ObstacleStep {
  IndexSet obstacle;
};

struct SeparationStep {
  IndexSet a;
  IndexSet a_prime;
  FiniteName sigma;  // over a
  FiniteName tau;    // over a_prime
};

using ScheduleStep = std::variant<DenseStep, ObstacleStep, SeparationStep>;

struct RequirementSchedule {
  std::vector<ScheduleStep> steps;

  // Dense steps on family members, obstacle steps on listed obstacles,
  // separation names on their stated coordinate sets.
  void validate(const ObstacleFamily& family) const;

  // How often each distinct step recurs, keyed by a short signature. The
  // finite stand-in for a requirement being listed again and again.
  std::map<std::string, std::size_t> repetition_counts() const;

  std::size_t obstacle_step_count(const IndexSet& b) const;
  std::size_t max_obstacle_repetition() const;
};

std::string step_signature(const ScheduleStep& step);

// Parameters for seeded random sessions.
struct SessionParams {
  std::size_t max_ground = 6;
  std::size_t max_obstacles = 4;
  std::size_t max_steps = 40;
  std::size_t max_payload = 16;
  bool include_separations = true;
};

struct Session {
  ObstacleFamily family;
  RequirementSchedule schedule;
  BitString payload;
};

// Deterministic session from a seed: a ground set, an obstacle antichain, a
// payload, and a schedule mixing dense, chaff, obstacle, and separation
// steps. Identical seeds give identical sessions.
Session random_session(std::uint64_t seed, const SessionParams& params = {});

// Just the schedule part, for a family fixed in advance.
RequirementSchedule random_schedule(const ObstacleFamily& family, std::size_t max_steps,
                                    std::size_t payload_len, std::uint64_t seed,
                                    bool include_separations = true);

}  // namespace cohen
