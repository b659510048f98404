#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cohen/condition.hpp"

namespace cohen {

// A finite forcing name for a set of naturals over a product of binary Cohen
// forcings: entries (condition, value). Every entry condition lives on the
// name's coordinate set.
struct FiniteName {
  IndexSet coordinates;
  std::vector<std::pair<MatrixCondition, std::uint64_t>> entries;

  FiniteName() = default;
  FiniteName(IndexSet coords, std::vector<std::pair<MatrixCondition, std::uint64_t>> es);
};

enum class Decision { ForcedIn, ForcedOut, Undecided };

const char* to_string(Decision d);

// Atomic forcing relation, decided exactly:
//   ForcedIn   — {r <= p : r extends some entry with value k} is dense below p,
//                settled by enumerating extensions of p out to the entry depth;
//   ForcedOut  — no entry with value k is compatible with p;
//   Undecided  — otherwise (extensions deciding both ways exist within one
//                extra level of depth).
// Monotone: decisions of extensions refine decisions.
Decision forces_in(const MatrixCondition& p, std::uint64_t k, const FiniteName& name);

struct Evaluation {
  std::set<std::uint64_t> members;       // k < horizon forced in by the prefix
  std::vector<std::uint64_t> undecided;  // k the prefix does not settle
};

// Values below `horizon` the prefix x settles into the name, with the
// unsettled ones reported alongside.
Evaluation evaluate(const MatrixCondition& x, const FiniteName& name, std::uint64_t horizon);

// Keeps the entries whose condition on the filled coordinates is an initial
// segment of `filled`, restricted to the remaining coordinates. The filled
// support and `remaining` must partition the name's coordinates.
FiniteName partial_evaluate(const FiniteName& name, const MatrixCondition& filled,
                            const IndexSet& remaining);

// A pool candidate for the separation search: a name over the X coordinates
// together with the membership value the caller will test with.
struct SeparationCandidate {
  FiniteName name;
  std::uint64_t test_value = 0;
};

struct SeparationFinding {
  FiniteName name;
  std::uint64_t test_value = 0;
  int verified_depth = 0;
  bool vacuous = false;  // depth 0: no extensions were examined
};

// Bounded surrogate of the product-decision step: returns the first pool
// candidate whose test value stays undecided in `chi` under every X-extension
// of q that grows X-columns by exactly `depth` bits. Sound only as
// "undecided up to depth"; absence of a candidate is a value, not an error.
std::optional<SeparationFinding> search_separating_name(const MatrixCondition& q,
                                                        const FiniteName& chi, const IndexSet& x,
                                                        const std::vector<SeparationCandidate>& pool,
                                                        int depth);

// Deterministic small pool over the given coordinates: single-entry names with
// short entry conditions, paired with each of the given test values in turn.
std::vector<SeparationCandidate> canonical_name_pool(const IndexSet& coords, int max_len,
                                                     const std::vector<std::uint64_t>& test_values);

// Extension of p (touching any coordinates) whose decision for k in `name`
// equals `want`; nullopt when the opposite decision is already forced.
std::optional<MatrixCondition> find_deciding_extension(const MatrixCondition& p, std::uint64_t k,
                                                       const FiniteName& name, Decision want);

}  // namespace cohen
