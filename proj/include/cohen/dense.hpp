#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "cohen/condition.hpp"
#include "cohen/names.hpp"
#include "cohen/report.hpp"

namespace cohen {

// A dense open subset of a product of Cohen forcings, as a verifiable object:
// a membership predicate plus an extension oracle. Density and openness of
// user-supplied requirements cannot be proved, only audited to a depth with
// check_dense_open; the library requirements below pass that audit.
//
// The optional immunizer returns an extension of its input that stays a
// member under any modification of the input's rows (everything below the
// input's height). Library requirements provide structural ones; the
// incremental product builders need them because the general immunization
// loop is exponential in the prefix length.
struct DenseRequirement {
  IndexSet coordinates;
  std::string description;
  std::function<bool(const MatrixCondition&)> member;
  std::function<MatrixCondition(const MatrixCondition&)> meet;
  std::function<MatrixCondition(const MatrixCondition&)> immunizer;  // may be empty
  std::string serialized;  // canonical JSON for serialization; empty for ad hoc requirements
};

// meet with the contract enforced at call time: the result must extend the
// input and be a member.
MatrixCondition meet_checked(const DenseRequirement& d, const MatrixCondition& p);

// Same for the immunizer (membership and extension only; immunity itself is
// audited by sampling in the tests).
MatrixCondition immunize_checked(const DenseRequirement& d, const MatrixCondition& p);

// Library requirements. Coordinates are the A of the product the requirement
// lives on; single-column requirements take the column as a label in coords.

// Every column on the coordinates has length >= n (empty columns fail for n >= 1).
DenseRequirement min_length(IndexSet coords, std::size_t n);

// The pattern occurs as a substring of the given column. Pattern must be nonempty.
DenseRequirement contains_pattern(IndexSet coords, BitString pattern, Label column);

// The atomic membership of k in the name is decided (either way).
DenseRequirement decides_name(FiniteName name, std::uint64_t k);

// Columns i and j differ at some shared position.
DenseRequirement splits_columns(IndexSet coords, Label i, Label j);

// Contains an isolated all-one row across the coordinates (all-zero rows on
// both sides). Scheduled on members of an obstacle-induced family this plants
// decoder-shaped noise, the desk-scale stand-in for generic content.
DenseRequirement marker_chaff(IndexSet coords);

// Brute-force audit to a depth: every condition with columns of length
// <= depth is run through the meet oracle (result must extend and be a
// member), and every member's one-bit extensions (length <= depth+1) must
// stay members. An empty failure list is a pass at this depth.
Report check_dense_open(const DenseRequirement& d, int depth);

// True iff some initial segment of x, restricted to the requirement's
// coordinates, is a member. Scans uniform truncations longest-first; for open
// requirements (the invariant) this is equivalent to testing the full prefix.
bool meets(const MatrixCondition& x, const DenseRequirement& d);

// Single-coordinate conveniences used by the surgery operations.
bool member1(const DenseRequirement& d, const BitString& p);
BitString meet1(const DenseRequirement& d, const BitString& p);

}  // namespace cohen
