#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cohen/dense.hpp"
#include "cohen/report.hpp"

namespace cohen {

// Positions where the reference real reads 1-then-0 (good points) and their
// successors (the coding positions used by substitution).
struct GoodPointSet {
  std::vector<std::size_t> good;    // G: i with y(i)=1, y(i+1)=0
  std::vector<std::size_t> coding;  // C: i+1 for i in G
};

GoodPointSet good_points(const BitString& y);

// Replace f's values on the positions A by g's values, via the order
// preserving bijection from A onto g's domain. |A| must equal |g| and A must
// lie inside f's domain.
BitString graft(const BitString& f, const BitString& g, const std::vector<std::size_t>& positions);

// Every rewrite of p's first n bits stays inside D (single-coordinate, exact
// by exhausting all 2^n rewrites).
bool is_immune(const BitString& p, std::size_t n, const DenseRequirement& d);

// An extension of p immune at p's own length, built by the graft loop over
// all strings of length |p|: graft the candidate, extend into D, graft p
// back. Exponential in |p|; the requirement immunizers are the fast path for
// the incremental builders.
BitString immunize(const BitString& p, const DenseRequirement& d);

// The primed family: 1 at good points, 0 at coding points, 0 where the column
// is inactive (position count of good points below i is congruent to the
// column index mod n), the original bit otherwise.
struct PrimedFamily {
  std::vector<BitString> originals;
  BitString reference;
  std::vector<BitString> primed;
};

PrimedFamily prime(const std::vector<BitString>& xs, const BitString& y);

// x with z written onto the coding positions of y (z truncated or extended
// with zeros to the number of coding positions inside x's domain).
BitString substitute(const BitString& x, const BitString& z, const BitString& y);

// Reads the surgery coding back from a family of columns: maximal all-one
// runs across the listed columns mark a good point, the second row of a run
// (when present) carries the substituted bit. Runs longer than two rows are a
// MalformedFamily; a run cut off by the end of the prefix is flagged.
struct SurgeryDecoding {
  std::vector<std::size_t> coding_positions;  // recovered C(y) prefix
  BitString bits;                             // recovered payload prefix
  bool incomplete_tail = false;               // trailing run with no readable bit row
};

SurgeryDecoding decode_surgery(const std::vector<BitString>& family,
                               const std::vector<std::size_t>& columns);

// One row of the joined construction: originals and reference for a subset A.
struct MutableRow {
  std::vector<BitString> xs;  // n columns
  BitString y;
};

struct MutableBlockchain {
  std::vector<BitString> joined_columns;  // c_k, one per column index
  BitString joined_reference;             // positions of ones mark coding slots
  BitString joined_payload;               // z_A, zero on rows whose subset is a member
  std::vector<IndexSet> row_subsets;      // row order of the join
  std::vector<std::vector<BitString>> row_columns;  // per row: the c_k^A pieces
  std::vector<BitString> row_payloads;              // per row: z^A
  std::vector<GoodPointSet> row_good_points;
};

// Builds the joined columns from one primed row per subset A (|A| >= 2): the
// rows' references must share their good points, members of the family get an
// all-zero payload, the rest carry the payload (extended with zeros to the
// number of coding positions). Substituting the joined payload along the
// joined reference acts rowwise.
MutableBlockchain build_mutable_blockchain(std::size_t n,
                                           const std::map<IndexSet, MutableRow>& rows,
                                           const std::vector<IndexSet>& member_family,
                                           const BitString& payload);

// Deterministic generator for aligned mutable-blockchain rows: references with
// shared, sparse good points (gaps of at least two inactive rows) and seeded
// original bits.
std::map<IndexSet, MutableRow> generate_mutable_rows(std::size_t n, std::size_t good_point_count,
                                                     std::uint64_t seed);

// Product prefixes of a pair (c, d) built so that, for every requirement in
// the family, c has an immune prefix while d is zero above the cut. Grafting
// any g onto c at d's one-positions then keeps every requirement met.
struct CovertPair {
  BitString c;
  BitString d;
};

CovertPair build_covert_pair(const std::vector<DenseRequirement>& family, std::uint64_t seed);

// Product prefixes x_0..x_{n-1}, y prepared so that for every requirement
// (over a proper subset A of the columns) the primed, substituted family
// restricted to A still meets it: each requirement is immunized above a cut
// where y is flat and the inactive column avoids A.
struct PrimedProductInputs {
  std::vector<BitString> xs;
  BitString y;
};

PrimedProductInputs build_primed_inputs(std::size_t n, const std::vector<DenseRequirement>& family,
                                        std::uint64_t seed);

// The preservation harness: for every listed proper subset A and every family
// requirement over A, the substituted primed family restricted to A meets the
// requirement; the primed family never shows two consecutive all-one rows.
// Statements are relative to the declared family, and the report says so.
Report verify_preservation(const PrimedFamily& primed,
                           const std::vector<std::vector<std::size_t>>& subsets_to_check,
                           const std::vector<DenseRequirement>& dense_family,
                           const std::vector<BitString>& substitutions);

}  // namespace cohen
