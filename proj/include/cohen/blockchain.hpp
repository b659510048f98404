#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohen/report.hpp"
#include "cohen/schedule.hpp"

namespace cohen {

// One coding point: the all-one marker row across an obstacle, the payload
// bit row after it, and which payload bit was written.
struct MarkerRecord {
  std::size_t marker_row = 0;
  std::size_t bit_row = 0;
  std::size_t payload_index = 0;
  int bit = 0;

  bool operator==(const MarkerRecord&) const = default;
};

struct StepRecord {
  std::size_t step_index = 0;
  std::string kind;  // "dense" | "obstacle" | "separation"
  std::string detail;
  std::size_t row_begin = 0;  // rows this step wrote, [row_begin, row_end)
  std::size_t row_end = 0;
  IndexSet active;  // columns the step wrote to; the rest of the block is padding
};

struct SeparationRecord {
  std::size_t step_index = 0;
  bool separated = false;
  std::string outcome;  // achieved decisions, or why the step was skipped
  std::uint64_t test_value = 0;
};

struct BlockchainResult {
  MatrixCondition matrix;  // uniform across the whole index set
  std::map<IndexSet, std::vector<MarkerRecord>> marker_log;
  std::vector<StepRecord> step_log;
  std::vector<SeparationRecord> separation_log;
};

struct BuildOptions {
  int separation_depth = 2;
  std::uint64_t separation_horizon = 4;  // values probed when checking decidedness
  int pool_max_len = 2;
};

// Two columns, alternating sides: step k extends the column pair_indices[k%2]
// into its dense set, pads the other, then codes marker, payload bit k, and a
// separator row across both columns.
BlockchainResult build_pair(const IndexSet& pair_indices, const std::vector<DenseStep>& steps,
                            const BitString& payload);

// The full-width pattern: columns 0..l, a subset-closed family containing all
// singletons, dense steps on members; after every dense step all columns
// receive marker, next payload bit, separator.
BlockchainResult build_mostowski(std::uint64_t l, const std::vector<IndexSet>& family_members,
                                 const std::vector<DenseStep>& steps, const BitString& payload);

// The general builder over an obstacle family: dense steps on members,
// obstacle steps coding payload bits across single obstacles (indexed by how
// often that obstacle has come up), separation steps running the bounded
// two-case analysis. Separation steps that fail the bounded search are
// logged and skipped, never silently dropped.
BlockchainResult build_general(const ObstacleFamily& family, const RequirementSchedule& schedule,
                               const BitString& payload,
                               const std::vector<SeparationCandidate>& pool,
                               const BuildOptions& options = {});

// Payload read back from the columns of b: markers are all-one rows across a
// contained obstacle whose predecessor row has a zero (or start the matrix);
// the following rows, in order, are the payload bits. b must contain an
// obstacle (NotAnObstacle otherwise); an all-one run longer than two rows is
// a MalformedMatrix.
BitString decode(const MatrixCondition& matrix, const IndexSet& b, const ObstacleFamily& family);

// decode without the obstacle precondition: marker rows found across exactly
// the given columns, with the bits after them. Used to check that members of
// the family see no clean payload.
struct ScanResult {
  std::vector<std::size_t> marker_rows;
  BitString bits;
  bool truncated_run = false;  // marker at the last row, no bit row after it
  bool overlong_run = false;   // an all-one run longer than two rows
};
ScanResult permissive_scan(const MatrixCondition& matrix, const IndexSet& columns);

// Re-checks a build against its session: every scheduled (A, D) met by the
// A-restriction, payload recovered exactly across every obstacle, members
// reject decoding, and marker patterns confined to rows the step log accounts
// for. All statements are relative to the scheduled family.
Report verify_generic(const BlockchainResult& result, const ObstacleFamily& family,
                      const RequirementSchedule& schedule, const BitString& payload);

}  // namespace cohen
