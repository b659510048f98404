#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cohen/dense.hpp"
#include "cohen/names.hpp"
#include "cohen/report.hpp"

namespace cohen {

// A finite tower presented by its column family: pairwise product-built
// prefixes of equal length. The increasing reals of the tower are the joins
// of initial column segments.
struct Tower {
  std::vector<BitString> columns;
  std::string provenance;

  // The (n+1)-column join: the n-th tower real.
  BitString joined(std::size_t n) const;
};

// The tower presented by a uniform matrix: its columns, in label order; the
// n-th tower real is the join of the first n+1 of them.
Tower tower_from_matrix(const MatrixCondition& matrix);

// Seeded tower columns extended to meet every requirement in the declared
// family; the provenance records the family size and seed.
Tower make_tower(std::size_t columns, std::size_t length, std::uint64_t seed,
                 const std::vector<DenseRequirement>& dense_family);

struct PairOutcome {
  std::size_t pair_index = 0;
  bool diagonalized = false;
  std::uint64_t k = 0;           // the separating value, when diagonalized
  std::string decisions;         // what was decided on each side
  std::size_t filled_columns = 0;  // how many columns were filled at the time
};

struct ExactPairResult {
  MatrixCondition d0;
  MatrixCondition d1;
  std::vector<PairOutcome> diag_log;
  // Per column: positions where the matrix differs from the tower column.
  std::map<Label, std::vector<std::size_t>> almost_d0;
  std::map<Label, std::vector<std::size_t>> almost_d1;
};

// Builds two matrices over the tower in rounds: meet each scheduled
// requirement once its coordinates are filled, try to make each name pair
// evaluate differently at some value below the horizon (logging Diagonalized
// or Skipped), then complete every touched column to agree with the tower
// beyond the touched positions. A Skipped pair whose names are not fully and
// identically decided by the filled prefix is a construction error.
ExactPairResult build_exact_pair(const Tower& tower,
                                 const std::vector<DenseRequirement>& dense_family,
                                 const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs,
                                 std::uint64_t horizon);

// Builds only the second matrix over a given first one: where the first
// name's value over d0 is settled, d1 is extended to make the second name
// differ at some undecided value. d0 must settle every value below the
// horizon (UndecidedEvaluation lists the offenders otherwise).
ExactPairResult build_exact_partner(const Tower& tower, const MatrixCondition& d0,
                                    const std::vector<DenseRequirement>& dense_family,
                                    const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs,
                                    std::uint64_t horizon);

// The four exactness clauses over the declared pool: requirements met,
// almost-agreement with the tower as logged, diagonalized pairs evaluate
// differently at the logged value, skipped pairs re-derive from the logged
// column count alone.
Report verify_exact_pair(const ExactPairResult& result, const Tower& tower,
                         const std::vector<DenseRequirement>& dense_family,
                         const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs,
                         std::uint64_t horizon);

}  // namespace cohen
