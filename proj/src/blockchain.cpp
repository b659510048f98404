#include "cohen/blockchain.hpp"

#include <algorithm>

#include "cohen/errors.hpp"

namespace cohen {

namespace {

struct Builder {
  explicit Builder(IndexSet ground) : cur(std::move(ground)) {}

  MatrixCondition cur;
  BlockchainResult result;
  std::map<IndexSet, std::size_t> obstacle_counts;

  std::size_t height() const { return cur.height(); }

  void pad_all() { cur = pad_to_height(cur, cur.height()); }

  void record(std::size_t index, std::string kind, std::string detail, std::size_t row_begin,
              IndexSet active) {
    result.step_log.push_back(
        StepRecord{index, std::move(kind), std::move(detail), row_begin, height(), std::move(active)});
  }

  // Extend the columns in A into D, properly, then pad everything square.
  void dense_step(std::size_t index, const IndexSet& a, const DenseRequirement& d) {
    std::size_t row_begin = height();
    MatrixCondition sub = restrict(cur, a);
    MatrixCondition ext = meet_checked(d, sub);
    if (ext == sub) {
      // Already a member: still extend properly, staying inside by openness.
      for (const Label& l : a) ext.append_bit(l, 0);
    }
    for (const Label& l : a) cur.set_column(l, ext.column(l));
    pad_all();
    record(index, "dense", d.description, row_begin, a);
  }

  // Marker row, payload bit, separator across the columns of B; the rest is
  // padded. The payload index counts earlier codings of the same B.
  void coding_step(std::size_t index, const IndexSet& b, const BitString& payload) {
    std::size_t n = obstacle_counts[b]++;
    if (n >= payload.size()) {
      throw DomainError("payload exhausted: coding bit " + std::to_string(n) + " for " + b.str() +
                        " but payload has " + std::to_string(payload.size()) + " bits");
    }
    int bit = payload.bit(n);
    std::size_t row_begin = height();
    for (const Label& l : b) {
      cur.append_bit(l, 1);
      cur.append_bit(l, bit);
    }
    pad_all();
    for (const Label& l : cur.index_set()) cur.append_bit(l, 0);
    result.marker_log[b].push_back(MarkerRecord{row_begin, row_begin + 1, n, bit});
    record(index, "obstacle", b.str(), row_begin, b);
  }

  // The two-case separation analysis, bounded. Padding between the A-side and
  // A'-side extensions keeps every obstacle interrupted by a zero inside this
  // block (an obstacle fits in neither A nor A' alone).
  void separation_step(std::size_t index, const SeparationStep& step,
                       const std::vector<SeparationCandidate>& pool, const BuildOptions& options) {
    std::size_t row_begin = height();
    SeparationRecord rec;
    rec.step_index = index;

    const IndexSet& a = step.a;
    const IndexSet& a2 = step.a_prime;
    const MatrixCondition before = cur;
    MatrixCondition pa = restrict(cur, a);

    bool sigma_determined = true;
    for (std::uint64_t k = 0; k < options.separation_horizon && sigma_determined; ++k) {
      sigma_determined = forces_in(pa, k, step.sigma) != Decision::Undecided;
    }
    if (sigma_determined) {
      rec.outcome = "sigma already decided below the current condition; nothing to do";
      result.separation_log.push_back(rec);
      record(index, "separation", "no-op", row_begin, IndexSet());
      return;
    }

    IndexSet x = a.intersect(a2);
    std::vector<std::uint64_t> values;
    for (const auto& [cond, value] : step.sigma.entries) {
      if (std::find(values.begin(), values.end(), value) == values.end()) values.push_back(value);
    }
    std::vector<SeparationCandidate> step_pool;
    for (const auto& c : pool) {
      if (c.name.coordinates == x) step_pool.push_back(c);
    }
    auto canonical = canonical_name_pool(x, options.pool_max_len, values);
    step_pool.insert(step_pool.end(), canonical.begin(), canonical.end());

    auto finding = search_separating_name(pa, step.sigma, x, step_pool, options.separation_depth);
    if (!finding) {
      rec.outcome = "bounded separation search failed at depth " +
                    std::to_string(options.separation_depth) + "; step skipped";
      result.separation_log.push_back(rec);
      record(index, "separation", "search-failed", row_begin, IndexSet());
      return;
    }
    std::uint64_t k = finding->test_value;
    rec.test_value = k;

    // A-side: decide k in sigma, commit, pad square.
    auto ext_a = find_deciding_extension(pa, k, step.sigma, Decision::ForcedIn);
    if (!ext_a) ext_a = find_deciding_extension(pa, k, step.sigma, Decision::ForcedOut);
    if (!ext_a) {
      rec.outcome = "no deciding extension on the A side; step skipped";
      result.separation_log.push_back(rec);
      record(index, "separation", "search-failed", row_begin, IndexSet());
      return;
    }
    for (const Label& l : a) cur.set_column(l, ext_a->column(l));
    pad_all();
    Decision dec_sigma = forces_in(restrict(cur, a), k, step.sigma);
    Decision want = dec_sigma == Decision::ForcedIn ? Decision::ForcedOut : Decision::ForcedIn;

    MatrixCondition pa2 = restrict(cur, a2);
    Decision dec_tau = forces_in(pa2, k, step.tau);

    if (dec_tau == want) {
      rec.separated = true;
    } else if (dec_tau == Decision::Undecided) {
      auto ext_a2 = find_deciding_extension(pa2, k, step.tau, want);
      if (ext_a2) {
        for (const Label& l : a2) cur.set_column(l, ext_a2->column(l));
        rec.separated = true;
      }
    } else {
      // tau already went sigma's way. Keep only the A'-part of what was
      // built in this step (tau's decision survives extension) and look for
      // an A-extension over it deciding sigma the other way.
      MatrixCondition base = before;
      for (const Label& l : a2) base.set_column(l, cur.column(l));
      Decision flipped = dec_tau == Decision::ForcedIn ? Decision::ForcedOut : Decision::ForcedIn;
      auto ext_flip = find_deciding_extension(restrict(base, a), k, step.sigma, flipped);
      if (ext_flip) {
        cur = base;
        for (const Label& l : a) cur.set_column(l, ext_flip->column(l));
        dec_sigma = flipped;
        rec.separated = true;
      } else {
        cur = before;  // nothing committed
        rec.outcome = "could not decide the names oppositely within bounds; step skipped";
      }
    }

    pad_all();
    if (rec.separated) {
      Decision final_tau = forces_in(restrict(cur, a2), k, step.tau);
      rec.outcome = "k=" + std::to_string(k) + ": sigma " + to_string(dec_sigma) + " on " +
                    a.str() + ", tau " + to_string(final_tau) + " on " + a2.str();
    }
    result.separation_log.push_back(rec);
    record(index, "separation", rec.separated ? "separated" : "skipped", row_begin,
           rec.separated ? a.unioned(a2) : IndexSet());
  }

  BlockchainResult finish() {
    result.matrix = cur;
    return std::move(result);
  }
};

}  // namespace

BlockchainResult build_pair(const IndexSet& pair_indices, const std::vector<DenseStep>& steps,
                            const BitString& payload) {
  if (pair_indices.size() != 2) {
    throw DomainError("build_pair: index set must have exactly two columns, got " +
                      pair_indices.str());
  }
  if (steps.size() > payload.size()) {
    throw DomainError("build_pair: " + std::to_string(steps.size()) + " coding steps but only " +
                      std::to_string(payload.size()) + " payload bits");
  }
  Builder builder(pair_indices);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    IndexSet active_side({pair_indices.labels()[i % 2]});
    if (steps[i].coords != active_side || steps[i].requirement.coordinates != active_side) {
      throw DomainError("build_pair: step " + std::to_string(i) + " must extend column " +
                        active_side.str() + " (sides alternate)");
    }
    builder.dense_step(i, steps[i].coords, steps[i].requirement);
    builder.coding_step(i, pair_indices, payload);
  }
  return builder.finish();
}

BlockchainResult build_mostowski(std::uint64_t l, const std::vector<IndexSet>& members,
                                 const std::vector<DenseStep>& steps, const BitString& payload) {
  IndexSet ground = IndexSet::range(l + 1);
  ObstacleFamily family = family_from_members(ground, members);  // validates closure + singletons
  if (steps.size() > payload.size()) {
    throw DomainError("build_mostowski: more coding steps than payload bits");
  }
  Builder builder(ground);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!family.is_member(steps[i].coords)) {
      throw DomainError("build_mostowski: step " + std::to_string(i) + " set " +
                        steps[i].coords.str() + " is not in the family");
    }
    if (steps[i].coords != steps[i].requirement.coordinates) {
      throw DomainError("build_mostowski: step coordinates differ from requirement coordinates");
    }
    builder.dense_step(i, steps[i].coords, steps[i].requirement);
    builder.coding_step(i, ground, payload);
  }
  return builder.finish();
}

BlockchainResult build_general(const ObstacleFamily& family, const RequirementSchedule& schedule,
                               const BitString& payload,
                               const std::vector<SeparationCandidate>& pool,
                               const BuildOptions& options) {
  schedule.validate(family);
  for (const IndexSet& b : family.obstacles()) {
    std::size_t reps = schedule.obstacle_step_count(b);
    if (reps > payload.size()) {
      throw DomainError("build_general: obstacle " + b.str() + " scheduled " +
                        std::to_string(reps) + " times but payload has " +
                        std::to_string(payload.size()) + " bits");
    }
  }
  Builder builder(family.ground());
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    const auto& step = schedule.steps[i];
    if (const auto* dense = std::get_if<DenseStep>(&step)) {
      builder.dense_step(i, dense->coords, dense->requirement);
    } else if (const auto* obstacle = std::get_if<ObstacleStep>(&step)) {
      builder.coding_step(i, obstacle->obstacle, payload);
    } else {
      builder.separation_step(i, std::get<SeparationStep>(step), pool, options);
    }
  }
  return builder.finish();
}

ScanResult permissive_scan(const MatrixCondition& matrix, const IndexSet& columns) {
  if (columns.empty()) throw DomainError("permissive_scan: empty column set");
  if (!columns.subset_of(matrix.index_set())) {
    throw DomainError("permissive_scan: " + columns.str() + " outside " +
                      matrix.index_set().str());
  }
  std::size_t h = SIZE_MAX;
  for (const Label& l : columns) h = std::min(h, matrix.column(l).size());
  if (h == SIZE_MAX) h = 0;

  std::vector<bool> all_one(h, false);
  for (std::size_t r = 0; r < h; ++r) {
    bool row_ones = true;
    for (const Label& l : columns) {
      if (matrix.column(l).bit(r) != 1) {
        row_ones = false;
        break;
      }
    }
    all_one[r] = row_ones;
  }

  ScanResult out;
  std::size_t r = 0;
  while (r < h) {
    if (!all_one[r]) {
      ++r;
      continue;
    }
    std::size_t end = r;
    while (end + 1 < h && all_one[end + 1]) ++end;
    if (end - r + 1 > 2) {
      out.overlong_run = true;
      return out;
    }
    out.marker_rows.push_back(r);
    std::size_t bit_row = r + 1;
    if (bit_row >= h) {
      out.truncated_run = true;
      return out;
    }
    // Coding writes the same bit into every column of the set.
    int bit = matrix.column(*columns.begin()).bit(bit_row);
    for (const Label& l : columns) {
      if (matrix.column(l).bit(bit_row) != bit) {
        out.truncated_run = true;
        return out;
      }
    }
    out.bits.push_back(bit);
    r = end + 2;
  }
  return out;
}

BitString decode(const MatrixCondition& matrix, const IndexSet& b, const ObstacleFamily& family) {
  if (!b.subset_of(matrix.index_set())) {
    throw DomainError("decode: columns " + b.str() + " outside " + matrix.index_set().str());
  }
  const IndexSet* obstacle = family.contained_obstacle(b);
  if (!obstacle) {
    throw NotAnObstacle("decode: " + b.str() + " contains no obstacle of the family");
  }
  ScanResult scan = permissive_scan(matrix, *obstacle);
  if (scan.overlong_run) {
    throw MalformedMatrix("decode: all-one run longer than two rows across " + obstacle->str());
  }
  if (scan.truncated_run) {
    throw MalformedMatrix("decode: marker without a readable payload row across " +
                          obstacle->str());
  }
  return scan.bits;
}

Report verify_generic(const BlockchainResult& result, const ObstacleFamily& family,
                      const RequirementSchedule& schedule, const BitString& payload) {
  Report report;
  const MatrixCondition& matrix = result.matrix;

  if (!matrix.is_uniform()) report.fail("matrix is not uniform");

  // Step ranges partition the rows in order.
  std::size_t expected_row = 0;
  for (const auto& step : result.step_log) {
    if (step.row_begin != expected_row) {
      report.fail("step " + std::to_string(step.step_index) + " starts at row " +
                  std::to_string(step.row_begin) + ", expected " + std::to_string(expected_row));
    }
    expected_row = step.row_end;
  }
  if (expected_row != matrix.height()) {
    report.fail("step ranges cover " + std::to_string(expected_row) + " rows, matrix has " +
                std::to_string(matrix.height()));
  }

  // Every scheduled requirement is met by the restriction to its set.
  for (const auto& step : schedule.steps) {
    if (const auto* dense = std::get_if<DenseStep>(&step)) {
      if (!meets(restrict(matrix, dense->coords), dense->requirement)) {
        report.fail("scheduled requirement not met: " + dense->requirement.description + " on " +
                    dense->coords.str());
      }
    }
  }

  // Logged coding points must match the payload, with consecutive indices.
  for (const auto& [coded_set, records] : result.marker_log) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rec = records[i];
      if (rec.payload_index != i) {
        report.fail("coding points for " + coded_set.str() + " have non-consecutive indices");
      }
      if (rec.bit_row != rec.marker_row + 1) {
        report.fail("coding point at row " + std::to_string(rec.marker_row) +
                    " has a detached bit row");
      }
      if (rec.payload_index >= payload.size() || payload.bit(rec.payload_index) != rec.bit) {
        report.fail("coding point at row " + std::to_string(rec.marker_row) +
                    " does not match the payload");
      }
    }
  }

  // Payload recovery across every obstacle: the decoder must see exactly the
  // logged coding points of the sets covering that obstacle.
  for (const IndexSet& b : family.obstacles()) {
    std::vector<std::pair<std::size_t, int>> expected;  // (marker row, bit)
    for (const auto& [coded_set, records] : result.marker_log) {
      if (!b.subset_of(coded_set)) continue;
      for (const auto& rec : records) expected.emplace_back(rec.marker_row, rec.bit);
    }
    std::sort(expected.begin(), expected.end());
    BitString expected_bits;
    for (const auto& [row, bit] : expected) expected_bits.push_back(bit);

    try {
      BitString got = decode(matrix, b, family);
      if (got != expected_bits) {
        report.fail("decode across " + b.str() + " got \"" + got.str() + "\", expected \"" +
                    expected_bits.str() + "\"");
      }
    } catch (const Error& e) {
      report.fail(std::string("decode across ") + b.str() + " failed: " + e.what());
    }
    ScanResult scan = permissive_scan(matrix, b);
    std::vector<std::size_t> expected_rows;
    for (const auto& [row, bit] : expected) expected_rows.push_back(row);
    if (scan.marker_rows != expected_rows) {
      report.fail("marker rows across " + b.str() + " differ from the coding log");
    }
  }

  // Members must reject decoding, and marker-shaped rows across a member must
  // be confined to steps that legitimately wrote them.
  std::vector<IndexSet> members;
  bool members_enumerated = true;
  try {
    members = family_members(family);
  } catch (const ResourceError&) {
    members_enumerated = false;
    report.note("ground set too large to enumerate members; member checks skipped");
  }
  if (members_enumerated) {
    for (const IndexSet& c : members) {
      if (c.empty()) continue;
      bool rejected = false;
      try {
        decode(matrix, c, family);
      } catch (const NotAnObstacle&) {
        rejected = true;
      }
      if (!rejected) {
        report.fail("decode across member " + c.str() + " did not raise NotAnObstacle");
      }
      ScanResult scan = permissive_scan(matrix, c);
      for (std::size_t row : scan.marker_rows) {
        bool accounted = false;
        for (const auto& step : result.step_log) {
          if (row >= step.row_begin && row < step.row_end && c.subset_of(step.active)) {
            accounted = true;
            break;
          }
        }
        if (!accounted) {
          report.fail("unexplained marker pattern across member " + c.str() + " at row " +
                      std::to_string(row));
        }
      }
    }
  }

  report.note("checks are relative to the scheduled family (" +
              std::to_string(schedule.steps.size()) + " steps, " +
              std::to_string(family.obstacles().size()) + " obstacles)");
  return report;
}

}  // namespace cohen
