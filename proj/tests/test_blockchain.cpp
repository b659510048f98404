#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohen/blockchain.hpp"
#include "cohen/errors.hpp"

using namespace cohen;

namespace {

BitString bs(const char* text) { return BitString::parse(text); }

Label lab(std::uint64_t n) { return Label(n); }

std::vector<IndexSet> subsets_of_blocks(std::uint64_t l, const std::vector<IndexSet>& blocks) {
  // All subsets of any block, plus all singletons and the empty set.
  std::set<IndexSet> members;
  members.insert(IndexSet());
  for (std::uint64_t i = 0; i <= l; ++i) members.insert(IndexSet({lab(i)}));
  for (const auto& block : blocks) {
    const auto& labels = block.labels();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << labels.size()); ++mask) {
      std::vector<Label> subset;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if ((mask >> i) & 1) subset.push_back(labels[i]);
      }
      members.insert(IndexSet(std::move(subset)));
    }
  }
  return {members.begin(), members.end()};
}

}  // namespace

TEST_CASE("build_pair: one dense step, payload 0") {
  IndexSet pair = IndexSet::of({"c", "d"});
  std::vector<DenseStep> steps{{IndexSet::of({"c"}), min_length(IndexSet::of({"c"}), 1)}};
  auto result = build_pair(pair, steps, bs("0"));

  CHECK(result.matrix.column(Label("c")) == bs("0100"));
  CHECK(result.matrix.column(Label("d")) == bs("0100"));
  REQUIRE(result.marker_log.count(pair) == 1);
  const auto& records = result.marker_log.at(pair);
  REQUIRE(records.size() == 1);
  CHECK(records[0].marker_row == 1);
  CHECK(records[0].bit_row == 2);
  CHECK(records[0].payload_index == 0);
  CHECK(records[0].bit == 0);
}

TEST_CASE("build_pair: empty schedule gives an empty matrix") {
  IndexSet pair = IndexSet::of({"c", "d"});
  auto result = build_pair(pair, {}, BitString());
  CHECK(result.matrix.height() == 0);
  CHECK(result.marker_log.empty());
  CHECK(result.step_log.empty());
}

TEST_CASE("build_pair: payload bit one lands in both columns") {
  IndexSet pair = IndexSet::of({"c", "d"});
  std::vector<DenseStep> steps{{IndexSet::of({"c"}), min_length(IndexSet::of({"c"}), 1)}};
  auto result = build_pair(pair, steps, bs("1"));
  const auto& rec = result.marker_log.at(pair)[0];
  CHECK(result.matrix.column(Label("c")).bit(rec.bit_row) == 1);
  CHECK(result.matrix.column(Label("d")).bit(rec.bit_row) == 1);
}

TEST_CASE("build_pair: sides must alternate") {
  IndexSet pair = IndexSet::of({"c", "d"});
  std::vector<DenseStep> steps{{IndexSet::of({"d"}), min_length(IndexSet::of({"d"}), 1)}};
  CHECK_THROWS_AS((void)build_pair(pair, steps, bs("0")), DomainError);
}

TEST_CASE("build_mostowski: two columns, one dense step") {
  std::vector<IndexSet> family = {IndexSet(), IndexSet({lab(0)}), IndexSet({lab(1)})};
  std::vector<DenseStep> steps{{IndexSet({lab(0)}), min_length(IndexSet({lab(0)}), 1)}};
  auto result = build_mostowski(1, family, steps, bs("0"));

  CHECK(result.matrix.column(lab(0)) == bs("0100"));
  CHECK(result.matrix.column(lab(1)) == bs("0100"));

  // The all-one rows are exactly row 1.
  for (std::size_t r = 0; r < 4; ++r) {
    bool all_one = result.matrix.column(lab(0)).bit(r) == 1 &&
                   result.matrix.column(lab(1)).bit(r) == 1;
    CHECK(all_one == (r == 1));
  }
}

TEST_CASE("build_mostowski rejects a family without singletons") {
  std::vector<IndexSet> family = {IndexSet(), IndexSet({lab(0)})};
  CHECK_THROWS_AS((void)build_mostowski(1, family, {}, bs("")), MalformedFamily);
}

TEST_CASE("build_mostowski: the four-block pattern codes the payload") {
  // Blocks of dense activity followed by full-width coding rows; the payload
  // 0100 must be spelled by the rows after the run-start all-one rows.
  std::vector<IndexSet> blocks = {
      IndexSet({lab(2), lab(3), lab(4), lab(5)}),
      IndexSet({lab(3), lab(4), lab(5), lab(6), lab(7)}),
      IndexSet({lab(0), lab(1), lab(2), lab(3), lab(7), lab(8), lab(9)}),
      IndexSet({lab(2), lab(3), lab(4), lab(5)}),
  };
  auto family = subsets_of_blocks(9, blocks);
  std::vector<DenseStep> steps;
  for (const auto& block : blocks) {
    steps.push_back(DenseStep{block, contains_pattern(block, bs("101"), block.labels().front())});
  }
  BitString payload = bs("0100");
  auto result = build_mostowski(9, family, steps, payload);

  REQUIRE(result.matrix.is_uniform());
  std::size_t h = result.matrix.height();
  auto all_one = [&](std::size_t r) {
    for (std::uint64_t c = 0; c <= 9; ++c) {
      if (result.matrix.column(lab(c)).bit(r) != 1) return false;
    }
    return true;
  };
  std::vector<std::size_t> starts;
  for (std::size_t r = 0; r < h; ++r) {
    if (all_one(r) && (r == 0 || !all_one(r - 1))) starts.push_back(r);
  }
  std::vector<std::size_t> logged;
  for (const auto& rec : result.marker_log.at(IndexSet::range(10))) logged.push_back(rec.marker_row);
  CHECK(starts == logged);
  REQUIRE(starts.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(result.matrix.column(lab(0)).bit(starts[i] + 1) == payload.bit(i));
  }
}

TEST_CASE("build_general: dense step then obstacle step") {
  ObstacleFamily family(IndexSet::range(3), {IndexSet({lab(0), lab(1)})});
  RequirementSchedule schedule;
  schedule.steps.push_back(DenseStep{IndexSet({lab(2)}), min_length(IndexSet({lab(2)}), 2)});
  schedule.steps.push_back(ObstacleStep{IndexSet({lab(0), lab(1)})});
  auto result = build_general(family, schedule, bs("1"), {}, {});

  CHECK(result.matrix.column(lab(0)) == bs("00110"));
  CHECK(result.matrix.column(lab(1)) == bs("00110"));
  CHECK(result.matrix.column(lab(2)) == bs("00000"));
  const auto& recs = result.marker_log.at(IndexSet({lab(0), lab(1)}));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].marker_row == 2);
  CHECK(recs[0].bit_row == 3);
  CHECK(recs[0].bit == 1);

  CHECK(decode(result.matrix, IndexSet({lab(0), lab(1)}), family) == bs("1"));
  CHECK_THROWS_AS((void)decode(result.matrix, IndexSet({lab(2)}), family), NotAnObstacle);
}

TEST_CASE("build_general: dense-only schedule leaves the log empty") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet({lab(0), lab(1)})});
  RequirementSchedule schedule;
  schedule.steps.push_back(DenseStep{IndexSet({lab(0)}), min_length(IndexSet({lab(0)}), 3)});
  auto result = build_general(family, schedule, bs("1010"), {}, {});
  CHECK(result.marker_log.empty());
}

TEST_CASE("decode recovers repeated codings in order") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet({lab(0), lab(1)})});
  RequirementSchedule schedule;
  IndexSet b = IndexSet({lab(0), lab(1)});
  schedule.steps.push_back(ObstacleStep{b});
  schedule.steps.push_back(DenseStep{IndexSet({lab(0)}), min_length(IndexSet({lab(0)}), 5)});
  schedule.steps.push_back(ObstacleStep{b});
  auto result = build_general(family, schedule, bs("10"), {}, {});
  CHECK(decode(result.matrix, b, family) == bs("10"));
  CHECK(decode(result.matrix, IndexSet::range(2), family) == bs("10"));
}

TEST_CASE("decode of an all-zero matrix is empty") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet::range(2)});
  MatrixCondition zeros(IndexSet::range(2));
  zeros.set_column(lab(0), bs("0000"));
  zeros.set_column(lab(1), bs("0000"));
  CHECK(decode(zeros, IndexSet::range(2), family) == BitString());
}

TEST_CASE("decode rejects an overlong all-one run") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet::range(2)});
  MatrixCondition matrix(IndexSet::range(2));
  matrix.set_column(lab(0), bs("01110"));
  matrix.set_column(lab(1), bs("01110"));
  CHECK_THROWS_AS((void)decode(matrix, IndexSet::range(2), family), MalformedMatrix);
}

TEST_CASE("payload must cover the scheduled codings") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet::range(2)});
  RequirementSchedule schedule;
  schedule.steps.push_back(ObstacleStep{IndexSet::range(2)});
  schedule.steps.push_back(ObstacleStep{IndexSet::range(2)});
  CHECK_THROWS_AS((void)build_general(family, schedule, bs("1"), {}, {}), DomainError);
}

TEST_CASE("members cannot read a clean payload even with the obstacle's rows visible") {
  ObstacleFamily family(IndexSet::range(3), {IndexSet({lab(0), lab(1)})});
  RequirementSchedule schedule;
  IndexSet b = IndexSet({lab(0), lab(1)});
  IndexSet c = IndexSet({lab(0)});
  schedule.steps.push_back(DenseStep{c, marker_chaff(c)});
  schedule.steps.push_back(ObstacleStep{b});
  schedule.steps.push_back(ObstacleStep{b});
  BitString payload = bs("11");
  auto result = build_general(family, schedule, payload, {}, {});

  CHECK(decode(result.matrix, b, family) == payload);
  CHECK_THROWS_AS((void)decode(result.matrix, c, family), NotAnObstacle);
  // The permissive scan across the member sees the chaff marker too, so the
  // bits it reads are not the payload prefix.
  ScanResult scan = permissive_scan(result.matrix, c);
  CHECK(scan.bits != payload);
  CHECK(scan.marker_rows.size() == 3);
}

TEST_CASE("separation step separates a decidable pair") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet::range(2)});
  IndexSet a({lab(0)});
  IndexSet a2({lab(1)});
  MatrixCondition e0{a};
  e0.set_column(lab(0), bs("1"));
  MatrixCondition e1{a2};
  e1.set_column(lab(1), bs("1"));
  RequirementSchedule schedule;
  schedule.steps.push_back(
      SeparationStep{a, a2, FiniteName(a, {{e0, 0}}), FiniteName(a2, {{e1, 0}})});
  auto result = build_general(family, schedule, bs("0"), {}, {});
  REQUIRE(result.separation_log.size() == 1);
  CHECK(result.separation_log[0].separated);
  CHECK(result.separation_log[0].test_value == 0);
}

TEST_CASE("separation step flips the first side when the second is stuck") {
  ObstacleFamily family(IndexSet::range(2), {IndexSet::range(2)});
  IndexSet a({lab(0)});
  IndexSet a2({lab(1)});
  MatrixCondition e0{a};
  e0.set_column(lab(0), bs("1"));
  // tau holds everywhere: its only entry is the empty condition.
  FiniteName tau(a2, {{MatrixCondition{a2}, 0}});
  RequirementSchedule schedule;
  schedule.steps.push_back(SeparationStep{a, a2, FiniteName(a, {{e0, 0}}), tau});
  auto result = build_general(family, schedule, bs("0"), {}, {});
  REQUIRE(result.separation_log.size() == 1);
  CHECK(result.separation_log[0].separated);
  // sigma must have been decided out, since tau is stuck in.
  CHECK(result.separation_log[0].outcome.find("sigma ForcedOut") != std::string::npos);
}

TEST_CASE("verify_generic passes builder output and catches tampering") {
  Session session = random_session(7);
  auto result = build_general(session.family, session.schedule, session.payload, {}, {});
  Report ok = verify_generic(result, session.family, session.schedule, session.payload);
  INFO(ok.summary());
  CHECK(ok.pass());

  // Flip one coded bit.
  auto tampered = result;
  bool flipped = false;
  for (const auto& [coded_set, records] : tampered.marker_log) {
    for (const auto& rec : records) {
      const Label& l = coded_set.labels().front();
      BitString col = tampered.matrix.column(l);
      col.set(rec.bit_row, 1 - col.bit(rec.bit_row));
      tampered.matrix.set_column(l, col);
      flipped = true;
      break;
    }
    if (flipped) break;
  }
  if (flipped) {
    Report bad = verify_generic(tampered, session.family, session.schedule, session.payload);
    CHECK_FALSE(bad.pass());
  }

  // Truncate one column: uniformity breaks.
  auto truncated = result;
  const Label first = truncated.matrix.index_set().labels().front();
  BitString col = truncated.matrix.column(first);
  if (col.size() > 0) {
    truncated.matrix.set_column(first, col.prefix(col.size() - 1));
    Report bad = verify_generic(truncated, session.family, session.schedule, session.payload);
    CHECK_FALSE(bad.pass());
  }
}

TEST_CASE("seeded sessions build and verify across seeds") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    Session session = random_session(seed);
    auto result = build_general(session.family, session.schedule, session.payload, {}, {});
    Report report = verify_generic(result, session.family, session.schedule, session.payload);
    INFO("seed ", seed, ": ", report.summary());
    CHECK(report.pass());
  }
}

TEST_CASE("identical seeds give identical sessions and builds") {
  Session s1 = random_session(42);
  Session s2 = random_session(42);
  CHECK(s1.payload == s2.payload);
  CHECK(s1.family == s2.family);
  REQUIRE(s1.schedule.steps.size() == s2.schedule.steps.size());
  auto r1 = build_general(s1.family, s1.schedule, s1.payload, {}, {});
  auto r2 = build_general(s2.family, s2.schedule, s2.payload, {}, {});
  CHECK(r1.matrix == r2.matrix);
}
