// Acceptance suite: one line per criterion, timed, exit 1 on any failure.
// Criterion 10 drives the command-line binary, whose path is argv[1].

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cohen/blockchain.hpp"
#include "cohen/exact_pair.hpp"
#include "cohen/json_io.hpp"
#include "cohen/poset.hpp"
#include "cohen/render.hpp"
#include "cohen/sentence.hpp"
#include "cohen/surgery.hpp"

using namespace cohen;

namespace {

struct Criterion {
  int number;
  std::string label;
  double limit_seconds;
  bool (*run)(std::string& detail);
};

BitString bs(const std::string& text) { return BitString::parse(text); }

Label lab(std::uint64_t n) { return Label(n); }

// ---------------------------------------------------------------- criterion 1

bool blockchain_soundness(std::string& detail) {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    Session session = random_session(seed);
    BlockchainResult result = build_general(session.family, session.schedule, session.payload, {}, {});

    for (const auto& step : session.schedule.steps) {
      if (const auto* dense = std::get_if<DenseStep>(&step)) {
        if (!meets(restrict(result.matrix, dense->coords), dense->requirement)) {
          detail = "seed " + std::to_string(seed) + ": requirement not met: " +
                   dense->requirement.description;
          return false;
        }
      }
    }
    for (const IndexSet& b : session.family.obstacles()) {
      BitString expected = session.payload.prefix(session.schedule.obstacle_step_count(b));
      BitString got = decode(result.matrix, b, session.family);
      if (got != expected) {
        detail = "seed " + std::to_string(seed) + ": decode across " + b.str() + " got " +
                 got.str() + ", expected " + expected.str();
        return false;
      }
    }
    for (const IndexSet& c : family_members(session.family)) {
      if (c.empty()) continue;
      bool rejected = false;
      try {
        (void)decode(result.matrix, c, session.family);
      } catch (const NotAnObstacle&) {
        rejected = true;
      }
      if (!rejected) {
        detail = "seed " + std::to_string(seed) + ": member " + c.str() + " decoded";
        return false;
      }
    }
    Report report = verify_generic(result, session.family, session.schedule, session.payload);
    if (!report.pass()) {
      detail = "seed " + std::to_string(seed) + ": " + report.failures.front();
      return false;
    }
  }
  detail = "500 seeded sessions";
  return true;
}

// ---------------------------------------------------------------- criterion 2

// All subset-closed families containing the singletons on {0..l}, presented
// as antichains of obstacles of size >= 2.
void enumerate_obstacle_antichains(const std::vector<IndexSet>& candidates, std::size_t from,
                                   std::vector<IndexSet>& current,
                                   std::vector<std::vector<IndexSet>>& out) {
  out.push_back(current);
  for (std::size_t i = from; i < candidates.size(); ++i) {
    bool comparable = false;
    for (const auto& chosen : current) {
      if (chosen.subset_of(candidates[i]) || candidates[i].subset_of(chosen)) {
        comparable = true;
        break;
      }
    }
    if (comparable) continue;
    current.push_back(candidates[i]);
    enumerate_obstacle_antichains(candidates, i + 1, current, out);
    current.pop_back();
  }
}

bool mostowski_pattern(std::string& detail) {
  std::size_t families_checked = 0;
  for (std::uint64_t l = 0; l <= 4; ++l) {
    IndexSet ground = IndexSet::range(l + 1);
    std::vector<IndexSet> candidates;
    const std::uint64_t total = std::uint64_t{1} << (l + 1);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Label> ls;
      for (std::uint64_t i = 0; i <= l; ++i) {
        if ((mask >> i) & 1) ls.push_back(lab(i));
      }
      if (ls.size() >= 2) candidates.emplace_back(std::move(ls));
    }
    std::vector<std::vector<IndexSet>> antichains;
    std::vector<IndexSet> current;
    enumerate_obstacle_antichains(candidates, 0, current, antichains);

    for (const auto& obstacles : antichains) {
      ObstacleFamily family(ground, obstacles);
      auto members = family_members(family);

      // A representative schedule: one step per member, largest members
      // first, writing a single-column pattern (zero padding elsewhere).
      std::vector<DenseStep> steps;
      for (auto it = members.rbegin(); it != members.rend() && steps.size() < 6; ++it) {
        if (it->empty()) continue;
        if (l == 0) {
          steps.push_back(DenseStep{*it, min_length(*it, steps.size() + 2)});
        } else {
          steps.push_back(
              DenseStep{*it, contains_pattern(*it, bs("101"), it->labels().front())});
        }
      }
      BitString payload;
      for (std::size_t i = 0; i < steps.size(); ++i) payload.push_back((i % 3 == 1) ? 1 : 0);

      std::vector<IndexSet> member_list(members.begin(), members.end());
      BlockchainResult result = build_mostowski(l, member_list, steps, payload);
      ++families_checked;

      auto all_one = [&](std::size_t r) {
        for (std::uint64_t c = 0; c <= l; ++c) {
          if (result.matrix.column(lab(c)).bit(r) != 1) return false;
        }
        return true;
      };
      std::vector<std::size_t> starts;
      for (std::size_t r = 0; r < result.matrix.height(); ++r) {
        if (all_one(r) && (r == 0 || !all_one(r - 1))) starts.push_back(r);
      }
      std::vector<std::size_t> logged;
      if (result.marker_log.count(ground)) {
        for (const auto& rec : result.marker_log.at(ground)) logged.push_back(rec.marker_row);
      }
      if (starts != logged) {
        detail = "l=" + std::to_string(l) + ": run-start all-one rows are not the markers";
        return false;
      }
      for (std::size_t i = 0; i < logged.size(); ++i) {
        for (std::uint64_t c = 0; c <= l; ++c) {
          if (result.matrix.column(lab(c)).bit(logged[i] + 1) != payload.bit(i)) {
            detail = "l=" + std::to_string(l) + ": coded rows do not spell the payload";
            return false;
          }
        }
      }
    }
  }
  detail = std::to_string(families_checked) + " families, exhaustive for l <= 4";
  return true;
}

// ---------------------------------------------------------------- criterion 3

std::vector<DenseRequirement> immunization_library() {
  IndexSet a = IndexSet::of({"a"});
  MatrixCondition e1{a};
  e1.set_column(Label("a"), bs("1"));
  MatrixCondition e2{a};
  e2.set_column(Label("a"), bs("010"));
  return {
      min_length(a, 1),
      min_length(a, 2),
      min_length(a, 3),
      contains_pattern(a, bs("1"), Label("a")),
      contains_pattern(a, bs("11"), Label("a")),
      contains_pattern(a, bs("010"), Label("a")),
      contains_pattern(a, bs("0110"), Label("a")),
      decides_name(FiniteName(a, {{e1, 0}}), 0),
      decides_name(FiniteName(a, {{e2, 1}, {e1, 0}}), 1),
      marker_chaff(a),
  };
}

bool immunization(std::string& detail) {
  auto library = immunization_library();
  std::size_t checked = 0;
  for (std::size_t len = 0; len <= 5; ++len) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      BitString p;
      for (std::size_t i = 0; i < len; ++i) p.push_back(static_cast<int>((mask >> i) & 1));
      for (const auto& d : library) {
        BitString immune = immunize(p, d);
        if (!extends(immune, p) || !is_immune(immune, p.size(), d)) {
          detail = d.description + " on " + p.str();
          return false;
        }
        ++checked;
      }
      if (len == 0) break;
    }
  }
  detail = std::to_string(checked) + " (condition, requirement) pairs, exhaustive rewrites";
  return true;
}

// ---------------------------------------------------------------- criterion 4

std::vector<DenseRequirement> covert_family() {
  IndexSet a = IndexSet::of({"a"});
  std::vector<DenseRequirement> family;
  for (std::size_t n = 1; n <= 6; ++n) family.push_back(min_length(a, n));
  for (const char* w : {"1", "11", "010", "0110", "111", "1001", "00", "0101"}) {
    family.push_back(contains_pattern(a, bs(w), Label("a")));
  }
  for (const char* e : {"1", "01", "110"}) {
    MatrixCondition cond{a};
    cond.set_column(Label("a"), bs(e));
    family.push_back(decides_name(FiniteName(a, {{cond, 0}}), 0));
  }
  family.push_back(marker_chaff(a));
  MatrixCondition c1{a};
  c1.set_column(Label("a"), bs("0"));
  family.push_back(decides_name(FiniteName(a, {{c1, 2}}), 2));
  family.push_back(min_length(a, 7));
  return family;
}

bool covert_graft(std::string& detail) {
  auto family = covert_family();
  if (family.size() != 20) {
    detail = "family has " + std::to_string(family.size()) + " requirements, wanted 20";
    return false;
  }
  std::mt19937_64 rng(424242);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    CovertPair pair = build_covert_pair(family, seed);
    auto positions = ones(pair.d);
    std::vector<BitString> probes;
    probes.push_back(BitString::zeros(positions.size()));
    BitString all1;
    for (std::size_t i = 0; i < positions.size(); ++i) all1.push_back(1);
    probes.push_back(all1);
    BitString alt;
    for (std::size_t i = 0; i < positions.size(); ++i) alt.push_back(static_cast<int>(i % 2));
    probes.push_back(alt);
    BitString rand;
    for (std::size_t i = 0; i < positions.size(); ++i) rand.push_back(static_cast<int>(rng() % 2));
    probes.push_back(rand);

    for (const auto& g : probes) {
      BitString grafted = graft(pair.c, g, positions);
      MatrixCondition cond{IndexSet::of({"a"})};
      cond.set_column(Label("a"), grafted);
      for (const auto& d : family) {
        if (!meets(cond, d)) {
          detail = "seed " + std::to_string(seed) + ": graft misses " + d.description;
          return false;
        }
      }
    }
  }
  detail = "200 pairs x 20 requirements x 4 grafts";
  return true;
}

// ---------------------------------------------------------------- criterion 5

bool mutable_blockchain(std::string& detail) {
  std::size_t pipelines = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    // Primed families alone never show two consecutive all-one rows.
    {
      std::mt19937_64 rng(n);
      for (int trial = 0; trial < 20; ++trial) {
        std::size_t len = 12;
        BitString y;
        std::vector<BitString> xs(n);
        for (std::size_t i = 0; i < len; ++i) {
          y.push_back(static_cast<int>(rng() % 2));
          for (auto& x : xs) x.push_back(static_cast<int>(rng() % 2));
        }
        auto fam = prime(xs, y);
        for (std::size_t r = 0; r + 1 < len; ++r) {
          bool both = true;
          for (std::size_t k = 0; k < n && both; ++k) {
            both = fam.primed[k].bit(r) == 1 && fam.primed[k].bit(r + 1) == 1;
          }
          if (both) {
            detail = "primed family has two consecutive all-one rows";
            return false;
          }
        }
      }
    }
    if (n < 2) continue;

    // Every subset-closed family on n columns, as obstacle antichains.
    std::vector<IndexSet> candidates;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Label> ls;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) ls.push_back(lab(i));
      }
      if (ls.size() >= 2) candidates.emplace_back(std::move(ls));
    }
    std::vector<std::vector<IndexSet>> antichains;
    std::vector<IndexSet> current;
    enumerate_obstacle_antichains(candidates, 0, current, antichains);

    auto rows = generate_mutable_rows(n, 8, 7000 + n);
    const std::size_t rows_n = rows.size();

    for (const auto& obstacles : antichains) {
      ObstacleFamily family(IndexSet::range(n), obstacles);
      std::vector<IndexSet> members = family_members(family);

      for (std::size_t len = 1; len <= 8; ++len) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
          BitString payload;
          for (std::size_t i = 0; i < len; ++i) payload.push_back(static_cast<int>((mask >> i) & 1));
          auto built = build_mutable_blockchain(n, rows, members, payload);
          ++pipelines;

          std::vector<BitString> w;
          for (const auto& c : built.joined_columns) {
            w.push_back(graft(c, built.joined_payload, ones(built.joined_reference)));
          }
          for (std::size_t r = 0; r < built.row_subsets.size(); ++r) {
            const IndexSet& a = built.row_subsets[r];
            std::vector<std::size_t> cols;
            for (const Label& l : a) cols.push_back(*l.numeric());
            std::vector<BitString> stride(n);
            for (std::size_t k = 0; k < n; ++k) stride[k] = stride_extract(w[k], rows_n, r);
            if (family.is_member(a)) {
              for (std::size_t c : cols) {
                if (stride[c] != built.row_columns[r][c]) {
                  detail = "identity substitution failed on member " + a.str();
                  return false;
                }
              }
            } else {
              std::vector<BitString> selected;
              for (std::size_t c : cols) selected.push_back(stride[c]);
              std::vector<std::size_t> idx(selected.size());
              for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
              auto decoded = decode_surgery(selected, idx);
              if (decoded.bits.prefix(payload.size()) != payload) {
                detail = "payload not recovered on " + a.str() + ": got " + decoded.bits.str();
                return false;
              }
            }
          }
        }
      }
    }
  }
  detail = std::to_string(pipelines) + " pipelines, exhaustive families and payloads <= 8 bits";
  return true;
}

// ---------------------------------------------------------------- criterion 6

bool forcing_oracle(std::string& detail) {
  IndexSet a = IndexSet::of({"a"});
  std::vector<BitString> conds;
  conds.emplace_back();
  for (std::size_t len = 1; len <= 3; ++len) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << len); ++m) {
      BitString s;
      for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<int>((m >> i) & 1));
      conds.push_back(std::move(s));
    }
  }
  auto cond_of = [&](const BitString& bits) {
    MatrixCondition out{a};
    out.set_column(Label("a"), bits);
    return out;
  };

  // Atoms: (condition, value) with value < 2; names: up to 3 distinct atoms.
  struct Atom {
    std::size_t cond;
    std::uint64_t value;
  };
  std::vector<Atom> atoms;
  for (std::size_t c = 0; c < conds.size(); ++c) {
    for (std::uint64_t v = 0; v < 2; ++v) atoms.push_back({c, v});
  }

  std::vector<BitString> totals;
  for (std::uint64_t m = 0; m < 16; ++m) {
    BitString t;
    for (std::size_t i = 0; i < 4; ++i) t.push_back(static_cast<int>((m >> i) & 1));
    totals.push_back(std::move(t));
  }

  std::size_t names_checked = 0;
  std::vector<std::size_t> picks;
  auto check_name = [&](const std::vector<std::size_t>& chosen) -> bool {
    FiniteName name;
    name.coordinates = a;
    for (std::size_t at : chosen) {
      name.entries.emplace_back(cond_of(conds[atoms[at].cond]), atoms[at].value);
    }
    ++names_checked;
    // Oracle agreement on total strings.
    for (const auto& t : totals) {
      Evaluation e = evaluate(cond_of(t), name, 3);
      if (!e.undecided.empty()) return false;
      std::set<std::uint64_t> expect;
      for (const auto& [cond, value] : name.entries) {
        if (extends(t, cond.column(Label("a")))) expect.insert(value);
      }
      if (e.members != expect) return false;
    }
    // Monotonicity across all conditions of length <= 3.
    for (const auto& p : conds) {
      for (std::uint64_t k = 0; k < 3; ++k) {
        Decision dp = forces_in(cond_of(p), k, name);
        if (dp == Decision::Undecided) continue;
        for (const auto& q : conds) {
          if (!extends(q, p)) continue;
          if (forces_in(cond_of(q), k, name) != dp) return false;
        }
      }
    }
    return true;
  };

  // All names with at most three atoms (the empty name included).
  if (!check_name({})) {
    detail = "empty name disagrees";
    return false;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!check_name({i})) {
      detail = "1-entry name disagrees";
      return false;
    }
    for (std::size_t j = i; j < atoms.size(); ++j) {
      if (!check_name({i, j})) {
        detail = "2-entry name disagrees";
        return false;
      }
      for (std::size_t k = j; k < atoms.size(); ++k) {
        if (!check_name({i, j, k})) {
          detail = "3-entry name disagrees";
          return false;
        }
      }
    }
  }
  detail = std::to_string(names_checked) + " names, filter oracle + monotonicity";
  return true;
}

// ---------------------------------------------------------------- criterion 7

bool exact_pair(std::string& detail) {
  for (std::size_t m = 1; m <= 4; ++m) {
    std::vector<DenseRequirement> family;
    std::size_t di = 0;
    while (family.size() < 20) {
      std::uint64_t c = di % m;
      IndexSet coords({lab(c)});
      switch ((di / m) % 3) {
        case 0: family.push_back(min_length(coords, 2 + di % 4)); break;
        case 1: family.push_back(contains_pattern(coords, bs("01"), lab(c))); break;
        default: family.push_back(contains_pattern(coords, bs("110"), lab(c))); break;
      }
      ++di;
    }
    Tower tower = make_tower(m, 16, 1000 + m, family);

    std::vector<std::pair<FiniteName, FiniteName>> pairs;
    std::mt19937_64 rng(m);
    IndexSet coords = IndexSet::range(m);
    auto small_name = [&](std::uint64_t value) {
      FiniteName name;
      name.coordinates = coords;
      std::size_t entries = rng() % 3;
      for (std::size_t e = 0; e < entries; ++e) {
        MatrixCondition cond{coords};
        std::uint64_t col = rng() % m;
        BitString bits2;
        std::size_t len = 1 + rng() % 2;
        for (std::size_t i = 0; i < len; ++i) bits2.push_back(static_cast<int>(rng() % 2));
        cond.set_column(lab(col), bits2);
        name.entries.emplace_back(std::move(cond), value);
      }
      return name;
    };
    for (std::size_t i = 0; i < 10; ++i) {
      if (i % 3 == 2) {
        FiniteName shared = small_name(i % 8);
        pairs.emplace_back(shared, shared);
      } else {
        pairs.emplace_back(small_name(i % 8), small_name((i + 1) % 8));
      }
    }

    ExactPairResult result = build_exact_pair(tower, family, pairs, 8);
    Report report = verify_exact_pair(result, tower, family, pairs, 8);
    if (!report.pass()) {
      detail = "m=" + std::to_string(m) + ": " + report.failures.front();
      return false;
    }
    // The log itself: diagonalized entries differ at k, skipped entries carry
    // their column count.
    for (const auto& outcome : result.diag_log) {
      const auto& [sigma, tau] = pairs[outcome.pair_index];
      Evaluation e0 = evaluate(result.d0, sigma, 8);
      Evaluation e1 = evaluate(result.d1, tau, 8);
      if (outcome.diagonalized) {
        if (e0.members.count(outcome.k) == e1.members.count(outcome.k)) {
          detail = "m=" + std::to_string(m) + ": logged k does not separate";
          return false;
        }
      } else if (outcome.filled_columns == 0 || e0.members != e1.members) {
        detail = "m=" + std::to_string(m) + ": bad skip record";
        return false;
      }
    }
  }
  detail = "towers of 1..4 columns, 20 requirements, 10 name pairs, horizon 8";
  return true;
}

// ---------------------------------------------------------------- criterion 8

struct OracleTable {
  // One bit per literal, set when some (family, assignment) pair over ground
  // sets of size <= 4 makes that literal true; masks are the maximal truth
  // patterns, so a sentence is satisfiable iff its literal set fits in one.
  std::vector<std::uint64_t> maximal_masks;
};

std::vector<Sentence::Literal> literal_space(std::size_t vars) {
  std::vector<Sentence::Literal> out;
  for (std::size_t i = 0; i < vars; ++i) {
    for (std::size_t j = 0; j < vars; ++j) {
      out.push_back(Sentence::Inclusion{i, j, false});
      out.push_back(Sentence::Inclusion{i, j, true});
    }
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << vars); ++mask) {
    Sentence::Amalgamable pos, neg;
    for (std::size_t v = 0; v < vars; ++v) {
      if ((mask >> v) & 1) {
        pos.vars.push_back(v);
        neg.vars.push_back(v);
      }
    }
    neg.negated = true;
    out.push_back(pos);
    out.push_back(neg);
  }
  for (std::size_t i = 0; i < vars; ++i) {
    for (std::size_t j = 0; j < vars; ++j) {
      for (std::size_t k = 0; k < vars; ++k) {
        out.push_back(Sentence::MeetEquation{i, j, k});
      }
    }
  }
  return out;
}

OracleTable build_oracle_table(std::size_t vars, const std::vector<Sentence::Literal>& literals) {
  std::set<std::uint64_t> masks;
  for (std::size_t g = 0; g <= 4; ++g) {
    IndexSet ground = IndexSet::range(g);
    std::vector<IndexSet> candidates;
    const std::uint64_t total = std::uint64_t{1} << g;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Label> ls;
      for (std::size_t i = 0; i < g; ++i) {
        if ((mask >> i) & 1) ls.push_back(ground.labels()[i]);
      }
      if (ls.size() >= 2) candidates.emplace_back(std::move(ls));
    }
    std::vector<std::vector<IndexSet>> antichains;
    std::vector<IndexSet> current;
    enumerate_obstacle_antichains(candidates, 0, current, antichains);

    for (const auto& obstacles : antichains) {
      ObstacleFamily family(ground, obstacles);
      auto members = family_members(family);
      std::vector<std::size_t> pick(vars, 0);
      while (true) {
        std::vector<IndexSet> assignment;
        for (std::size_t v = 0; v < vars; ++v) assignment.push_back(members[pick[v]]);
        std::uint64_t mask = 0;
        for (std::size_t li = 0; li < literals.size(); ++li) {
          Sentence probe;
          for (std::size_t v = 0; v < vars; ++v) probe.variables.push_back("x" + std::to_string(v));
          probe.literals.push_back(literals[li]);
          if (eval_sentence(probe, family, assignment)) mask |= std::uint64_t{1} << li;
        }
        masks.insert(mask);
        std::size_t at = 0;
        while (at < pick.size()) {
          if (++pick[at] < members.size()) break;
          pick[at++] = 0;
        }
        if (at == pick.size()) break;
      }
    }
  }
  // Keep the maximal masks only.
  OracleTable table;
  for (std::uint64_t m : masks) {
    bool dominated = false;
    for (std::uint64_t other : masks) {
      if (other != m && (m & other) == m) {
        dominated = true;
        break;
      }
    }
    if (!dominated) table.maximal_masks.push_back(m);
  }
  return table;
}

bool decision_procedure(std::string& detail) {
  // The two pinned sentences, with machine-checked witnesses.
  {
    Sentence nonamalg = parse_sentence("EXISTS x0,x1 : NOT A(x0,x1)");
    auto out = decide_sentence(nonamalg);
    if (!out.sat || !out.witness || !check_witness(nonamalg, *out.witness)) {
      detail = "the nonamalgamable-pair sentence must be SAT with a checked witness";
      return false;
    }
    auto bounded = decide_sentence(parse_sentence("EXISTS x0,x1 : x0 <= x1 AND NOT A(x0,x1)"));
    if (bounded.sat) {
      detail = "the bounded-pair sentence must be UNSAT";
      return false;
    }
  }

  std::size_t sentences = 0;
  for (std::size_t vars = 1; vars <= 3; ++vars) {
    auto literals = literal_space(vars);
    if (literals.size() > 63) {
      detail = "literal space too large to mask";
      return false;
    }
    OracleTable table = build_oracle_table(vars, literals);
    auto oracle_sat = [&](std::uint64_t want) {
      for (std::uint64_t m : table.maximal_masks) {
        if ((want & m) == want) return true;
      }
      return false;
    };

    Sentence s;
    for (std::size_t v = 0; v < vars; ++v) s.variables.push_back("x" + std::to_string(v));

    const std::size_t n = literals.size();
    // Multisets of one to four literals, in index order.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        for (std::size_t k = j; k <= n; ++k) {
          if (j == n && k < n) continue;
          for (std::size_t l2 = k; l2 <= n; ++l2) {
            if (k == n && l2 < n) continue;
            s.literals.clear();
            std::uint64_t want = std::uint64_t{1} << i;
            s.literals.push_back(literals[i]);
            if (j < n) {
              want |= std::uint64_t{1} << j;
              s.literals.push_back(literals[j]);
            }
            if (k < n) {
              want |= std::uint64_t{1} << k;
              s.literals.push_back(literals[k]);
            }
            if (l2 < n) {
              want |= std::uint64_t{1} << l2;
              s.literals.push_back(literals[l2]);
            }
            ++sentences;
            DecisionOutcome outcome = decide_sentence(s);
            if (outcome.sat != oracle_sat(want)) {
              detail = "disagreement on " + print_sentence(s) + " (solver says " +
                       (outcome.sat ? "SAT" : "UNSAT") + ")";
              return false;
            }
            if (l2 >= n) break;
          }
          if (k >= n) break;
        }
        if (j >= n) break;
      }
    }
  }
  detail = std::to_string(sentences) + " sentences vs the brute-force oracle";
  return true;
}

// ---------------------------------------------------------------- criterion 9

// Bottomed posets on up to five elements, up to isomorphism. Every finite
// poset has a linear extension, so enumerating order-compatible labelings
// (relation inside the numeric upper triangle) reaches every isomorphism
// type; a canonical form dedupes.
std::vector<FinitePoset> bottomed_posets_up_to(std::size_t max_n) {
  std::vector<FinitePoset> out;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    }
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    std::vector<std::size_t> perm(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if ((mask >> s) & 1) le[slots[s].first][slots[s].second] = true;
      }
      bool transitive = true;
      for (std::size_t i = 0; i < n && transitive; ++i) {
        for (std::size_t j = 0; j < n && transitive; ++j) {
          if (!le[i][j]) continue;
          for (std::size_t k = 0; k < n; ++k) {
            if (le[j][k] && !le[i][k]) {
              transitive = false;
              break;
            }
          }
        }
      }
      if (!transitive) continue;
      bool bottomed = false;
      for (std::size_t i = 0; i < n && !bottomed; ++i) {
        bool least = true;
        for (std::size_t j = 0; j < n && least; ++j) least = le[i][j];
        bottomed = least;
      }
      if (!bottomed) continue;

      // Canonical form: the lexicographically least adjacency encoding over
      // all permutations.
      std::vector<std::uint32_t> best;
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      do {
        std::vector<std::uint32_t> enc(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (le[perm[i]][perm[j]]) enc[i] |= std::uint32_t{1} << j;
          }
        }
        if (best.empty() || enc < best) best = enc;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!seen.insert(best).second) continue;

      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
      std::vector<std::pair<std::string, std::string>> below;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j && le[i][j]) below.emplace_back(names[i], names[j]);
        }
      }
      out.emplace_back(names, below);
    }
  }
  return out;
}

bool embeddings(std::string& detail) {
  auto posets = bottomed_posets_up_to(5);
  std::size_t semilattices = 0;
  for (const auto& p : posets) {
    auto emb = downset_embedding(p);
    FinitePoset target = family_poset(emb.family);
    std::map<std::string, std::string> f;
    for (const auto& [name, set] : emb.image) f[name] = set.str();
    Report report = check_star_embedding(f, p, target);
    if (!report.pass()) {
      detail = "a poset on " + std::to_string(p.size()) + " elements fails: " +
               report.failures.front();
      return false;
    }
    if (p.is_meet_semilattice()) {
      ++semilattices;
      for (const auto& x : p.elements()) {
        for (const auto& y : p.elements()) {
          auto met = p.meet(p.index_of(x), p.index_of(y));
          if (!met) continue;
          if (emb.image.at(p.elements()[*met]) != emb.image.at(x).intersect(emb.image.at(y))) {
            detail = "meet not preserved on a semilattice of size " + std::to_string(p.size());
            return false;
          }
        }
      }
    }
  }
  detail = std::to_string(posets.size()) + " bottomed posets up to isomorphism, " +
           std::to_string(semilattices) + " meet-semilattices";
  return true;
}

// --------------------------------------------------------------- criterion 10

std::string g_cli_path;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool determinism(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no CLI path supplied";
    return false;
  }
  std::string dir = "acceptance_tmp";
  auto shell = [](const std::string& cmd) { return std::system(cmd.c_str()); };
  if (shell("rm -rf " + dir + " && mkdir -p " + dir) != 0) {
    detail = "cannot create a scratch directory";
    return false;
  }
  auto run = [&](const std::string& args) {
    return shell(g_cli_path + " " + args + " > /dev/null 2>&1");
  };
  std::string obstacles = "'{\"I\":[0,1,2,3],\"B\":[[0,1],[2,3]]}'";
  for (int round = 1; round <= 2; ++round) {
    std::string f = dir + "/build" + std::to_string(round) + ".json";
    if (run("build general --obstacles " + obstacles +
            " --payload 0110 --random-steps 18 --seed 97 --out " + f) != 0) {
      detail = "build failed";
      return false;
    }
    if (run("render --result " + f + " --format svg --out " + dir + "/render" +
            std::to_string(round) + ".svg") != 0) {
      detail = "render failed";
      return false;
    }
  }
  if (slurp(dir + "/build1.json") != slurp(dir + "/build2.json") ||
      slurp(dir + "/build1.json").empty()) {
    detail = "build outputs differ across identical seeds";
    return false;
  }
  if (slurp(dir + "/render1.svg") != slurp(dir + "/render2.svg")) {
    detail = "render outputs differ";
    return false;
  }
  // The whole pipeline again through files: decode outputs agree bytewise.
  for (int round = 1; round <= 2; ++round) {
    std::string n = std::to_string(round);
    if (shell(g_cli_path + " decode --matrix " + dir + "/build" + n + ".json --columns 0,1 > " +
              dir + "/d" + n + ".txt 2>&1") != 0) {
      detail = "decode failed";
      return false;
    }
  }
  if (slurp(dir + "/d1.txt") != slurp(dir + "/d2.txt") || slurp(dir + "/d1.txt").empty()) {
    detail = "decode outputs differ";
    return false;
  }
  (void)shell("rm -rf " + dir);
  detail = "build/render/decode reruns are byte-identical";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  std::vector<Criterion> criteria = {
      {1, "blockchain soundness (500 seeded sessions)", 10.0, blockchain_soundness},
      {2, "full-width coding pattern (exhaustive families, l <= 4)", 5.0, mostowski_pattern},
      {3, "immunization (all |p| <= 5, library requirements)", 5.0, immunization},
      {4, "covert graft (200 pairs, 20 requirements)", 10.0, covert_graft},
      {5, "priming and the mutable blockchain (exhaustive, n <= 3)", 10.0, mutable_blockchain},
      {6, "forcing relation vs filter oracle (exhaustive small range)", 5.0, forcing_oracle},
      {7, "exact pairs (towers to 4 columns, pool of 10, horizon 8)", 10.0, exact_pair},
      {8, "decision procedure vs brute-force oracle", 30.0, decision_procedure},
      {9, "down-set embeddings (bottomed posets to 5 elements)", 30.0, embeddings},
      {10, "CLI determinism (same seed, same bytes)", 30.0, determinism},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = seconds < c.limit_seconds;
    bool pass = ok && in_time;
    all_ok = all_ok && pass;
    std::printf("%s criterion %2d: %s [%.2fs%s] %s\n", pass ? "PASS" : "FAIL", c.number,
                c.label.c_str(), seconds, in_time ? "" : " OVER LIMIT", detail.c_str());
  }
  return all_ok ? 0 : 1;
}
