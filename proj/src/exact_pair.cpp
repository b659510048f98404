#include "cohen/exact_pair.hpp"

#include <algorithm>
#include <random>

#include "cohen/errors.hpp"

namespace cohen {

BitString Tower::joined(std::size_t n) const {
  if (n >= columns.size()) throw DomainError("tower index out of range");
  std::vector<BitString> head(columns.begin(), columns.begin() + static_cast<std::ptrdiff_t>(n + 1));
  return interleave_join(head);
}

Tower tower_from_matrix(const MatrixCondition& matrix) {
  if (matrix.support().empty()) throw DomainError("tower_from_matrix: empty matrix");
  if (!matrix.is_uniform()) throw DomainError("tower_from_matrix: matrix must be uniform");
  Tower tower;
  for (const Label& l : matrix.index_set()) tower.columns.push_back(matrix.column(l));
  tower.provenance = "columns of a uniform matrix over " + matrix.index_set().str();
  return tower;
}

Tower make_tower(std::size_t columns, std::size_t length, std::uint64_t seed,
                 const std::vector<DenseRequirement>& dense_family) {
  if (columns == 0) throw DomainError("make_tower: need at least one column");
  std::mt19937_64 rng(seed);
  IndexSet coords = IndexSet::range(columns);
  MatrixCondition cond(coords);
  for (const Label& l : coords) {
    BitString bits;
    for (std::size_t i = 0; i < length; ++i) bits.push_back(static_cast<int>(rng() % 2));
    cond.set_column(l, bits);
  }
  for (const auto& d : dense_family) {
    if (!d.coordinates.subset_of(coords)) {
      throw DomainError("make_tower: requirement " + d.description + " off the tower coordinates");
    }
    MatrixCondition sub = restrict(cond, d.coordinates);
    MatrixCondition ext = meet_checked(d, sub);
    for (const Label& l : d.coordinates) cond.set_column(l, ext.column(l));
  }
  cond = pad_to_height(cond, cond.height());
  Tower tower;
  for (const Label& l : coords) tower.columns.push_back(cond.column(l));
  tower.provenance = "seeded prefixes (seed " + std::to_string(seed) + ") extended into " +
                     std::to_string(dense_family.size()) + " declared requirements";
  return tower;
}

namespace {

std::size_t max_entry_depth(const std::vector<std::pair<FiniteName, FiniteName>>& pairs) {
  std::size_t depth = 0;
  auto scan = [&depth](const FiniteName& name) {
    for (const auto& [cond, value] : name.entries) {
      for (const auto& [label, bits] : cond.columns()) depth = std::max(depth, bits.size());
    }
  };
  for (const auto& [sigma, tau] : pairs) {
    scan(sigma);
    scan(tau);
  }
  return depth;
}

struct PairBuilder {
  const Tower& tower;
  IndexSet coords;
  std::size_t m;
  std::size_t tower_len;
  MatrixCondition matrix;
  std::size_t filled = 0;

  PairBuilder(const Tower& t)
      : tower(t),
        coords(IndexSet::range(t.columns.size())),
        m(t.columns.size()),
        tower_len(t.columns.empty() ? 0 : t.columns.front().size()),
        matrix(coords) {}

  Label label(std::size_t j) const { return Label(static_cast<std::uint64_t>(j)); }

  // Appends tower bits to column j up to the tower length.
  void complete_column(std::size_t j) {
    BitString col = matrix.column(label(j));
    for (std::size_t pos = col.size(); pos < tower_len; ++pos) {
      col.push_back(tower.columns[j].bit(pos));
    }
    matrix.set_column(label(j), col);
  }

  // Completes every touched column plus the next one, keeping the filled
  // region a prefix of the columns.
  void complete_round() {
    std::size_t fill_to = std::min(m, filled + 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (!matrix.column(label(j)).empty()) fill_to = std::max(fill_to, j + 1);
    }
    fill_to = std::min(fill_to, m);
    for (std::size_t j = 0; j < fill_to; ++j) complete_column(j);
    filled = fill_to;
  }

  IndexSet filled_set() const {
    std::vector<Label> ls;
    for (std::size_t j = 0; j < filled; ++j) ls.push_back(label(j));
    return IndexSet(std::move(ls));
  }

  void apply_extension(const MatrixCondition& ext) {
    for (const auto& [l, bits] : ext.columns()) matrix.set_column(l, bits);
  }

  std::map<Label, std::vector<std::size_t>> almost_log() const {
    std::map<Label, std::vector<std::size_t>> log;
    for (std::size_t j = 0; j < m; ++j) {
      const BitString& col = matrix.column(label(j));
      std::vector<std::size_t> diffs;
      std::size_t overlap = std::min(col.size(), tower_len);
      for (std::size_t pos = 0; pos < overlap; ++pos) {
        if (col.bit(pos) != tower.columns[j].bit(pos)) diffs.push_back(pos);
      }
      log[label(j)] = std::move(diffs);
    }
    return log;
  }
};

void validate_inputs(const Tower& tower,
                     const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs) {
  if (tower.columns.empty()) throw DomainError("exact pair: empty tower");
  std::size_t len = tower.columns.front().size();
  for (const auto& col : tower.columns) {
    if (col.size() != len) throw DomainError("exact pair: tower columns of unequal length");
  }
  IndexSet coords = IndexSet::range(tower.columns.size());
  for (const auto& [sigma, tau] : name_pairs) {
    if (sigma.coordinates != coords || tau.coordinates != coords) {
      throw DomainError("exact pair: names must live on the tower coordinates " + coords.str());
    }
  }
  std::size_t need = max_entry_depth(name_pairs);
  if (need > len) {
    throw DomainError("exact pair: tower length " + std::to_string(len) +
                      " is shorter than a name entry (depth " + std::to_string(need) +
                      "); partial evaluation would be unstable");
  }
}

}  // namespace

ExactPairResult build_exact_pair(const Tower& tower,
                                 const std::vector<DenseRequirement>& dense_family,
                                 const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs,
                                 std::uint64_t horizon) {
  validate_inputs(tower, name_pairs);
  PairBuilder b0(tower), b1(tower);
  const std::size_t m = b0.m;
  IndexSet coords = b0.coords;

  b0.complete_column(0);
  b1.complete_column(0);
  b0.filled = b1.filled = 1;

  ExactPairResult result;
  std::vector<bool> applied(dense_family.size(), false);
  const std::size_t rounds = std::max(m, name_pairs.size());

  for (std::size_t r = 0; r < rounds; ++r) {
    // Scheduled requirements whose coordinates are filled on both sides.
    for (std::size_t di = 0; di < dense_family.size(); ++di) {
      if (applied[di]) continue;
      const auto& d = dense_family[di];
      if (!d.coordinates.subset_of(b0.filled_set()) || !d.coordinates.subset_of(b1.filled_set())) {
        continue;
      }
      for (PairBuilder* b : {&b0, &b1}) {
        MatrixCondition ext = meet_checked(d, restrict(b->matrix, d.coordinates));
        for (const Label& l : d.coordinates) b->matrix.set_column(l, ext.column(l));
      }
      applied[di] = true;
    }

    // One name pair per round.
    if (r < name_pairs.size()) {
      const auto& [sigma, tau] = name_pairs[r];
      const std::size_t filled = std::min(b0.filled, b1.filled);
      IndexSet filled_set = b0.filled_set();
      IndexSet remaining = coords.minus(filled_set);

      PairOutcome outcome;
      outcome.pair_index = r;
      outcome.filled_columns = filled;

      if (remaining.empty()) {
        // Everything is filled; the pair is settled by direct evaluation.
        Evaluation e0 = evaluate(b0.matrix, sigma, horizon);
        Evaluation e1 = evaluate(b1.matrix, tau, horizon);
        if (!e0.undecided.empty() || !e1.undecided.empty()) {
          throw Error("exact pair: full matrices leave a name undecided");
        }
        bool differ = false;
        for (std::uint64_t k = 0; k < horizon && !differ; ++k) {
          if (e0.members.count(k) != e1.members.count(k)) {
            outcome.diagonalized = true;
            outcome.k = k;
            outcome.decisions = "already differ at k=" + std::to_string(k);
            differ = true;
          }
        }
        if (!differ) outcome.decisions = "fully decided identically by the filled columns";
      } else {
        FiniteName sigma_rest = partial_evaluate(sigma, restrict(b0.matrix, filled_set), remaining);
        FiniteName tau_rest = partial_evaluate(tau, restrict(b1.matrix, filled_set), remaining);
        MatrixCondition p = restrict(b0.matrix, remaining);
        MatrixCondition q = restrict(b1.matrix, remaining);

        for (std::uint64_t k = 0; k < horizon && !outcome.diagonalized; ++k) {
          Decision a = forces_in(p, k, sigma_rest);
          Decision b = forces_in(q, k, tau_rest);
          if (a == b && a != Decision::Undecided) continue;  // pinned identically
          Decision da, db;
          if (a != Decision::Undecided) {
            da = a;
            db = a == Decision::ForcedIn ? Decision::ForcedOut : Decision::ForcedIn;
          } else if (b != Decision::Undecided) {
            db = b;
            da = b == Decision::ForcedIn ? Decision::ForcedOut : Decision::ForcedIn;
          } else {
            da = Decision::ForcedIn;
            db = Decision::ForcedOut;
          }
          auto ext_p = find_deciding_extension(p, k, sigma_rest, da);
          auto ext_q = find_deciding_extension(q, k, tau_rest, db);
          if (!ext_p || !ext_q) continue;
          b0.apply_extension(*ext_p);
          b1.apply_extension(*ext_q);
          outcome.diagonalized = true;
          outcome.k = k;
          outcome.decisions = std::string("sigma ") + to_string(da) + ", tau " + to_string(db);
        }
        if (!outcome.diagonalized) {
          for (std::uint64_t k = 0; k < horizon; ++k) {
            Decision a = forces_in(p, k, sigma_rest);
            Decision b = forces_in(q, k, tau_rest);
            if (a == Decision::Undecided || a != b) {
              throw Error("exact pair: skipped pair " + std::to_string(r) +
                          " is not decided identically at k=" + std::to_string(k));
            }
          }
          outcome.decisions = "fully decided identically by " + std::to_string(filled) + " columns";
        }
      }
      result.diag_log.push_back(std::move(outcome));
    }

    b0.complete_round();
    b1.complete_round();
  }
  for (std::size_t j = 0; j < m; ++j) {
    b0.complete_column(j);
    b1.complete_column(j);
  }

  result.d0 = b0.matrix;
  result.d1 = b1.matrix;
  result.almost_d0 = b0.almost_log();
  result.almost_d1 = b1.almost_log();
  return result;
}

ExactPairResult build_exact_partner(const Tower& tower, const MatrixCondition& d0,
                                    const std::vector<DenseRequirement>& dense_family,
                                    const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs,
                                    std::uint64_t horizon) {
  validate_inputs(tower, name_pairs);
  IndexSet coords = IndexSet::range(tower.columns.size());
  if (d0.index_set() != coords) {
    throw DomainError("build_exact_partner: d0 must live on " + coords.str());
  }
  // d0 must settle every name below the horizon.
  {
    std::vector<std::uint64_t> open;
    for (const auto& [sigma, tau] : name_pairs) {
      Evaluation e = evaluate(d0, sigma, horizon);
      open.insert(open.end(), e.undecided.begin(), e.undecided.end());
    }
    if (!open.empty()) {
      std::sort(open.begin(), open.end());
      open.erase(std::unique(open.begin(), open.end()), open.end());
      throw UndecidedEvaluation("build_exact_partner: d0 leaves values undecided", open);
    }
  }

  PairBuilder b1(tower);
  const std::size_t m = b1.m;
  b1.complete_column(0);
  b1.filled = 1;

  ExactPairResult result;
  std::vector<bool> applied(dense_family.size(), false);
  const std::size_t rounds = std::max(m, name_pairs.size());

  for (std::size_t r = 0; r < rounds; ++r) {
    for (std::size_t di = 0; di < dense_family.size(); ++di) {
      if (applied[di]) continue;
      const auto& d = dense_family[di];
      if (!d.coordinates.subset_of(b1.filled_set())) continue;
      MatrixCondition ext = meet_checked(d, restrict(b1.matrix, d.coordinates));
      for (const Label& l : d.coordinates) b1.matrix.set_column(l, ext.column(l));
      applied[di] = true;
    }

    if (r < name_pairs.size()) {
      const auto& [sigma, tau] = name_pairs[r];
      Evaluation e0 = evaluate(d0, sigma, horizon);

      PairOutcome outcome;
      outcome.pair_index = r;
      outcome.filled_columns = b1.filled;

      IndexSet filled_set = b1.filled_set();
      IndexSet remaining = coords.minus(filled_set);
      if (remaining.empty()) {
        Evaluation e1 = evaluate(b1.matrix, tau, horizon);
        if (!e1.undecided.empty()) {
          throw Error("exact partner: full matrix leaves the name undecided");
        }
        for (std::uint64_t k = 0; k < horizon && !outcome.diagonalized; ++k) {
          if (e1.members.count(k) != e0.members.count(k)) {
            outcome.diagonalized = true;
            outcome.k = k;
            outcome.decisions = "already differ at k=" + std::to_string(k);
          }
        }
        if (!outcome.diagonalized) {
          outcome.decisions = "fully decided matching the evaluation over d0";
        }
      } else {
        FiniteName tau_rest = partial_evaluate(tau, restrict(b1.matrix, filled_set), remaining);
        MatrixCondition q = restrict(b1.matrix, remaining);
        for (std::uint64_t k = 0; k < horizon && !outcome.diagonalized; ++k) {
          Decision b = forces_in(q, k, tau_rest);
          if (b != Decision::Undecided) continue;
          Decision want = e0.members.count(k) ? Decision::ForcedOut : Decision::ForcedIn;
          auto ext = find_deciding_extension(q, k, tau_rest, want);
          if (!ext) continue;
          b1.apply_extension(*ext);
          outcome.diagonalized = true;
          outcome.k = k;
          outcome.decisions = std::string("tau forced ") + to_string(want) +
                              " against the value over d0";
        }
        if (!outcome.diagonalized) {
          for (std::uint64_t k = 0; k < horizon; ++k) {
            Decision b = forces_in(q, k, tau_rest);
            if (b == Decision::Undecided) {
              throw Error("exact partner: skipped pair still undecided at k=" + std::to_string(k));
            }
            bool in1 = b == Decision::ForcedIn;
            if (in1 != (e0.members.count(k) != 0)) {
              outcome.diagonalized = true;
              outcome.k = k;
              outcome.decisions = "already differ at k=" + std::to_string(k);
              break;
            }
          }
          if (!outcome.diagonalized) {
            outcome.decisions =
                "fully decided matching the evaluation over d0 by " +
                std::to_string(b1.filled) + " columns";
          }
        }
      }
      result.diag_log.push_back(std::move(outcome));
    }
    b1.complete_round();
  }
  for (std::size_t j = 0; j < m; ++j) b1.complete_column(j);

  result.d0 = d0;
  result.d1 = b1.matrix;
  result.almost_d1 = b1.almost_log();
  // d0 was supplied, not built; its divergence from the tower is still logged.
  PairBuilder scratch(tower);
  scratch.matrix = d0;
  result.almost_d0 = scratch.almost_log();
  return result;
}

Report verify_exact_pair(const ExactPairResult& result, const Tower& tower,
                         const std::vector<DenseRequirement>& dense_family,
                         const std::vector<std::pair<FiniteName, FiniteName>>& name_pairs,
                         std::uint64_t horizon) {
  Report report;
  const std::size_t m = tower.columns.size();
  IndexSet coords = IndexSet::range(m);

  // (i) every scheduled requirement is met by both matrices.
  for (const auto& d : dense_family) {
    if (!meets(result.d0, d)) report.fail("d0 does not meet " + d.description);
    if (!meets(result.d1, d)) report.fail("d1 does not meet " + d.description);
  }

  // (ii) finite, fully logged divergence from the tower columns.
  auto check_almost = [&](const MatrixCondition& matrix,
                          const std::map<Label, std::vector<std::size_t>>& log, const char* tag) {
    for (std::size_t j = 0; j < m; ++j) {
      Label l(static_cast<std::uint64_t>(j));
      const BitString& col = matrix.column(l);
      std::vector<std::size_t> diffs;
      std::size_t overlap = std::min(col.size(), tower.columns[j].size());
      for (std::size_t pos = 0; pos < overlap; ++pos) {
        if (col.bit(pos) != tower.columns[j].bit(pos)) diffs.push_back(pos);
      }
      auto it = log.find(l);
      if (it == log.end() || it->second != diffs) {
        report.fail(std::string(tag) + " column " + l.text() +
                    ": divergence from the tower is not what the log records");
      }
    }
  };
  check_almost(result.d0, result.almost_d0, "d0");
  check_almost(result.d1, result.almost_d1, "d1");

  // (iii)/(iv) per name pair.
  for (const auto& outcome : result.diag_log) {
    if (outcome.pair_index >= name_pairs.size()) {
      report.fail("log mentions pair " + std::to_string(outcome.pair_index) +
                  " outside the pool");
      continue;
    }
    const auto& [sigma, tau] = name_pairs[outcome.pair_index];
    Evaluation e0 = evaluate(result.d0, sigma, horizon);
    Evaluation e1 = evaluate(result.d1, tau, horizon);
    if (outcome.diagonalized) {
      bool in0 = e0.members.count(outcome.k) != 0;
      bool in1 = e1.members.count(outcome.k) != 0;
      bool undecided = false;
      for (std::uint64_t k : e0.undecided) undecided |= k == outcome.k;
      for (std::uint64_t k : e1.undecided) undecided |= k == outcome.k;
      if (undecided || in0 == in1) {
        report.fail("pair " + std::to_string(outcome.pair_index) +
                    ": evaluations do not differ at the logged k=" + std::to_string(outcome.k));
      }
    } else {
      if (!e0.undecided.empty() || !e1.undecided.empty() || e0.members != e1.members) {
        report.fail("pair " + std::to_string(outcome.pair_index) +
                    ": skipped but the evaluations are not settled identically");
      }
      // Re-derive the common value from the logged column count alone.
      std::size_t n_cols = outcome.filled_columns;
      std::vector<Label> head;
      for (std::size_t j = 0; j < n_cols; ++j) head.emplace_back(static_cast<std::uint64_t>(j));
      IndexSet filled_set((std::vector<Label>(head)));
      IndexSet remaining = coords.minus(filled_set);
      auto rederive = [&](const MatrixCondition& matrix, const FiniteName& name,
                          const std::set<std::uint64_t>& expect) {
        FiniteName rest = partial_evaluate(name, restrict(matrix, filled_set), remaining);
        MatrixCondition empty_rest(remaining);
        for (std::uint64_t k = 0; k < horizon; ++k) {
          Decision dec = forces_in(empty_rest, k, rest);
          if (dec == Decision::Undecided) {
            report.fail("pair " + std::to_string(outcome.pair_index) + ": value at k=" +
                        std::to_string(k) + " is not computable from the first " +
                        std::to_string(n_cols) + " columns");
            return;
          }
          if ((dec == Decision::ForcedIn) != (expect.count(k) != 0)) {
            report.fail("pair " + std::to_string(outcome.pair_index) +
                        ": re-derived value differs at k=" + std::to_string(k));
            return;
          }
        }
      };
      rederive(result.d0, sigma, e0.members);
      rederive(result.d1, tau, e1.members);
    }
  }

  report.note("exactness checked over the declared pool of " +
              std::to_string(name_pairs.size()) + " name pairs at horizon " +
              std::to_string(horizon));
  return report;
}

}  // namespace cohen
