#include "cohen/surgery.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "cohen/errors.hpp"
#include "cohen/obstacles.hpp"

namespace cohen {

GoodPointSet good_points(const BitString& y) {
  GoodPointSet gp;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (y.bit(i) == 1 && y.bit(i + 1) == 0) {
      gp.good.push_back(i);
      gp.coding.push_back(i + 1);
    }
  }
  return gp;
}

BitString graft(const BitString& f, const BitString& g, const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> at = positions;
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());
  if (at.size() != g.size()) {
    throw DomainError("graft: " + std::to_string(at.size()) + " positions for " +
                      std::to_string(g.size()) + " bits");
  }
  if (!at.empty() && at.back() >= f.size()) {
    throw DomainError("graft: position " + std::to_string(at.back()) + " outside domain of size " +
                      std::to_string(f.size()));
  }
  BitString out = f;
  for (std::size_t k = 0; k < at.size(); ++k) out.set(at[k], g.bit(k));
  return out;
}

bool is_immune(const BitString& p, std::size_t n, const DenseRequirement& d) {
  if (n > p.size()) throw DomainError("is_immune: cut beyond the condition");
  if (n > 24) throw ResourceError("is_immune: 2^" + std::to_string(n) + " rewrites is too many");
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    BitString q = p;
    for (std::size_t i = 0; i < n; ++i) q.set(i, static_cast<int>((mask >> i) & 1));
    if (!member1(d, q)) return false;
  }
  return true;
}

BitString immunize(const BitString& p, const DenseRequirement& d) {
  if (p.size() > 16) {
    throw ResourceError("immunize: the graft loop enumerates 2^" + std::to_string(p.size()) +
                        " strings; use the requirement's immunizer instead");
  }
  const std::size_t len = p.size();
  std::vector<std::size_t> low(len);
  for (std::size_t i = 0; i < len; ++i) low[i] = i;

  BitString cur = p;
  const std::uint64_t total = std::uint64_t{1} << len;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    BitString candidate;
    for (std::size_t i = 0; i < len; ++i) candidate.push_back(static_cast<int>((mask >> i) & 1));
    BitString swapped = graft(cur, candidate, low);
    BitString extended = meet1(d, swapped);
    cur = graft(extended, p, low);
  }
  if (len == 0) cur = meet1(d, cur);
  return cur;
}

PrimedFamily prime(const std::vector<BitString>& xs, const BitString& y) {
  if (xs.empty()) throw DomainError("prime: no columns");
  for (const auto& x : xs) {
    if (x.size() != y.size()) {
      throw DomainError("prime: columns and reference must have equal length");
    }
  }
  const std::size_t n = xs.size();
  const std::size_t len = y.size();
  GoodPointSet gp = good_points(y);

  std::vector<bool> is_good(len, false), is_coding(len, false);
  for (std::size_t i : gp.good) is_good[i] = true;
  for (std::size_t i : gp.coding) is_coding[i] = true;

  PrimedFamily out;
  out.originals = xs;
  out.reference = y;
  out.primed.assign(n, BitString());
  std::size_t goods_below = 0;
  std::vector<std::vector<std::uint8_t>> cols(n, std::vector<std::uint8_t>(len, 0));
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (is_good[i]) {
        cols[k][i] = 1;
      } else if (is_coding[i]) {
        cols[k][i] = 0;
      } else if (goods_below % n == k) {
        cols[k][i] = 0;  // k is inactive at i
      } else {
        cols[k][i] = static_cast<std::uint8_t>(xs[k].bit(i));
      }
    }
    if (is_good[i]) ++goods_below;
  }
  for (std::size_t k = 0; k < n; ++k) out.primed[k] = BitString(std::move(cols[k]));
  return out;
}

BitString substitute(const BitString& x, const BitString& z, const BitString& y) {
  GoodPointSet gp = good_points(y);
  std::vector<std::size_t> at;
  for (std::size_t c : gp.coding) {
    if (c < x.size()) at.push_back(c);
  }
  BitString payload = z.prefix(at.size()).padded(at.size());
  return graft(x, payload, at);
}

SurgeryDecoding decode_surgery(const std::vector<BitString>& family,
                               const std::vector<std::size_t>& columns) {
  if (columns.empty()) throw DomainError("decode_surgery: no columns selected");
  std::size_t h = SIZE_MAX;
  for (std::size_t c : columns) {
    if (c >= family.size()) throw DomainError("decode_surgery: column index out of range");
    h = std::min(h, family[c].size());
  }
  if (h == SIZE_MAX) h = 0;

  auto all_one = [&](std::size_t r) {
    for (std::size_t c : columns) {
      if (family[c].bit(r) != 1) return false;
    }
    return true;
  };

  SurgeryDecoding out;
  std::size_t r = 0;
  while (r < h) {
    if (!all_one(r)) {
      ++r;
      continue;
    }
    std::size_t end = r;
    while (end + 1 < h && all_one(end + 1)) ++end;
    if (end - r + 1 > 2) {
      throw MalformedFamily("decode_surgery: all-one run of length " +
                            std::to_string(end - r + 1) + " starting at row " + std::to_string(r));
    }
    if (r + 1 >= h) {
      out.incomplete_tail = true;  // a good point right at the edge of the prefix
      return out;
    }
    out.coding_positions.push_back(r + 1);
    out.bits.push_back(family[columns.front()].bit(r + 1));
    r = end + 2;
  }
  return out;
}

MutableBlockchain build_mutable_blockchain(std::size_t n, const std::map<IndexSet, MutableRow>& rows,
                                           const std::vector<IndexSet>& member_family,
                                           const BitString& payload) {
  if (n == 0) throw DomainError("build_mutable_blockchain: no columns");
  IndexSet ground = IndexSet::range(n);
  ObstacleFamily family = family_from_members(ground, member_family);

  // Every subset of at least two columns gets a row, and nothing else.
  std::vector<IndexSet> wanted;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) labels.emplace_back(static_cast<std::uint64_t>(i));
    }
    if (labels.size() >= 2) wanted.emplace_back(std::move(labels));
  }
  std::sort(wanted.begin(), wanted.end());
  if (rows.size() != wanted.size()) {
    throw DomainError("build_mutable_blockchain: expected one row per subset of size >= 2 (" +
                      std::to_string(wanted.size()) + "), got " + std::to_string(rows.size()));
  }
  for (const auto& a : wanted) {
    if (!rows.count(a)) {
      throw DomainError("build_mutable_blockchain: missing row for " + a.str());
    }
  }

  std::size_t len = rows.begin()->second.y.size();
  std::optional<std::vector<std::size_t>> shared_good;
  for (const auto& [a, row] : rows) {
    if (row.xs.size() != n) {
      throw DomainError("build_mutable_blockchain: row " + a.str() + " has " +
                        std::to_string(row.xs.size()) + " columns, expected " + std::to_string(n));
    }
    if (row.y.size() != len) {
      throw DomainError("build_mutable_blockchain: all strings must have equal length");
    }
    for (const auto& x : row.xs) {
      if (x.size() != len) {
        throw DomainError("build_mutable_blockchain: all strings must have equal length");
      }
    }
    GoodPointSet gp = good_points(row.y);
    if (!shared_good) {
      shared_good = gp.good;
    } else if (*shared_good != gp.good) {
      throw DomainError("build_mutable_blockchain: reference reals must share their good points "
                        "(the joined substitution acts rowwise only then)");
    }
  }

  GoodPointSet gp = good_points(rows.begin()->second.y);
  std::size_t coding_count = 0;
  for (std::size_t c : gp.coding) {
    if (c < len) ++coding_count;
  }
  if (coding_count < payload.size()) {
    throw DomainError("build_mutable_blockchain: " + std::to_string(coding_count) +
                      " coding positions cannot carry a payload of " +
                      std::to_string(payload.size()) + " bits");
  }

  MutableBlockchain out;
  out.row_subsets = wanted;
  for (const IndexSet& a : wanted) {
    const MutableRow& row = rows.at(a);

    std::vector<BitString> sub;
    std::vector<std::size_t> positions;
    for (std::size_t k = 0; k < n; ++k) {
      if (a.contains(Label(static_cast<std::uint64_t>(k)))) {
        sub.push_back(row.xs[k]);
        positions.push_back(k);
      }
    }
    PrimedFamily primed = prime(sub, row.y);
    std::vector<BitString> cols = row.xs;
    for (std::size_t j = 0; j < positions.size(); ++j) cols[positions[j]] = primed.primed[j];

    BitString row_payload = family.is_member(a) ? BitString::zeros(coding_count)
                                                : payload.padded(coding_count);
    out.row_columns.push_back(std::move(cols));
    out.row_payloads.push_back(std::move(row_payload));
    out.row_good_points.push_back(good_points(row.y));
  }

  const std::size_t rows_n = wanted.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<BitString> pieces;
    for (std::size_t r = 0; r < rows_n; ++r) pieces.push_back(out.row_columns[r][k]);
    out.joined_columns.push_back(interleave_join(pieces));
  }
  std::vector<BitString> indicators;
  for (std::size_t r = 0; r < rows_n; ++r) {
    BitString ind = BitString::zeros(len);
    for (std::size_t c : out.row_good_points[r].coding) {
      if (c < len) ind.set(c, 1);
    }
    indicators.push_back(std::move(ind));
  }
  out.joined_reference = interleave_join(indicators);
  out.joined_payload = interleave_join(out.row_payloads);
  return out;
}

std::map<IndexSet, MutableRow> generate_mutable_rows(std::size_t n, std::size_t good_point_count,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t len = 4 * good_point_count + 4;
  BitString y = BitString::zeros(len);
  for (std::size_t t = 0; t < good_point_count; ++t) y.set(4 * t + 1, 1);

  std::map<IndexSet, MutableRow> rows;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) labels.emplace_back(static_cast<std::uint64_t>(i));
    }
    if (labels.size() < 2) continue;
    MutableRow row;
    row.y = y;
    for (std::size_t k = 0; k < n; ++k) {
      BitString x;
      for (std::size_t i = 0; i < len; ++i) x.push_back(static_cast<int>(rng() % 2));
      row.xs.push_back(std::move(x));
    }
    rows.emplace(IndexSet(std::move(labels)), std::move(row));
  }
  return rows;
}

CovertPair build_covert_pair(const std::vector<DenseRequirement>& family, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CovertPair pair;
  // A little seeded content first, so the pairs differ across seeds.
  for (int i = 0; i < 4; ++i) {
    pair.c.push_back(static_cast<int>(rng() % 2));
    pair.d.push_back(static_cast<int>(rng() % 2));
  }
  for (const auto& d : family) {
    if (d.coordinates.size() != 1) {
      throw DomainError("build_covert_pair: requirements must be single-coordinate");
    }
    const Label col = d.coordinates.labels().front();
    std::size_t h = std::max(pair.c.size(), pair.d.size());
    pair.c = pair.c.padded(h);
    pair.d = pair.d.padded(h);

    // The immune prefix of c above the cut h, with d flat zero beside it.
    MatrixCondition cond(d.coordinates);
    cond.set_column(col, pair.c);
    MatrixCondition immune = immunize_checked(d, cond);
    pair.c = immune.column(col);
    pair.d = pair.d.padded(pair.c.size());

    // The d side meets the requirement too, above the protected interval.
    pair.d = meet1(d, pair.d);
    pair.c = pair.c.padded(pair.d.size());
  }
  return pair;
}

PrimedProductInputs build_primed_inputs(std::size_t n, const std::vector<DenseRequirement>& family,
                                        std::uint64_t seed) {
  if (n == 0) throw DomainError("build_primed_inputs: no columns");
  std::mt19937_64 rng(seed);
  PrimedProductInputs out;
  out.xs.assign(n, BitString());
  out.y = BitString::zeros(2);  // keep the reference ending in zeros

  std::size_t goods = 0;
  auto heights_equalize = [&]() {
    std::size_t h = out.y.size();
    for (const auto& x : out.xs) h = std::max(h, x.size());
    for (auto& x : out.xs) x = x.padded(h);
    out.y = out.y.padded(h);
  };
  auto add_good_point = [&]() {
    // 0 1 0 0 appended: one new good point, gaps of at least two flat rows.
    std::size_t base = out.y.size();
    out.y = out.y.padded(base + 4);
    out.y.set(base + 1, 1);
    for (auto& x : out.xs) {
      while (x.size() < base + 4) x.push_back(static_cast<int>(rng() % 2));
    }
    ++goods;
  };

  for (const auto& d : family) {
    std::set<std::size_t> a;
    for (const Label& l : d.coordinates) {
      auto num = l.numeric();
      if (!num || *num >= n) {
        throw DomainError("build_primed_inputs: requirement coordinates must be column indices");
      }
      a.insert(static_cast<std::size_t>(*num));
    }
    if (a.size() >= n) {
      throw DomainError("build_primed_inputs: requirements must live on proper subsets");
    }
    // Park the inactive column outside A for the rows this requirement owns.
    while (a.count(goods % n)) add_good_point();
    heights_equalize();

    MatrixCondition sub(d.coordinates);
    for (std::size_t k : a) sub.set_column(Label(static_cast<std::uint64_t>(k)), out.xs[k]);
    MatrixCondition immune = immunize_checked(d, sub);
    for (std::size_t k : a) out.xs[k] = immune.column(Label(static_cast<std::uint64_t>(k)));
    heights_equalize();
  }

  // A few more good points at the top so substitution has somewhere to write.
  for (int extra = 0; extra < 4; ++extra) add_good_point();
  heights_equalize();
  return out;
}

Report verify_preservation(const PrimedFamily& primed,
                           const std::vector<std::vector<std::size_t>>& subsets_to_check,
                           const std::vector<DenseRequirement>& dense_family,
                           const std::vector<BitString>& substitutions) {
  Report report;
  const std::size_t n = primed.primed.size();

  std::vector<BitString> substituted;
  for (std::size_t k = 0; k < n; ++k) {
    const BitString z = k < substitutions.size() ? substitutions[k] : BitString();
    substituted.push_back(substitute(primed.primed[k], z, primed.reference));
  }

  for (const auto& subset : subsets_to_check) {
    if (subset.size() >= n) {
      report.note("subset of all " + std::to_string(n) +
                  " columns skipped: preservation concerns proper subfamilies only");
      continue;
    }
    std::vector<Label> labels;
    for (std::size_t k : subset) {
      if (k >= n) {
        report.fail("subset mentions column " + std::to_string(k) + " outside the family");
        continue;
      }
      labels.emplace_back(static_cast<std::uint64_t>(k));
    }
    IndexSet coords(labels);
    MatrixCondition cond(coords);
    for (std::size_t k : subset) {
      if (k < n) cond.set_column(Label(static_cast<std::uint64_t>(k)), substituted[k]);
    }
    for (const auto& d : dense_family) {
      if (d.coordinates != coords) continue;
      if (!meets(cond, d)) {
        report.fail("substituted primed family on " + coords.str() + " does not meet " +
                    d.description);
      }
    }
  }

  for (std::size_t r = 0; r + 1 < primed.reference.size(); ++r) {
    bool both = true;
    for (std::size_t k = 0; k < n && both; ++k) {
      both = primed.primed[k].bit(r) == 1 && primed.primed[k].bit(r + 1) == 1;
    }
    if (both) {
      report.fail("two consecutive all-one rows at " + std::to_string(r) +
                  " in the primed family");
    }
  }

  report.note("preservation checked relative to the declared family of " +
              std::to_string(dense_family.size()) + " requirements");
  return report;
}

}  // namespace cohen
