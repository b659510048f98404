#include "cohen/names.hpp"

#include <algorithm>
#include <functional>

#include "cohen/errors.hpp"

namespace cohen {

FiniteName::FiniteName(IndexSet coords, std::vector<std::pair<MatrixCondition, std::uint64_t>> es)
    : coordinates(std::move(coords)), entries(std::move(es)) {
  for (const auto& [cond, value] : entries) {
    if (cond.index_set() != coordinates) {
      throw StructuralError("name entry condition lives on " + cond.index_set().str() +
                            ", expected " + coordinates.str());
    }
  }
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::ForcedIn: return "ForcedIn";
    case Decision::ForcedOut: return "ForcedOut";
    case Decision::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

std::vector<const MatrixCondition*> entries_for(const FiniteName& name, std::uint64_t k) {
  std::vector<const MatrixCondition*> out;
  for (const auto& [cond, value] : name.entries) {
    if (value == k) out.push_back(&cond);
  }
  return out;
}

// Per-column target length: the deepest bit any selected entry mentions.
std::map<Label, std::size_t> target_lengths(const IndexSet& coords,
                                            const std::vector<const MatrixCondition*>& entries) {
  std::map<Label, std::size_t> lens;
  for (const Label& l : coords) lens[l] = 0;
  for (const auto* e : entries) {
    for (const auto& [label, bits] : e->columns()) {
      lens[label] = std::max(lens[label], bits.size());
    }
  }
  return lens;
}

bool covered(const MatrixCondition& r, const std::vector<const MatrixCondition*>& entries) {
  for (const auto* e : entries) {
    if (extends(r, *e)) return true;
  }
  return false;
}

bool any_compatible(const MatrixCondition& r, const std::vector<const MatrixCondition*>& entries) {
  for (const auto* e : entries) {
    if (compatible(r, *e)) return true;
  }
  return false;
}

// First (column, position) still short of its target, in index-set order.
std::optional<Label> next_free_column(const MatrixCondition& r,
                                      const std::map<Label, std::size_t>& lens) {
  for (const auto& [label, len] : lens) {
    if (r.column(label).size() < len) return label;
  }
  return std::nullopt;
}

// True iff every completion of r out to the target lengths extends some entry.
// Branches prune as soon as a subtree is covered or every entry is ruled out.
bool all_completions_covered(MatrixCondition& r, const std::map<Label, std::size_t>& lens,
                             const std::vector<const MatrixCondition*>& entries) {
  if (covered(r, entries)) return true;
  if (!any_compatible(r, entries)) return false;
  auto col = next_free_column(r, lens);
  if (!col) return false;  // full depth, not covered
  for (int b = 0; b <= 1; ++b) {
    BitString saved = r.column(*col);
    r.append_bit(*col, b);
    bool ok = all_completions_covered(r, lens, entries);
    r.set_column(*col, saved);
    if (!ok) return false;
  }
  return true;
}

// A completion of r that no entry sits below, if one exists.
std::optional<MatrixCondition> find_avoiding(MatrixCondition& r,
                                             const std::map<Label, std::size_t>& lens,
                                             const std::vector<const MatrixCondition*>& entries) {
  if (covered(r, entries)) return std::nullopt;
  if (!any_compatible(r, entries)) return r;
  auto col = next_free_column(r, lens);
  if (!col) return r;
  for (int b = 0; b <= 1; ++b) {
    BitString saved = r.column(*col);
    r.append_bit(*col, b);
    auto found = find_avoiding(r, lens, entries);
    r.set_column(*col, saved);
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

Decision forces_in(const MatrixCondition& p, std::uint64_t k, const FiniteName& name) {
  if (p.index_set() != name.coordinates) {
    throw DomainError("forces_in: condition on " + p.index_set().str() + " vs name on " +
                      name.coordinates.str());
  }
  auto entries = entries_for(name, k);
  if (entries.empty()) return Decision::ForcedOut;

  bool compat = any_compatible(p, entries);
  if (!compat) return Decision::ForcedOut;

  auto lens = target_lengths(name.coordinates, entries);
  MatrixCondition scratch = p;
  if (all_completions_covered(scratch, lens, entries)) return Decision::ForcedIn;
  return Decision::Undecided;
}

Evaluation evaluate(const MatrixCondition& x, const FiniteName& name, std::uint64_t horizon) {
  Evaluation out;
  for (std::uint64_t k = 0; k < horizon; ++k) {
    switch (forces_in(x, k, name)) {
      case Decision::ForcedIn: out.members.insert(k); break;
      case Decision::Undecided: out.undecided.push_back(k); break;
      case Decision::ForcedOut: break;
    }
  }
  return out;
}

FiniteName partial_evaluate(const FiniteName& name, const MatrixCondition& filled,
                            const IndexSet& remaining) {
  const IndexSet& filled_coords = filled.index_set();
  if (!filled_coords.intersect(remaining).empty() ||
      filled_coords.unioned(remaining) != name.coordinates) {
    throw DomainError("partial_evaluate: filled " + filled_coords.str() + " and remaining " +
                      remaining.str() + " do not partition " + name.coordinates.str());
  }
  FiniteName out;
  out.coordinates = remaining;
  for (const auto& [cond, value] : name.entries) {
    MatrixCondition part = restrict(cond, filled_coords);
    if (extends(filled, part)) {
      out.entries.emplace_back(restrict(cond, remaining), value);
    }
  }
  return out;
}

std::optional<SeparationFinding> search_separating_name(const MatrixCondition& q,
                                                        const FiniteName& chi, const IndexSet& x,
                                                        const std::vector<SeparationCandidate>& pool,
                                                        int depth) {
  if (q.index_set() != chi.coordinates) {
    throw DomainError("search_separating_name: condition and name coordinates differ");
  }
  if (!x.subset_of(q.index_set())) {
    throw DomainError("search_separating_name: X " + x.str() + " outside " + q.index_set().str());
  }
  if (depth < 0) throw DomainError("search_separating_name: negative depth");

  if (depth == 0) {
    if (pool.empty()) return std::nullopt;
    return SeparationFinding{pool.front().name, pool.front().test_value, 0, true};
  }

  // Full-depth X-extensions: each X-column grows by exactly `depth` bits. By
  // monotonicity a shallower deciding extension would force these to decide
  // too, so checking the deepest layer suffices.
  std::vector<Label> xcols(x.labels().begin(), x.labels().end());
  const std::size_t slots = xcols.size() * static_cast<std::size_t>(depth);

  for (const auto& candidate : pool) {
    bool all_undecided = true;
    const std::uint64_t total = slots >= 63 ? 0 : (std::uint64_t{1} << slots);
    if (slots >= 63) throw ResourceError("search_separating_name: extension space too large");
    for (std::uint64_t mask = 0; mask < total && all_undecided; ++mask) {
      MatrixCondition r = q;
      std::size_t slot = 0;
      for (const Label& l : xcols) {
        for (int d = 0; d < depth; ++d, ++slot) {
          r.append_bit(l, static_cast<int>((mask >> slot) & 1));
        }
      }
      if (forces_in(r, candidate.test_value, chi) != Decision::Undecided) all_undecided = false;
    }
    if (all_undecided) {
      return SeparationFinding{candidate.name, candidate.test_value, depth, false};
    }
  }
  return std::nullopt;
}

std::vector<SeparationCandidate> canonical_name_pool(const IndexSet& coords, int max_len,
                                                     const std::vector<std::uint64_t>& test_values) {
  std::vector<SeparationCandidate> pool;
  if (test_values.empty()) return pool;
  if (coords.empty()) {
    // Over the empty coordinate set only the trivial entries exist.
    for (std::uint64_t v : test_values) {
      FiniteName name(coords, {{MatrixCondition(coords), v}});
      pool.push_back(SeparationCandidate{std::move(name), v});
    }
    return pool;
  }
  for (std::uint64_t v : test_values) {
    for (int len = 1; len <= max_len; ++len) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
        for (const Label& l : coords) {
          BitString w;
          for (int i = 0; i < len; ++i) w.push_back(static_cast<int>((bits >> i) & 1));
          MatrixCondition cond(coords);
          cond.set_column(l, w);
          FiniteName name(coords, {{cond, v}});
          pool.push_back(SeparationCandidate{std::move(name), v});
        }
      }
    }
  }
  return pool;
}

std::optional<MatrixCondition> find_deciding_extension(const MatrixCondition& p, std::uint64_t k,
                                                       const FiniteName& name, Decision want) {
  if (want == Decision::Undecided) throw DomainError("find_deciding_extension: want must be decided");
  Decision now = forces_in(p, k, name);
  if (now == want) return p;
  if (now != Decision::Undecided) return std::nullopt;

  auto entries = entries_for(name, k);
  if (want == Decision::ForcedIn) {
    for (const auto* e : entries) {
      if (auto merged = merge(p, *e)) return merged;
    }
    return std::nullopt;
  }
  auto lens = target_lengths(name.coordinates, entries);
  MatrixCondition scratch = p;
  return find_avoiding(scratch, lens, entries);
}

}  // namespace cohen
