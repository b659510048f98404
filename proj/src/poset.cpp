#include "cohen/poset.hpp"

#include <algorithm>

#include "cohen/errors.hpp"

namespace cohen {

FinitePoset::FinitePoset(std::vector<std::string> elements,
                         std::vector<std::pair<std::string, std::string>> below)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw DomainError("poset elements must be distinct");
  }
  const std::size_t n = elements_.size();
  le_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le_[i][i] = true;
  for (const auto& [a, b] : below) le_[index_of(a)][index_of(b)] = true;
  // Reflexive-transitive closure, then antisymmetry must hold.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!le_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (le_[k][j]) le_[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (le_[i][j] && le_[j][i]) {
        throw DomainError("relation is not antisymmetric: " + elements_[i] + " and " +
                          elements_[j] + " sit below each other");
      }
    }
  }
}

std::size_t FinitePoset::index_of(const std::string& name) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), name);
  if (it == elements_.end() || *it != name) {
    throw DomainError("unknown poset element: " + name);
  }
  return static_cast<std::size_t>(it - elements_.begin());
}

bool FinitePoset::le(const std::string& a, const std::string& b) const {
  return le_[index_of(a)][index_of(b)];
}

std::optional<std::size_t> FinitePoset::bottom() const {
  for (std::size_t i = 0; i < size(); ++i) {
    bool least = true;
    for (std::size_t j = 0; j < size() && least; ++j) least = le_[i][j];
    if (least) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::meet(std::size_t a, std::size_t b) const {
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < size(); ++c) {
    if (!le_[c][a] || !le_[c][b]) continue;
    if (!best || le_[*best][c]) best = c;
  }
  if (!best) return std::nullopt;
  // Greatest among the lower bounds, not merely maximal.
  for (std::size_t c = 0; c < size(); ++c) {
    if (le_[c][a] && le_[c][b] && !le_[c][*best]) return std::nullopt;
  }
  return best;
}

bool FinitePoset::is_meet_semilattice() const {
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (!meet(a, b)) return false;
    }
  }
  return true;
}

bool FinitePoset::has_upper_bound(const std::vector<std::size_t>& xs) const {
  for (std::size_t c = 0; c < size(); ++c) {
    bool bound = true;
    for (std::size_t x : xs) {
      if (!le_[x][c]) {
        bound = false;
        break;
      }
    }
    if (bound) return true;
  }
  return false;
}

bool FinitePoset::has_nonzero_lower_bound(const std::vector<std::size_t>& xs) const {
  auto zero = bottom();
  for (std::size_t c = 0; c < size(); ++c) {
    if (zero && c == *zero) continue;
    bool bound = true;
    for (std::size_t x : xs) {
      if (!le_[c][x]) {
        bound = false;
        break;
      }
    }
    if (bound) return true;
  }
  return false;
}

DownsetEmbedding downset_embedding(const FinitePoset& p) {
  auto zero = p.bottom();
  if (!zero) throw DomainError("downset_embedding: the poset has no least element");

  IndexSet ground;
  {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i != *zero) labels.emplace_back(p.elements()[i]);
    }
    ground = IndexSet(std::move(labels));
  }

  DownsetEmbedding out;
  std::vector<IndexSet> members;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<Label> down;
    for (std::size_t q = 0; q < p.size(); ++q) {
      if (q != *zero && p.le(q, i)) down.emplace_back(p.elements()[q]);
    }
    out.image[p.elements()[i]] = IndexSet(down);
  }
  // Members: the down-sets and all their subsets.
  const auto& labels = ground.labels();
  const std::uint64_t total = std::uint64_t{1} << labels.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Label> subset;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if ((mask >> i) & 1) subset.push_back(labels[i]);
    }
    IndexSet candidate(std::move(subset));
    for (const auto& [name, down] : out.image) {
      if (candidate.subset_of(down)) {
        members.push_back(candidate);
        break;
      }
    }
  }
  out.family = family_from_members(ground, members);
  return out;
}

Report check_star_embedding(const std::map<std::string, std::string>& f, const FinitePoset& p,
                            const FinitePoset& q) {
  Report report;
  if (!p.bottom() || !q.bottom()) {
    report.fail("both posets must have least elements");
    return report;
  }
  std::vector<std::size_t> image(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = f.find(p.elements()[i]);
    if (it == f.end()) {
      report.fail("map is not total: " + p.elements()[i] + " has no image");
      return report;
    }
    image[i] = q.index_of(it->second);
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i != j && image[i] == image[j]) {
        report.fail("map is not injective: " + p.elements()[i] + " and " + p.elements()[j] +
                    " collide");
        return report;
      }
      if (p.le(i, j) != q.le(image[i], image[j])) {
        report.fail("order not preserved/reflected on (" + p.elements()[i] + ", " +
                    p.elements()[j] + ")");
      }
    }
  }
  const std::uint64_t total = std::uint64_t{1} << p.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<std::size_t> xs, fxs;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if ((mask >> i) & 1) {
        xs.push_back(i);
        fxs.push_back(image[i]);
      }
    }
    if (p.has_upper_bound(xs) != q.has_upper_bound(fxs)) {
      report.fail("upper-bound existence differs for subset mask " + std::to_string(mask));
    }
    if (p.has_nonzero_lower_bound(xs) != q.has_nonzero_lower_bound(fxs)) {
      report.fail("nonzero-lower-bound existence differs for subset mask " + std::to_string(mask));
    }
  }
  report.note("checked both clauses over all " + std::to_string(total) + " subsets");
  return report;
}

FinitePoset family_poset(const ObstacleFamily& family) {
  std::vector<IndexSet> members = family_members(family);
  std::vector<std::string> names;
  for (const auto& m : members) names.push_back(m.str());
  std::vector<std::pair<std::string, std::string>> below;
  for (const auto& a : members) {
    for (const auto& b : members) {
      if (a.subset_of(b)) below.emplace_back(a.str(), b.str());
    }
  }
  return FinitePoset(std::move(names), std::move(below));
}

}  // namespace cohen
