#include "cohen/dense.hpp"

#include <json.hpp>

#include "cohen/errors.hpp"
#include "cohen/json_io.hpp"

namespace cohen {

using nlohmann::json;

MatrixCondition meet_checked(const DenseRequirement& d, const MatrixCondition& p) {
  MatrixCondition r = d.meet(p);
  if (!extends(r, p)) {
    throw Error("meet oracle of " + d.description + " returned a non-extension");
  }
  if (!d.member(r)) {
    throw Error("meet oracle of " + d.description + " returned a non-member");
  }
  return r;
}

MatrixCondition immunize_checked(const DenseRequirement& d, const MatrixCondition& p) {
  if (!d.immunizer) {
    throw DomainError("requirement " + d.description + " has no immunization oracle");
  }
  MatrixCondition r = d.immunizer(p);
  if (!extends(r, p)) {
    throw Error("immunizer of " + d.description + " returned a non-extension");
  }
  if (!d.member(r)) {
    throw Error("immunizer of " + d.description + " returned a non-member");
  }
  return r;
}

DenseRequirement min_length(IndexSet coords, std::size_t n) {
  DenseRequirement d;
  d.coordinates = coords;
  d.description = "MinLength(" + std::to_string(n) + ") on " + coords.str();
  d.serialized = json{{"kind", "MinLength"}, {"n", n}, {"coordinates", io::to_json(coords)}}.dump();
  d.member = [coords, n](const MatrixCondition& p) {
    for (const Label& l : coords) {
      if (p.column(l).size() < n) return false;
    }
    return true;
  };
  d.meet = [coords, n](const MatrixCondition& p) {
    MatrixCondition out = p;
    for (const Label& l : coords) out.set_column(l, p.column(l).padded(n));
    return out;
  };
  d.immunizer = d.meet;
  return d;
}

DenseRequirement contains_pattern(IndexSet coords, BitString pattern, Label column) {
  if (pattern.empty()) throw DomainError("ContainsPattern: empty pattern");
  if (!coords.contains(column)) {
    throw DomainError("ContainsPattern: column " + column.text() + " not in " + coords.str());
  }
  DenseRequirement d;
  d.coordinates = coords;
  d.description = "ContainsPattern(" + pattern.str() + ", " + column.text() + ")";
  d.serialized = json{{"kind", "ContainsPattern"},
                     {"pattern", pattern.str()},
                     {"column", column.text()},
                     {"coordinates", io::to_json(coords)}}
                    .dump();
  d.member = [pattern, column](const MatrixCondition& p) {
    const BitString& col = p.column(column);
    if (col.size() < pattern.size()) return false;
    for (std::size_t start = 0; start + pattern.size() <= col.size(); ++start) {
      bool hit = true;
      for (std::size_t i = 0; i < pattern.size() && hit; ++i) {
        hit = col.bit(start + i) == pattern.bit(i);
      }
      if (hit) return true;
    }
    return false;
  };
  auto member = d.member;
  d.meet = [pattern, column, member](const MatrixCondition& p) {
    if (member(p)) return p;
    MatrixCondition out = p;
    BitString col = p.column(column);
    col.append(pattern);
    out.set_column(column, col);
    return out;
  };
  d.immunizer = [pattern, column](const MatrixCondition& p) {
    // Pattern written entirely above the current height survives any
    // modification of the rows below it.
    MatrixCondition out = p;
    BitString col = p.column(column).padded(p.height());
    col.append(pattern);
    out.set_column(column, col);
    return out;
  };
  return d;
}

DenseRequirement decides_name(FiniteName name, std::uint64_t k) {
  DenseRequirement d;
  d.coordinates = name.coordinates;
  d.description = "DecidesName(k=" + std::to_string(k) + ")";
  d.serialized =
      json{{"kind", "DecidesName"}, {"k", k}, {"name", io::to_json(name)}}.dump();
  d.member = [name, k](const MatrixCondition& p) {
    return forces_in(p, k, name) != Decision::Undecided;
  };
  d.meet = [name, k](const MatrixCondition& p) {
    if (forces_in(p, k, name) != Decision::Undecided) return p;
    auto ext = find_deciding_extension(p, k, name, Decision::ForcedIn);
    if (!ext) ext = find_deciding_extension(p, k, name, Decision::ForcedOut);
    if (!ext) throw Error("DecidesName: undecided condition admits no deciding extension");
    return *ext;
  };
  d.immunizer = [name, k](const MatrixCondition& p) {
    // Once every column reaches the deepest bit the value-k entries mention,
    // the decision is determined by containment and survives any rewrite.
    std::map<Label, std::size_t> lens;
    for (const Label& l : name.coordinates) lens[l] = 0;
    for (const auto& [cond, value] : name.entries) {
      if (value != k) continue;
      for (const auto& [label, bits] : cond.columns()) {
        lens[label] = std::max(lens[label], bits.size());
      }
    }
    MatrixCondition out = p;
    for (const auto& [label, len] : lens) {
      out.set_column(label, p.column(label).padded(len));
    }
    return out;
  };
  return d;
}

DenseRequirement splits_columns(IndexSet coords, Label i, Label j) {
  if (!coords.contains(i) || !coords.contains(j) || i == j) {
    throw DomainError("SplitsColumns: need two distinct columns inside " + coords.str());
  }
  DenseRequirement d;
  d.coordinates = coords;
  d.description = "SplitsColumns(" + i.text() + ", " + j.text() + ")";
  d.serialized = json{{"kind", "SplitsColumns"},
                     {"i", i.text()},
                     {"j", j.text()},
                     {"coordinates", io::to_json(coords)}}
                    .dump();
  d.member = [i, j](const MatrixCondition& p) {
    const BitString& a = p.column(i);
    const BitString& b = p.column(j);
    std::size_t overlap = std::min(a.size(), b.size());
    for (std::size_t pos = 0; pos < overlap; ++pos) {
      if (a.bit(pos) != b.bit(pos)) return true;
    }
    return false;
  };
  auto member = d.member;
  d.meet = [i, j, member](const MatrixCondition& p) {
    if (member(p)) return p;
    MatrixCondition out = p;
    std::size_t L = std::max(p.column(i).size(), p.column(j).size());
    BitString a = p.column(i).padded(L);
    BitString b = p.column(j).padded(L);
    a.push_back(0);
    b.push_back(1);
    out.set_column(i, a);
    out.set_column(j, b);
    return out;
  };
  d.immunizer = [i, j](const MatrixCondition& p) {
    MatrixCondition out = p;
    std::size_t h = p.height();
    BitString a = p.column(i).padded(h);
    BitString b = p.column(j).padded(h);
    a.push_back(0);
    b.push_back(1);
    out.set_column(i, a);
    out.set_column(j, b);
    return out;
  };
  return d;
}

DenseRequirement marker_chaff(IndexSet coords) {
  if (coords.empty()) throw DomainError("MarkerChaff: empty coordinate set");
  DenseRequirement d;
  d.coordinates = coords;
  d.description = "MarkerChaff on " + coords.str();
  d.serialized = json{{"kind", "MarkerChaff"}, {"coordinates", io::to_json(coords)}}.dump();
  d.member = [coords](const MatrixCondition& p) {
    std::size_t m = SIZE_MAX;
    for (const Label& l : coords) m = std::min(m, p.column(l).size());
    if (m == SIZE_MAX || m == 0) return false;
    for (std::size_t r = 0; r + 1 < m; ++r) {
      bool row_one = true, prev_zero = true, next_zero = true;
      for (const Label& l : coords) {
        const BitString& col = p.column(l);
        if (col.bit(r) != 1) row_one = false;
        if (r > 0 && col.bit(r - 1) != 0) prev_zero = false;
        if (col.bit(r + 1) != 0) next_zero = false;
      }
      if (row_one && prev_zero && next_zero) return true;
    }
    return false;
  };
  auto member = d.member;
  auto extend = [coords](const MatrixCondition& p) {
    MatrixCondition out = p;
    std::size_t L = 0;
    for (const Label& l : coords) L = std::max(L, p.column(l).size());
    for (const Label& l : coords) {
      BitString col = p.column(l).padded(L);
      col.push_back(0);
      col.push_back(1);
      col.push_back(0);
      out.set_column(l, col);
    }
    return out;
  };
  d.meet = [member, extend](const MatrixCondition& p) { return member(p) ? p : extend(p); };
  d.immunizer = extend;
  return d;
}

namespace {

// All bit strings of length 0..depth, shortest first.
std::vector<BitString> strings_up_to(int depth) {
  std::vector<BitString> out;
  out.emplace_back();
  for (int len = 1; len <= depth; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      BitString s;
      for (int i = 0; i < len; ++i) s.push_back(static_cast<int>((bits >> i) & 1));
      out.push_back(std::move(s));
    }
  }
  return out;
}

void for_each_condition(const IndexSet& coords, const std::vector<BitString>& pool,
                        const std::function<void(const MatrixCondition&)>& fn) {
  std::vector<Label> labels(coords.labels().begin(), coords.labels().end());
  MatrixCondition cur(coords);
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == labels.size()) {
      fn(cur);
      return;
    }
    for (const BitString& s : pool) {
      cur.set_column(labels[idx], s);
      rec(idx + 1);
    }
    cur.set_column(labels[idx], BitString());
  };
  rec(0);
}

std::string describe(const MatrixCondition& p) {
  std::string out = "{";
  bool first = true;
  for (const Label& l : p.index_set()) {
    if (!first) out += ", ";
    first = false;
    out += l.text() + ":\"" + p.column(l).str() + "\"";
  }
  return out + "}";
}

}  // namespace

Report check_dense_open(const DenseRequirement& d, int depth) {
  if (depth < 1) throw DomainError("check_dense_open: depth must be >= 1");
  Report report;
  auto pool = strings_up_to(depth);
  double total = 1;
  for (std::size_t i = 0; i < d.coordinates.size(); ++i) total *= static_cast<double>(pool.size());
  if (total > 2'000'000.0) {
    throw ResourceError("check_dense_open: enumeration of " + std::to_string(total) +
                        " conditions exceeds the bound");
  }

  for_each_condition(d.coordinates, pool, [&](const MatrixCondition& p) {
    MatrixCondition r = d.meet(p);
    bool ext_ok = extends(r, p);
    if (!ext_ok) {
      report.fail("meet(" + describe(p) + ") does not extend its input");
    } else if (!d.member(r)) {
      report.fail("meet(" + describe(p) + ") = " + describe(r) + " is not a member");
    }
    if (d.member(p)) {
      // One-bit extensions cover every openness failure within the depth
      // bound: along any chain into a non-member there is a first bad step.
      for (const Label& l : d.coordinates) {
        for (int b = 0; b <= 1; ++b) {
          MatrixCondition q = p;
          q.append_bit(l, b);
          if (!d.member(q)) {
            report.fail("openness violation: " + describe(p) + " is a member but " + describe(q) +
                        " is not");
          }
        }
      }
    }
  });
  report.note("audited all conditions of column length <= " + std::to_string(depth) + " for " +
              d.description);
  return report;
}

bool meets(const MatrixCondition& x, const DenseRequirement& d) {
  if (!d.coordinates.subset_of(x.index_set())) {
    throw DomainError("meets: requirement coordinates " + d.coordinates.str() +
                      " not within " + x.index_set().str());
  }
  MatrixCondition y = restrict(x, d.coordinates);
  std::size_t h = y.height();
  for (std::size_t cut = h + 1; cut-- > 0;) {
    MatrixCondition trunc(d.coordinates);
    for (const Label& l : d.coordinates) trunc.set_column(l, y.column(l).prefix(cut));
    if (d.member(trunc)) return true;
  }
  return false;
}

bool member1(const DenseRequirement& d, const BitString& p) {
  if (d.coordinates.size() != 1) {
    throw DomainError("expected a single-coordinate requirement, got " + d.coordinates.str());
  }
  MatrixCondition cond(d.coordinates);
  cond.set_column(d.coordinates.labels().front(), p);
  return d.member(cond);
}

BitString meet1(const DenseRequirement& d, const BitString& p) {
  if (d.coordinates.size() != 1) {
    throw DomainError("expected a single-coordinate requirement, got " + d.coordinates.str());
  }
  MatrixCondition cond(d.coordinates);
  const Label l = d.coordinates.labels().front();
  cond.set_column(l, p);
  return meet_checked(d, cond).column(l);
}

}  // namespace cohen
