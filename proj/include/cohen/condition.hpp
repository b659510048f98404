#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohen/bitstring.hpp"

namespace cohen {

// A column index. Labels are text, but all-digit labels order numerically so
// that {"2", "10"} sorts the way people expect; ties break on the text, which
// keeps the order consistent with equality ("01" and "1" are distinct labels).
class Label {
public:
  Label() = default;
  explicit Label(std::string text);
  explicit Label(std::uint64_t n);

  const std::string& text() const { return text_; }
  std::optional<std::uint64_t> numeric() const { return numeric_; }

  bool operator==(const Label& other) const { return text_ == other.text_; }
  bool operator<(const Label& other) const;

private:
  std::string text_;
  std::optional<std::uint64_t> numeric_;
};

// A finite set of distinct labels, kept sorted.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(std::vector<Label> labels);

  static IndexSet of(std::initializer_list<std::string> names);
  // {0, 1, ..., n-1} as numeric labels.
  static IndexSet range(std::uint64_t n);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool contains(const Label& l) const;
  bool subset_of(const IndexSet& other) const;

  IndexSet unioned(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  IndexSet with(const Label& l) const;

  const std::vector<Label>& labels() const { return labels_; }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool operator==(const IndexSet&) const = default;
  bool operator<(const IndexSet& other) const { return labels_lt(other); }

  std::string str() const;

private:
  bool labels_lt(const IndexSet& other) const;
  std::vector<Label> labels_;
};

// A finitely supported family of bit strings over an index set: a condition in
// a finite product of Cohen forcings. Absent columns are empty.
class MatrixCondition {
public:
  MatrixCondition() = default;
  explicit MatrixCondition(IndexSet index_set) : index_set_(std::move(index_set)) {}
  MatrixCondition(IndexSet index_set, std::map<Label, BitString> columns);

  const IndexSet& index_set() const { return index_set_; }

  // Empty for absent indices; DomainError for labels outside the index set.
  const BitString& column(const Label& l) const;
  void set_column(const Label& l, BitString bits);
  void append_bit(const Label& l, int b);

  // Indices with nonempty columns.
  IndexSet support() const;
  // Greatest column length.
  std::size_t height() const;
  // All nonempty columns have equal length.
  bool is_uniform() const;

  // Only the nonempty columns.
  const std::map<Label, BitString>& columns() const { return columns_; }

  bool operator==(const MatrixCondition&) const = default;

private:
  IndexSet index_set_;
  std::map<Label, BitString> columns_;
};

// Condition order: every bit of q appears at the same position in p, per
// column. Same index set required (StructuralError otherwise).
bool extends(const MatrixCondition& p, const MatrixCondition& q);

// extends(p, q) and p agrees with q exactly on every column outside J.
// J must be a subset of the shared index set.
bool j_extension(const MatrixCondition& p, const MatrixCondition& q, const IndexSet& j);

// Every nonempty column extended with trailing zeros to the maximum nonempty
// column length. Empty columns stay empty. Idempotent; extends its input.
MatrixCondition pad_uniform(const MatrixCondition& p);

// Every column of the index set (including empty ones) extended with zeros to
// height at least h. The builders use this to keep conditions uniform.
MatrixCondition pad_to_height(const MatrixCondition& p, std::size_t h);

// The condition restricted to index set a (which must be a subset).
MatrixCondition restrict(const MatrixCondition& p, const IndexSet& a);

// Columnwise least common extension, if the two conditions are compatible.
std::optional<MatrixCondition> merge(const MatrixCondition& p, const MatrixCondition& q);

// Neither condition's columns contradict the other's prefix anywhere.
bool compatible(const MatrixCondition& p, const MatrixCondition& q);

}  // namespace cohen
