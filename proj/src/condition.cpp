#include "cohen/condition.hpp"

#include <algorithm>

#include "cohen/errors.hpp"

namespace cohen {

namespace {

std::optional<std::uint64_t> parse_numeric(const std::string& text) {
  if (text.empty() || text.size() > 18) return std::nullopt;
  std::uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

}  // namespace

Label::Label(std::string text) : text_(std::move(text)), numeric_(parse_numeric(text_)) {}

Label::Label(std::uint64_t n) : text_(std::to_string(n)), numeric_(n) {}

bool Label::operator<(const Label& other) const {
  if (numeric_ && other.numeric_) {
    if (*numeric_ != *other.numeric_) return *numeric_ < *other.numeric_;
    return text_ < other.text_;
  }
  if (numeric_ != std::nullopt && other.numeric_ == std::nullopt) return true;
  if (numeric_ == std::nullopt && other.numeric_ != std::nullopt) return false;
  return text_ < other.text_;
}

IndexSet::IndexSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

IndexSet IndexSet::of(std::initializer_list<std::string> names) {
  std::vector<Label> ls;
  for (const auto& n : names) ls.emplace_back(n);
  return IndexSet(std::move(ls));
}

IndexSet IndexSet::range(std::uint64_t n) {
  std::vector<Label> ls;
  ls.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) ls.emplace_back(i);
  return IndexSet(std::move(ls));
}

bool IndexSet::contains(const Label& l) const {
  return std::binary_search(labels_.begin(), labels_.end(), l);
}

bool IndexSet::subset_of(const IndexSet& other) const {
  return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(), labels_.end());
}

IndexSet IndexSet::unioned(const IndexSet& other) const {
  std::vector<Label> out;
  std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                 std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  std::vector<Label> out;
  std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                        std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::minus(const IndexSet& other) const {
  std::vector<Label> out;
  std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                      std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet IndexSet::with(const Label& l) const {
  auto ls = labels_;
  ls.push_back(l);
  return IndexSet(std::move(ls));
}

bool IndexSet::labels_lt(const IndexSet& other) const {
  return std::lexicographical_compare(labels_.begin(), labels_.end(), other.labels_.begin(),
                                      other.labels_.end());
}

std::string IndexSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ",";
    out += labels_[i].text();
  }
  out += "}";
  return out;
}

MatrixCondition::MatrixCondition(IndexSet index_set, std::map<Label, BitString> columns)
    : index_set_(std::move(index_set)) {
  for (auto& [label, bits] : columns) {
    if (!index_set_.contains(label)) {
      throw StructuralError("column label " + label.text() + " outside index set " + index_set_.str());
    }
    if (!bits.empty()) columns_.emplace(label, std::move(bits));
  }
}

const BitString& MatrixCondition::column(const Label& l) const {
  static const BitString kEmpty;
  if (!index_set_.contains(l)) {
    throw DomainError("label " + l.text() + " outside index set " + index_set_.str());
  }
  auto it = columns_.find(l);
  return it == columns_.end() ? kEmpty : it->second;
}

void MatrixCondition::set_column(const Label& l, BitString bits) {
  if (!index_set_.contains(l)) {
    throw DomainError("label " + l.text() + " outside index set " + index_set_.str());
  }
  if (bits.empty()) {
    columns_.erase(l);
  } else {
    columns_[l] = std::move(bits);
  }
}

void MatrixCondition::append_bit(const Label& l, int b) {
  if (!index_set_.contains(l)) {
    throw DomainError("label " + l.text() + " outside index set " + index_set_.str());
  }
  columns_[l].push_back(b);
}

IndexSet MatrixCondition::support() const {
  std::vector<Label> ls;
  for (const auto& [label, bits] : columns_) ls.push_back(label);
  return IndexSet(std::move(ls));
}

std::size_t MatrixCondition::height() const {
  std::size_t h = 0;
  for (const auto& [label, bits] : columns_) h = std::max(h, bits.size());
  return h;
}

bool MatrixCondition::is_uniform() const {
  std::size_t h = height();
  for (const auto& [label, bits] : columns_) {
    if (bits.size() != h) return false;
  }
  return true;
}

bool extends(const MatrixCondition& p, const MatrixCondition& q) {
  if (p.index_set() != q.index_set()) {
    throw StructuralError("extends: index sets differ (" + p.index_set().str() + " vs " +
                          q.index_set().str() + ")");
  }
  for (const auto& [label, bits] : q.columns()) {
    if (!extends(p.column(label), bits)) return false;
  }
  return true;
}

bool j_extension(const MatrixCondition& p, const MatrixCondition& q, const IndexSet& j) {
  if (p.index_set() != q.index_set()) {
    throw StructuralError("j_extension: index sets differ");
  }
  if (!j.subset_of(p.index_set())) {
    throw DomainError("j_extension: J " + j.str() + " outside index set " + p.index_set().str());
  }
  if (!extends(p, q)) return false;
  for (const Label& l : p.index_set()) {
    if (j.contains(l)) continue;
    if (p.column(l) != q.column(l)) return false;
  }
  return true;
}

MatrixCondition pad_uniform(const MatrixCondition& p) {
  std::size_t h = p.height();
  MatrixCondition out(p.index_set());
  for (const auto& [label, bits] : p.columns()) out.set_column(label, bits.padded(h));
  return out;
}

MatrixCondition pad_to_height(const MatrixCondition& p, std::size_t h) {
  h = std::max(h, p.height());
  MatrixCondition out(p.index_set());
  for (const Label& l : p.index_set()) out.set_column(l, p.column(l).padded(h));
  return out;
}

MatrixCondition restrict(const MatrixCondition& p, const IndexSet& a) {
  if (!a.subset_of(p.index_set())) {
    throw DomainError("restrict: " + a.str() + " outside index set " + p.index_set().str());
  }
  MatrixCondition out(a);
  for (const Label& l : a) out.set_column(l, p.column(l));
  return out;
}

bool compatible(const MatrixCondition& p, const MatrixCondition& q) {
  if (p.index_set() != q.index_set()) {
    throw StructuralError("compatible: index sets differ");
  }
  for (const auto& [label, bits] : q.columns()) {
    const BitString& mine = p.column(label);
    std::size_t overlap = std::min(mine.size(), bits.size());
    for (std::size_t i = 0; i < overlap; ++i) {
      if (mine.bit(i) != bits.bit(i)) return false;
    }
  }
  return true;
}

std::optional<MatrixCondition> merge(const MatrixCondition& p, const MatrixCondition& q) {
  if (!compatible(p, q)) return std::nullopt;
  MatrixCondition out(p.index_set());
  for (const Label& l : p.index_set()) {
    const BitString& a = p.column(l);
    const BitString& b = q.column(l);
    out.set_column(l, a.size() >= b.size() ? a : b);
  }
  return out;
}

}  // namespace cohen
