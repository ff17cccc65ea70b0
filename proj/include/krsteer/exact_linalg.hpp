#pragma once

#include <map>
#include <optional>
#include <vector>

#include "krsteer/rational.hpp"

namespace krsteer {

/// Incrementally built span of sparse rational vectors with exact Gaussian
/// elimination. Tracks, for every stored row, its expression in terms of the
/// vectors inserted so far, so dependent vectors can be given coordinates in
/// the inserted family.
template <typename Key>
class ExactSpan {
 public:
  using SparseVec = std::map<Key, Rational>;

  int size() const { return num_inserted_; }

  /// Reduces v against the current rows. Returns the coordinates of v in the
  /// inserted family when v is dependent; otherwise std::nullopt, inserting v
  /// as a new member when `insert` is set.
  std::optional<std::vector<Rational>> reduce(const SparseVec& v, bool insert) {
    SparseVec rem = v;
    std::vector<Rational> coords(num_inserted_, Rational(0));
    for (const Row& row : rows_) {
      auto it = rem.find(row.pivot);
      if (it == rem.end()) continue;
      Rational f = it->second;
      for (const auto& [k, c] : row.vec) {
        auto jt = rem.find(k);
        if (jt == rem.end()) {
          rem[k] = -f * c;
        } else {
          jt->second -= f * c;
          if (jt->second == 0) rem.erase(jt);
        }
      }
      for (std::size_t k = 0; k < row.comb.size(); ++k) coords[k] += f * row.comb[k];
    }
    if (rem.empty()) return coords;
    if (insert) {
      Row row;
      row.pivot = rem.begin()->first;
      Rational lead = rem.begin()->second;
      for (const auto& [k, c] : rem) row.vec[k] = c / lead;
      row.comb.resize(num_inserted_ + 1, Rational(0));
      for (std::size_t k = 0; k < coords.size(); ++k) row.comb[k] = -coords[k] / lead;
      row.comb[num_inserted_] = 1 / lead;
      rows_.push_back(std::move(row));
      ++num_inserted_;
    }
    return std::nullopt;
  }

  bool contains(const SparseVec& v) const { return const_cast<ExactSpan*>(this)->peek(v); }

 private:
  bool peek(const SparseVec& v) {
    SparseVec rem = v;
    for (const Row& row : rows_) {
      auto it = rem.find(row.pivot);
      if (it == rem.end()) continue;
      Rational f = it->second;
      for (const auto& [k, c] : row.vec) {
        auto jt = rem.find(k);
        if (jt == rem.end()) {
          rem[k] = -f * c;
        } else {
          jt->second -= f * c;
          if (jt->second == 0) rem.erase(jt);
        }
      }
    }
    return rem.empty();
  }

  struct Row {
    SparseVec vec;  // normalized: coefficient at pivot is 1
    Key pivot;
    std::vector<Rational> comb;  // expression in inserted vectors
  };
  std::vector<Row> rows_;
  int num_inserted_ = 0;
};

/// Exact d x d rational matrix with just the operations the Lie-algebra side
/// needs.
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[i * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  RationalMatrix operator*(const RationalMatrix& o) const {
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (o.at(k, j) == 0) continue;
          r.at(i, j) += at(i, k) * o.at(k, j);
        }
      }
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

}  // namespace krsteer
