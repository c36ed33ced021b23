#pragma once

#include <vector>

#include "cqg/freestar.hpp"

namespace cqg {

/// Matrix with free-algebra entries; entries multiply noncommutatively.
class GenMatrix {
public:
  GenMatrix() : rows_(0), cols_(0) {}
  GenMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static GenMatrix identity(int n);
  static GenMatrix from_scalar(const ScalarMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  NCPoly& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const NCPoly& at(int r, int c) const {
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  GenMatrix operator+(const GenMatrix& o) const;
  GenMatrix operator-(const GenMatrix& o) const;
  GenMatrix operator*(const GenMatrix& o) const;
  GenMatrix scalar_mul(const Scalar& c) const;
  GenMatrix transpose() const;
  GenMatrix bar(const Alphabet& alph) const;     // entrywise star
  GenMatrix adjoint(const Alphabet& alph) const; // star transpose
  bool operator==(const GenMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const GenMatrix& o) const { return !(*this == o); }

private:
  int rows_, cols_;
  std::vector<NCPoly> a_;
};

GenMatrix operator*(const ScalarMatrix& a, const GenMatrix& b);
GenMatrix operator*(const GenMatrix& a, const ScalarMatrix& b);

/// Row-major entries of lhs - rhs with zero entries, exact duplicates, and
/// nonzero scalar multiples of earlier entries removed.
std::vector<NCPoly> relations_from_eq(const GenMatrix& lhs, const GenMatrix& rhs);

/// Same dedup rule applied to an existing list.
std::vector<NCPoly> dedup_relations(const std::vector<NCPoly>& rels);

} // namespace cqg
