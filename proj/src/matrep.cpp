#include "cqg/matrep.hpp"

#include <set>
#include <sstream>

#include "cqg/error.hpp"

namespace cqg {

GenMatrix GenMatrix::identity(int n) {
  GenMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = NCPoly(Scalar(1));
  return m;
}

GenMatrix GenMatrix::from_scalar(const ScalarMatrix& s) {
  GenMatrix m(s.rows(), s.cols());
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (!s.at(i, j).is_zero()) m.at(i, j) = NCPoly(s.at(i, j));
  return m;
}

GenMatrix GenMatrix::operator+(const GenMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
  GenMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

GenMatrix GenMatrix::operator-(const GenMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix subtraction shape mismatch");
  GenMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

GenMatrix GenMatrix::operator*(const GenMatrix& o) const {
  if (cols_ != o.rows_)
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  GenMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
      }
    }
  return r;
}

GenMatrix GenMatrix::scalar_mul(const Scalar& c) const {
  GenMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].scalar_mul(c);
  return r;
}

GenMatrix GenMatrix::transpose() const {
  GenMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

GenMatrix GenMatrix::bar(const Alphabet& alph) const {
  GenMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].star(alph);
  return r;
}

GenMatrix GenMatrix::adjoint(const Alphabet& alph) const {
  return bar(alph).transpose();
}

GenMatrix operator*(const ScalarMatrix& a, const GenMatrix& b) {
  return GenMatrix::from_scalar(a) * b;
}

GenMatrix operator*(const GenMatrix& a, const ScalarMatrix& b) {
  return a * GenMatrix::from_scalar(b);
}

namespace {

// Name-free canonical key of the monic normalization (leading coefficient 1).
std::string monic_key(const NCPoly& p) {
  Scalar lead = p.terms().rbegin()->second;
  NCPoly m = p.scalar_mul(lead.inv());
  std::ostringstream out;
  for (const auto& [w, c] : m.terms()) {
    out << "[";
    for (int g : w) out << g << ",";
    out << "]=" << c.str() << ";";
  }
  return out.str();
}

} // namespace

std::vector<NCPoly> dedup_relations(const std::vector<NCPoly>& rels) {
  std::vector<NCPoly> out;
  std::set<std::string> seen;
  for (const NCPoly& r : rels) {
    if (r.is_zero()) continue;
    if (seen.insert(monic_key(r)).second) out.push_back(r);
  }
  return out;
}

std::vector<NCPoly> relations_from_eq(const GenMatrix& lhs, const GenMatrix& rhs) {
  GenMatrix d = lhs - rhs;
  std::vector<NCPoly> rels;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) rels.push_back(d.at(i, j));
  return dedup_relations(rels);
}

} // namespace cqg
