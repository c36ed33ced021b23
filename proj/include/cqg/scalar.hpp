#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cqg/error.hpp"

namespace cqg {

using Rat = mpq_class;

/// Gaussian rational a + b*i.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long v) : re(v), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }

  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat inv() const;
  GaussRat operator/(const GaussRat& o) const { return *this * o.inv(); }

  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }
  int cmp(const GaussRat& o) const;

  /// e.g. "3", "-1/2", "i", "2+3*i".
  std::string str() const;
};

/// Dense polynomial in the formal parameter s with GaussRat coefficients.
class SPoly {
public:
  SPoly() = default;
  explicit SPoly(GaussRat c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  static SPoly monomial(GaussRat c, int deg);
  static SPoly one() { return SPoly(GaussRat(1)); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
  const GaussRat& coeff(int deg) const;
  const GaussRat& leading() const { return c_.back(); }

  SPoly operator+(const SPoly& o) const;
  SPoly operator-(const SPoly& o) const;
  SPoly operator*(const SPoly& o) const;
  SPoly operator-() const;
  SPoly scalar_mul(const GaussRat& c) const;
  SPoly conj() const; // i -> -i, s fixed

  /// Division with remainder; divisor must be nonzero.
  static void divrem(const SPoly& a, const SPoly& b, SPoly& q, SPoly& r);
  static SPoly gcd(SPoly a, SPoly b); // monic gcd
  SPoly monic() const;

  GaussRat eval(const GaussRat& s0) const;

  bool operator==(const SPoly& o) const { return c_ == o.c_; }
  int cmp(const SPoly& o) const;

private:
  void trim();
  std::vector<GaussRat> c_; // c_[k] is the coefficient of s^k
};

/// Element of Q(i)(s): a reduced fraction of SPolys with monic denominator.
/// q is an alias for s^2 in the text grammar.
class Scalar {
public:
  Scalar() : num_(), den_(SPoly::one()) {}
  Scalar(long v) : num_(GaussRat(v)), den_(SPoly::one()) {}
  Scalar(GaussRat c) : num_(std::move(c)), den_(SPoly::one()) {}
  Scalar(SPoly num, SPoly den);

  static Scalar s_power(int k); // s^k, k may be negative
  static Scalar q_power(int k); // (s^2)^k
  static Scalar i();

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == SPoly::one() && den_ == SPoly::one(); }
  const SPoly& num() const { return num_; }
  const SPoly& den() const { return den_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;
  Scalar conj() const;
  Scalar pow(int k) const;

  bool operator==(const Scalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  int cmp(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return cmp(o) < 0; }

  /// Exact substitution s -> s0; throws PoleAtPoint if the denominator
  /// vanishes there.
  GaussRat eval(const Rat& s0) const;

  /// Canonical text form; parses back exactly.
  std::string str() const;
  static Scalar parse(const std::string& text);

private:
  void canonicalize();
  SPoly num_, den_;
};

/// [n]_q = (q^n - q^{-n}) / (q - q^{-1}) in reduced form.
Scalar qnumber(int n);

/// Dense matrix of Scalars.
class ScalarMatrix {
public:
  ScalarMatrix() : rows_(0), cols_(0) {}
  ScalarMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static ScalarMatrix identity(int n);
  static ScalarMatrix diag(std::vector<Scalar> d);
  /// The second Pauli matrix ((0,-i),(i,0)).
  static ScalarMatrix pauli2();

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const {
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  ScalarMatrix operator+(const ScalarMatrix& o) const;
  ScalarMatrix operator-(const ScalarMatrix& o) const;
  ScalarMatrix operator*(const ScalarMatrix& o) const;
  ScalarMatrix transpose() const;
  ScalarMatrix conj() const;    // entrywise conj
  ScalarMatrix adjoint() const; // conj transpose
  ScalarMatrix inverse() const; // throws SingularMatrix
  ScalarMatrix kron(const ScalarMatrix& o) const;
  Scalar det() const;
  bool is_identity() const;
  bool operator==(const ScalarMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  /// Parses a matrix literal [[..],[..]] in the Scalar grammar.
  static ScalarMatrix parse(const std::string& text);
  std::string str() const;

private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

} // namespace cqg
