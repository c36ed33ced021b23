#include "cqg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cqg {

// ---------------------------------------------------------------------------
// GaussRat

GaussRat GaussRat::inv() const {
  if (is_zero()) fail(ErrorCode::SingularMatrix, "division by zero scalar");
  Rat n = re * re + im * im;
  return {re / n, -im / n};
}

int GaussRat::cmp(const GaussRat& o) const {
  int c = ::cmp(re, o.re);
  if (c != 0) return c;
  return ::cmp(im, o.im);
}

std::string GaussRat::str() const {
  std::ostringstream out;
  if (im == 0) {
    out << re;
  } else if (re == 0) {
    if (im == 1)
      out << "i";
    else if (im == -1)
      out << "-i";
    else
      out << im << "*i";
  } else {
    out << re;
    if (im > 0) out << "+";
    if (im == 1)
      out << "i";
    else if (im == -1)
      out << "-i";
    else
      out << im << "*i";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// SPoly

void SPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

SPoly SPoly::monomial(GaussRat c, int deg) {
  SPoly p;
  if (c.is_zero()) return p;
  p.c_.assign(deg + 1, GaussRat());
  p.c_[deg] = std::move(c);
  return p;
}

const GaussRat& SPoly::coeff(int deg) const {
  static const GaussRat zero;
  if (deg < 0 || deg >= static_cast<int>(c_.size())) return zero;
  return c_[deg];
}

SPoly SPoly::operator+(const SPoly& o) const {
  SPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = coeff(k) + o.coeff(k);
  r.trim();
  return r;
}

SPoly SPoly::operator-(const SPoly& o) const { return *this + (-o); }

SPoly SPoly::operator-() const {
  SPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

SPoly SPoly::operator*(const SPoly& o) const {
  SPoly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, GaussRat());
  for (size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (size_t b = 0; b < o.c_.size(); ++b)
      r.c_[a + b] = r.c_[a + b] + c_[a] * o.c_[b];
  }
  r.trim();
  return r;
}

SPoly SPoly::scalar_mul(const GaussRat& c) const {
  SPoly r;
  if (c.is_zero()) return r;
  r.c_ = c_;
  for (auto& x : r.c_) x = x * c;
  return r;
}

SPoly SPoly::conj() const {
  SPoly r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

void SPoly::divrem(const SPoly& a, const SPoly& b, SPoly& q, SPoly& r) {
  if (b.is_zero()) fail(ErrorCode::SingularMatrix, "polynomial division by zero");
  q = SPoly();
  r = a;
  GaussRat lead_inv = b.leading().inv();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    GaussRat c = r.leading() * lead_inv;
    q = q + monomial(c, d);
    r = r - b * monomial(c, d);
  }
}

SPoly SPoly::gcd(SPoly a, SPoly b) {
  while (!b.is_zero()) {
    SPoly q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

SPoly SPoly::monic() const {
  if (is_zero()) return *this;
  return scalar_mul(leading().inv());
}

GaussRat SPoly::eval(const GaussRat& s0) const {
  GaussRat v;
  for (size_t k = c_.size(); k-- > 0;) v = v * s0 + c_[k];
  return v;
}

int SPoly::cmp(const SPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree() ? -1 : 1;
  for (int k = degree(); k >= 0; --k) {
    int c = c_[k].cmp(o.c_[k]);
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::SingularMatrix, "zero denominator");
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = SPoly::one();
    return;
  }
  SPoly g = SPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    SPoly q, r;
    SPoly::divrem(num_, g, q, r);
    num_ = q;
    SPoly::divrem(den_, g, q, r);
    den_ = q;
  }
  GaussRat lead_inv = den_.leading().inv();
  num_ = num_.scalar_mul(lead_inv);
  den_ = den_.scalar_mul(den_.leading().inv());
}

Scalar Scalar::s_power(int k) {
  if (k >= 0) return Scalar(SPoly::monomial(GaussRat(1), k), SPoly::one());
  return Scalar(SPoly::one(), SPoly::monomial(GaussRat(1), -k));
}

Scalar Scalar::q_power(int k) { return s_power(2 * k); }

Scalar Scalar::i() { return Scalar(GaussRat(Rat(0), Rat(1))); }

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(ErrorCode::SingularMatrix, "inverse of zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::conj() const { return Scalar(num_.conj(), den_.conj()); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inv().pow(-k);
  Scalar r(1), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

int Scalar::cmp(const Scalar& o) const {
  int c = num_.cmp(o.num_);
  if (c != 0) return c;
  return den_.cmp(o.den_);
}

GaussRat Scalar::eval(const Rat& s0) const {
  GaussRat p(s0);
  GaussRat d = den_.eval(p);
  if (d.is_zero())
    fail(ErrorCode::PoleAtPoint, "denominator vanishes at s = " + Rat(s0).get_str());
  return num_.eval(p) / d;
}

// --- printing --------------------------------------------------------------

namespace {

bool all_even_exponents(const SPoly& p) {
  for (int k = 0; k <= p.degree(); ++k)
    if (!p.coeff(k).is_zero() && (k % 2) != 0) return false;
  return true;
}

int term_count(const SPoly& p) {
  int n = 0;
  for (int k = 0; k <= p.degree(); ++k)
    if (!p.coeff(k).is_zero()) ++n;
  return n;
}

std::string term_str(const GaussRat& c, int deg, bool use_q) {
  const char* var = use_q ? "q" : "s";
  int e = use_q ? deg / 2 : deg;
  std::string power;
  if (e == 1)
    power = var;
  else if (e > 1)
    power = std::string(var) + "^" + std::to_string(e);
  if (power.empty()) {
    std::string cs = c.str();
    if (c.im != 0 && c.re != 0) return "(" + cs + ")";
    return cs;
  }
  if (c.im == 0) {
    if (c.re == 1) return power;
    if (c.re == -1) return "-" + power;
    return c.str() + "*" + power;
  }
  if (c.re == 0) {
    if (c.im == 1) return "i*" + power;
    if (c.im == -1) return "-i*" + power;
    return c.str() + "*" + power;
  }
  return "(" + c.str() + ")*" + power;
}

std::string poly_str(const SPoly& p, bool use_q) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const GaussRat& c = p.coeff(k);
    if (c.is_zero()) continue;
    std::string t = term_str(c, k, use_q);
    if (out.empty()) {
      out = t;
    } else if (!t.empty() && t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

} // namespace

std::string Scalar::str() const {
  bool use_q = all_even_exponents(num_) && all_even_exponents(den_);
  std::string ns = poly_str(num_, use_q);
  if (den_ == SPoly::one()) return ns;
  std::string ds = poly_str(den_, use_q);
  if (term_count(num_) > 1) ns = "(" + ns + ")";
  if (term_count(den_) > 1) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Tok {
  enum Kind { Int, Ident, Op, End } kind;
  std::string text;
  size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s), pos_(0) { advance(); }
  const Tok& peek() const { return cur_; }
  Tok next() {
    Tok t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) {
      cur_ = {Tok::End, "", pos_};
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      cur_ = {Tok::Int, s_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      cur_ = {Tok::Ident, s_.substr(start, pos_ - start), start};
      return;
    }
    cur_ = {Tok::Op, std::string(1, c), pos_};
    ++pos_;
  }

  const std::string& s_;
  size_t pos_;
  Tok cur_;
};

class ScalarParser {
public:
  explicit ScalarParser(const std::string& s) : lex_(s) {}

  Scalar parse_full() {
    Scalar v = parse_expr();
    expect_end();
    return v;
  }

  ScalarMatrix parse_matrix_full() {
    expect_op("[");
    std::vector<std::vector<Scalar>> rows;
    for (;;) {
      expect_op("[");
      std::vector<Scalar> row;
      if (!is_op("]")) {
        row.push_back(parse_expr());
        while (is_op(",")) {
          lex_.next();
          row.push_back(parse_expr());
        }
      }
      expect_op("]");
      if (!rows.empty() && row.size() != rows[0].size())
        fail(ErrorCode::ParseError, "ragged matrix literal");
      rows.push_back(std::move(row));
      if (is_op(",")) {
        lex_.next();
        continue;
      }
      break;
    }
    expect_op("]");
    expect_end();
    ScalarMatrix m(static_cast<int>(rows.size()),
                   static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    return m;
  }

private:
  Scalar parse_expr() {
    Scalar v = parse_term();
    while (is_op("+") || is_op("-")) {
      std::string op = lex_.next().text;
      Scalar rhs = parse_term();
      v = (op == "+") ? v + rhs : v - rhs;
    }
    return v;
  }

  Scalar parse_term() {
    Scalar v = parse_factor();
    while (is_op("*") || is_op("/")) {
      std::string op = lex_.next().text;
      Scalar rhs = parse_factor();
      if (op == "/" && rhs.is_zero())
        fail(ErrorCode::ParseError, "division by zero in scalar expression");
      v = (op == "*") ? v * rhs : v / rhs;
    }
    return v;
  }

  Scalar parse_factor() {
    bool neg = false;
    while (is_op("-") || is_op("+")) {
      if (lex_.next().text == "-") neg = !neg;
    }
    Scalar v = parse_atom();
    if (is_op("^")) {
      lex_.next();
      bool eneg = false;
      while (is_op("-")) {
        lex_.next();
        eneg = !eneg;
      }
      Tok t = lex_.next();
      if (t.kind != Tok::Int)
        fail(ErrorCode::ParseError,
             "expected integer exponent at position " + std::to_string(t.pos));
      int e = std::stoi(t.text);
      v = v.pow(eneg ? -e : e);
    }
    return neg ? -v : v;
  }

  Scalar parse_atom() {
    Tok t = lex_.next();
    if (t.kind == Tok::Int) {
      return Scalar(GaussRat(Rat(t.text)));
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "i") return Scalar::i();
      if (t.text == "s") return Scalar::s_power(1);
      if (t.text == "q") return Scalar::s_power(2);
      fail(ErrorCode::ParseError,
           "unknown symbol '" + t.text + "' at position " + std::to_string(t.pos));
    }
    if (t.kind == Tok::Op && t.text == "(") {
      Scalar v = parse_expr();
      expect_op(")");
      return v;
    }
    fail(ErrorCode::ParseError,
         "unexpected token at position " + std::to_string(t.pos));
  }

  bool is_op(const char* op) const {
    return lex_.peek().kind == Tok::Op && lex_.peek().text == op;
  }
  void expect_op(const char* op) {
    if (!is_op(op))
      fail(ErrorCode::ParseError, std::string("expected '") + op +
                                      "' at position " +
                                      std::to_string(lex_.peek().pos));
    lex_.next();
  }
  void expect_end() {
    if (lex_.peek().kind != Tok::End)
      fail(ErrorCode::ParseError, "trailing input at position " +
                                      std::to_string(lex_.peek().pos));
  }

  Lexer lex_;
};

} // namespace

Scalar Scalar::parse(const std::string& text) {
  return ScalarParser(text).parse_full();
}

Scalar qnumber(int n) {
  Scalar q = Scalar::s_power(2);
  return (q.pow(n) - q.pow(-n)) / (q - q.inv());
}

// ---------------------------------------------------------------------------
// ScalarMatrix

ScalarMatrix ScalarMatrix::identity(int n) {
  ScalarMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = Scalar(1);
  return m;
}

ScalarMatrix ScalarMatrix::diag(std::vector<Scalar> d) {
  ScalarMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t k = 0; k < d.size(); ++k)
    m.at(static_cast<int>(k), static_cast<int>(k)) = std::move(d[k]);
  return m;
}

ScalarMatrix ScalarMatrix::pauli2() {
  ScalarMatrix m(2, 2);
  m.at(0, 1) = -Scalar::i();
  m.at(1, 0) = Scalar::i();
  return m;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
  ScalarMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix subtraction shape mismatch");
  ScalarMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
  if (cols_ != o.rows_)
    fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ScalarMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    }
  return r;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

ScalarMatrix ScalarMatrix::conj() const {
  ScalarMatrix r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].conj();
  return r;
}

ScalarMatrix ScalarMatrix::adjoint() const { return conj().transpose(); }

ScalarMatrix ScalarMatrix::inverse() const {
  if (rows_ != cols_)
    fail(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  int n = rows_;
  ScalarMatrix a = *this;
  ScalarMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorCode::SingularMatrix, "matrix is singular");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
    Scalar p = a.at(col, col).inv();
    for (int c = 0; c < n; ++c) {
      a.at(col, c) = a.at(col, c) * p;
      inv.at(col, c) = inv.at(col, c) * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      Scalar f = a.at(r, col);
      for (int c = 0; c < n; ++c) {
        a.at(r, c) = a.at(r, c) - f * a.at(col, c);
        inv.at(r, c) = inv.at(r, c) - f * inv.at(col, c);
      }
    }
  }
  return inv;
}

ScalarMatrix ScalarMatrix::kron(const ScalarMatrix& o) const {
  ScalarMatrix r(rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero()) continue;
      for (int a = 0; a < o.rows_; ++a)
        for (int b = 0; b < o.cols_; ++b)
          r.at(i * o.rows_ + a, j * o.cols_ + b) = at(i, j) * o.at(a, b);
    }
  return r;
}

Scalar ScalarMatrix::det() const {
  if (rows_ != cols_)
    fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  int n = rows_;
  ScalarMatrix a = *this;
  Scalar d(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
      d = -d;
    }
    d = d * a.at(col, col);
    Scalar p = a.at(col, col).inv();
    for (int r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      Scalar f = a.at(r, col) * p;
      for (int c = col; c < n; ++c) a.at(r, c) = a.at(r, c) - f * a.at(col, c);
    }
  }
  return d;
}

bool ScalarMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

ScalarMatrix ScalarMatrix::parse(const std::string& text) {
  return ScalarParser(text).parse_matrix_full();
}

std::string ScalarMatrix::str() const {
  std::string out = "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) out += ",";
    out += "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) out += ",";
      out += at(i, j).str();
    }
    out += "]";
  }
  out += "]";
  return out;
}

} // namespace cqg
