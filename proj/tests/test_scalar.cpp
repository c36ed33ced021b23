#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqg/scalar.hpp"

using namespace cqg;

namespace {

// Independent oracle: [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}.
Scalar qnumber_oracle(int n) {
  Scalar acc(0);
  for (int k = 0; k < n; ++k) acc = acc + Scalar::q_power(n - 1 - 2 * k);
  return acc;
}

} // namespace

TEST_CASE("gaussian rational arithmetic") {
  GaussRat i(Rat(0), Rat(1));
  CHECK(i * i == GaussRat(-1));
  CHECK((i * i.conj()) == GaussRat(1));
  GaussRat z(Rat(3), Rat(-2));
  CHECK(z * z.inv() == GaussRat(1));
  CHECK(z.conj().conj() == z);
}

TEST_CASE("scalar field arithmetic and canonical form") {
  Scalar s = Scalar::s_power(1);
  Scalar q = Scalar::s_power(2);
  CHECK(s * s == q);
  CHECK(q * q.inv() == Scalar(1));
  CHECK((s + Scalar(1)) * (s - Scalar(1)) == q - Scalar(1));
  // canonical reduction: (s^2-1)/(s-1) = s+1
  Scalar r = (q - Scalar(1)) / (s - Scalar(1));
  CHECK(r == s + Scalar(1));
  CHECK(r.str() == "s + 1");
  // denominator is kept monic
  Scalar t = Scalar(1) / (Scalar(2) * s);
  CHECK(t.str() == "1/2/s");
  CHECK(Scalar::parse(t.str()) == t);
}

TEST_CASE("qnumber matches division-free oracle") {
  for (int n = 1; n <= 8; ++n) CHECK(qnumber(n) == qnumber_oracle(n));
  CHECK(qnumber(2).str() == "(q^2 + 1)/q");
  CHECK(qnumber(3).str() == "(q^4 + q^2 + 1)/q^2");
}

TEST_CASE("evaluation at rational points") {
  Scalar q = Scalar::s_power(2);
  // [n]_q at q=1 (s=1) equals n
  for (int n = 1; n <= 6; ++n) CHECK(qnumber(n).eval(Rat(1)) == GaussRat(n));
  CHECK(q.eval(Rat(1, 2)) == GaussRat(Rat(1, 4)));
  Scalar pole = Scalar(1) / (q - Scalar(1));
  CHECK_THROWS_AS(pole.eval(Rat(1)), Error);
  CHECK_THROWS_AS(pole.eval(Rat(-1)), Error);
  CHECK(pole.eval(Rat(2)) == GaussRat(Rat(1, 3)));
}

TEST_CASE("parse and print round trip") {
  const char* samples[] = {
      "0",
      "1",
      "-1",
      "i",
      "-i",
      "s",
      "q",
      "q + 1/q",
      "s^3 - 2*s + 1/2",
      "(2+3*i)*s^2 + i*s - 1",
      "(q^2 + 1)/(q^2 - 1)",
      "1/2/s",
      "-q^2 + i",
  };
  for (const char* text : samples) {
    Scalar v = Scalar::parse(text);
    CHECK(Scalar::parse(v.str()) == v);
  }
  // q is an alias for s^2 and is preferred when all exponents are even
  CHECK(Scalar::parse("s^2") == Scalar::parse("q"));
  CHECK(Scalar::parse("s^2").str() == "q");
  CHECK(Scalar::parse("s^3").str() == "s^3");
  CHECK(Scalar::parse("s^-2").str() == "1/q");
  CHECK(Scalar::parse("(1+i)*(1-i)") == Scalar(2));
  CHECK_THROWS_AS(Scalar::parse("x + 1"), Error);
  CHECK_THROWS_AS(Scalar::parse("1 +"), Error);
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
}

TEST_CASE("conjugation fixes s and flips i") {
  Scalar z = Scalar::parse("(2+3*i)*s + i/q");
  CHECK(z.conj() == Scalar::parse("(2-3*i)*s - i/q"));
  CHECK(z.conj().conj() == z);
  CHECK(qnumber(4).conj() == qnumber(4));
}

TEST_CASE("scalar matrix operations") {
  ScalarMatrix f = ScalarMatrix::parse("[[s,0],[0,s^-1]]");
  ScalarMatrix r = f.adjoint() * f;
  CHECK(r == ScalarMatrix::parse("[[q,0],[0,q^-1]]"));
  CHECK((r * r.inverse()).is_identity());
  CHECK(r.det() == Scalar(1));

  ScalarMatrix sigma2 = ScalarMatrix::pauli2();
  CHECK(sigma2 == ScalarMatrix::parse("[[0,-i],[i,0]]"));
  CHECK((sigma2 * sigma2).is_identity());
  CHECK(sigma2.adjoint() == sigma2);
  CHECK(sigma2.det() == Scalar(-1));

  ScalarMatrix k = sigma2.kron(ScalarMatrix::identity(2));
  CHECK(k.rows() == 4);
  CHECK(k.at(0, 2) == -Scalar::i());
  CHECK(k.at(0, 1) == Scalar(0));
  CHECK((k * k).is_identity());

  ScalarMatrix ab = ScalarMatrix::parse("[[1,s],[0,1]]");
  CHECK((ab * r).adjoint() == r.adjoint() * ab.adjoint());
  CHECK_THROWS_AS(ScalarMatrix::parse("[[1,0],[0,0]]").inverse(), Error);
  CHECK_THROWS_AS(ScalarMatrix::parse("[[1,0],[1]]"), Error);
}
