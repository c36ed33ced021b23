#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqg/matrep.hpp"

using namespace cqg;

namespace {

struct Setup {
  AlphabetPtr alph = std::make_shared<Alphabet>();
  GenMatrix u;

  explicit Setup(int n) : u(n, n) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        std::string idx = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
        int g = alph->add_pair("u" + idx, "u*" + idx);
        u.at(i - 1, j - 1) = NCPoly::gen(g);
      }
  }
};

} // namespace

TEST_CASE("matrix algebra over the free algebra") {
  Setup s(2);
  GenMatrix id = GenMatrix::identity(2);
  CHECK(s.u * id == s.u);
  CHECK(id * s.u == s.u);
  CHECK((s.u - s.u).at(0, 0).is_zero());
  GenMatrix sq = s.u * s.u;
  // (u^2)_{11} = u11 u11 + u12 u21
  NCPoly expect = s.u.at(0, 0) * s.u.at(0, 0) + s.u.at(0, 1) * s.u.at(1, 0);
  CHECK(sq.at(0, 0) == expect);
}

TEST_CASE("adjoint reverses products") {
  Setup s(2);
  GenMatrix a = s.u, b = s.u.transpose();
  CHECK((a * b).adjoint(*s.alph) == b.adjoint(*s.alph) * a.adjoint(*s.alph));
  CHECK(a.adjoint(*s.alph).adjoint(*s.alph) == a);
  CHECK(a.bar(*s.alph).transpose() == a.adjoint(*s.alph));
}

TEST_CASE("scalar twist pattern for a diagonal R") {
  Setup s(2);
  ScalarMatrix r = ScalarMatrix::parse("[[1,0],[0,q^2]]");
  GenMatrix tw = r * s.u.bar(*s.alph) * r.inverse();
  // (R ubar R^{-1})_{ij} = q^{2(i-j)} (u_ij)*
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      NCPoly expect =
          s.u.at(i, j).star(*s.alph).scalar_mul(Scalar::q_power(2 * (i - j)));
      CHECK(tw.at(i, j) == expect);
    }
}

TEST_CASE("relation extraction dedups scalar multiples") {
  Setup s(2);
  GenMatrix lhs(2, 2), rhs(2, 2);
  NCPoly p = s.u.at(0, 0) * s.u.at(0, 1) - s.u.at(0, 1) * s.u.at(0, 0);
  lhs.at(0, 0) = p;
  lhs.at(0, 1) = p.scalar_mul(Scalar::s_power(2)); // scalar multiple: dropped
  lhs.at(1, 0) = p;                                // exact duplicate: dropped
  lhs.at(1, 1) = p * s.u.at(1, 1);                 // genuinely new
  auto rels = relations_from_eq(lhs, rhs);
  REQUIRE(rels.size() == 2);
  CHECK(rels[0] == p);
  CHECK(rels[1] == p * s.u.at(1, 1));
}

TEST_CASE("unitarity relations of a 2x2 matrix count") {
  Setup s(2);
  auto rels = relations_from_eq(s.u * s.u.adjoint(*s.alph), GenMatrix::identity(2));
  // 4 entries, all distinct
  CHECK(rels.size() == 4);
  // (u u*)_{11} - 1
  NCPoly expect = s.u.at(0, 0) * s.u.at(0, 0).star(*s.alph) +
                  s.u.at(0, 1) * s.u.at(0, 1).star(*s.alph) - NCPoly(Scalar(1));
  CHECK(rels[0] == expect);
}
