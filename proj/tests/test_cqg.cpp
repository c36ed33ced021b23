#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqg/cqg.hpp"
#include "cqg/error.hpp"

using namespace cqg;

namespace {

int G(const CQGPresentation& p, const std::string& name) {
  int g = p.alphabet().find(name);
  REQUIRE(g >= 0);
  return g;
}

NCPoly gen(const CQGPresentation& p, const std::string& name) {
  return NCPoly::gen(G(p, name));
}

bool member(const CQGPresentation& p, const NCPoly& t, int k) {
  CertificateSpan span;
  span.k = k;
  return membership(t, p.relations(), span).has_value();
}

CertificateSpan spank(int k) {
  CertificateSpan s;
  s.k = k;
  return s;
}

// Identity-style substitution: every base letter of src named `sname[i,j]`
// maps to the dst generator named `dname[i,j]` (same bracket suffix).
std::map<int, NCPoly> rename_subst(const Alphabet& sa, const Alphabet& da,
                                   const std::string& sprefix,
                                   const std::string& dprefix) {
  std::map<int, NCPoly> subst;
  for (int g = 0; g < sa.size(); ++g) {
    if (sa.is_star_letter(g)) continue;
    const std::string& n = sa.name(g);
    REQUIRE(n.rfind(sprefix, 0) == 0);
    int d = da.find(dprefix + n.substr(sprefix.size()));
    REQUIRE(d >= 0);
    subst[g] = NCPoly::gen(d);
  }
  return subst;
}

void check_mutual(const RelationSet& a, const RelationSet& b,
                  const std::string& aprefix, const std::string& bprefix,
                  int k) {
  HomReport fwd = hom_check(a, b, rename_subst(a.alphabet(), b.alphabet(),
                                               aprefix, bprefix),
                            spank(k));
  CHECK(fwd.ok);
  HomReport bwd = hom_check(b, a, rename_subst(b.alphabet(), a.alphabet(),
                                               bprefix, aprefix),
                            spank(k));
  CHECK(bwd.ok);
}

} // namespace

TEST_CASE("make_au(1, [1]) is C(U(1))") {
  CQGPresentation p = make_au(1, ScalarMatrix::identity(1));
  CHECK(p.relations().size() == 2);
  CHECK(p.kac());
  NCPoly u = gen(p, "u[1,1]");
  NCPoly us = u.star(p.alphabet());
  CHECK(member(p, u * us - NCPoly(Scalar(1)), 0));
  CHECK(member(p, us * u - NCPoly(Scalar(1)), 0));
}

TEST_CASE("make_au(2, I) has 16 relations and the Kac tag") {
  CQGPresentation p = make_au(2, ScalarMatrix::identity(2));
  CHECK(p.relations().size() == 16);
  CHECK(p.kac());
  CHECK(p.blocks().size() == 1);
  CHECK(p.blocks()[0].mat.rows() == 2);
}

TEST_CASE("make_au(2, diag(1,q^2)) twisted coefficients follow q^{2(i-j)}") {
  ScalarMatrix R = ScalarMatrix::diag({Scalar(1), Scalar::q_power(2)});
  CQGPresentation p = make_au(2, R);
  CHECK_FALSE(p.kac());
  const Alphabet& a = p.alphabet();
  const GenMatrix& U = p.blocks()[0].mat;
  // (R ubar R^{-1})_{ij} = q^{2(i-j)} u_ij°, so row i of u^t against
  // column j of the twist gives sum_k q^{2(k-j)} u_ki u_kj° = delta_ij.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      NCPoly t;
      for (int k = 0; k < 2; ++k)
        t = t + (U.at(k, i) * U.at(k, j).star(a))
                    .scalar_mul(Scalar::q_power(2 * (k - j)));
      if (i == j) t = t - NCPoly(Scalar(1));
      CHECK(member(p, t, 0));
    }
}

TEST_CASE("make_au rejects a singular R") {
  ScalarMatrix R(1, 1);
  CHECK_THROWS_AS(make_au(1, R), Error);
}

TEST_CASE("make_ao(2, I) adds self-adjointness") {
  CQGPresentation p = make_ao(2, ScalarMatrix::identity(2));
  CHECK(p.kac());
  const Alphabet& a = p.alphabet();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      NCPoly u = gen(p, "u[" + std::to_string(i) + "," + std::to_string(j) + "]");
      CHECK(member(p, u.star(a) - u, 0));
    }
}

TEST_CASE("make_asp(1) eliminates to the (a, -c°; c, a°) shape") {
  CQGPresentation p = make_asp(1);
  CHECK(p.kac());
  EliminationResult elim = eliminate_linear(p.relations());
  const Alphabet& a = p.alphabet();
  GenMatrix m(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.at(i, j) = p.blocks()[0].mat.at(i, j).substitute(elim.images);
  CHECK(m.at(0, 0).term_count() == 1);
  CHECK(m.at(0, 0).degree() == 1);
  CHECK(m.at(1, 0).term_count() == 1);
  CHECK(m.at(1, 1) == m.at(0, 0).star(a));
  CHECK(m.at(0, 1) == -m.at(1, 0).star(a));
}

TEST_CASE("make_asp(2) has 16 matrix generators") {
  CQGPresentation p = make_asp(2);
  CHECK(p.alphabet().size() == 32); // 16 star pairs
  CHECK(p.blocks()[0].mat.rows() == 4);
}

TEST_CASE("make_austar half-liberation relations") {
  CQGPresentation p1 = make_austar(1);
  CHECK(p1.relations().size() == 2); // triples vanish, twists are duplicates
  CQGPresentation p = make_austar(2);
  CHECK(p.kac());
  const Alphabet& a = p.alphabet();
  NCPoly x = gen(p, "u[1,1]"), y = gen(p, "u[1,2]"), z = gen(p, "u[2,2]");
  NCPoly ys = y.star(a);
  CHECK(member(p, x * ys * z - z * ys * x, 0));
  CHECK(p.relations().size() > 16);
}

TEST_CASE("abelianized A_u*(2) matches abelianized A_u(2)") {
  CQGPresentation a = abelianize(make_austar(2));
  CQGPresentation b = abelianize(make_au(2, ScalarMatrix::identity(2)));
  CHECK(a.commutative_claimed());
  check_mutual(a.relations(), b.relations(), "u", "u", 1);
}

TEST_CASE("make_as magic unitaries") {
  CQGPresentation p1 = make_as(1);
  NCPoly u = gen(p1, "u[1,1]");
  CHECK(member(p1, u - NCPoly(Scalar(1)), 0));

  CQGPresentation p2 = make_as(2);
  CHECK(check_commutative(p2, spank(1)).all_commute);

  CQGPresentation p3 = make_as(3);
  CHECK(check_commutative(p3, spank(2)).all_commute);
}

TEST_CASE("make_suq(2) relations") {
  CQGPresentation p = make_suq(2);
  CHECK_FALSE(p.kac());
  const Alphabet& a = p.alphabet();
  NCPoly u11 = gen(p, "u[1,1]"), u12 = gen(p, "u[1,2]");
  NCPoly u21 = gen(p, "u[2,1]"), u22 = gen(p, "u[2,2]");
  Scalar q = Scalar::q_power(1);
  CHECK(member(p, u11 * u21 - (u21 * u11).scalar_mul(q), 0));
  CHECK(member(p,
               u11 * u22 - u22 * u11 -
                   (u12 * u21).scalar_mul(q - Scalar::q_power(-1)),
               0));
  CHECK(member(p, u11 * u22 - (u12 * u21).scalar_mul(q) - NCPoly(Scalar(1)), 0));
  // Star formula at n=2.
  CHECK(member(p, u11.star(a) - u22, 0));
  CHECK(member(p, u12.star(a) + u21.scalar_mul(q), 0));
  CHECK(member(p, u21.star(a) + u12.scalar_mul(Scalar::q_power(-1)), 0));
  CHECK(member(p, u22.star(a) - u11, 0));
}

TEST_CASE("SU_q(2) satisfies the row/column orthogonality identities") {
  CQGPresentation p = make_suq(2);
  const Alphabet& alph = p.alphabet();
  const GenMatrix& U = p.blocks()[0].mat;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      NCPoly t1, t2, t3, t4;
      for (int i = 0; i < 2; ++i) {
        t1 = t1 + U.at(a, i) * U.at(b, i).star(alph);
        t2 = t2 + U.at(i, a).star(alph) * U.at(i, b);
        t3 = t3 + (U.at(i, a) * U.at(i, b).star(alph))
                      .scalar_mul(Scalar::q_power(2 * (i - b)));
        t4 = t4 + (U.at(a, i).star(alph) * U.at(b, i))
                      .scalar_mul(Scalar::q_power(2 * (a - i)));
      }
      if (a == b) {
        NCPoly one(Scalar(1));
        t1 = t1 - one;
        t2 = t2 - one;
        t3 = t3 - one;
        t4 = t4 - one;
      }
      CHECK(member(p, t1, 2));
      CHECK(member(p, t2, 2));
      CHECK(member(p, t3, 2));
      CHECK(member(p, t4, 2));
    }
}

TEST_CASE("make_suq rejects n > 4") {
  CHECK_THROWS_AS(make_suq(5), Error);
}

TEST_CASE("make_aaut(2) relation families") {
  CQGPresentation p = make_aaut(2);
  CHECK(p.kac());
  CHECK(p.blocks()[0].mat.rows() == 4);
  auto a = [&](int k, int l, int i, int j) {
    return gen(p, "a[" + std::to_string(k) + "," + std::to_string(l) + ";" +
                      std::to_string(i) + "," + std::to_string(j) + "]");
  };
  // sum_r a^{ij}_{kr} a^{mn}_{rl} = delta_{jm} a^{in}_{kl} at
  // i=j=m=k=1, n=l=2.
  NCPoly t = a(1, 1, 1, 1) * a(1, 2, 1, 2) + a(1, 1, 1, 2) * a(1, 2, 2, 2) -
             a(1, 2, 1, 2);
  CHECK(member(p, t, 0));
  // Unit and trace rows.
  CHECK(member(p, a(1, 2, 1, 1) + a(1, 2, 2, 2), 0));
  CHECK(member(p, a(1, 1, 1, 2) + a(2, 2, 1, 2), 0));
  // Star structure.
  NCPoly s = a(1, 2, 1, 1).star(p.alphabet()) - a(2, 1, 1, 1);
  CHECK(member(p, s, 0));
}

TEST_CASE("A_aut(M_2) maps into A_o(2) via a^{kl}_{ij} -> u_ki u_lj°") {
  CQGPresentation src = make_aaut(2);
  CQGPresentation dst = make_ao(2, ScalarMatrix::identity(2));
  const Alphabet& da = dst.alphabet();
  const GenMatrix& U = dst.blocks()[0].mat;
  std::map<int, NCPoly> subst;
  const Alphabet& sa = src.alphabet();
  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l)
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
          int g = sa.find("a[" + std::to_string(k) + "," + std::to_string(l) +
                          ";" + std::to_string(i) + "," + std::to_string(j) +
                          "]");
          REQUIRE(g >= 0);
          subst[g] = U.at(k - 1, i - 1) * U.at(l - 1, j - 1).star(da);
        }
  HomReport rep = hom_check(src, dst, subst, spank(2));
  CHECK(rep.ok);
}

TEST_CASE("make_aaut_real cases") {
  SUBCASE("M_2(R) is commutative at k=1") {
    CQGPresentation p = make_aaut_real(RealCStarSpec::parse("R(2)"));
    // sigma relations reduce to self-adjointness of the generators.
    NCPoly g = gen(p, "a[1,2;1,1]");
    CHECK(member(p, g.star(p.alphabet()) - g, 0));
    CHECK(check_commutative(p, spank(1)).all_commute);
  }
  SUBCASE("R^2 equals A_s(2)") {
    CQGPresentation p = make_aaut_real(RealCStarSpec::parse("R(1) + R(1)"));
    CQGPresentation as = make_as(2);
    const Alphabet& pa = p.alphabet();
    const Alphabet& aa = as.alphabet();
    std::map<int, NCPoly> fwd, bwd;
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) {
        int g = pa.find("a[1,1;1,1;" + std::to_string(x) + "," +
                        std::to_string(y) + "]");
        int h = aa.find("u[" + std::to_string(x) + "," + std::to_string(y) +
                        "]");
        REQUIRE(g >= 0);
        REQUIRE(h >= 0);
        fwd[g] = NCPoly::gen(h);
        bwd[h] = NCPoly::gen(g);
      }
    CHECK(hom_check(p, as, fwd, spank(1)).ok);
    CHECK(hom_check(as, p, bwd, spank(1)).ok);
  }
  SUBCASE("unsupported mixed spec") {
    CHECK_THROWS_AS(make_aaut_real(RealCStarSpec::parse("R(2) + C(1)")), Error);
  }
}

TEST_CASE("free_product of C(U(1)), A_sp(1), A_u(3)") {
  std::vector<CQGPresentation> fs;
  fs.push_back(make_au(1, ScalarMatrix::identity(1)));
  fs.push_back(make_asp(1));
  fs.push_back(make_au(3, ScalarMatrix::identity(3)));
  CQGPresentation p = free_product(fs);
  CHECK(p.blocks().size() == 3);
  int entries = 0;
  for (const CorepBlock& b : p.blocks()) entries += b.mat.rows() * b.mat.cols();
  CHECK(entries == 1 + 4 + 9);
  CHECK(p.kac());
  CHECK(G(p, "0:u[1,1]") >= 0);
  CHECK(G(p, "2:u[3,3]") >= 0);
  size_t total = 0;
  for (const CQGPresentation& f : fs) total += f.relations().size();
  CHECK(p.relations().size() == total);
}

TEST_CASE("quantum_unitary_complex") {
  SUBCASE("M_1 + M_1 with R = I") {
    auto [alg, sigma] = complexify(RealCStarSpec::parse("C(1)"));
    (void)sigma;
    CHECK(alg.blocks.size() == 2);
    CQGPresentation p = quantum_unitary_complex(alg, StateSpec::identity(alg));
    CHECK(p.alphabet().size() == 4);
    CHECK(p.relations().size() == 4);
  }
  SUBCASE("block mismatch") {
    auto [alg, sigma] = complexify(RealCStarSpec::parse("C(1)"));
    (void)sigma;
    StateSpec bad;
    bad.blocks.push_back(ScalarMatrix::identity(1));
    CHECK_THROWS_AS(quantum_unitary_complex(alg, bad), Error);
  }
}

TEST_CASE("derive_from_state_invariance") {
  SUBCASE("n=1 trivial") {
    RelationSet r = derive_from_state_invariance(1, ScalarMatrix::identity(1));
    CHECK(r.size() == 2);
  }
  SUBCASE("n=2, R=I gives v^t vbar = I") {
    RelationSet r = derive_from_state_invariance(2, ScalarMatrix::identity(2));
    const Alphabet& a = r.alphabet();
    NCPoly t;
    for (int k = 1; k <= 2; ++k)
      t = t + NCPoly::gen(a.find("v[" + std::to_string(k) + ",1]")) *
                  NCPoly::gen(a.find("v[" + std::to_string(k) + ",2]"))
                      .star(a);
    CHECK(membership(t, r, spank(0)).has_value());
  }
  SUBCASE("matches make_au(2, R^t) for R in {I, diag(1,q^2)}") {
    for (int twisted = 0; twisted < 2; ++twisted) {
      ScalarMatrix R =
          twisted ? ScalarMatrix::diag({Scalar(1), Scalar::q_power(2)})
                  : ScalarMatrix::identity(2);
      RelationSet derived = derive_from_state_invariance(2, R);
      CQGPresentation au = make_au(2, R.transpose());
      check_mutual(derived, au.relations(), "v", "u", 1);
    }
  }
}

TEST_CASE("derive_from_bilinear matches make_au(n, B^{-1})") {
  SUBCASE("B = I") {
    RelationSet derived = derive_from_bilinear(ScalarMatrix::identity(2));
    CQGPresentation au = make_au(2, ScalarMatrix::identity(2));
    check_mutual(derived, au.relations(), "u", "u", 1);
  }
  SUBCASE("B = diag(1,2)") {
    ScalarMatrix B = ScalarMatrix::diag({Scalar(1), Scalar(2)});
    RelationSet derived = derive_from_bilinear(B);
    CQGPresentation au = make_au(2, B.inverse());
    check_mutual(derived, au.relations(), "u", "u", 1);
  }
  SUBCASE("non-symmetric B") {
    ScalarMatrix B(2, 2);
    B.at(0, 0) = Scalar(1);
    B.at(0, 1) = Scalar(1);
    B.at(1, 1) = Scalar(1);
    RelationSet derived = derive_from_bilinear(B);
    CQGPresentation au = make_au(2, B.inverse());
    check_mutual(derived, au.relations(), "u", "u", 1);
  }
}

TEST_CASE("quantum_unitary_real(M_2(R), I) is A_o(2)") {
  RealCStarSpec spec = RealCStarSpec::parse("R(2)");
  QuantumUnitary qu = quantum_unitary_real(spec, {ScalarMatrix::identity(2)});
  CQGPresentation ao = make_ao(2, ScalarMatrix::identity(2));
  check_mutual(ao.relations(), qu.pres.relations(), "u", "0:u", 1);
  CHECK(trace_preservation_check(qu, spank(2)).ok);
}

TEST_CASE("quantum_unitary_real(M_2(C), K=I, H=diag(1,2))") {
  RealCStarSpec spec = RealCStarSpec::parse("C(2)");
  ScalarMatrix H = ScalarMatrix::diag({Scalar(1), Scalar(2)});
  QuantumUnitary qu =
      quantum_unitary_real(spec, {ScalarMatrix::identity(2), H});
  // Expected presentation: A_u(2, K*K) with uH = Hu adjoined.
  CQGPresentation au = make_au(2, ScalarMatrix::identity(2));
  const GenMatrix& U = au.blocks()[0].mat;
  CQGPresentation expected = quotient(au, relations_from_eq(U * H, H * U));
  // u maps onto the surviving untwisted block of the quantum unitary group.
  const Alphabet& ea = expected.alphabet();
  const Alphabet& qa = qu.pres.alphabet();
  std::map<int, NCPoly> fwd;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      int g = ea.find("u[" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + "]");
      fwd[g] = qu.pres.entry(1, i, j);
    }
  CHECK(hom_check(expected, qu.pres, fwd, spank(2)).ok);
  // Conversely both blocks of the quantum unitary group map into the
  // expected presentation: block 1 is u, block 0 is H^{-1} ubar H.
  GenMatrix img0 = H.inverse() * U.bar(ea) * H;
  std::map<int, NCPoly> bwd;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::string suffix =
          "u[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
      int g1 = qa.find("1:" + suffix);
      REQUIRE(g1 >= 0);
      bwd[g1] = NCPoly::gen(ea.find(suffix));
      int g0 = qa.find("0:" + suffix);
      REQUIRE(g0 >= 0);
      bwd[g0] = img0.at(i, j);
    }
  CHECK(hom_check(qu.pres, expected, bwd, spank(2)).ok);
  CHECK(trace_preservation_check(qu, spank(2)).ok);
}

TEST_CASE("woronowicz_check instances") {
  SUBCASE("u° - u on C(U(1)) at k=1") {
    CQGPresentation p = make_au(1, ScalarMatrix::identity(1));
    NCPoly u = gen(p, "u[1,1]");
    std::vector<NCPoly> extra{u.star(p.alphabet()) - u};
    CHECK(woronowicz_check(p, extra, spank(1)).ok);
  }
  SUBCASE("commutator ideal of A_u(2) at k=1") {
    CQGPresentation p = make_au(2, ScalarMatrix::identity(2));
    std::vector<int> ls = p.live_letters();
    std::vector<NCPoly> extra;
    for (size_t a = 0; a < ls.size(); ++a)
      for (size_t b = a + 1; b < ls.size(); ++b) {
        NCPoly x = NCPoly::gen(ls[a]), y = NCPoly::gen(ls[b]);
        extra.push_back(x * y - y * x);
      }
    CHECK(woronowicz_check(p, extra, spank(1)).ok);
  }
  SUBCASE("I_F for H with F = I at k=2") {
    auto [alg, sigma] = complexify(RealCStarSpec::parse("H(1)"));
    CQGPresentation p = quantum_unitary_complex(alg, StateSpec::identity(alg));
    const ScalarMatrix& T = sigma.twist[0];
    const GenMatrix& U = p.blocks()[0].mat;
    std::vector<NCPoly> extra =
        relations_from_eq(T * U.bar(p.alphabet()) * T.inverse(), U);
    CHECK(woronowicz_check(p, extra, spank(2)).ok);
  }
}

TEST_CASE("abelianize adds exactly the letter commutators") {
  CQGPresentation p = make_au(1, ScalarMatrix::identity(1));
  CQGPresentation ab = abelianize(p);
  CHECK(ab.commutative_claimed());
  CHECK(ab.relations().size() == p.relations().size() + 1);
  CHECK(check_commutative(ab, spank(1)).all_commute);
}

TEST_CASE("projective generating monomials") {
  CQGPresentation p2 = make_au(2, ScalarMatrix::identity(2));
  CHECK(projective(p2).generators.size() == 16);
  CQGPresentation p1 = make_au(1, ScalarMatrix::identity(1));
  SubalgebraView v = projective(p1);
  REQUIRE(v.generators.size() == 1);
  NCPoly u = gen(p1, "u[1,1]");
  CHECK(v.generators[0] == u * u.star(p1.alphabet()));
}

TEST_CASE("hom_check plumbing") {
  CQGPresentation p = make_ao(2, ScalarMatrix::identity(2));
  SUBCASE("identity substitution passes at k=0") {
    std::map<int, NCPoly> id;
    for (int g = 0; g < p.alphabet().size(); ++g)
      if (!p.alphabet().is_star_letter(g)) id[g] = NCPoly::gen(g);
    CHECK(hom_check(p, p, id, spank(0)).ok);
  }
  SUBCASE("star-inconsistent substitution throws") {
    std::map<int, NCPoly> bad;
    for (int g = 0; g < p.alphabet().size(); ++g)
      if (!p.alphabet().is_star_letter(g)) bad[g] = NCPoly::gen(g);
    bad[p.alphabet().star(G(p, "u[1,1]"))] = gen(p, "u[1,2]");
    CHECK_THROWS_AS(hom_check(p, p, bad, spank(0)), Error);
  }
  SUBCASE("missing generator image throws") {
    std::map<int, NCPoly> partial;
    partial[G(p, "u[1,1]")] = gen(p, "u[1,1]");
    CHECK_THROWS_AS(hom_check(p, p, partial, spank(0)), Error);
  }
}

TEST_CASE("Kac antipode") {
  SUBCASE("maps relations into the ideal for A_u(2), A_o(2), A_s(2)") {
    std::vector<CQGPresentation> ps;
    ps.push_back(make_au(2, ScalarMatrix::identity(2)));
    ps.push_back(make_ao(2, ScalarMatrix::identity(2)));
    ps.push_back(make_as(2));
    for (const CQGPresentation& p : ps)
      for (const NCPoly& r : p.relations().relations())
        CHECK(member(p, p.antipode_kac(r), 2));
  }
  SUBCASE("throws without the Kac tag") {
    CQGPresentation p = make_suq(2);
    CHECK_THROWS_AS(p.antipode_kac(gen(p, "u[1,1]")), Error);
  }
}

TEST_CASE("coproduct and counit") {
  CQGPresentation p = make_au(2, ScalarMatrix::identity(2));
  const GenMatrix& U = p.blocks()[0].mat;
  TensorPoly expected;
  for (int k = 0; k < 2; ++k)
    expected = expected + TensorPoly::tensor(U.at(0, k), U.at(k, 1));
  CHECK(p.coproduct(U.at(0, 1)) == expected);
  // Delta of a relation lies in I (x) A + A (x) I.
  for (const NCPoly& r : p.relations().relations()) {
    CHECK(p.counit(r).is_zero());
    CHECK(tensor_membership(p.coproduct(r), p.relations(), spank(2)));
  }
}

TEST_CASE("serialization is canonical and stable") {
  CQGPresentation p = make_au(1, ScalarMatrix::identity(1));
  std::string expected =
      "cqg-presentation v1\n"
      "name: A_u(1,[[1]])\n"
      "tags: kac\n"
      "block u 1x1\n"
      "  (1)*u[1,1]\n"
      "relations 2\n"
      "  (1)*u*[1,1].u[1,1] + (-1)*1\n"
      "  (1)*u[1,1].u*[1,1] + (-1)*1\n";
  CHECK(p.serialize() == expected);
  CHECK(p.serialize() == p.serialize());
}
