#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqg/freestar.hpp"

using namespace cqg;

namespace {

AlphabetPtr two_by_two(const std::string& label) {
  auto a = std::make_shared<Alphabet>();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      std::string idx = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
      a->add_pair(label + idx, label + "*" + idx);
    }
  return a;
}

} // namespace

TEST_CASE("alphabet star pairing and lookup") {
  auto a = two_by_two("u");
  CHECK(a->size() == 8);
  CHECK(a->star(0) == 1);
  CHECK(a->star(1) == 0);
  CHECK(a->name(0) == "u[1,1]");
  CHECK(a->name(1) == "u*[1,1]");
  CHECK(a->find("u[2,1]") == 4);
  CHECK(a->find("v[1,1]") == -1);
  int h = a->add_selfadjoint("h");
  CHECK(a->star(h) == h);
}

TEST_CASE("deglex order") {
  DegLex lt;
  CHECK(lt(Word{}, Word{0}));
  CHECK(lt(Word{7}, Word{0, 0}));
  CHECK(lt(Word{0, 3}, Word{0, 4}));
  CHECK(!lt(Word{1, 0}, Word{0, 4}));
}

TEST_CASE("polynomial arithmetic in the free algebra") {
  auto a = two_by_two("u");
  NCPoly x = NCPoly::gen(0), y = NCPoly::gen(2);
  NCPoly comm = x * y - y * x;
  CHECK(comm.term_count() == 2);
  CHECK(comm.degree() == 2);
  CHECK((comm + y * x - x * y).is_zero());
  // products do not commute
  CHECK(x * y != y * x);
  // unit behaves as identity
  NCPoly one(Scalar(1));
  CHECK(one * comm == comm);
  CHECK(comm.leading_word() == Word{2, 0});
  CHECK(comm.coeff(Word{0, 2}) == Scalar(1));
  CHECK(comm.coeff(Word{2, 0}) == Scalar(-1));
}

TEST_CASE("star is an antilinear antihomomorphism") {
  auto a = two_by_two("u");
  NCPoly x = NCPoly::gen(0), y = NCPoly::gen(2);
  NCPoly p = x * y;
  CHECK(p.star(*a) == NCPoly::word({3, 1}));
  NCPoly z = p.scalar_mul(Scalar::i());
  CHECK(z.star(*a) == p.star(*a).scalar_mul(-Scalar::i()));
  CHECK(z.star(*a).star(*a) == z);
  CHECK((x * y).star(*a) == y.star(*a) * x.star(*a));
}

TEST_CASE("substitution and relabeling") {
  auto a = two_by_two("u");
  // x -> y + 1 inside x*x
  std::map<int, NCPoly> images;
  images[0] = NCPoly::gen(2) + NCPoly(Scalar(1));
  NCPoly p = NCPoly::gen(0) * NCPoly::gen(0);
  NCPoly q = p.substitute(images);
  NCPoly y = NCPoly::gen(2);
  CHECK(q == y * y + y.scalar_mul(Scalar(2)) + NCPoly(Scalar(1)));

  std::vector<int> image(a->size());
  for (size_t k = 0; k < image.size(); ++k) image[k] = static_cast<int>(k);
  image[0] = 4;
  CHECK(p.relabel(image) == NCPoly::word({4, 4}));
}

TEST_CASE("canonical printing and parsing") {
  auto a = two_by_two("u");
  NCPoly p = NCPoly::word({0, 5}, Scalar::s_power(2)) - NCPoly(Scalar(1));
  CHECK(p.str(*a) == "(q)*u[1,1].u*[2,1] + (-1)*1");
  CHECK(NCPoly::parse(*a, p.str(*a)) == p);
  CHECK(NCPoly().str(*a) == "(0)*1");
  CHECK(NCPoly::parse(*a, "(0)*1").is_zero());
  NCPoly r = NCPoly::parse(*a, "(1)*u[1,2] + (-q)*u*[2,1].u[1,1]");
  CHECK(r.coeff(Word{5, 0}) == -Scalar::s_power(2));
  CHECK(NCPoly::parse(*a, r.str(*a)) == r);
  CHECK_THROWS_AS(NCPoly::parse(*a, "(1)*v[1,1]"), Error);
  CHECK_THROWS_AS(NCPoly::parse(*a, "u[1,1]"), Error);
}

TEST_CASE("tensor square operations") {
  auto a = two_by_two("u");
  NCPoly x = NCPoly::gen(0), y = NCPoly::gen(2);
  TensorPoly d = TensorPoly::tensor(x, x) + TensorPoly::tensor(y, y);
  CHECK(!d.is_zero());
  CHECK(d + (-d) == TensorPoly());
  // legwise product
  TensorPoly prod = d * d;
  TensorPoly expect = TensorPoly::tensor(x * x, x * x) +
                      TensorPoly::tensor(x * y, x * y) +
                      TensorPoly::tensor(y * x, y * x) +
                      TensorPoly::tensor(y * y, y * y);
  CHECK(prod == expect);
  CHECK(TensorPoly::tensor(x, y).str(*a) == "(1)*u[1,1](x)u[1,2]");
}

TEST_CASE("star and deglex interact with declaration order") {
  auto a = two_by_two("u");
  // star partner ids are adjacent, so word order is stable under the
  // declaration sequence
  for (int g = 0; g < a->size(); g += 2) {
    CHECK(a->star(g) == g + 1);
    CHECK(a->name(a->star(g)).find('*') != std::string::npos);
  }
}
