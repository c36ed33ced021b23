#include "cqg/fdalg.hpp"

#include <cctype>
#include <sstream>

#include "cqg/error.hpp"

namespace cqg {

RealCStarSpec RealCStarSpec::parse(const std::string& text) {
  RealCStarSpec spec;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (!spec.blocks.empty()) {
      if (text[pos] != '+')
        fail(ErrorCode::ParseError,
             "expected '+' between blocks at position " + std::to_string(pos));
      ++pos;
      skip_ws();
    }
    if (pos >= text.size())
      fail(ErrorCode::ParseError, "trailing '+' in algebra spec");
    DivisionRing ring;
    switch (text[pos]) {
      case 'R': ring = DivisionRing::R; break;
      case 'C': ring = DivisionRing::C; break;
      case 'H': ring = DivisionRing::H; break;
      default:
        fail(ErrorCode::ParseError, "expected block tag R, C, or H at position " +
                                        std::to_string(pos));
    }
    ++pos;
    if (pos >= text.size() || text[pos] != '(')
      fail(ErrorCode::ParseError,
           "expected '(' after block tag at position " + std::to_string(pos));
    ++pos;
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start || pos >= text.size() || text[pos] != ')')
      fail(ErrorCode::ParseError,
           "expected '(size)' at position " + std::to_string(start));
    int n = std::stoi(text.substr(start, pos - start));
    ++pos;
    if (n < 1) fail(ErrorCode::UnsupportedSize, "block size must be >= 1");
    spec.blocks.push_back({ring, n});
    skip_ws();
  }
  if (spec.blocks.empty())
    fail(ErrorCode::ParseError, "algebra spec needs at least one block");
  return spec;
}

std::string RealCStarSpec::str() const {
  std::string out;
  for (const RealBlock& b : blocks) {
    if (!out.empty()) out += " + ";
    switch (b.ring) {
      case DivisionRing::R: out += "R"; break;
      case DivisionRing::C: out += "C"; break;
      case DivisionRing::H: out += "H"; break;
    }
    out += "(" + std::to_string(b.n) + ")";
  }
  return out;
}

int RealCStarSpec::real_dim() const {
  int d = 0;
  for (const RealBlock& b : blocks) {
    int f = b.ring == DivisionRing::R ? 1 : (b.ring == DivisionRing::C ? 2 : 4);
    d += f * b.n * b.n;
  }
  return d;
}

int ComplexifiedAlgebra::dim() const {
  int d = 0;
  for (const ComplexBlock& b : blocks) d += b.size * b.size;
  return d;
}

std::pair<ComplexifiedAlgebra, SigmaAut> complexify(const RealCStarSpec& spec) {
  ComplexifiedAlgebra alg;
  SigmaAut sigma;
  for (size_t rb = 0; rb < spec.blocks.size(); ++rb) {
    const RealBlock& b = spec.blocks[rb];
    int base = static_cast<int>(alg.blocks.size());
    switch (b.ring) {
      case DivisionRing::R:
        alg.blocks.push_back({b.n, static_cast<int>(rb), 0});
        sigma.perm.push_back(base);
        sigma.twist.push_back(ScalarMatrix::identity(b.n));
        break;
      case DivisionRing::C:
        alg.blocks.push_back({b.n, static_cast<int>(rb), 0});
        alg.blocks.push_back({b.n, static_cast<int>(rb), 1});
        sigma.perm.push_back(base + 1);
        sigma.perm.push_back(base);
        sigma.twist.push_back(ScalarMatrix::identity(b.n));
        sigma.twist.push_back(ScalarMatrix::identity(b.n));
        break;
      case DivisionRing::H:
        alg.blocks.push_back({2 * b.n, static_cast<int>(rb), 0});
        sigma.perm.push_back(base);
        sigma.twist.push_back(
            ScalarMatrix::pauli2().kron(ScalarMatrix::identity(b.n)));
        break;
    }
  }
  return {alg, sigma};
}

BlockElement sigma_apply(const SigmaAut& sigma, const BlockElement& x) {
  if (x.size() != sigma.perm.size())
    fail(ErrorCode::ShapeMismatch, "element does not match sigma block count");
  BlockElement out(x.size());
  for (size_t b = 0; b < x.size(); ++b) {
    const ScalarMatrix& t = sigma.twist[b];
    if (x[b].rows() != t.rows() || x[b].cols() != t.cols())
      fail(ErrorCode::ShapeMismatch, "block shape does not match sigma");
    out[sigma.perm[b]] = t * x[b].conj() * t.inverse();
  }
  return out;
}

BlockElement basis_element(const ComplexifiedAlgebra& alg, int block, int i,
                           int j) {
  if (block < 0 || block >= static_cast<int>(alg.blocks.size()))
    fail(ErrorCode::IndexOutOfRange, "block index out of range");
  int n = alg.blocks[block].size;
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(ErrorCode::IndexOutOfRange, "matrix-unit index out of range");
  BlockElement x;
  for (const ComplexBlock& b : alg.blocks)
    x.push_back(ScalarMatrix(b.size, b.size));
  x[block].at(i, j) = Scalar(1);
  return x;
}

StateSpec StateSpec::identity(const ComplexifiedAlgebra& alg) {
  StateSpec r;
  for (const ComplexBlock& b : alg.blocks)
    r.blocks.push_back(ScalarMatrix::identity(b.size));
  return r;
}

Scalar StateSpec::value(int block, int i, int j) const {
  if (block < 0 || block >= static_cast<int>(blocks.size()))
    fail(ErrorCode::IndexOutOfRange, "state block index out of range");
  const ScalarMatrix& r = blocks[block];
  if (i < 0 || i >= r.rows() || j < 0 || j >= r.cols())
    fail(ErrorCode::IndexOutOfRange, "state index out of range");
  return r.at(j, i);
}

} // namespace cqg
