#pragma once

#include <string>
#include <vector>

#include "cqg/scalar.hpp"

namespace cqg {

enum class DivisionRing { R, C, H };

struct RealBlock {
  DivisionRing ring;
  int n;
};

/// Finite-dimensional real C*-algebra M_{n1}(D1) + ... + M_{nk}(Dk).
struct RealCStarSpec {
  std::vector<RealBlock> blocks;

  /// Grammar: "R(2) + H(1) + C(3)" (whitespace optional).
  static RealCStarSpec parse(const std::string& text);
  std::string str() const;
  int real_dim() const;
};

struct ComplexBlock {
  int size;
  int real_block; // index into the originating RealCStarSpec
  int copy;       // 0, or 1 for the doubled copy of a C-block
};

/// Complexification: a direct sum of complex matrix blocks.
struct ComplexifiedAlgebra {
  std::vector<ComplexBlock> blocks;
  int dim() const; // complex dimension
};

/// Block element of the complexification.
using BlockElement = std::vector<ScalarMatrix>;

/// The antilinear automorphism of the complexification whose fixed points
/// recover the real algebra: sigma(m)|_{perm[b]} = T_b conj(m_b) T_b^{-1}.
struct SigmaAut {
  std::vector<int> perm;
  std::vector<ScalarMatrix> twist; // T_b per source block
};

std::pair<ComplexifiedAlgebra, SigmaAut> complexify(const RealCStarSpec& spec);

BlockElement sigma_apply(const SigmaAut& sigma, const BlockElement& x);

/// e_ij basis element of one block of the complexification.
BlockElement basis_element(const ComplexifiedAlgebra& alg, int block, int i,
                           int j);

/// Block-diagonal density matrix defining the state a -> Tr(Ra).
struct StateSpec {
  std::vector<ScalarMatrix> blocks;

  static StateSpec identity(const ComplexifiedAlgebra& alg);
  /// phi_R(e_ij of block b) = (R_b)_{ji}.
  Scalar value(int block, int i, int j) const;
};

} // namespace cqg
