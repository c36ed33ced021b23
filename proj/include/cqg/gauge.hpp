#pragma once

#include <string>
#include <vector>

#include "cqg/cqg.hpp"

namespace cqg {

/// Finite real spectral triple, presented through the action of the
/// complexified algebra: block b of complexify(spec) acts via the matrix
/// list pi[b], indexed over its matrix units (all-zero matrices encode a
/// block that acts by zero). The real structure is J = J0 . conj with J0
/// unitary and J^2 = eps.
struct FiniteSpectralTriple {
  std::string name;
  RealCStarSpec spec;
  int N = 0;
  std::vector<std::vector<ScalarMatrix>> pi; // pi[b][i*m_b + j], N x N
  ScalarMatrix J0;                           // N x N unitary
  int eps = 1;                               // +1 or -1

  /// Structural invariants: the basis map is a unital *-homomorphism on
  /// all basis pairs, J0 conj(J0) = eps*I, and every pi(a) commutes with
  /// every J pi(b) J^{-1}. Throws on violation.
  void validate() const;

  /// Versioned sparse text form (blocks, N, basis images, J0, eps).
  std::string serialize() const;
};

/// Builtin triples: "eym-c(n)", "eym-r(n)", "eym-h(n)", "eym-c4(n)",
/// "eym-c5(n)" (matrix algebras acting on themselves, single or doubled),
/// "aev" (N = 32), "sm" (N = 96). Throws UnknownName.
FiniteSpectralTriple builtin_triple(const std::string& name);

/// The quantum unitary group the gauge construction starts from:
/// quantum_unitary_real(t.spec, F) with F the identity on every block.
QuantumUnitary gauge_quantum_unitary(const FiniteSpectralTriple& t);

/// U^pi = sum_b sum_ij pi[b][ij] (x) u^b_ij over the fundamental blocks
/// of pres, which must align with complexify(t.spec); BasisMismatch
/// otherwise.
GenMatrix build_upi(const FiniteSpectralTriple& t,
                    const CQGPresentation& pres);

struct GaugeReport {
  GenMatrix V;                   // eps * U^pi (J0 (x) id) bar(U^pi) (conj(J0) (x) id)
  std::vector<NCPoly> monomials; // sorted, deduplicated generating monomials
  SubalgebraView view;
  bool unitary_ok = true;
  bool display_ok = true; // set by sm_gauge only
};

/// Computes the gauge corepresentation V and its generating monomials.
/// Unitarity of V is certified through ideal membership: the degree-2
/// biunitarity entries of U^pi reduce against the relations directly, and
/// (for presentations with at most 20 live letters) the entries of
/// V V^adj - I are additionally certified with one-letter cofactors on
/// both sides. Since J0 is exactly unitary, the degree-2 certificates
/// already imply unitarity of the product V.
GaugeReport gauge_corep(const FiniteSpectralTriple& t,
                        const CQGPresentation& pres);

/// Gauge corepresentation of the 96-dimensional builtin "sm": computes V,
/// verifies the degree-2 unitarity certificates of U^pi, and checks that V
/// equals, entry by entry, the expected sum of eleven (support, monomial)
/// families (the refinement of the seven generating families z z-bar,
/// z a°, z u°, a z-bar, a u°, u z-bar, u a° obtained by splitting the two
/// conjugate one-dimensional summands). Result in display_ok.
GaugeReport sm_gauge(const FiniteSpectralTriple& t);

/// Relations of a unitary u with u = bar(u): self-adjointness of every
/// entry adjoined to unitarity (letters named "a[i,j]").
RelationSet qiso_relations(int n);

struct ClassicalGaugeReport {
  int samples = 0;
  int kernel_hits = 0;
  bool ok = true;
  std::vector<std::string> violations;
};

/// Monte-Carlo check at s = 1 (the only floating-point code path in the
/// library): samples unitaries u of the real algebra, computes
/// v = u J u J^{-1} numerically, and verifies that every kernel element
/// found (|v - 1| < 1e-9) is a scalar multiple of the identity; for
/// "eym-c5" the scalar must additionally be +-1, and non-real scalar
/// samples must fall outside the kernel. Only the builtin "eym-*" triples
/// are supported.
ClassicalGaugeReport classical_gauge_check(const FiniteSpectralTriple& t,
                                           int trials, unsigned long seed);

} // namespace cqg
