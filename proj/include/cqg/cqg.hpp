#pragma once

#include <map>
#include <string>
#include <vector>

#include "cqg/fdalg.hpp"
#include "cqg/ideal.hpp"
#include "cqg/matrep.hpp"

namespace cqg {

/// Position of a generator inside a fundamental block.
struct Home {
  int block;
  int row;
  int col;
};

struct CorepBlock {
  std::string label;
  GenMatrix mat;
};

/// A compact-quantum-group presentation: fundamental corepresentation
/// blocks over a free *-algebra, a star-closed relation set, and the
/// matrix coproduct per block.
class CQGPresentation {
public:
  CQGPresentation(std::string name, AlphabetPtr alph)
      : name_(std::move(name)), alph_(std::move(alph)), rels_(alph_) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Alphabet& alphabet() const { return *alph_; }
  const AlphabetPtr& alphabet_ptr() const { return alph_; }
  const std::vector<CorepBlock>& blocks() const { return blocks_; }
  const RelationSet& relations() const { return rels_; }
  bool kac() const { return kac_; }
  bool commutative_claimed() const { return commutative_claimed_; }
  void set_kac(bool v) { kac_ = v; }
  void set_commutative_claimed(bool v) { commutative_claimed_ = v; }

  void add_block(std::string label, GenMatrix mat);
  void add_relation(const NCPoly& r) { rels_.add(r); }
  void add_relations(const std::vector<NCPoly>& rs) { rels_.add_all(rs); }
  void set_home(int letter, Home h) { home_[letter] = h; }
  const std::map<int, Home>& homes() const { return home_; }

  /// Entry (i,j) of fundamental block b (0-based).
  const NCPoly& entry(int b, int i, int j) const;

  /// Checks that the counit annihilates every relation (exact); throws
  /// CounitCheckFailed otherwise. Called by every constructor.
  void finalize() const;

  /// Counit: eps(u_ij) = delta_ij on each block.
  Scalar counit(const NCPoly& p) const;
  /// Matrix coproduct Delta(u_ij) = sum_k u_ik (x) u_kj, extended as a
  /// *-homomorphism.
  TensorPoly coproduct(const NCPoly& p) const;
  /// Kac antipode S(u_ij) = (u_ji)°, extended antimultiplicatively;
  /// throws NotKacTagged when the presentation lacks the Kac tag.
  NCPoly antipode_kac(const NCPoly& p) const;

  /// Letters appearing in blocks or relations, with star partners, sorted.
  std::vector<int> live_letters() const;

  /// Versioned text form: header, blocks, sorted relations.
  std::string serialize() const;

private:
  std::string name_;
  AlphabetPtr alph_;
  std::vector<CorepBlock> blocks_;
  RelationSet rels_;
  std::map<int, Home> home_; // base letters only
  bool kac_ = false;
  bool commutative_claimed_ = false;
};

/// Free quantum unitary group A_u(n,R): biunitarity of u and of the
/// R-twisted conjugate R u-bar R^{-1}.
CQGPresentation make_au(int n, const ScalarMatrix& R);
/// Free quantum orthogonal group A_o(n,F): A_u(n,F*F) plus u = F u-bar F^{-1}.
CQGPresentation make_ao(int n, const ScalarMatrix& F);
/// A_sp(m) = A_o(2m, sigma2 (x) I_m).
CQGPresentation make_asp(int m);
/// Half-liberated quantum unitary group: biunitarity plus a b° c = c b° a.
CQGPresentation make_austar(int n);
/// Quantum permutation group A_s(n): magic unitary.
CQGPresentation make_as(int n);
/// SU_q(n) with symbolic q, n <= 4.
CQGPresentation make_suq(int n);
/// Quantum automorphism group of M_n(C) (n >= 2).
CQGPresentation make_aaut(int n);
/// Quantum automorphism group of a direct sum of matrix blocks.
CQGPresentation make_aaut_blocks(const std::vector<int>& sizes);
/// Quantum automorphism group of a real C*-algebra (single matrix block
/// over R, C, or H, or a diagonal R^n).
CQGPresentation make_aaut_real(const RealCStarSpec& spec);

/// Free product with generators renamed "<index>:<name>".
CQGPresentation free_product(const std::vector<CQGPresentation>& factors);

/// Quantum unitary group of a direct sum of complex matrix blocks with
/// state R: the free product of A_u(n_k, R_k^t).
CQGPresentation quantum_unitary_complex(const ComplexifiedAlgebra& alg,
                                        const StateSpec& R);

/// Relations stating that a unitary v preserves the state phi_R on M_n,
/// derived from the matrix units (letters named "v[i,j]").
RelationSet derive_from_state_invariance(int n, const ScalarMatrix& R);

/// Relations stating that a unitary u preserves the bilinear form B
/// (letters named "u[i,j]").
RelationSet derive_from_bilinear(const ScalarMatrix& B);

/// Quantum unitary group of a real C*-algebra, with its construction data.
struct QuantumUnitary {
  CQGPresentation pres;
  RealCStarSpec spec;
  ComplexifiedAlgebra alg;
  SigmaAut sigma;
  StateSpec R;                 // R = sigma(F*F), one block per complex block
  std::vector<ScalarMatrix> F; // one per complexified block
};

QuantumUnitary quantum_unitary_real(const RealCStarSpec& spec,
                                    const std::vector<ScalarMatrix>& F);

/// Adjoins extra relations (counit re-checked).
CQGPresentation quotient(const CQGPresentation& pres,
                         const std::vector<NCPoly>& extra);

struct WoronowiczReport {
  bool ok = true;
  std::vector<size_t> failing; // indices into extra
};

/// Checks Delta(t) in I(x)A + A(x)I for each extra relation t, against the
/// quotient's full relation set.
WoronowiczReport woronowicz_check(const CQGPresentation& pres,
                                  const std::vector<NCPoly>& extra,
                                  const CertificateSpan& span);

/// Adjoins all generator-pair commutators; tags commutative-claimed.
CQGPresentation abelianize(const CQGPresentation& pres);

/// Projective version: degree-2 monomials u_ij (u_kl)° over the full
/// fundamental corepresentation.
struct SubalgebraView {
  std::string name;
  std::vector<NCPoly> generators;
};

SubalgebraView projective(const CQGPresentation& pres);

struct HomReport {
  bool ok = true;
  std::vector<size_t> failing; // indices of src relations not found in dst
};

/// Verifies that the substitution sends every src relation into dst's
/// ideal at the given span. Star images are filled in automatically;
/// explicitly supplied ones must be star-consistent.
HomReport hom_check(const RelationSet& src, const RelationSet& dst,
                    const std::map<int, NCPoly>& subst,
                    const CertificateSpan& span);
HomReport hom_check(const CQGPresentation& src, const CQGPresentation& dst,
                    const std::map<int, NCPoly>& subst,
                    const CertificateSpan& span);

struct TraceReport {
  bool ok = true;
  std::vector<std::string> failing; // "block,i,j"
};

/// Verifies (phi_R (x) id) Ad_U(e_ij) = phi_R(e_ij) 1 in the ideal.
TraceReport trace_preservation_check(const QuantumUnitary& qu,
                                     const CertificateSpan& span);

/// Commutativity of all live letters at the given span.
CommutativityReport check_commutative(const CQGPresentation& pres,
                                      const CertificateSpan& span);

} // namespace cqg
