#pragma once

#include <optional>
#include <set>
#include <tuple>

#include "cqg/matrep.hpp"

namespace cqg {

/// Star-closed list of relations presenting a two-sided *-ideal.
class RelationSet {
public:
  explicit RelationSet(AlphabetPtr alph) : alph_(std::move(alph)) {}

  /// Adds r and star(r); zero polynomials, exact duplicates, and scalar
  /// multiples of existing relations are dropped.
  void add(const NCPoly& r);
  void add_all(const std::vector<NCPoly>& rels);

  const std::vector<NCPoly>& relations() const { return rels_; }
  size_t size() const { return rels_.size(); }
  const Alphabet& alphabet() const { return *alph_; }
  const AlphabetPtr& alphabet_ptr() const { return alph_; }

  /// Letters that occur in some relation.
  std::set<int> support() const;

private:
  AlphabetPtr alph_;
  std::vector<NCPoly> rels_;
  std::set<std::string> seen_;
};

/// Bounds on the certificate search: cofactor words w1, w2 satisfy
/// deg w1 + deg w2 <= k; degree_cap < 0 means no total-degree cap.
struct CertificateSpan {
  int k = 1;
  int degree_cap = -1;
  size_t word_budget = 500000;
};

struct CertTerm {
  Scalar coeff;
  Word left;
  size_t rel_index;
  Word right;
};

/// Explicit combination sum coeff * left * r[rel_index] * right equal to the
/// query polynomial.
struct MembershipCertificate {
  std::vector<CertTerm> terms;

  NCPoly expand(const RelationSet& rels) const;
  std::string str(const RelationSet& rels) const;
};

/// Incremental row-echelon span of { w1 * r * w2 } with provenance, over a
/// fixed letter set. Rows are reduced with deglex-leading-word pivots.
class SpanReducer {
public:
  SpanReducer(const RelationSet& rels, std::vector<int> letters,
              const CertificateSpan& span);

  /// Builds all span elements with deg w1 + deg w2 <= depth (monotone).
  void extend(int depth);
  int built_depth() const { return depth_; }

  /// Returns a certificate when target reduces to zero against the rows
  /// built so far; the certificate has been re-expanded and checked.
  std::optional<MembershipCertificate> reduce(const NCPoly& target) const;

private:
  struct Row {
    NCPoly val;
    std::map<size_t, Scalar> combo; // over gens_
  };
  void insert(NCPoly elem, size_t gen_idx);

  const RelationSet& rels_;
  CertificateSpan span_;
  std::vector<int> letters_;
  std::vector<std::tuple<Word, size_t, Word>> gens_;
  std::map<Word, Row, DegLex> rows_;
  size_t words_used_ = 0;
  int depth_ = -1;
};

/// Bounded-certificate semi-decision: a certificate when one exists within
/// the span, nullopt otherwise (never a non-membership proof). The search is
/// restricted to the letters connected to the target through relations.
std::optional<MembershipCertificate> membership(const NCPoly& p,
                                                const RelationSet& rels,
                                                const CertificateSpan& span);

/// Letters of the relation-graph components touching `seed`; a relation
/// links all its letters, and every letter links to its star partner.
std::vector<int> component_letters(const RelationSet& rels,
                                   const std::set<int>& seed);

struct CommutativityReport {
  bool all_commute = true;
  std::vector<std::pair<int, int>> failing_pairs; // letter ids
  size_t pairs_checked = 0;
};

/// Membership verdicts for all unordered commutators of the given letters,
/// sharing one reducer across queries.
CommutativityReport check_commutative_letters(const RelationSet& rels,
                                              const std::vector<int>& letters,
                                              const CertificateSpan& span);

struct EliminationResult {
  RelationSet rels;
  /// Images of all letters; eliminated ones map into the surviving letters.
  std::map<int, NCPoly> images;
  std::vector<char> eliminated; // indexed by letter id
};

/// Repeatedly removes a letter g occurring in a degree-<=1 relation
/// g - L with L free of g and star(g); star-consistent; runs to fixpoint.
EliminationResult eliminate_linear(const RelationSet& rels);

/// Membership of t in span{ w1*r*w2 (x) w } + span{ w (x) w1*r*w2 } where w
/// runs over words of degree at most the larger leg degree of t.
bool tensor_membership(const TensorPoly& t, const RelationSet& rels,
                       const CertificateSpan& span);

/// Batch form: one verdict per target, sharing a single span build; the
/// cofactor depth is raised one level at a time and each level only runs
/// when some target is still unresolved.
std::vector<char> tensor_membership(const std::vector<TensorPoly>& ts,
                                    const RelationSet& rels,
                                    const CertificateSpan& span);

} // namespace cqg
