#include "cqg/gauge.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace cqg {

namespace {

ScalarMatrix munit(int n, int i, int j) {
  ScalarMatrix m(n, n);
  m.at(i, j) = Scalar(1);
  return m;
}

/// The operator e_i (x) e_j -> e_j (x) e_i on C^n (x) C^n.
ScalarMatrix swap_matrix(int n) {
  ScalarMatrix s(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.at(j * n + i, i * n + j) = Scalar(1);
  return s;
}

ScalarMatrix sigma_x() {
  ScalarMatrix s(2, 2);
  s.at(0, 1) = Scalar(1);
  s.at(1, 0) = Scalar(1);
  return s;
}

std::string idx2(const std::string& base, int i, int j) {
  return base + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
         "]";
}

// ---------------------------------------------------------------------
// Sparse exact matrices, used for the structural invariant checks.
// ---------------------------------------------------------------------

using SMat = std::map<std::pair<int, int>, Scalar>;

SMat to_sparse(const ScalarMatrix& m) {
  SMat s;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) s[{r, c}] = m.at(r, c);
  return s;
}

SMat sparse_mul(const SMat& a, const SMat& b) {
  std::map<int, std::vector<std::pair<int, Scalar>>> brows;
  for (const auto& [rc, v] : b) brows[rc.first].push_back({rc.second, v});
  SMat out;
  for (const auto& [rc, v] : a) {
    auto it = brows.find(rc.second);
    if (it == brows.end()) continue;
    for (const auto& [c, w] : it->second) {
      Scalar acc = out.count({rc.first, c}) ? out[{rc.first, c}] : Scalar(0);
      acc = acc + v * w;
      if (acc.is_zero())
        out.erase({rc.first, c});
      else
        out[{rc.first, c}] = acc;
    }
  }
  return out;
}

SMat sparse_adjoint(const SMat& a) {
  SMat out;
  for (const auto& [rc, v] : a) out[{rc.second, rc.first}] = v.conj();
  return out;
}

SMat sparse_conj(const SMat& a) {
  SMat out;
  for (const auto& [rc, v] : a) out[rc] = v.conj();
  return out;
}

SMat sparse_ident(int n) {
  SMat out;
  for (int i = 0; i < n; ++i) out[{i, i}] = Scalar(1);
  return out;
}

SMat sparse_add(const SMat& a, const SMat& b) {
  SMat out = a;
  for (const auto& [rc, v] : b) {
    Scalar acc = out.count(rc) ? out[rc] : Scalar(0);
    acc = acc + v;
    if (acc.is_zero())
      out.erase(rc);
    else
      out[rc] = acc;
  }
  return out;
}

bool sparse_eq(const SMat& a, const SMat& b) { return a == b; }

// ---------------------------------------------------------------------
// Builtin triples.
// ---------------------------------------------------------------------

FiniteSpectralTriple make_eym(const std::string& base, int n) {
  if (n < 1) fail(ErrorCode::UnknownName, "builtin_triple: size must be >= 1");
  FiniteSpectralTriple t;
  t.name = base + "(" + std::to_string(n) + ")";
  t.eps = 1;
  if (base == "eym-c" || base == "eym-r" || base == "eym-h") {
    int m = (base == "eym-h") ? 2 * n : n; // complexified block size
    t.spec = RealCStarSpec::parse(
        (base == "eym-c" ? "C(" : base == "eym-r" ? "R(" : "H(") +
        std::to_string(n) + ")");
    t.N = m * m;
    std::vector<ScalarMatrix> act(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        act[static_cast<size_t>(i) * m + j] =
            munit(m, i, j).kron(ScalarMatrix::identity(m));
    t.pi.push_back(act);
    if (base == "eym-c") // the conjugate summand acts by zero
      t.pi.push_back(std::vector<ScalarMatrix>(
          static_cast<size_t>(m) * m, ScalarMatrix(t.N, t.N)));
    t.J0 = swap_matrix(m);
    return t;
  }
  if (base == "eym-c4" || base == "eym-c5") {
    t.spec = RealCStarSpec::parse("C(" + std::to_string(n) + ")");
    t.N = 2 * n * n;
    std::vector<ScalarMatrix> a0(static_cast<size_t>(n) * n),
        a1(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a0[static_cast<size_t>(i) * n + j] =
            munit(n, i, j).kron(ScalarMatrix::identity(n)).kron(munit(2, 0, 0));
        a1[static_cast<size_t>(i) * n + j] =
            munit(n, i, j).kron(ScalarMatrix::identity(n)).kron(munit(2, 1, 1));
      }
    t.pi.push_back(a0);
    t.pi.push_back(a1);
    t.J0 = swap_matrix(n).kron(base == "eym-c4" ? ScalarMatrix::identity(2)
                                                : sigma_x());
    return t;
  }
  fail(ErrorCode::UnknownName, "builtin_triple: unknown name " + base);
}

FiniteSpectralTriple make_aev() {
  FiniteSpectralTriple t;
  t.name = "aev";
  t.eps = 1;
  t.spec = RealCStarSpec::parse("H(1) + H(1) + C(4)");
  t.N = 32;
  ScalarMatrix I4 = ScalarMatrix::identity(4);
  std::vector<ScalarMatrix> b0(4), b1(4), b2(16),
      b3(16, ScalarMatrix(t.N, t.N));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      b0[static_cast<size_t>(i) * 2 + j] =
          munit(4, i, j).kron(I4).kron(munit(2, 0, 0));
      b1[static_cast<size_t>(i) * 2 + j] =
          munit(4, i + 2, j + 2).kron(I4).kron(munit(2, 0, 0));
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      b2[static_cast<size_t>(i) * 4 + j] =
          munit(4, i, j).kron(I4).kron(munit(2, 1, 1));
  t.pi = {b0, b1, b2, b3};
  t.J0 = swap_matrix(4).kron(sigma_x());
  return t;
}

FiniteSpectralTriple make_sm() {
  FiniteSpectralTriple t;
  t.name = "sm";
  t.eps = 1;
  t.spec = RealCStarSpec::parse("C(1) + H(1) + C(3)");
  t.N = 96;
  ScalarMatrix I2 = ScalarMatrix::identity(2);
  ScalarMatrix I3 = ScalarMatrix::identity(3);
  ScalarMatrix I4 = ScalarMatrix::identity(4);
  ScalarMatrix lepton = munit(4, 1, 1) + munit(4, 2, 2); // e22 + e33
  std::vector<ScalarMatrix> b0(1), b1(1), b2(4), b3(9),
      b4(9, ScalarMatrix(t.N, t.N));
  b0[0] = munit(2, 0, 0).kron(I4).kron(munit(4, 3, 3)).kron(I3) +
          I2.kron(munit(4, 0, 0)).kron(lepton).kron(I3);
  b1[0] = munit(2, 1, 1).kron(I4).kron(munit(4, 3, 3)).kron(I3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      b2[static_cast<size_t>(i) * 2 + j] =
          munit(2, i, j).kron(I4).kron(munit(4, 0, 0)).kron(I3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      b3[static_cast<size_t>(i) * 3 + j] =
          I2.kron(munit(4, i + 1, j + 1)).kron(lepton).kron(I3);
  t.pi = {b0, b1, b2, b3, b4};
  ScalarMatrix K(4, 4);
  K.at(0, 2) = K.at(2, 0) = K.at(1, 3) = K.at(3, 1) = Scalar(1);
  t.J0 = I2.kron(I4).kron(K).kron(I3);
  return t;
}

// Shared membership batch: one reducer over the component letters of all
// targets, escalating the cofactor depth with early exit.
bool all_in_ideal(const std::vector<NCPoly>& targets0, const RelationSet& rels,
                  int k, int degree_cap) {
  std::vector<NCPoly> targets;
  std::set<int> seed;
  for (const NCPoly& p : targets0) {
    if (p.is_zero()) continue;
    targets.push_back(p);
    for (const auto& [w, c] : p.terms())
      for (int g : w) seed.insert(g);
  }
  if (targets.empty()) return true;
  CertificateSpan span;
  span.k = k;
  span.degree_cap = degree_cap;
  SpanReducer red(rels, component_letters(rels, seed), span);
  std::vector<char> done(targets.size(), 0);
  size_t remaining = targets.size();
  for (int d = 0; d <= k && remaining > 0; ++d) {
    red.extend(d);
    for (size_t i = 0; i < targets.size(); ++i) {
      if (done[i]) continue;
      if (red.reduce(targets[i])) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

void add_family(GenMatrix& acc, const ScalarMatrix& support,
                const NCPoly& monomial) {
  for (int r = 0; r < support.rows(); ++r)
    for (int c = 0; c < support.cols(); ++c)
      if (!support.at(r, c).is_zero())
        acc.at(r, c) = acc.at(r, c) + monomial.scalar_mul(support.at(r, c));
}

GaugeReport corep_core(const FiniteSpectralTriple& t,
                       const CQGPresentation& pres) {
  GenMatrix upi = build_upi(t, pres);
  const Alphabet& alph = pres.alphabet();
  GenMatrix ubar = upi.bar(alph);
  GenMatrix V = ((upi * t.J0) * ubar) * t.J0.conj();
  if (t.eps < 0) V = V.scalar_mul(Scalar(-1));

  GaugeReport rep;
  std::set<Word, DegLex> words;
  for (int r = 0; r < V.rows(); ++r)
    for (int c = 0; c < V.cols(); ++c)
      for (const auto& [w, coeff] : V.at(r, c).terms()) words.insert(w);
  for (const Word& w : words) rep.monomials.push_back(NCPoly::word(w));
  rep.view.name = "G(" + pres.name() + ")";
  rep.view.generators = rep.monomials;

  // Degree-2 biunitarity certificates for U^pi and its conjugate.
  GenMatrix ident = GenMatrix::identity(t.N);
  GenMatrix uadj = upi.adjoint(alph);
  GenMatrix ubadj = ubar.adjoint(alph);
  std::vector<NCPoly> deg2;
  for (const GenMatrix& m :
       {upi * uadj, uadj * upi, ubar * ubadj, ubadj * ubar})
    for (const NCPoly& p : relations_from_eq(m, ident)) deg2.push_back(p);
  rep.unitary_ok = all_in_ideal(deg2, pres.relations(), 2, 2);

  rep.V = std::move(V);
  return rep;
}

} // namespace

// ---------------------------------------------------------------------
// FiniteSpectralTriple
// ---------------------------------------------------------------------

void FiniteSpectralTriple::validate() const {
  auto [alg, sigma] = complexify(spec);
  if (pi.size() != alg.blocks.size())
    fail(ErrorCode::BasisMismatch, "triple: block count mismatch");
  for (size_t b = 0; b < pi.size(); ++b) {
    int m = alg.blocks[b].size;
    if (static_cast<int>(pi[b].size()) != m * m)
      fail(ErrorCode::BasisMismatch, "triple: basis size mismatch");
    for (const ScalarMatrix& x : pi[b])
      if (x.rows() != N || x.cols() != N)
        fail(ErrorCode::DimensionMismatch, "triple: basis image shape");
  }
  if (J0.rows() != N || J0.cols() != N)
    fail(ErrorCode::DimensionMismatch, "triple: J0 shape");
  if (eps != 1 && eps != -1)
    fail(ErrorCode::BasisMismatch, "triple: eps must be +-1");

  // Sparse images.
  std::vector<std::vector<SMat>> sp(pi.size());
  for (size_t b = 0; b < pi.size(); ++b)
    for (const ScalarMatrix& x : pi[b]) sp[b].push_back(to_sparse(x));

  SMat j0 = to_sparse(J0);
  SMat j0c = sparse_conj(j0);

  // J0 conj(J0) = eps * I.
  SMat jj = sparse_mul(j0, j0c);
  SMat epsI = sparse_ident(N);
  if (eps < 0)
    for (auto& [rc, v] : epsI) v = -v;
  if (!sparse_eq(jj, epsI))
    fail(ErrorCode::BasisMismatch, "triple: J0 conj(J0) != eps*I");
  if (!sparse_eq(sparse_mul(j0, sparse_adjoint(j0)), sparse_ident(N)))
    fail(ErrorCode::BasisMismatch, "triple: J0 not unitary");

  // Unital: the diagonal basis elements sum to the identity.
  SMat unit;
  for (size_t b = 0; b < pi.size(); ++b) {
    int m = alg.blocks[b].size;
    for (int i = 0; i < m; ++i)
      unit = sparse_add(unit, sp[b][static_cast<size_t>(i) * m + i]);
  }
  if (!sparse_eq(unit, sparse_ident(N)))
    fail(ErrorCode::BasisMismatch, "triple: representation not unital");

  // *-homomorphism on all basis pairs, and star compatibility.
  for (size_t b = 0; b < pi.size(); ++b) {
    int m = alg.blocks[b].size;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const SMat& x = sp[b][static_cast<size_t>(i) * m + j];
        if (!sparse_eq(sparse_adjoint(x),
                       sp[b][static_cast<size_t>(j) * m + i]))
          fail(ErrorCode::BasisMismatch, "triple: star mismatch");
        for (size_t c = 0; c < pi.size(); ++c) {
          int mc = alg.blocks[c].size;
          for (int k = 0; k < mc; ++k)
            for (int l = 0; l < mc; ++l) {
              SMat prod =
                  sparse_mul(x, sp[c][static_cast<size_t>(k) * mc + l]);
              SMat expect;
              if (b == c && j == k)
                expect = sp[b][static_cast<size_t>(i) * m + l];
              if (!sparse_eq(prod, expect))
                fail(ErrorCode::BasisMismatch,
                     "triple: products not multiplicative");
            }
        }
      }
  }

  // Every image commutes with every conjugated image.
  std::vector<SMat> flat, conjd;
  for (size_t b = 0; b < pi.size(); ++b)
    for (const SMat& x : sp[b]) {
      flat.push_back(x);
      conjd.push_back(sparse_mul(sparse_mul(j0, sparse_conj(x)), j0c));
    }
  for (const SMat& x : flat)
    for (const SMat& y : conjd)
      if (!sparse_eq(sparse_mul(x, y), sparse_mul(y, x)))
        fail(ErrorCode::BasisMismatch,
             "triple: image does not commute with conjugated image");
}

std::string FiniteSpectralTriple::serialize() const {
  auto [alg, sigma] = complexify(spec);
  std::ostringstream os;
  os << "triple v1\n";
  os << "name: " << name << "\n";
  os << "spec: " << spec.str() << "\n";
  os << "N: " << N << "\n";
  os << "eps: " << eps << "\n";
  for (size_t b = 0; b < pi.size(); ++b) {
    int m = alg.blocks[b].size;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        os << "pi " << b << " " << idx2("e", i, j) << "\n";
        const ScalarMatrix& x = pi[b][static_cast<size_t>(i) * m + j];
        for (int r = 0; r < N; ++r)
          for (int c = 0; c < N; ++c)
            if (!x.at(r, c).is_zero())
              os << "  " << r + 1 << "," << c + 1 << " " << x.at(r, c).str()
                 << "\n";
      }
  }
  os << "J0\n";
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      if (!J0.at(r, c).is_zero())
        os << "  " << r + 1 << "," << c + 1 << " " << J0.at(r, c).str()
           << "\n";
  return os.str();
}

FiniteSpectralTriple builtin_triple(const std::string& name) {
  if (name == "aev") {
    FiniteSpectralTriple t = make_aev();
    t.validate();
    return t;
  }
  if (name == "sm") {
    FiniteSpectralTriple t = make_sm();
    t.validate();
    return t;
  }
  size_t open = name.find('(');
  if (open == std::string::npos || name.back() != ')')
    fail(ErrorCode::UnknownName, "builtin_triple: unknown name " + name);
  std::string base = name.substr(0, open);
  int n = 0;
  try {
    n = std::stoi(name.substr(open + 1, name.size() - open - 2));
  } catch (const std::exception&) {
    fail(ErrorCode::UnknownName, "builtin_triple: bad size in " + name);
  }
  FiniteSpectralTriple t = make_eym(base, n);
  t.validate();
  return t;
}

// ---------------------------------------------------------------------
// Gauge corepresentation
// ---------------------------------------------------------------------

QuantumUnitary gauge_quantum_unitary(const FiniteSpectralTriple& t) {
  auto [alg, sigma] = complexify(t.spec);
  std::vector<ScalarMatrix> F;
  for (const ComplexBlock& b : alg.blocks)
    F.push_back(ScalarMatrix::identity(b.size));
  return quantum_unitary_real(t.spec, F);
}

GenMatrix build_upi(const FiniteSpectralTriple& t,
                    const CQGPresentation& pres) {
  if (pres.blocks().size() != t.pi.size())
    fail(ErrorCode::BasisMismatch, "build_upi: block count mismatch");
  GenMatrix u(t.N, t.N);
  for (size_t b = 0; b < t.pi.size(); ++b) {
    const GenMatrix& mat = pres.blocks()[b].mat;
    int m = mat.rows();
    if (static_cast<int>(t.pi[b].size()) != m * m)
      fail(ErrorCode::BasisMismatch, "build_upi: block size mismatch");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const ScalarMatrix& supp = t.pi[b][static_cast<size_t>(i) * m + j];
        if (supp.rows() != t.N || supp.cols() != t.N)
          fail(ErrorCode::BasisMismatch, "build_upi: basis image shape");
        const NCPoly& g = mat.at(i, j);
        if (g.is_zero()) continue;
        for (int r = 0; r < t.N; ++r)
          for (int c = 0; c < t.N; ++c)
            if (!supp.at(r, c).is_zero())
              u.at(r, c) = u.at(r, c) + g.scalar_mul(supp.at(r, c));
      }
  }
  return u;
}

GaugeReport gauge_corep(const FiniteSpectralTriple& t,
                        const CQGPresentation& pres) {
  GaugeReport rep = corep_core(t, pres);
  // Quadratic certificate for V itself on small presentations.
  if (rep.unitary_ok && pres.live_letters().size() <= 20) {
    std::vector<NCPoly> quart = relations_from_eq(
        rep.V * rep.V.adjoint(pres.alphabet()), GenMatrix::identity(t.N));
    rep.unitary_ok = all_in_ideal(quart, pres.relations(), 2, 4);
  }
  return rep;
}

GaugeReport sm_gauge(const FiniteSpectralTriple& t) {
  if (t.name != "sm")
    fail(ErrorCode::UnknownName, "sm_gauge: expected the builtin \"sm\"");
  QuantumUnitary qu = gauge_quantum_unitary(t);
  const CQGPresentation& pres = qu.pres;
  GaugeReport rep = corep_core(t, pres);

  // Expected corepresentation: eleven disjoint (support, monomial)
  // families refining the seven generating families.
  const Alphabet& alph = pres.alphabet();
  ScalarMatrix I2 = ScalarMatrix::identity(2);
  ScalarMatrix I3 = ScalarMatrix::identity(3);
  auto sup = [&](const ScalarMatrix& l1, const ScalarMatrix& l2,
                 const ScalarMatrix& l3) {
    return l1.kron(l2).kron(l3).kron(I3);
  };
  ScalarMatrix e2_00 = munit(2, 0, 0), e2_11 = munit(2, 1, 1);
  ScalarMatrix e4_00 = munit(4, 0, 0);
  ScalarMatrix q1 = munit(4, 1, 1), q3 = munit(4, 3, 3), q2 = munit(4, 2, 2);
  NCPoly z = pres.entry(0, 0, 0);
  NCPoly zs = z.star(alph);

  GenMatrix exp(t.N, t.N);
  add_family(exp, sup(e2_00, e4_00, q1 + q3), z * zs);
  add_family(exp, sup(e2_11, e4_00, q1), z * z);
  add_family(exp, sup(e2_11, e4_00, q3), zs * zs);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      NCPoly a = pres.entry(2, k, l);
      ScalarMatrix ekl = munit(2, k, l);
      add_family(exp, sup(ekl, e4_00, q2), z * a.star(alph));
      add_family(exp, sup(ekl, e4_00, e4_00), a * zs);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          NCPoly u = pres.entry(3, i, j);
          ScalarMatrix eij = munit(4, i + 1, j + 1);
          add_family(exp, sup(ekl, eij, e4_00), a * u.star(alph));
          add_family(exp, sup(ekl, eij, q2), u * a.star(alph));
        }
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      NCPoly u = pres.entry(3, i, j);
      ScalarMatrix eij = munit(4, i + 1, j + 1);
      add_family(exp, sup(e2_00, eij, q3), z * u.star(alph));
      add_family(exp, sup(e2_11, eij, q3), zs * u.star(alph));
      add_family(exp, sup(e2_00, eij, q1), u * zs);
      add_family(exp, sup(e2_11, eij, q1), u * z);
    }

  rep.display_ok = (rep.V == exp);
  return rep;
}

RelationSet qiso_relations(int n) {
  auto alph = std::make_shared<Alphabet>();
  GenMatrix u(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int g = alph->add_pair(idx2("a", i, j), idx2("a*", i, j));
      u.at(i, j) = NCPoly::gen(g);
    }
  RelationSet rels(alph);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rels.add(u.at(i, j).star(*alph) - u.at(i, j));
  GenMatrix ident = GenMatrix::identity(n);
  rels.add_all(relations_from_eq(u * u.adjoint(*alph), ident));
  rels.add_all(relations_from_eq(u.adjoint(*alph) * u, ident));
  return rels;
}

// ---------------------------------------------------------------------
// Numeric classical check (the only floating-point code path).
// ---------------------------------------------------------------------

namespace {

using Cx = std::complex<double>;
using CMat = std::vector<std::vector<Cx>>;

CMat czero(int n) { return CMat(n, std::vector<Cx>(n)); }

CMat cident(int n) {
  CMat m = czero(n);
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

CMat cmul(const CMat& a, const CMat& b) {
  int n = static_cast<int>(a.size());
  CMat out = czero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Cx v = a[i][k];
      if (v == Cx(0)) continue;
      for (int j = 0; j < n; ++j) out[i][j] += v * b[k][j];
    }
  return out;
}

CMat cconj(const CMat& a) {
  CMat out = a;
  for (auto& row : out)
    for (Cx& v : row) v = std::conj(v);
  return out;
}

CMat cadjoint(const CMat& a) {
  int n = static_cast<int>(a.size());
  CMat out = czero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = std::conj(a[j][i]);
  return out;
}

double dist_ident(const CMat& a) {
  double d = 0;
  int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d = std::max(d, std::abs(a[i][j] - (i == j ? Cx(1) : Cx(0))));
  return d;
}

CMat cinverse(CMat a) {
  int n = static_cast<int>(a.size());
  CMat inv = cident(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Cx d = a[col][col];
    for (int c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Cx f = a[r][col];
      if (f == Cx(0)) continue;
      for (int c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Unitary polar factor by Newton iteration; preserves real and
/// quaternionic structure.
CMat polar_unitary(CMat y) {
  for (int it = 0; it < 40; ++it) {
    CMat z = cinverse(cadjoint(y));
    int n = static_cast<int>(y.size());
    double diff = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Cx next = 0.5 * (y[i][j] + z[i][j]);
        diff = std::max(diff, std::abs(next - y[i][j]));
        y[i][j] = next;
      }
    if (diff < 1e-14) break;
  }
  return y;
}

Cx to_cx(const Scalar& s) {
  GaussRat g = s.eval(Rat(1));
  return {g.re.get_d(), g.im.get_d()};
}

} // namespace

ClassicalGaugeReport classical_gauge_check(const FiniteSpectralTriple& t,
                                           int trials, unsigned long seed) {
  size_t open = t.name.find('(');
  std::string base =
      open == std::string::npos ? t.name : t.name.substr(0, open);
  if (base != "eym-c" && base != "eym-r" && base != "eym-h" &&
      base != "eym-c4" && base != "eym-c5")
    fail(ErrorCode::UnsupportedSpec,
         "classical_gauge_check: only eym-* triples are supported");
  bool case_v = (base == "eym-c5");
  DivisionRing ring = t.spec.blocks[0].ring;
  int m = (ring == DivisionRing::H) ? 2 * t.spec.blocks[0].n
                                    : t.spec.blocks[0].n;

  auto [alg, sigma] = complexify(t.spec);
  // Numeric basis images at s = 1, sparse.
  std::vector<std::vector<std::vector<std::tuple<int, int, Cx>>>> pin(
      t.pi.size());
  for (size_t b = 0; b < t.pi.size(); ++b)
    for (const ScalarMatrix& x : t.pi[b]) {
      std::vector<std::tuple<int, int, Cx>> sp;
      for (int r = 0; r < t.N; ++r)
        for (int c = 0; c < t.N; ++c)
          if (!x.at(r, c).is_zero()) sp.push_back({r, c, to_cx(x.at(r, c))});
      pin[b].push_back(std::move(sp));
    }
  CMat j0 = czero(t.N);
  for (int r = 0; r < t.N; ++r)
    for (int c = 0; c < t.N; ++c)
      if (!t.J0.at(r, c).is_zero()) j0[r][c] = to_cx(t.J0.at(r, c));
  CMat j0c = cconj(j0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const double pi_const = 3.14159265358979323846;

  auto rand_block = [&]() -> CMat {
    if (ring == DivisionRing::R) {
      CMat x = czero(m);
      for (auto& row : x)
        for (Cx& v : row) v = nd(rng);
      return polar_unitary(x);
    }
    if (ring == DivisionRing::C) {
      CMat x = czero(m);
      for (auto& row : x)
        for (Cx& v : row) v = Cx(nd(rng), nd(rng));
      return polar_unitary(x);
    }
    int h = m / 2;
    CMat x = czero(m);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < h; ++j) {
        Cx a(nd(rng), nd(rng)), b(nd(rng), nd(rng));
        x[i][j] = a;
        x[i][j + h] = b;
        x[i + h][j] = -std::conj(b);
        x[i + h][j + h] = std::conj(a);
      }
    return polar_unitary(x);
  };

  ClassicalGaugeReport rep;
  const double tol = 1e-9;
  for (int tr = 0; tr < trials; ++tr) {
    CMat u;
    bool scalar_sample = false;
    Cx lambda = 1.0;
    if (tr == 0) {
      u = cident(m); // the identity always lies in the kernel
      scalar_sample = true;
    } else if (tr % 2 == 1) {
      scalar_sample = true;
      if (ring == DivisionRing::C) {
        if (case_v && tr % 4 == 1)
          lambda = (ud(rng) < 0.5) ? 1.0 : -1.0;
        else {
          double th = 2 * pi_const * ud(rng);
          lambda = Cx(std::cos(th), std::sin(th));
        }
      } else {
        lambda = (ud(rng) < 0.5) ? 1.0 : -1.0;
      }
      u = cident(m);
      for (int i = 0; i < m; ++i) u[i][i] = lambda;
    } else {
      u = rand_block();
    }

    // Complexified block values.
    std::vector<CMat> blocks;
    blocks.push_back(u);
    if (ring == DivisionRing::C) blocks.push_back(cconj(u));

    CMat piu = czero(t.N);
    for (size_t b = 0; b < blocks.size(); ++b) {
      int mb = alg.blocks[b].size;
      for (int i = 0; i < mb; ++i)
        for (int j = 0; j < mb; ++j)
          for (const auto& [r, c, v] :
               pin[b][static_cast<size_t>(i) * mb + j])
            piu[r][c] += v * blocks[b][i][j];
    }
    CMat v = cmul(cmul(cmul(piu, j0), cconj(piu)), j0c);
    if (t.eps < 0)
      for (auto& row : v)
        for (Cx& x : row) x = -x;

    ++rep.samples;
    bool kernel = dist_ident(v) < tol;
    if (kernel) {
      ++rep.kernel_hits;
      Cx l0 = u[0][0];
      double off = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          off = std::max(off, std::abs(u[i][j] - (i == j ? l0 : Cx(0))));
      if (off > tol)
        rep.violations.push_back("trial " + std::to_string(tr) +
                                 ": kernel element is not scalar");
      if (case_v && std::abs(l0 * l0 - Cx(1)) > tol)
        rep.violations.push_back("trial " + std::to_string(tr) +
                                 ": kernel scalar is not +-1");
    }
    if (scalar_sample) {
      bool should_be_kernel =
          !case_v || std::abs(lambda * lambda - Cx(1)) < tol;
      if (should_be_kernel && !kernel)
        rep.violations.push_back("trial " + std::to_string(tr) +
                                 ": scalar sample left the kernel");
      if (!should_be_kernel && kernel &&
          std::abs(lambda * lambda - Cx(1)) > 1e-6)
        rep.violations.push_back("trial " + std::to_string(tr) +
                                 ": non-real scalar lies in the kernel");
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

} // namespace cqg
