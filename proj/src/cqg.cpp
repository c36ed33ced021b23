#include "cqg/cqg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "cqg/error.hpp"

namespace cqg {

namespace {

std::string idx2(const std::string& base, int i, int j) {
  std::ostringstream os;
  os << base << "[" << i << "," << j << "]";
  return os.str();
}

bool is_scalar_mat(const ScalarMatrix& R) {
  if (R.rows() != R.cols()) return false;
  const Scalar c = R.at(0, 0);
  for (int i = 0; i < R.rows(); ++i)
    for (int j = 0; j < R.cols(); ++j)
      if (!(R.at(i, j) == (i == j ? c : Scalar(0)))) return false;
  return true;
}

/// Adds an n x n block of star-paired letters named base[i,j], registers
/// their homes in the next block slot, and appends the block.
GenMatrix add_letter_block(CQGPresentation& pres, Alphabet& alph,
                           const std::string& base, int n) {
  const int block = static_cast<int>(pres.blocks().size());
  GenMatrix U(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int g = alph.add_pair(idx2(base, i + 1, j + 1),
                            idx2(base + "*", i + 1, j + 1));
      U.at(i, j) = NCPoly::gen(g);
      pres.set_home(g, Home{block, i, j});
    }
  pres.add_block(base, U);
  return U;
}

void add_biunitarity(CQGPresentation& pres, const GenMatrix& U) {
  const Alphabet& alph = pres.alphabet();
  GenMatrix I = GenMatrix::identity(U.rows());
  pres.add_relations(relations_from_eq(U * U.adjoint(alph), I));
  pres.add_relations(relations_from_eq(U.adjoint(alph) * U, I));
}

int inversions(const std::vector<int>& p) {
  int inv = 0;
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv;
}

Scalar neg_q_pow(int k) {
  Scalar c = Scalar::q_power(k);
  return (k % 2 != 0) ? -c : c;
}

/// Membership of several targets against one shared certificate span.
std::vector<char> batch_membership(const std::vector<NCPoly>& targets,
                                   const RelationSet& rels,
                                   const CertificateSpan& span) {
  std::vector<char> found(targets.size(), 0);
  std::set<int> seed;
  size_t remaining = 0;
  for (size_t t = 0; t < targets.size(); ++t) {
    if (targets[t].is_zero()) {
      found[t] = 1;
      continue;
    }
    ++remaining;
    for (const auto& [w, c] : targets[t].terms())
      for (int g : w) seed.insert(g);
  }
  if (remaining == 0) return found;
  SpanReducer red(rels, component_letters(rels, seed), span);
  for (int d = 0; d <= span.k && remaining > 0; ++d) {
    red.extend(d);
    for (size_t t = 0; t < targets.size(); ++t) {
      if (found[t]) continue;
      if (red.reduce(targets[t])) {
        found[t] = 1;
        --remaining;
      }
    }
  }
  return found;
}

} // namespace

void CQGPresentation::add_block(std::string label, GenMatrix mat) {
  blocks_.push_back(CorepBlock{std::move(label), std::move(mat)});
}

const NCPoly& CQGPresentation::entry(int b, int i, int j) const {
  if (b < 0 || b >= static_cast<int>(blocks_.size()))
    fail(ErrorCode::IndexOutOfRange, "block index out of range");
  const GenMatrix& m = blocks_[static_cast<size_t>(b)].mat;
  if (i < 0 || i >= m.rows() || j < 0 || j >= m.cols())
    fail(ErrorCode::IndexOutOfRange, "entry index out of range");
  return m.at(i, j);
}

Scalar CQGPresentation::counit(const NCPoly& p) const {
  Scalar total(0);
  for (const auto& [w, c] : p.terms()) {
    Scalar v = c;
    for (int g : w) {
      int base = alph_->is_star_letter(g) ? alph_->star(g) : g;
      auto it = home_.find(base);
      if (it == home_.end())
        fail(ErrorCode::UnknownGenerator,
             "counit: letter " + alph_->name(g) + " has no home entry");
      if (it->second.row != it->second.col) {
        v = Scalar(0);
        break;
      }
    }
    total = total + v;
  }
  return total;
}

TensorPoly CQGPresentation::coproduct(const NCPoly& p) const {
  TensorPoly result;
  for (const auto& [w, c] : p.terms()) {
    TensorPoly acc = TensorPoly::tensor(NCPoly(Scalar(1)), NCPoly(Scalar(1)));
    for (int g : w) {
      bool st = alph_->is_star_letter(g);
      int base = st ? alph_->star(g) : g;
      auto it = home_.find(base);
      if (it == home_.end())
        fail(ErrorCode::UnknownGenerator,
             "coproduct: letter " + alph_->name(g) + " has no home entry");
      const Home& h = it->second;
      const GenMatrix& m = blocks_[static_cast<size_t>(h.block)].mat;
      TensorPoly dg;
      for (int k = 0; k < m.cols(); ++k) {
        NCPoly left = m.at(h.row, k);
        NCPoly right = m.at(k, h.col);
        if (st) {
          left = left.star(*alph_);
          right = right.star(*alph_);
        }
        dg = dg + TensorPoly::tensor(left, right);
      }
      acc = acc * dg;
    }
    result = result + acc.scalar_mul(c);
  }
  return result;
}

NCPoly CQGPresentation::antipode_kac(const NCPoly& p) const {
  if (!kac_)
    fail(ErrorCode::NotKacTagged,
         "antipode_kac requires the Kac tag on " + name_);
  NCPoly result;
  for (const auto& [w, c] : p.terms()) {
    NCPoly acc(Scalar(1));
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      int g = *it;
      bool st = alph_->is_star_letter(g);
      int base = st ? alph_->star(g) : g;
      auto hit = home_.find(base);
      if (hit == home_.end())
        fail(ErrorCode::UnknownGenerator,
             "antipode: letter " + alph_->name(g) + " has no home entry");
      const Home& h = hit->second;
      NCPoly img = entry(h.block, h.col, h.row);
      if (!st) img = img.star(*alph_);
      acc = acc * img;
    }
    result = result + acc.scalar_mul(c);
  }
  return result;
}

void CQGPresentation::finalize() const {
  for (const NCPoly& r : rels_.relations()) {
    if (!counit(r).is_zero())
      fail(ErrorCode::CounitCheckFailed,
           name_ + ": counit does not annihilate " + r.str(*alph_));
  }
}

std::vector<int> CQGPresentation::live_letters() const {
  std::set<int> s = rels_.support();
  for (const CorepBlock& b : blocks_)
    for (int i = 0; i < b.mat.rows(); ++i)
      for (int j = 0; j < b.mat.cols(); ++j)
        for (const auto& [w, c] : b.mat.at(i, j).terms())
          for (int g : w) s.insert(g);
  std::set<int> closed = s;
  for (int g : s) closed.insert(alph_->star(g));
  return {closed.begin(), closed.end()};
}

std::string CQGPresentation::serialize() const {
  std::ostringstream os;
  os << "cqg-presentation v1\n";
  os << "name: " << name_ << "\n";
  os << "tags:";
  if (kac_) os << " kac";
  if (commutative_claimed_) os << " commutative-claimed";
  os << "\n";
  for (const CorepBlock& b : blocks_) {
    os << "block " << b.label << " " << b.mat.rows() << "x" << b.mat.cols()
       << "\n";
    for (int i = 0; i < b.mat.rows(); ++i)
      for (int j = 0; j < b.mat.cols(); ++j)
        os << "  " << b.mat.at(i, j).str(*alph_) << "\n";
  }
  std::vector<std::string> lines;
  for (const NCPoly& r : rels_.relations()) lines.push_back(r.str(*alph_));
  std::sort(lines.begin(), lines.end());
  os << "relations " << lines.size() << "\n";
  for (const std::string& l : lines) os << "  " << l << "\n";
  return os.str();
}

CQGPresentation make_au(int n, const ScalarMatrix& R) {
  if (R.rows() != n || R.cols() != n)
    fail(ErrorCode::DimensionMismatch, "make_au: R must be n x n");
  ScalarMatrix Rinv = R.inverse();
  auto alph = std::make_shared<Alphabet>();
  CQGPresentation pres("A_u(" + std::to_string(n) + "," + R.str() + ")", alph);
  GenMatrix U = add_letter_block(pres, *alph, "u", n);
  add_biunitarity(pres, U);
  GenMatrix V = R * U.bar(*alph) * Rinv;
  GenMatrix I = GenMatrix::identity(n);
  pres.add_relations(relations_from_eq(U.transpose() * V, I));
  pres.add_relations(relations_from_eq(V * U.transpose(), I));
  pres.set_kac(is_scalar_mat(R));
  pres.finalize();
  return pres;
}

CQGPresentation make_ao(int n, const ScalarMatrix& F) {
  if (F.rows() != n || F.cols() != n)
    fail(ErrorCode::DimensionMismatch, "make_ao: F must be n x n");
  ScalarMatrix Finv = F.inverse();
  CQGPresentation pres = make_au(n, F.adjoint() * F);
  const GenMatrix& U = pres.blocks()[0].mat;
  pres.add_relations(
      relations_from_eq(U, F * U.bar(pres.alphabet()) * Finv));
  pres.set_name("A_o(" + std::to_string(n) + "," + F.str() + ")");
  pres.finalize();
  return pres;
}

CQGPresentation make_asp(int m) {
  ScalarMatrix F = ScalarMatrix::pauli2().kron(ScalarMatrix::identity(m));
  CQGPresentation pres = make_ao(2 * m, F);
  pres.set_name("A_sp(" + std::to_string(m) + ")");
  return pres;
}

CQGPresentation make_austar(int n) {
  auto alph = std::make_shared<Alphabet>();
  CQGPresentation pres("A_u*(" + std::to_string(n) + ")", alph);
  GenMatrix U = add_letter_block(pres, *alph, "u", n);
  add_biunitarity(pres, U);
  GenMatrix I = GenMatrix::identity(n);
  pres.add_relations(relations_from_eq(U.transpose() * U.bar(*alph), I));
  pres.add_relations(relations_from_eq(U.bar(*alph) * U.transpose(), I));
  std::vector<NCPoly> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entries.push_back(U.at(i, j));
  for (const NCPoly& a : entries)
    for (const NCPoly& b : entries)
      for (const NCPoly& c : entries) {
        NCPoly bs = b.star(*alph);
        pres.add_relation(a * bs * c - c * bs * a);
      }
  pres.set_kac(true);
  pres.finalize();
  return pres;
}

CQGPresentation make_as(int n) {
  auto alph = std::make_shared<Alphabet>();
  CQGPresentation pres("A_s(" + std::to_string(n) + ")", alph);
  GenMatrix U = add_letter_block(pres, *alph, "u", n);
  NCPoly one(Scalar(1));
  for (int i = 0; i < n; ++i) {
    NCPoly rowsum, colsum;
    for (int j = 0; j < n; ++j) {
      pres.add_relation(U.at(i, j).star(*alph) - U.at(i, j));
      pres.add_relation(U.at(i, j) * U.at(i, j) - U.at(i, j));
      rowsum = rowsum + U.at(i, j);
      colsum = colsum + U.at(j, i);
    }
    pres.add_relation(rowsum - one);
    pres.add_relation(colsum - one);
  }
  pres.set_kac(true);
  pres.finalize();
  return pres;
}

CQGPresentation make_suq(int n) {
  if (n > 4)
    fail(ErrorCode::UnsupportedSize,
         "make_suq supports n <= 4 (permutation sums are n!-sized)");
  auto alph = std::make_shared<Alphabet>();
  CQGPresentation pres("SU_q(" + std::to_string(n) + ")", alph);
  GenMatrix U = add_letter_block(pres, *alph, "u", n);
  Scalar q = Scalar::q_power(1);
  auto u = [&](int i, int j) { return U.at(i - 1, j - 1); };
  // Same-column and same-row q-commutation.
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        pres.add_relation(u(i, k) * u(j, k) - u(j, k).scalar_mul(q) * u(i, k));
        pres.add_relation(u(k, i) * u(k, j) - u(k, j).scalar_mul(q) * u(k, i));
      }
  // Cross-diagonal commutation.
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          pres.add_relation(u(i, l) * u(j, k) - u(j, k) * u(i, l));
          pres.add_relation(
              u(i, k) * u(j, l) - u(j, l) * u(i, k) -
              (u(i, l) * u(j, k))
                  .scalar_mul(Scalar::q_power(1) - Scalar::q_power(-1)));
        }
  // Quantum determinant = 1.
  {
    std::vector<int> p(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) p[static_cast<size_t>(t)] = t + 1;
    NCPoly det;
    do {
      NCPoly term(Scalar(1));
      for (int t = 1; t <= n; ++t) term = term * u(t, p[static_cast<size_t>(t - 1)]);
      det = det + term.scalar_mul(neg_q_pow(inversions(p)));
    } while (std::next_permutation(p.begin(), p.end()));
    pres.add_relation(det - NCPoly(Scalar(1)));
  }
  // Star structure: (u_ij)* is a signed quantum cofactor.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<int> klist, llist;
      for (int t = 1; t <= n; ++t) {
        if (t != i) klist.push_back(t);
        if (t != j) llist.push_back(t);
      }
      std::vector<int> p = llist;
      NCPoly cof;
      do {
        NCPoly term(Scalar(1));
        for (size_t t = 0; t < p.size(); ++t) term = term * u(klist[t], p[t]);
        cof = cof + term.scalar_mul(neg_q_pow(inversions(p)));
      } while (std::next_permutation(p.begin(), p.end()));
      pres.add_relation(u(i, j).star(*alph) - cof.scalar_mul(neg_q_pow(j - i)));
    }
  pres.set_kac(false);
  pres.finalize();
  return pres;
}

namespace {

/// Generator naming for quantum automorphism groups: a[k,l;i,j] for a
/// single block, a[k,l;i,j;x,y] for direct sums (all indices 1-based).
std::string aaut_name(bool multi, int x, int k, int l, int y, int i, int j,
                      bool star) {
  std::ostringstream os;
  os << (star ? "a*" : "a") << "[" << k << "," << l << ";" << i << "," << j;
  if (multi) os << ";" << x << "," << y;
  os << "]";
  return os.str();
}

struct AautIndex {
  std::vector<int> sizes;
  std::vector<int> offsets; // row offset of block x in the big corep
  bool multi;
  std::map<std::tuple<int, int, int, int, int, int>, int> id;

  // Letter id of a^{kl}_{ij,xy}; all of k,l,i,j 1-based.
  int letter(int x, int k, int l, int y, int i, int j) const {
    return id.at({x, k, l, y, i, j});
  }
  NCPoly gen(int x, int k, int l, int y, int i, int j) const {
    return NCPoly::gen(letter(x, k, l, y, i, j));
  }
  int row(int x, int k, int l) const {
    return offsets[static_cast<size_t>(x)] +
           (k - 1) * sizes[static_cast<size_t>(x)] + (l - 1);
  }
};

} // namespace

CQGPresentation make_aaut_blocks(const std::vector<int>& sizes) {
  if (sizes.empty())
    fail(ErrorCode::UnsupportedSpec, "make_aaut_blocks: no blocks");
  const int B = static_cast<int>(sizes.size());
  AautIndex ix;
  ix.sizes = sizes;
  ix.multi = B > 1;
  int total = 0;
  for (int m : sizes) {
    ix.offsets.push_back(total);
    total += m * m;
  }
  auto alph = std::make_shared<Alphabet>();
  std::string name = "A_aut(";
  for (int b = 0; b < B; ++b)
    name += (b ? "+" : "") + ("M_" + std::to_string(sizes[static_cast<size_t>(b)]));
  name += ")";
  CQGPresentation pres(name, alph);
  GenMatrix A(total, total);
  for (int x = 0; x < B; ++x) {
    int mx = sizes[static_cast<size_t>(x)];
    for (int k = 1; k <= mx; ++k)
      for (int l = 1; l <= mx; ++l)
        for (int y = 0; y < B; ++y) {
          int my = sizes[static_cast<size_t>(y)];
          for (int i = 1; i <= my; ++i)
            for (int j = 1; j <= my; ++j) {
              int g = alph->add_pair(
                  aaut_name(ix.multi, x + 1, k, l, y + 1, i, j, false),
                  aaut_name(ix.multi, x + 1, k, l, y + 1, i, j, true));
              ix.id[{x, k, l, y, i, j}] = g;
              A.at(ix.row(x, k, l), ix.row(y, i, j)) = NCPoly::gen(g);
              pres.set_home(g, Home{0, ix.row(x, k, l), ix.row(y, i, j)});
            }
        }
  }
  pres.add_block("a", A);

  // Coaction multiplicativity.
  for (int x = 0; x < B; ++x) {
    int mx = sizes[static_cast<size_t>(x)];
    for (int y = 0; y < B; ++y)
      for (int y2 = 0; y2 < B; ++y2) {
        int my = sizes[static_cast<size_t>(y)];
        int my2 = sizes[static_cast<size_t>(y2)];
        for (int i = 1; i <= mx; ++i)
          for (int nn = 1; nn <= mx; ++nn)
            for (int k = 1; k <= my; ++k)
              for (int r = 1; r <= my; ++r)
                for (int s = 1; s <= my2; ++s)
                  for (int l = 1; l <= my2; ++l) {
                    NCPoly sum;
                    for (int j = 1; j <= mx; ++j)
                      sum = sum + ix.gen(x, i, j, y, k, r) *
                                      ix.gen(x, j, nn, y2, s, l);
                    if (y == y2 && r == s)
                      sum = sum - ix.gen(x, i, nn, y, k, l);
                    pres.add_relation(sum);
                  }
      }
  }
  // Transposed-coaction multiplicativity.
  for (int x = 0; x < B; ++x)
    for (int x2 = 0; x2 < B; ++x2)
      for (int y = 0; y < B; ++y) {
        int mx = sizes[static_cast<size_t>(x)];
        int mx2 = sizes[static_cast<size_t>(x2)];
        int my = sizes[static_cast<size_t>(y)];
        for (int i = 1; i <= mx; ++i)
          for (int j = 1; j <= mx; ++j)
            for (int mm = 1; mm <= mx2; ++mm)
              for (int nn = 1; nn <= mx2; ++nn)
                for (int k = 1; k <= my; ++k)
                  for (int l = 1; l <= my; ++l) {
                    NCPoly sum;
                    for (int r = 1; r <= my; ++r)
                      sum = sum + ix.gen(x, i, j, y, k, r) *
                                      ix.gen(x2, mm, nn, y, r, l);
                    if (x == x2 && j == mm)
                      sum = sum - ix.gen(x, i, nn, y, k, l);
                    pres.add_relation(sum);
                  }
      }
  // Star structure.
  for (const auto& [key, g] : ix.id) {
    auto [x, k, l, y, i, j] = key;
    pres.add_relation(NCPoly::gen(alph->star(g)) - ix.gen(x, l, k, y, j, i));
  }
  // Unit preservation.
  for (int x = 0; x < B; ++x) {
    int mx = sizes[static_cast<size_t>(x)];
    for (int k = 1; k <= mx; ++k)
      for (int l = 1; l <= mx; ++l) {
        NCPoly sum;
        for (int y = 0; y < B; ++y)
          for (int i = 1; i <= sizes[static_cast<size_t>(y)]; ++i)
            sum = sum + ix.gen(x, k, l, y, i, i);
        if (k == l) sum = sum - NCPoly(Scalar(1));
        pres.add_relation(sum);
      }
  }
  // Trace preservation.
  for (int y = 0; y < B; ++y) {
    int my = sizes[static_cast<size_t>(y)];
    for (int i = 1; i <= my; ++i)
      for (int j = 1; j <= my; ++j) {
        NCPoly sum;
        for (int x = 0; x < B; ++x)
          for (int k = 1; k <= sizes[static_cast<size_t>(x)]; ++k)
            sum = sum + ix.gen(x, k, k, y, i, j);
        if (i == j) sum = sum - NCPoly(Scalar(1));
        pres.add_relation(sum);
      }
  }
  pres.set_kac(true);
  pres.finalize();
  return pres;
}

CQGPresentation make_aaut(int n) {
  if (n < 2) fail(ErrorCode::UnsupportedSize, "make_aaut requires n >= 2");
  return make_aaut_blocks({n});
}

CQGPresentation make_aaut_real(const RealCStarSpec& spec) {
  bool single = spec.blocks.size() == 1;
  bool diag_real = !spec.blocks.empty();
  for (const RealBlock& b : spec.blocks)
    diag_real = diag_real && b.ring == DivisionRing::R && b.n == 1;
  if (!single && !diag_real)
    fail(ErrorCode::UnsupportedSpec,
         "make_aaut_real: expected one matrix block or a diagonal R^n");
  auto [alg, sigma] = complexify(spec);
  const int B = static_cast<int>(alg.blocks.size());
  std::vector<int> sizes;
  for (const ComplexBlock& b : alg.blocks) sizes.push_back(b.size);
  CQGPresentation pres = make_aaut_blocks(sizes);
  const Alphabet& alph = pres.alphabet();
  bool multi = B > 1;
  auto letter = [&](int x, int k, int l, int y, int i, int j) {
    int g = alph.find(aaut_name(multi, x + 1, k, l, y + 1, i, j, false));
    if (g < 0) fail(ErrorCode::UnknownGenerator, "aaut letter lookup failed");
    return g;
  };
  // Coefficients (T_b e_ij T_b^{-1})_{pq} of the antilinear structure map.
  std::vector<std::vector<ScalarMatrix>> coef(static_cast<size_t>(B));
  for (int b = 0; b < B; ++b) {
    int m = sizes[static_cast<size_t>(b)];
    const ScalarMatrix& T = sigma.twist[static_cast<size_t>(b)];
    ScalarMatrix Tinv = T.inverse();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        ScalarMatrix E(m, m);
        E.at(i, j) = Scalar(1);
        coef[static_cast<size_t>(b)].push_back(T * E * Tinv);
      }
  }
  auto cf = [&](int b, int i, int j, int p, int q) {
    // (T_b e_{ij} T_b^{-1})_{pq}, all indices 1-based except b.
    int m = sizes[static_cast<size_t>(b)];
    return coef[static_cast<size_t>(b)][static_cast<size_t>((i - 1) * m + (j - 1))]
        .at(p - 1, q - 1);
  };
  // (sigma (x) *) . alpha = alpha . sigma, expanded over matrix units.
  for (int x = 0; x < B; ++x) {
    int mx = sizes[static_cast<size_t>(x)];
    for (int y = 0; y < B; ++y) {
      int my = sizes[static_cast<size_t>(y)];
      for (int p = 1; p <= mx; ++p)
        for (int q = 1; q <= mx; ++q)
          for (int k = 1; k <= my; ++k)
            for (int l = 1; l <= my; ++l) {
              NCPoly r;
              for (int i = 1; i <= mx; ++i)
                for (int j = 1; j <= mx; ++j) {
                  Scalar c = cf(x, i, j, p, q);
                  if (c.is_zero()) continue;
                  r = r + NCPoly::gen(alph.star(letter(x, i, j, y, k, l)))
                              .scalar_mul(c);
                }
              int px = sigma.perm[static_cast<size_t>(x)];
              int py = sigma.perm[static_cast<size_t>(y)];
              for (int mm = 1; mm <= my; ++mm)
                for (int nn = 1; nn <= my; ++nn) {
                  Scalar c = cf(y, k, l, mm, nn);
                  if (c.is_zero()) continue;
                  r = r - NCPoly::gen(letter(px, p, q, py, mm, nn))
                              .scalar_mul(c);
                }
              pres.add_relation(r);
            }
    }
  }
  pres.set_name("A_aut_R(" + spec.str() + ")");
  pres.finalize();
  return pres;
}

CQGPresentation free_product(const std::vector<CQGPresentation>& factors) {
  if (factors.empty())
    fail(ErrorCode::UnsupportedSpec, "free_product: no factors");
  auto alph = std::make_shared<Alphabet>();
  std::string name;
  bool kac = true;
  CQGPresentation pres("", alph);
  std::vector<NCPoly> rels;
  for (size_t f = 0; f < factors.size(); ++f) {
    const CQGPresentation& p = factors[f];
    const Alphabet& pa = p.alphabet();
    std::string prefix = std::to_string(f) + ":";
    std::vector<int> map(static_cast<size_t>(pa.size()), -1);
    for (int g = 0; g < pa.size(); ++g) {
      if (pa.is_star_letter(g)) continue;
      if (pa.star(g) == g) {
        map[static_cast<size_t>(g)] = alph->add_selfadjoint(prefix + pa.name(g));
      } else {
        int id = alph->add_pair(prefix + pa.name(g),
                                prefix + pa.name(pa.star(g)));
        map[static_cast<size_t>(g)] = id;
        map[static_cast<size_t>(pa.star(g))] = id + 1;
      }
    }
    int block_offset = static_cast<int>(pres.blocks().size());
    for (const CorepBlock& b : p.blocks()) {
      GenMatrix m(b.mat.rows(), b.mat.cols());
      for (int i = 0; i < b.mat.rows(); ++i)
        for (int j = 0; j < b.mat.cols(); ++j)
          m.at(i, j) = b.mat.at(i, j).relabel(map);
      pres.add_block(prefix + b.label, std::move(m));
    }
    for (const auto& [g, h] : p.homes())
      pres.set_home(map[static_cast<size_t>(g)],
                    Home{h.block + block_offset, h.row, h.col});
    for (const NCPoly& r : p.relations().relations())
      rels.push_back(r.relabel(map));
    kac = kac && p.kac();
    name += (f ? " * " : "") + p.name();
  }
  pres.add_relations(rels);
  pres.set_kac(kac);
  pres.set_commutative_claimed(factors.size() == 1 &&
                               factors[0].commutative_claimed());
  pres.set_name(name);
  pres.finalize();
  return pres;
}

CQGPresentation quantum_unitary_complex(const ComplexifiedAlgebra& alg,
                                        const StateSpec& R) {
  if (R.blocks.size() != alg.blocks.size())
    fail(ErrorCode::BlockMismatch, "state has wrong number of blocks");
  std::vector<CQGPresentation> factors;
  for (size_t b = 0; b < alg.blocks.size(); ++b) {
    int m = alg.blocks[b].size;
    const ScalarMatrix& Rb = R.blocks[b];
    if (Rb.rows() != m || Rb.cols() != m)
      fail(ErrorCode::BlockMismatch, "state block size mismatch");
    factors.push_back(make_au(m, Rb.transpose()));
  }
  CQGPresentation pres = free_product(factors);
  pres.set_name("Q_u[" + pres.name() + "]");
  return pres;
}

RelationSet derive_from_state_invariance(int n, const ScalarMatrix& R) {
  if (R.rows() != n || R.cols() != n)
    fail(ErrorCode::DimensionMismatch, "derive_from_state_invariance: R size");
  ScalarMatrix Rinv = R.inverse();
  auto alph = std::make_shared<Alphabet>();
  GenMatrix V(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int g = alph->add_pair(idx2("v", i + 1, j + 1), idx2("v*", i + 1, j + 1));
      V.at(i, j) = NCPoly::gen(g);
    }
  RelationSet rels(alph);
  GenMatrix I = GenMatrix::identity(n);
  rels.add_all(relations_from_eq(V * V.adjoint(*alph), I));
  rels.add_all(relations_from_eq(V.adjoint(*alph) * V, I));
  // (phi_R (x) id) Ad_V(e_ij) = phi_R(e_ij) and the same for Ad_{V*} with
  // phi_{R^{-1}}, computed entrywise from the matrix units.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ScalarMatrix E(n, n);
      E.at(i, j) = Scalar(1);
      GenMatrix Eg = GenMatrix::from_scalar(E);
      GenMatrix ad = V * Eg * V.adjoint(*alph);
      GenMatrix adstar = V.adjoint(*alph) * Eg * V;
      NCPoly r1, r2;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          r1 = r1 + ad.at(k, l).scalar_mul(R.at(l, k));
          r2 = r2 + adstar.at(k, l).scalar_mul(Rinv.at(l, k));
        }
      rels.add(r1 - NCPoly(R.at(j, i)));
      rels.add(r2 - NCPoly(Rinv.at(j, i)));
    }
  return rels;
}

RelationSet derive_from_bilinear(const ScalarMatrix& B) {
  const int n = B.rows();
  if (B.cols() != n)
    fail(ErrorCode::DimensionMismatch, "derive_from_bilinear: B not square");
  ScalarMatrix Binv = B.inverse();
  auto alph = std::make_shared<Alphabet>();
  GenMatrix U(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int g = alph->add_pair(idx2("u", i + 1, j + 1), idx2("u*", i + 1, j + 1));
      U.at(i, j) = NCPoly::gen(g);
    }
  RelationSet rels(alph);
  GenMatrix I = GenMatrix::identity(n);
  rels.add_all(relations_from_eq(U * U.adjoint(*alph), I));
  rels.add_all(relations_from_eq(U.adjoint(*alph) * U, I));
  // <U(e_a),U(e_b)>'_B = B_ab and <U*(e_a),U*(e_b)>'_{B^{-1}} = (B^{-1})_ab,
  // with the comodule convention U(e_a) = sum_j e_j (x) u_aj.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      NCPoly r1, r2;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          r1 = r1 + (U.at(a, j).star(*alph) * U.at(b, k)).scalar_mul(B.at(j, k));
          r2 = r2 +
               (U.at(j, a) * U.at(k, b).star(*alph)).scalar_mul(Binv.at(j, k));
        }
      rels.add(r1 - NCPoly(B.at(a, b)));
      rels.add(r2 - NCPoly(Binv.at(a, b)));
    }
  return rels;
}

QuantumUnitary quantum_unitary_real(const RealCStarSpec& spec,
                                    const std::vector<ScalarMatrix>& F) {
  auto [alg, sigma] = complexify(spec);
  const size_t B = alg.blocks.size();
  if (F.size() != B)
    fail(ErrorCode::BlockMismatch, "quantum_unitary_real: F block count");
  for (size_t b = 0; b < B; ++b) {
    int m = alg.blocks[b].size;
    if (F[b].rows() != m || F[b].cols() != m)
      fail(ErrorCode::BlockMismatch, "quantum_unitary_real: F block size");
  }
  // R = sigma(F*F).
  BlockElement fsf;
  for (size_t b = 0; b < B; ++b) fsf.push_back(F[b].adjoint() * F[b]);
  StateSpec R;
  R.blocks = sigma_apply(sigma, fsf);
  CQGPresentation pres0 = quantum_unitary_complex(alg, R);
  // (sigma (x) *)(U) = F^{-1} U F, block by block.
  for (size_t b = 0; b < B; ++b) {
    int c = sigma.perm[b];
    const ScalarMatrix& T = sigma.twist[b];
    const GenMatrix& Ub = pres0.blocks()[b].mat;
    const GenMatrix& Uc = pres0.blocks()[static_cast<size_t>(c)].mat;
    GenMatrix lhs = T * Ub.bar(pres0.alphabet()) * T.inverse();
    GenMatrix rhs =
        F[static_cast<size_t>(c)].inverse() * Uc * F[static_cast<size_t>(c)];
    pres0.add_relations(relations_from_eq(lhs, rhs));
  }
  pres0.finalize();
  EliminationResult elim = eliminate_linear(pres0.relations());
  CQGPresentation pres("Q_uR(" + spec.str() + ")", pres0.alphabet_ptr());
  for (const CorepBlock& b : pres0.blocks()) {
    GenMatrix m(b.mat.rows(), b.mat.cols());
    for (int i = 0; i < b.mat.rows(); ++i)
      for (int j = 0; j < b.mat.cols(); ++j)
        m.at(i, j) = b.mat.at(i, j).substitute(elim.images);
    pres.add_block(b.label, std::move(m));
  }
  for (const auto& [g, h] : pres0.homes())
    if (!elim.eliminated[static_cast<size_t>(g)]) pres.set_home(g, h);
  pres.add_relations(elim.rels.relations());
  pres.set_kac(pres0.kac());
  pres.finalize();
  return QuantumUnitary{std::move(pres), spec, std::move(alg),
                        std::move(sigma), std::move(R), F};
}

CQGPresentation quotient(const CQGPresentation& pres,
                         const std::vector<NCPoly>& extra) {
  CQGPresentation q = pres;
  q.add_relations(extra);
  q.finalize();
  return q;
}

WoronowiczReport woronowicz_check(const CQGPresentation& pres,
                                  const std::vector<NCPoly>& extra,
                                  const CertificateSpan& span) {
  CQGPresentation q = quotient(pres, extra);
  WoronowiczReport rep;
  for (size_t t = 0; t < extra.size(); ++t) {
    TensorPoly d = pres.coproduct(extra[t]);
    if (!tensor_membership(d, q.relations(), span)) {
      rep.ok = false;
      rep.failing.push_back(t);
    }
  }
  return rep;
}

CQGPresentation abelianize(const CQGPresentation& pres) {
  CQGPresentation ab = pres;
  std::vector<int> letters = pres.live_letters();
  std::vector<NCPoly> comms;
  for (size_t a = 0; a < letters.size(); ++a)
    for (size_t b = a + 1; b < letters.size(); ++b) {
      NCPoly x = NCPoly::gen(letters[a]);
      NCPoly y = NCPoly::gen(letters[b]);
      comms.push_back(x * y - y * x);
    }
  ab.add_relations(comms);
  ab.set_commutative_claimed(true);
  ab.set_name("abelianize(" + pres.name() + ")");
  ab.finalize();
  return ab;
}

SubalgebraView projective(const CQGPresentation& pres) {
  std::vector<NCPoly> entries;
  for (const CorepBlock& b : pres.blocks())
    for (int i = 0; i < b.mat.rows(); ++i)
      for (int j = 0; j < b.mat.cols(); ++j) entries.push_back(b.mat.at(i, j));
  SubalgebraView view;
  view.name = "P(" + pres.name() + ")";
  for (const NCPoly& e : entries)
    for (const NCPoly& f : entries)
      view.generators.push_back(e * f.star(pres.alphabet()));
  return view;
}

HomReport hom_check(const RelationSet& src, const RelationSet& dst,
                    const std::map<int, NCPoly>& subst,
                    const CertificateSpan& span) {
  const Alphabet& sa = src.alphabet();
  const Alphabet& da = dst.alphabet();
  std::map<int, NCPoly> images = subst;
  for (const auto& [g, img] : subst) {
    int partner = sa.star(g);
    NCPoly expected = img.star(da);
    if (partner == g) {
      if (!(img == expected))
        fail(ErrorCode::InconsistentSubstitution,
             "self-adjoint generator " + sa.name(g) +
                 " mapped to a non-self-adjoint element");
      continue;
    }
    auto it = images.find(partner);
    if (it != images.end()) {
      if (!(it->second == expected))
        fail(ErrorCode::InconsistentSubstitution,
             "substitution is not star-consistent at " + sa.name(g));
    } else {
      images.emplace(partner, std::move(expected));
    }
  }
  HomReport rep;
  const auto& rels = src.relations();
  std::vector<NCPoly> targets;
  for (size_t t = 0; t < rels.size(); ++t) {
    for (const auto& [w, c] : rels[t].terms())
      for (int g : w)
        if (!images.count(g))
          fail(ErrorCode::UnknownGenerator,
               "no image for generator " + sa.name(g));
    targets.push_back(rels[t].substitute(images));
  }
  std::vector<char> found = batch_membership(targets, dst, span);
  for (size_t t = 0; t < targets.size(); ++t)
    if (!found[t]) {
      rep.ok = false;
      rep.failing.push_back(t);
    }
  return rep;
}

HomReport hom_check(const CQGPresentation& src, const CQGPresentation& dst,
                    const std::map<int, NCPoly>& subst,
                    const CertificateSpan& span) {
  return hom_check(src.relations(), dst.relations(), subst, span);
}

TraceReport trace_preservation_check(const QuantumUnitary& qu,
                                     const CertificateSpan& span) {
  TraceReport rep;
  const Alphabet& alph = qu.pres.alphabet();
  std::vector<NCPoly> targets;
  std::vector<std::string> labels;
  for (size_t c = 0; c < qu.alg.blocks.size(); ++c) {
    int m = qu.alg.blocks[c].size;
    const ScalarMatrix& Rc = qu.R.blocks[c];
    const GenMatrix& U = qu.pres.blocks()[c].mat;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        NCPoly t;
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            t = t + (U.at(k, i) * U.at(l, j).star(alph)).scalar_mul(Rc.at(l, k));
        targets.push_back(t - NCPoly(Rc.at(j, i)));
        labels.push_back(std::to_string(c) + "," + std::to_string(i + 1) + "," +
                         std::to_string(j + 1));
      }
  }
  std::vector<char> found = batch_membership(targets, qu.pres.relations(), span);
  for (size_t t = 0; t < targets.size(); ++t)
    if (!found[t]) {
      rep.ok = false;
      rep.failing.push_back(labels[t]);
    }
  return rep;
}

CommutativityReport check_commutative(const CQGPresentation& pres,
                                      const CertificateSpan& span) {
  return check_commutative_letters(pres.relations(), pres.live_letters(),
                                   span);
}

} // namespace cqg
