#include "cqg/ideal.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cqg/error.hpp"

namespace cqg {

namespace {

// Name-free canonical key of the monic normalization.
std::string monic_key(const NCPoly& p) {
  Scalar lead = p.terms().rbegin()->second;
  NCPoly m = p.scalar_mul(lead.inv());
  std::ostringstream out;
  for (const auto& [w, c] : m.terms()) {
    out << "[";
    for (int g : w) out << g << ",";
    out << "]=" << c.str() << ";";
  }
  return out.str();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int k = 0; k < n; ++k) parent[k] = k;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<int> component_letters(const RelationSet& rels,
                                   const std::set<int>& seed) {
  const Alphabet& alph = rels.alphabet();
  if (alph.size() == 0) return {};
  UnionFind uf(alph.size());
  for (int g = 0; g < alph.size(); ++g) uf.unite(g, alph.star(g));
  for (const NCPoly& r : rels.relations()) {
    int prev = -1;
    for (const auto& [w, c] : r.terms())
      for (int g : w) {
        if (prev >= 0) uf.unite(prev, g);
        prev = g;
      }
  }
  std::set<int> roots;
  for (int g : seed) roots.insert(uf.find(g));
  std::set<int> support = rels.support();
  if (seed.empty()) {
    for (int g : support) roots.insert(uf.find(g));
  }
  std::set<int> keep;
  for (int g : support)
    if (roots.count(uf.find(g))) keep.insert(g);
  // target letters must be available as cofactors even when no relation
  // mentions them
  for (int g : seed) {
    keep.insert(g);
    keep.insert(alph.star(g));
  }
  return std::vector<int>(keep.begin(), keep.end());
}

namespace {

std::set<int> poly_letters(const NCPoly& p) {
  std::set<int> out;
  for (const auto& [w, c] : p.terms())
    for (int g : w) out.insert(g);
  return out;
}

// All words of the given length over `letters`, in lexicographic order.
void for_each_word(const std::vector<int>& letters, int length,
                   const std::function<void(const Word&)>& fn) {
  Word w(length);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == length) {
      fn(w);
      return;
    }
    for (int g : letters) {
      w[pos] = g;
      rec(pos + 1);
    }
  };
  rec(0);
}

} // namespace

// ---------------------------------------------------------------------------
// RelationSet

void RelationSet::add(const NCPoly& r) {
  if (r.is_zero()) return;
  if (seen_.insert(monic_key(r)).second) rels_.push_back(r);
  NCPoly s = r.star(*alph_);
  if (seen_.insert(monic_key(s)).second) rels_.push_back(std::move(s));
}

void RelationSet::add_all(const std::vector<NCPoly>& rels) {
  for (const NCPoly& r : rels) add(r);
}

std::set<int> RelationSet::support() const {
  std::set<int> out;
  for (const NCPoly& r : rels_) {
    std::set<int> ls = poly_letters(r);
    out.insert(ls.begin(), ls.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// MembershipCertificate

NCPoly MembershipCertificate::expand(const RelationSet& rels) const {
  NCPoly out;
  for (const CertTerm& t : terms) {
    NCPoly elem = NCPoly::word(t.left) * rels.relations().at(t.rel_index) *
                  NCPoly::word(t.right);
    out = out + elem.scalar_mul(t.coeff);
  }
  return out;
}

std::string MembershipCertificate::str(const RelationSet& rels) const {
  const Alphabet& alph = rels.alphabet();
  if (terms.empty()) return "0";
  std::string out;
  for (const CertTerm& t : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + t.coeff.str() + ")*[" + word_str(alph, t.left) + "]*{r" +
           std::to_string(t.rel_index) + "}*[" + word_str(alph, t.right) + "]";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SpanReducer

SpanReducer::SpanReducer(const RelationSet& rels, std::vector<int> letters,
                         const CertificateSpan& span)
    : rels_(rels), span_(span), letters_(std::move(letters)) {
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
}

void SpanReducer::insert(NCPoly elem, size_t gen_idx) {
  Row row{std::move(elem), {{gen_idx, Scalar(1)}}};
  while (!row.val.is_zero()) {
    auto it = rows_.find(row.val.leading_word());
    if (it == rows_.end()) break;
    Scalar c = row.val.terms().rbegin()->second;
    row.val = row.val - it->second.val.scalar_mul(c);
    for (const auto& [g, x] : it->second.combo) {
      auto [jt, inserted] = row.combo.emplace(g, -(x * c));
      if (!inserted) {
        jt->second = jt->second - x * c;
        if (jt->second.is_zero()) row.combo.erase(jt);
      }
    }
  }
  if (row.val.is_zero()) return;
  Scalar lead = row.val.terms().rbegin()->second;
  Scalar inv = lead.inv();
  row.val = row.val.scalar_mul(inv);
  for (auto& [g, x] : row.combo) x = x * inv;
  words_used_ += row.val.term_count();
  if (words_used_ > span_.word_budget)
    fail(ErrorCode::SpanTooLarge,
         "certificate span exceeds the word budget of " +
             std::to_string(span_.word_budget));
  Word key = row.val.leading_word();
  rows_.emplace(std::move(key), std::move(row));
}

void SpanReducer::extend(int depth) {
  for (int total = depth_ + 1; total <= depth; ++total) {
    for (int a = 0; a <= total; ++a) {
      int b = total - a;
      for_each_word(letters_, a, [&](const Word& w1) {
        for_each_word(letters_, b, [&](const Word& w2) {
          for (size_t ri = 0; ri < rels_.relations().size(); ++ri) {
            const NCPoly& r = rels_.relations()[ri];
            if (span_.degree_cap >= 0 &&
                total + r.degree() > span_.degree_cap)
              continue;
            NCPoly elem = NCPoly::word(w1) * r * NCPoly::word(w2);
            size_t gi = gens_.size();
            gens_.emplace_back(w1, ri, w2);
            insert(std::move(elem), gi);
          }
        });
      });
    }
  }
  if (depth > depth_) depth_ = depth;
}

std::optional<MembershipCertificate> SpanReducer::reduce(
    const NCPoly& target) const {
  NCPoly rem = target;
  std::map<size_t, Scalar> combo;
  while (!rem.is_zero()) {
    auto it = rows_.find(rem.leading_word());
    if (it == rows_.end()) return std::nullopt;
    Scalar c = rem.terms().rbegin()->second;
    rem = rem - it->second.val.scalar_mul(c);
    for (const auto& [g, x] : it->second.combo) {
      auto [jt, inserted] = combo.emplace(g, x * c);
      if (!inserted) {
        jt->second = jt->second + x * c;
        if (jt->second.is_zero()) combo.erase(jt);
      }
    }
  }
  MembershipCertificate cert;
  for (const auto& [g, c] : combo) {
    const auto& [w1, ri, w2] = gens_[g];
    cert.terms.push_back({c, w1, ri, w2});
  }
  if (!(cert.expand(rels_) - target).is_zero())
    fail(ErrorCode::BasisMismatch, "certificate failed re-expansion check");
  return cert;
}

// ---------------------------------------------------------------------------
// membership

std::optional<MembershipCertificate> membership(const NCPoly& p,
                                                const RelationSet& rels,
                                                const CertificateSpan& span) {
  if (p.is_zero()) return MembershipCertificate{};
  std::vector<int> letters = component_letters(rels, poly_letters(p));
  SpanReducer red(rels, letters, span);
  for (int d = 0; d <= span.k; ++d) {
    red.extend(d);
    if (auto cert = red.reduce(p)) return cert;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// check_commutative_letters

CommutativityReport check_commutative_letters(const RelationSet& rels,
                                              const std::vector<int>& letters,
                                              const CertificateSpan& span) {
  CommutativityReport rep;
  std::vector<std::pair<int, int>> pending;
  for (size_t a = 0; a < letters.size(); ++a)
    for (size_t b = a + 1; b < letters.size(); ++b)
      pending.emplace_back(letters[a], letters[b]);
  rep.pairs_checked = pending.size();

  std::vector<int> span_letters =
      component_letters(rels, std::set<int>(letters.begin(), letters.end()));
  SpanReducer red(rels, span_letters, span);
  for (int d = 0; d <= span.k && !pending.empty(); ++d) {
    red.extend(d);
    std::vector<std::pair<int, int>> still;
    for (auto [g, h] : pending) {
      NCPoly comm = NCPoly::word({g, h}) - NCPoly::word({h, g});
      if (!red.reduce(comm)) still.emplace_back(g, h);
    }
    pending.swap(still);
  }
  rep.failing_pairs = std::move(pending);
  rep.all_commute = rep.failing_pairs.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// eliminate_linear

EliminationResult eliminate_linear(const RelationSet& rels) {
  const AlphabetPtr& alph = rels.alphabet_ptr();
  std::vector<NCPoly> work = rels.relations();
  std::map<int, NCPoly> images;
  std::vector<char> eliminated(alph->size(), 0);

  for (;;) {
    int target = -1;
    NCPoly image;
    for (const NCPoly& r : work) {
      if (r.is_zero()) continue;
      if (r.degree() == 0)
        fail(ErrorCode::InconsistentElimination,
             "relations force a nonzero constant to vanish");
      if (r.degree() != 1) continue;
      // eligible letters, smallest id first
      std::set<int> ls = poly_letters(r);
      for (int x : ls) {
        int xs = alph->star(x);
        if (xs != x && ls.count(xs)) continue;
        Scalar c = r.coeff(Word{x});
        if (c.is_zero()) continue; // only appears under star pairing; not here
        // L = x - r/c
        NCPoly l = NCPoly::gen(x) - r.scalar_mul(c.inv());
        target = x;
        image = std::move(l);
        break;
      }
      if (target >= 0) break;
    }
    if (target < 0) break;

    std::map<int, NCPoly> subst;
    subst[target] = image;
    int ts = alph->star(target);
    if (ts != target) subst[ts] = image.star(*alph);

    for (auto& [g, img] : images) img = img.substitute(subst);
    for (auto& [g, img] : subst) {
      images[g] = img;
      eliminated[g] = 1;
    }
    for (NCPoly& r : work) r = r.substitute(subst);
  }

  EliminationResult res{RelationSet(alph), std::move(images),
                        std::move(eliminated)};
  res.rels.add_all(work);
  return res;
}

// ---------------------------------------------------------------------------
// tensor_membership

namespace {

struct TensorReducer {
  std::map<std::pair<Word, Word>, TensorPoly, PairDegLex> rows;
  size_t words_used = 0;
  size_t budget;

  explicit TensorReducer(size_t b) : budget(b) {}

  static std::pair<Word, Word> leading(const TensorPoly& t) {
    return t.terms().rbegin()->first;
  }
  static Scalar leading_coeff(const TensorPoly& t) {
    return t.terms().rbegin()->second;
  }

  // Reduces t against the rows; returns the remainder.
  TensorPoly reduce(TensorPoly t) const {
    while (!t.is_zero()) {
      auto it = rows.find(leading(t));
      if (it == rows.end()) break;
      t = t - it->second.scalar_mul(leading_coeff(t));
    }
    return t;
  }

  void insert(TensorPoly t) {
    t = reduce(std::move(t));
    if (t.is_zero()) return;
    t = t.scalar_mul(leading_coeff(t).inv());
    words_used += t.terms().size();
    if (words_used > budget)
      fail(ErrorCode::SpanTooLarge,
           "tensor certificate span exceeds the word budget of " +
               std::to_string(budget));
    auto key = leading(t);
    rows.emplace(std::move(key), std::move(t));
  }
};

} // namespace

bool tensor_membership(const TensorPoly& t, const RelationSet& rels,
                       const CertificateSpan& span) {
  if (t.is_zero()) return true;

  std::set<int> seed;
  int max_leg = 0;
  for (const auto& [k, c] : t.terms()) {
    for (int g : k.first) seed.insert(g);
    for (int g : k.second) seed.insert(g);
    max_leg = std::max<int>(max_leg, static_cast<int>(k.first.size()));
    max_leg = std::max<int>(max_leg, static_cast<int>(k.second.size()));
  }
  std::vector<int> letters = component_letters(rels, seed);

  TensorReducer red(span.word_budget);
  auto insert_family = [&](const NCPoly& elem, bool ideal_on_left) {
    for (int len = 0; len <= max_leg; ++len)
      for_each_word(letters, len, [&](const Word& w) {
        TensorPoly row = ideal_on_left
                             ? TensorPoly::tensor(elem, NCPoly::word(w))
                             : TensorPoly::tensor(NCPoly::word(w), elem);
        red.insert(std::move(row));
      });
  };

  for (int total = 0; total <= span.k; ++total) {
    for (int a = 0; a <= total; ++a) {
      for_each_word(letters, a, [&](const Word& w1) {
        for_each_word(letters, total - a, [&](const Word& w2) {
          for (const NCPoly& r : rels.relations()) {
            NCPoly elem = NCPoly::word(w1) * r * NCPoly::word(w2);
            insert_family(elem, true);
            insert_family(elem, false);
          }
        });
      });
    }
    if (red.reduce(t).is_zero()) return true;
  }
  return false;
}

std::vector<char> tensor_membership(const std::vector<TensorPoly>& ts,
                                    const RelationSet& rels,
                                    const CertificateSpan& span) {
  std::vector<char> found(ts.size(), 0);
  std::set<int> seed;
  int max_leg = 0;
  size_t open = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].is_zero()) {
      found[i] = 1;
      continue;
    }
    ++open;
    for (const auto& [k, c] : ts[i].terms()) {
      for (int g : k.first) seed.insert(g);
      for (int g : k.second) seed.insert(g);
      max_leg = std::max<int>(max_leg, static_cast<int>(k.first.size()));
      max_leg = std::max<int>(max_leg, static_cast<int>(k.second.size()));
    }
  }
  if (open == 0) return found;
  std::vector<int> letters = component_letters(rels, seed);

  TensorReducer red(span.word_budget);
  auto insert_family = [&](const NCPoly& elem, bool ideal_on_left) {
    for (int len = 0; len <= max_leg; ++len)
      for_each_word(letters, len, [&](const Word& w) {
        TensorPoly row = ideal_on_left
                             ? TensorPoly::tensor(elem, NCPoly::word(w))
                             : TensorPoly::tensor(NCPoly::word(w), elem);
        red.insert(std::move(row));
      });
  };

  for (int total = 0; total <= span.k && open > 0; ++total) {
    for (int a = 0; a <= total; ++a) {
      for_each_word(letters, a, [&](const Word& w1) {
        for_each_word(letters, total - a, [&](const Word& w2) {
          for (const NCPoly& r : rels.relations()) {
            NCPoly elem = NCPoly::word(w1) * r * NCPoly::word(w2);
            insert_family(elem, true);
            insert_family(elem, false);
          }
        });
      });
    }
    for (size_t i = 0; i < ts.size(); ++i)
      if (!found[i] && red.reduce(ts[i]).is_zero()) {
        found[i] = 1;
        --open;
      }
  }
  return found;
}

} // namespace cqg
