#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cqg/scalar.hpp"

namespace cqg {

/// Generators of a free unital *-algebra. Each generator knows its star
/// partner; star pairs get consecutive ids so the id order is the
/// declaration order with x* immediately after x.
class Alphabet {
public:
  /// Adds x and x*, returns the id of x (x* is that id + 1).
  int add_pair(const std::string& name, const std::string& star_name);
  /// Adds a generator with x* = x.
  int add_selfadjoint(const std::string& name);

  int size() const { return static_cast<int>(gens_.size()); }
  int star(int g) const { return gens_.at(g).star; }
  bool is_star_letter(int g) const { return gens_.at(g).is_star; }
  const std::string& name(int g) const { return gens_.at(g).name; }
  /// Returns -1 when no generator has that name.
  int find(const std::string& name) const;

private:
  struct Gen {
    std::string name;
    int star;
    bool is_star;
  };
  std::vector<Gen> gens_;
  std::map<std::string, int> by_name_;
};

using AlphabetPtr = std::shared_ptr<Alphabet>;

/// A word in the generators; empty means the unit.
using Word = std::vector<int>;

/// Degree-lexicographic order: shorter words first, then letter ids.
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word word_star(const Alphabet& alph, const Word& w);
std::string word_str(const Alphabet& alph, const Word& w);

/// Element of the free *-algebra: a finite Scalar combination of words.
class NCPoly {
public:
  NCPoly() = default;
  explicit NCPoly(Scalar c) { add_term({}, std::move(c)); }
  static NCPoly gen(int g) {
    NCPoly p;
    p.add_term({g}, Scalar(1));
    return p;
  }
  static NCPoly word(Word w, Scalar c = Scalar(1)) {
    NCPoly p;
    p.add_term(std::move(w), std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  int degree() const; // -1 for zero
  size_t term_count() const { return terms_.size(); }
  const std::map<Word, Scalar, DegLex>& terms() const { return terms_; }
  const Word& leading_word() const; // deglex-largest word
  Scalar coeff(const Word& w) const;
  void add_term(Word w, Scalar c); // accumulates, drops zeros

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator*(const NCPoly& o) const; // concatenation product
  NCPoly operator-() const;
  NCPoly scalar_mul(const Scalar& c) const;
  bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

  NCPoly star(const Alphabet& alph) const;
  /// Replaces each occurrence of a mapped letter by its image polynomial.
  NCPoly substitute(const std::map<int, NCPoly>& images) const;
  /// Applies a letter-to-letter relabeling (used when merging alphabets).
  NCPoly relabel(const std::vector<int>& image) const;

  /// Canonical form: terms in descending deglex order, coefficients
  /// parenthesized, e.g. "(q)*u[1,1].u*[2,1] + (-1)*1".
  std::string str(const Alphabet& alph) const;
  static NCPoly parse(const Alphabet& alph, const std::string& text);

private:
  std::map<Word, Scalar, DegLex> terms_;
};

/// Deglex on each leg, left leg first.
struct PairDegLex {
  bool operator()(const std::pair<Word, Word>& a,
                  const std::pair<Word, Word>& b) const {
    DegLex lt;
    if (a.first != b.first) return lt(a.first, b.first);
    return lt(a.second, b.second);
  }
};

/// Element of the algebraic tensor square of the free *-algebra.
class TensorPoly {
public:
  TensorPoly() = default;

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<Word, Word>, Scalar, PairDegLex>& terms() const {
    return terms_;
  }
  void add_term(Word left, Word right, Scalar c);

  static TensorPoly tensor(const NCPoly& a, const NCPoly& b);
  TensorPoly operator+(const TensorPoly& o) const;
  TensorPoly operator-(const TensorPoly& o) const;
  TensorPoly operator*(const TensorPoly& o) const; // legwise product
  TensorPoly operator-() const;
  TensorPoly scalar_mul(const Scalar& c) const;
  bool operator==(const TensorPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const TensorPoly& o) const { return !(*this == o); }

  std::string str(const Alphabet& alph) const;

private:
  std::map<std::pair<Word, Word>, Scalar, PairDegLex> terms_;
};

} // namespace cqg
