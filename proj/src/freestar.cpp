#include "cqg/freestar.hpp"

#include <algorithm>
#include <cctype>

#include "cqg/error.hpp"

namespace cqg {

// ---------------------------------------------------------------------------
// Alphabet

int Alphabet::add_pair(const std::string& name, const std::string& star_name) {
  if (by_name_.count(name) || by_name_.count(star_name))
    fail(ErrorCode::UnknownGenerator, "duplicate generator name '" + name + "'");
  int base = size();
  gens_.push_back({name, base + 1, false});
  gens_.push_back({star_name, base, true});
  by_name_[name] = base;
  by_name_[star_name] = base + 1;
  return base;
}

int Alphabet::add_selfadjoint(const std::string& name) {
  if (by_name_.count(name))
    fail(ErrorCode::UnknownGenerator, "duplicate generator name '" + name + "'");
  int id = size();
  gens_.push_back({name, id, false});
  by_name_[name] = id;
  return id;
}

int Alphabet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

// ---------------------------------------------------------------------------
// Word

Word word_star(const Alphabet& alph, const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& g : r) g = alph.star(g);
  return r;
}

std::string word_str(const Alphabet& alph, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) out += ".";
    out += alph.name(w[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// NCPoly

int NCPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.size());
}

const Word& NCPoly::leading_word() const {
  if (terms_.empty())
    fail(ErrorCode::IndexOutOfRange, "leading word of zero polynomial");
  return terms_.rbegin()->first;
}

Scalar NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void NCPoly::add_term(Word w, Scalar c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(std::move(w), std::move(c));
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
  NCPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

NCPoly NCPoly::operator-() const {
  NCPoly r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  NCPoly r;
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(std::move(w), ca * cb);
    }
  return r;
}

NCPoly NCPoly::scalar_mul(const Scalar& c) const {
  NCPoly r;
  if (c.is_zero()) return r;
  for (const auto& [w, x] : terms_) r.terms_.emplace(w, x * c);
  return r;
}

NCPoly NCPoly::star(const Alphabet& alph) const {
  NCPoly r;
  for (const auto& [w, c] : terms_) r.add_term(word_star(alph, w), c.conj());
  return r;
}

NCPoly NCPoly::substitute(const std::map<int, NCPoly>& images) const {
  NCPoly r;
  for (const auto& [w, c] : terms_) {
    NCPoly prod(c);
    for (int g : w) {
      auto it = images.find(g);
      prod = (it != images.end()) ? prod * it->second : prod * NCPoly::gen(g);
    }
    r = r + prod;
  }
  return r;
}

NCPoly NCPoly::relabel(const std::vector<int>& image) const {
  NCPoly r;
  for (const auto& [w, c] : terms_) {
    Word nw = w;
    for (int& g : nw) g = image.at(g);
    r.add_term(std::move(nw), c);
  }
  return r;
}

std::string NCPoly::str(const Alphabet& alph) const {
  if (terms_.empty()) return "(0)*1";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.str() + ")*" + word_str(alph, it->first);
  }
  return out;
}

namespace {

// Splits "name" or "name*[...]" style generator tokens out of a term body.
Word parse_word(const Alphabet& alph, const std::string& body) {
  Word w;
  if (body == "1") return w;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t dot = body.find('.', pos);
    std::string tok = body.substr(pos, dot == std::string::npos ? dot : dot - pos);
    int g = alph.find(tok);
    if (g < 0)
      fail(ErrorCode::UnknownGenerator, "unknown generator '" + tok + "'");
    w.push_back(g);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return w;
}

} // namespace

NCPoly NCPoly::parse(const Alphabet& alph, const std::string& text) {
  NCPoly r;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    if (!first) {
      if (text[pos] == '+') {
        ++pos;
      } else if (text[pos] == '-') {
        sign = -1;
        ++pos;
      } else {
        fail(ErrorCode::ParseError,
             "expected '+' between terms at position " + std::to_string(pos));
      }
      skip_ws();
    }
    first = false;
    if (pos >= text.size() || text[pos] != '(')
      fail(ErrorCode::ParseError, "expected '(' starting a coefficient at position " +
                                      std::to_string(pos));
    int depth = 0;
    size_t start = pos;
    while (pos < text.size()) {
      if (text[pos] == '(') ++depth;
      if (text[pos] == ')' && --depth == 0) break;
      ++pos;
    }
    if (depth != 0) fail(ErrorCode::ParseError, "unbalanced parentheses");
    Scalar c = Scalar::parse(text.substr(start + 1, pos - start - 1));
    ++pos;
    if (pos >= text.size() || text[pos] != '*')
      fail(ErrorCode::ParseError,
           "expected '*' after coefficient at position " + std::to_string(pos));
    ++pos;
    size_t wstart = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    Word w = parse_word(alph, text.substr(wstart, pos - wstart));
    if (sign < 0) c = -c;
    r.add_term(std::move(w), std::move(c));
    skip_ws();
  }
  return r;
}

// ---------------------------------------------------------------------------
// TensorPoly

void TensorPoly::add_term(Word left, Word right, Scalar c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(std::move(left), std::move(right));
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), std::move(c));
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorPoly TensorPoly::tensor(const NCPoly& a, const NCPoly& b) {
  TensorPoly r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) r.add_term(wa, wb, ca * cb);
  return r;
}

TensorPoly TensorPoly::operator+(const TensorPoly& o) const {
  TensorPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

TensorPoly TensorPoly::operator-(const TensorPoly& o) const {
  TensorPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
  return r;
}

TensorPoly TensorPoly::operator-() const {
  TensorPoly r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

TensorPoly TensorPoly::operator*(const TensorPoly& o) const {
  TensorPoly r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      Word l = ka.first;
      l.insert(l.end(), kb.first.begin(), kb.first.end());
      Word rt = ka.second;
      rt.insert(rt.end(), kb.second.begin(), kb.second.end());
      r.add_term(std::move(l), std::move(rt), ca * cb);
    }
  return r;
}

TensorPoly TensorPoly::scalar_mul(const Scalar& c) const {
  TensorPoly r;
  if (c.is_zero()) return r;
  for (const auto& [k, x] : terms_) r.terms_.emplace(k, x * c);
  return r;
}

std::string TensorPoly::str(const Alphabet& alph) const {
  if (terms_.empty()) return "(0)*1(x)1";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.str() + ")*" + word_str(alph, it->first.first) +
           "(x)" + word_str(alph, it->first.second);
  }
  return out;
}

} // namespace cqg
