#include "treelab/c00.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <cctype>

namespace treelab {

FinSuppVector FinSuppVector::dirac(const Vertex& v, const Rational& c) {
  FinSuppVector x;
  x.add(v, c);
  return x;
}

void FinSuppVector::add(const Vertex& v, const Rational& c) {
  if (c == 0)
    return;
  auto [it, inserted] = entries_.try_emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      entries_.erase(it);
  }
}

Rational FinSuppVector::at(const Vertex& v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::size_t FinSuppVector::max_depth() const {
  // Canonical order puts the deepest vertices last.
  return entries_.empty() ? 0 : entries_.rbegin()->first.depth();
}

Letter FinSuppVector::max_letter() const {
  Letter m = 0;
  for (const auto& [v, c] : entries_)
    m = std::max(m, v.max_letter());
  return m;
}

FinSuppVector& FinSuppVector::operator+=(const FinSuppVector& other) {
  for (const auto& [v, c] : other.entries_)
    add(v, c);
  return *this;
}

FinSuppVector& FinSuppVector::operator-=(const FinSuppVector& other) {
  for (const auto& [v, c] : other.entries_)
    add(v, -c);
  return *this;
}

FinSuppVector& FinSuppVector::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [v, value] : entries_)
    value *= c;
  return *this;
}

std::string FinSuppVector::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, c] : entries_) {
    if (!first)
      out.push_back(',');
    first = false;
    out += "(" + v.to_string() + "," + c.get_num().get_str() + "," + c.get_den().get_str() + ")";
  }
  out.push_back('}');
  return out;
}

FinSuppVector FinSuppVector::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ParseError("vector text must be enclosed in braces");
  FinSuppVector x;
  std::size_t pos = 1;
  const std::size_t end = s.size() - 1;
  while (pos < end) {
    if (s[pos] != '(')
      throw ParseError("expected '(' in vector text");
    const auto close = s.find(')', pos);
    if (close == std::string::npos || close > end)
      throw ParseError("unterminated triple in vector text");
    const std::string triple = s.substr(pos + 1, close - pos - 1);
    const auto c1 = triple.find(',');
    const auto c2 = triple.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ParseError("vector triple needs three fields");
    const Vertex v = Vertex::parse(triple.substr(0, c1));
    const Rational c = parse_rational(triple.substr(c1 + 1, c2 - c1 - 1) + "/" + triple.substr(c2 + 1));
    if (c == 0)
      throw ParseError("vector text stores a zero coefficient");
    if (x.at(v) != 0)
      throw ParseError("vector text repeats vertex " + v.to_string());
    x.add(v, c);
    pos = close + 1;
    if (pos < end) {
      if (s[pos] != ',')
        throw ParseError("expected ',' between vector triples");
      ++pos;
    }
  }
  return x;
}

FinSuppVector apply_lambda(const TreeAutomorphism& g, const FinSuppVector& x) {
  FinSuppVector y;
  for (const auto& [v, c] : x)
    y.add(g.apply(v), c);
  return y;
}

FinSuppVector apply_L(const FinSuppVector& x) {
  FinSuppVector y;
  for (const auto& [v, c] : x)
    if (!v.is_root())
      y.add(v.parent(), c);
  return y;
}

FinSuppVector apply_Lstar(const FinSuppVector& x, int q) {
  FinSuppVector y;
  for (const auto& [v, c] : x)
    for (const auto& child : vertex_children(v, q))
      y.add(child, c);
  return y;
}

FinSuppVector apply_N(const FinSuppVector& x, int q) {
  FinSuppVector y;
  for (const auto& [v, c] : x)
    for (const auto& n : vertex_neighbors(v, q))
      y.add(n, c);
  return y;
}

Norms norms(const FinSuppVector& x) {
  Norms n{0, 0, 0};
  for (const auto& [v, c] : x) {
    const Rational a = abs_value(c);
    n.ell1 += a;
    n.ell2_squared += c * c;
    if (a > n.ellinf)
      n.ellinf = a;
  }
  return n;
}

Rational inner(const FinSuppVector& x, const FinSuppVector& y) {
  Rational s = 0;
  const FinSuppVector& small = x.support_size() <= y.support_size() ? x : y;
  const FinSuppVector& large = x.support_size() <= y.support_size() ? y : x;
  for (const auto& [v, c] : small)
    s += c * large.at(v);
  return s;
}

} // namespace treelab

namespace treelab {

FinSuppVector random_vector(int q, int max_depth, std::size_t max_support, std::mt19937_64& rng) {
  FinSuppVector x;
  const auto count = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(max_support, 1))(rng);
  for (std::size_t k = 0; k < count; ++k) {
    const int depth = std::uniform_int_distribution<int>(0, std::max(max_depth, 0))(rng);
    const Vertex v = random_word(q, depth, rng);
    const int num = std::uniform_int_distribution<int>(-6, 6)(rng);
    const int den = std::uniform_int_distribution<int>(1, 4)(rng);
    Rational c(num, den);
    c.canonicalize();
    x.add(v, c);
  }
  return x;
}

} // namespace treelab
