#include "treelab/tree.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <charconv>

namespace treelab {

Vertex::Vertex(std::vector<Letter> word) : word_(std::move(word)) {
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (word_[i] == 0)
      throw InvalidVertex("letter 0 in vertex word");
    if (i > 0 && word_[i] == word_[i - 1])
      throw InvalidVertex("vertex word is not reduced");
  }
}

Letter Vertex::max_letter() const {
  return word_.empty() ? 0 : *std::max_element(word_.begin(), word_.end());
}

Vertex Vertex::parent() const {
  Vertex p = *this;
  if (!p.word_.empty())
    p.word_.pop_back();
  return p;
}

Vertex Vertex::child(Letter a) const {
  if (a == 0 || a == last())
    throw InvalidVertex("child letter cancels or is zero");
  Vertex c = *this;
  c.word_.push_back(a);
  return c;
}

Vertex Vertex::prefix(std::size_t k) const {
  Vertex p;
  p.word_.assign(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(std::min(k, word_.size())));
  return p;
}

std::string Vertex::to_string() const {
  if (word_.empty())
    return "e";
  std::string s;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i)
      s.push_back('.');
    s += std::to_string(word_[i]);
  }
  return s;
}

Vertex Vertex::parse(std::string_view text) {
  if (text == "e" || text.empty())
    return Vertex();
  std::vector<Letter> word;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto dot = text.find('.', pos);
    const auto token = text.substr(pos, dot == std::string_view::npos ? text.size() - pos : dot - pos);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty() || value > 0xFFFF)
      throw ParseError("malformed vertex word '" + std::string(text) + "'");
    word.push_back(static_cast<Letter>(value));
    if (dot == std::string_view::npos)
      break;
    pos = dot + 1;
  }
  try {
    return Vertex(std::move(word));
  } catch (const InvalidVertex& e) {
    throw ParseError(std::string("invalid vertex '") + std::string(text) + "': " + e.what());
  }
}

std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
  if (auto c = a.word_.size() <=> b.word_.size(); c != 0)
    return c;
  return a.word_ <=> b.word_;
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter a : v.word()) {
    h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h ^ v.depth();
}

void check_alphabet(const Vertex& v, int q) {
  if (q < 2)
    throw InvalidAlphabet("alphabet size must be at least 2");
  if (v.max_letter() > q)
    throw InvalidAlphabet("letter " + std::to_string(v.max_letter()) + " exceeds alphabet size " +
                          std::to_string(q));
}

Vertex vertex_parent(const Vertex& v) { return v.parent(); }

std::vector<Vertex> vertex_neighbors(const Vertex& v, int q) {
  check_alphabet(v, q);
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(q));
  for (int a = 1; a <= q; ++a) {
    if (a == v.last())
      out.push_back(v.parent());
    else
      out.push_back(v.child(static_cast<Letter>(a)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> vertex_children(const Vertex& v, int q) {
  check_alphabet(v, q);
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(q));
  for (int a = 1; a <= q; ++a)
    if (a != v.last())
      out.push_back(v.child(static_cast<Letter>(a)));
  return out;
}

std::size_t child_count(const Vertex& v, int q) {
  return v.is_root() ? static_cast<std::size_t>(q) : static_cast<std::size_t>(q - 1);
}

Vertex multiply(const Vertex& u, const Vertex& v) {
  std::vector<Letter> w = u.word();
  for (Letter a : v.word()) {
    if (!w.empty() && w.back() == a)
      w.pop_back();
    else
      w.push_back(a);
  }
  return Vertex(std::move(w));
}

Vertex word_inverse(const Vertex& v) {
  std::vector<Letter> w(v.word().rbegin(), v.word().rend());
  return Vertex(std::move(w));
}

std::size_t meet_depth(const Vertex& u, const Vertex& v) {
  const auto& a = u.word();
  const auto& b = v.word();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k])
    ++k;
  return k;
}

std::size_t distance(const Vertex& u, const Vertex& v) {
  return u.depth() + v.depth() - 2 * meet_depth(u, v);
}

std::size_t ball_size(int q, int depth) {
  if (depth < 0)
    return 0;
  std::size_t total = 1;
  std::size_t sphere = static_cast<std::size_t>(q);
  for (int d = 1; d <= depth; ++d) {
    total += sphere;
    sphere *= static_cast<std::size_t>(q - 1);
  }
  return total;
}

std::vector<Vertex> ball_vertices(int q, int depth) {
  if (q < 2)
    throw InvalidAlphabet("alphabet size must be at least 2");
  std::vector<Vertex> out;
  out.reserve(ball_size(q, depth));
  if (depth < 0)
    return out;
  out.push_back(Vertex());
  std::size_t begin = 0;
  for (int d = 1; d <= depth; ++d) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      const Vertex parent = out[i];
      for (int a = 1; a <= q; ++a)
        if (a != parent.last())
          out.push_back(parent.child(static_cast<Letter>(a)));
    }
    begin = end;
  }
  return out;
}

} // namespace treelab
