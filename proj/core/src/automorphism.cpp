#include "treelab/automorphism.hpp"

#include "treelab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <unordered_set>

namespace treelab {

namespace {

std::size_t child_position(const Vertex& parent, Letter a) {
  if (parent.is_root() || a < parent.last())
    return static_cast<std::size_t>(a) - 1;
  return static_cast<std::size_t>(a) - 2;
}

Letter child_at(const Vertex& parent, std::size_t pos) {
  const auto letter = static_cast<Letter>(pos + 1);
  if (parent.is_root() || letter < parent.last())
    return letter;
  return static_cast<Letter>(letter + 1);
}

bool is_permutation_of_size(const TreeAutomorphism::Permutation& p, std::size_t n) {
  if (p.size() != n)
    return false;
  std::vector<bool> seen(n, false);
  for (Letter x : p) {
    if (x >= n || seen[x])
      return false;
    seen[x] = true;
  }
  return true;
}

TreeAutomorphism::Permutation inverse_permutation(const TreeAutomorphism::Permutation& p) {
  TreeAutomorphism::Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    inv[p[i]] = static_cast<Letter>(i);
  return inv;
}

Vertex portrait_apply(const TreeAutomorphism::Portrait& p, const Vertex& v, bool inverse) {
  if (p.depth == 0)
    return v;
  check_alphabet(v, p.q);
  // Walk the word, tracking the source prefix and its image.
  std::vector<Letter> src_word;
  std::vector<Letter> img_word;
  src_word.reserve(v.depth());
  img_word.reserve(v.depth());
  Vertex src;
  Vertex img;
  for (Letter a : v.word()) {
    // In the inverse walk the roles swap: `a` is a letter of the image and we
    // reconstruct the source.
    const Vertex& from = inverse ? img : src;
    const Vertex& to = inverse ? src : img;
    const std::size_t pos = child_position(from, a);
    std::size_t mapped = pos;
    if (static_cast<int>(src.depth()) < p.depth) {
      const auto& perm = p.local.at(src);
      if (!inverse) {
        mapped = perm[pos];
      } else {
        mapped = static_cast<std::size_t>(std::find(perm.begin(), perm.end(), static_cast<Letter>(pos)) -
                                          perm.begin());
      }
    }
    const Letter b = child_at(to, mapped);
    if (!inverse) {
      src = src.child(a);
      img = img.child(b);
    } else {
      img = img.child(a);
      src = src.child(b);
    }
  }
  return inverse ? src : img;
}

void flatten_into(std::vector<TreeAutomorphism>& out, const TreeAutomorphism& g) {
  if (const auto* c = std::get_if<TreeAutomorphism::Composition>(&g.form())) {
    for (const auto& f : c->factors)
      flatten_into(out, f);
  } else {
    out.push_back(g);
  }
}

// ---- text form -----------------------------------------------------------

void print_portrait_node(std::string& out, const TreeAutomorphism::Portrait& p, const Vertex& v) {
  const auto& perm = p.local.at(v);
  out.push_back('(');
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i)
      out.push_back(' ');
    out += std::to_string(perm[i] + 1);
  }
  out.push_back(')');
  if (static_cast<int>(v.depth()) + 1 < p.depth) {
    out.push_back('[');
    bool first = true;
    for (const auto& c : vertex_children(v, p.q)) {
      if (!first)
        out.push_back(',');
      first = false;
      print_portrait_node(out, p, c);
    }
    out.push_back(']');
  }
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  TreeAutomorphism parse_all() {
    auto g = parse_aut();
    skip_ws();
    if (pos_ != text_.size())
      fail("trailing characters");
    return g;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("automorphism text: " + msg + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  unsigned parse_uint() {
    skip_ws();
    const std::size_t start = pos_;
    unsigned value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (value > 100000)
        fail("integer too large");
      ++pos_;
    }
    if (start == pos_)
      fail("expected integer");
    return value;
  }

  TreeAutomorphism parse_aut() {
    const char c = peek();
    ++pos_;
    switch (c) {
    case 'T': {
      expect('(');
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ')')
        ++pos_;
      const auto word = text_.substr(start, pos_ - start);
      expect(')');
      return TreeAutomorphism::translation(Vertex::parse(word));
    }
    case 'P':
      return parse_portrait();
    case 'C': {
      expect('[');
      std::vector<TreeAutomorphism> factors;
      if (peek() != ']') {
        factors.push_back(parse_aut());
        while (peek() == ',') {
          ++pos_;
          factors.push_back(parse_aut());
        }
      }
      expect(']');
      return TreeAutomorphism::composition(std::move(factors));
    }
    case 'I': {
      expect('(');
      auto inner = parse_aut();
      expect(')');
      return TreeAutomorphism::inverse(std::move(inner));
    }
    default:
      --pos_;
      fail("unknown automorphism form");
    }
  }

  TreeAutomorphism parse_portrait() {
    expect('(');
    const int depth = static_cast<int>(parse_uint());
    if (depth == 0) {
      expect(')');
      return TreeAutomorphism::portrait(0, 0);
    }
    expect(',');
    std::vector<std::pair<std::size_t, TreeAutomorphism::Permutation>> nodes; // (depth, perm) preorder
    std::vector<std::vector<std::size_t>> children;
    parse_node(nodes, children, 0, depth);
    expect(')');
    const int q = static_cast<int>(nodes.front().second.size());
    if (q < 2)
      fail("portrait root permutation must have at least 2 entries");
    std::map<Vertex, TreeAutomorphism::Permutation> local;
    assign(local, nodes, children, 0, Vertex(), q, depth);
    return TreeAutomorphism::portrait(q, depth, std::move(local));
  }

  std::size_t parse_node(std::vector<std::pair<std::size_t, TreeAutomorphism::Permutation>>& nodes,
                         std::vector<std::vector<std::size_t>>& children, std::size_t depth, int max_depth) {
    expect('(');
    TreeAutomorphism::Permutation perm;
    while (peek() != ')') {
      const unsigned x = parse_uint();
      if (x == 0)
        fail("permutation entries are 1-based");
      perm.push_back(static_cast<Letter>(x - 1));
    }
    expect(')');
    const std::size_t id = nodes.size();
    nodes.emplace_back(depth, std::move(perm));
    children.emplace_back();
    if (static_cast<int>(depth) + 1 < max_depth) {
      expect('[');
      // The recursive call grows `children`, so bind its result before indexing.
      std::size_t kid = parse_node(nodes, children, depth + 1, max_depth);
      children[id].push_back(kid);
      while (peek() == ',') {
        ++pos_;
        kid = parse_node(nodes, children, depth + 1, max_depth);
        children[id].push_back(kid);
      }
      expect(']');
    }
    return id;
  }

  void assign(std::map<Vertex, TreeAutomorphism::Permutation>& local,
              const std::vector<std::pair<std::size_t, TreeAutomorphism::Permutation>>& nodes,
              const std::vector<std::vector<std::size_t>>& children, std::size_t id, const Vertex& v, int q,
              int max_depth) {
    local[v] = nodes[id].second;
    if (static_cast<int>(v.depth()) + 1 >= max_depth)
      return;
    const auto kids = vertex_children(v, q);
    if (kids.size() != children[id].size())
      fail("portrait node at " + v.to_string() + " lists the wrong number of subtrees");
    for (std::size_t i = 0; i < kids.size(); ++i)
      assign(local, nodes, children, children[id][i], kids[i], q, max_depth);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

TreeAutomorphism TreeAutomorphism::translation(Vertex word) { return TreeAutomorphism(Translation{std::move(word)}); }

TreeAutomorphism TreeAutomorphism::portrait(int q, int depth, std::map<Vertex, Permutation> local) {
  if (depth < 0)
    throw InvalidAutomorphism("portrait depth must be non-negative");
  Portrait p;
  p.depth = depth;
  p.q = depth == 0 ? 0 : q;
  if (depth == 0) {
    if (!local.empty())
      throw InvalidAutomorphism("depth-0 portrait carries local maps");
    return TreeAutomorphism(std::move(p));
  }
  if (q < 2)
    throw InvalidAutomorphism("portrait alphabet size must be at least 2");
  for (const auto& [v, perm] : local) {
    if (static_cast<int>(v.depth()) >= depth)
      throw InvalidAutomorphism("local map at " + v.to_string() + " lies below the portrait depth");
    if (v.max_letter() > q)
      throw InvalidAutomorphism("local map at " + v.to_string() + " uses letters beyond q");
    if (!is_permutation_of_size(perm, child_count(v, q)))
      throw InvalidAutomorphism("local map at " + v.to_string() + " is not a bijection of its children");
  }
  for (const auto& v : ball_vertices(q, depth - 1)) {
    auto it = local.find(v);
    if (it == local.end()) {
      Permutation id(child_count(v, q));
      std::iota(id.begin(), id.end(), Letter{0});
      p.local.emplace(v, std::move(id));
    } else {
      p.local.emplace(v, it->second);
    }
  }
  return TreeAutomorphism(std::move(p));
}

TreeAutomorphism TreeAutomorphism::composition(std::vector<TreeAutomorphism> factors) {
  return TreeAutomorphism(Composition{std::move(factors)});
}

TreeAutomorphism TreeAutomorphism::inverse(TreeAutomorphism g) {
  return TreeAutomorphism(Inverse{std::make_shared<const TreeAutomorphism>(std::move(g))});
}

Vertex TreeAutomorphism::apply(const Vertex& v) const {
  return std::visit(
      [&](const auto& f) -> Vertex {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Translation>) {
          return multiply(f.word, v);
        } else if constexpr (std::is_same_v<F, Portrait>) {
          return portrait_apply(f, v, false);
        } else if constexpr (std::is_same_v<F, Composition>) {
          Vertex out = v;
          for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it)
            out = it->apply(out);
          return out;
        } else {
          return f.inner->apply_inverse(v);
        }
      },
      form_);
}

Vertex TreeAutomorphism::apply_inverse(const Vertex& v) const {
  return std::visit(
      [&](const auto& f) -> Vertex {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Translation>) {
          return multiply(word_inverse(f.word), v);
        } else if constexpr (std::is_same_v<F, Portrait>) {
          return portrait_apply(f, v, true);
        } else if constexpr (std::is_same_v<F, Composition>) {
          Vertex out = v;
          for (const auto& factor : f.factors)
            out = factor.apply_inverse(out);
          return out;
        } else {
          return f.inner->apply(v);
        }
      },
      form_);
}

std::size_t TreeAutomorphism::reach_bound() const {
  return std::visit(
      [](const auto& f) -> std::size_t {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Translation>) {
          return f.word.depth();
        } else if constexpr (std::is_same_v<F, Portrait>) {
          return 0;
        } else if constexpr (std::is_same_v<F, Composition>) {
          std::size_t total = 0;
          for (const auto& factor : f.factors)
            total += factor.reach_bound();
          return total;
        } else {
          return f.inner->reach_bound();
        }
      },
      form_);
}

std::string TreeAutomorphism::to_string() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Translation>) {
          return "T(" + f.word.to_string() + ")";
        } else if constexpr (std::is_same_v<F, Portrait>) {
          if (f.depth == 0)
            return "P(0)";
          std::string out = "P(" + std::to_string(f.depth) + ",";
          print_portrait_node(out, f, Vertex());
          out.push_back(')');
          return out;
        } else if constexpr (std::is_same_v<F, Composition>) {
          std::string out = "C[";
          for (std::size_t i = 0; i < f.factors.size(); ++i) {
            if (i)
              out.push_back(',');
            out += f.factors[i].to_string();
          }
          out.push_back(']');
          return out;
        } else {
          return "I(" + f.inner->to_string() + ")";
        }
      },
      form_);
}

TreeAutomorphism TreeAutomorphism::parse(std::string_view text) {
  try {
    return Parser(text).parse_all();
  } catch (const InvalidAutomorphism& e) {
    throw ParseError(std::string("invalid automorphism: ") + e.what());
  } catch (const InvalidVertex& e) {
    throw ParseError(std::string("invalid automorphism: ") + e.what());
  }
}

Vertex aut_apply(const TreeAutomorphism& g, const Vertex& v) { return g.apply(v); }

TreeAutomorphism aut_compose(const TreeAutomorphism& g, const TreeAutomorphism& h) {
  std::vector<TreeAutomorphism> factors;
  flatten_into(factors, g);
  flatten_into(factors, h);
  return TreeAutomorphism::composition(std::move(factors));
}

TreeAutomorphism aut_invert(const TreeAutomorphism& g) {
  return std::visit(
      [&](const auto& f) -> TreeAutomorphism {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, TreeAutomorphism::Translation>) {
          return TreeAutomorphism::translation(word_inverse(f.word));
        } else if constexpr (std::is_same_v<F, TreeAutomorphism::Portrait>) {
          if (f.depth == 0)
            return g;
          std::map<Vertex, TreeAutomorphism::Permutation> local;
          for (const auto& [src, perm] : f.local)
            local.emplace(g.apply(src), inverse_permutation(perm));
          return TreeAutomorphism::portrait(f.q, f.depth, std::move(local));
        } else if constexpr (std::is_same_v<F, TreeAutomorphism::Composition>) {
          std::vector<TreeAutomorphism> factors;
          for (auto it = f.factors.rbegin(); it != f.factors.rend(); ++it)
            factors.push_back(aut_invert(*it));
          return TreeAutomorphism::composition(std::move(factors));
        } else {
          return *f.inner;
        }
      },
      g.form());
}

std::size_t aut_reach(const TreeAutomorphism& g, int q, int depth_bound) {
  std::size_t reach = 0;
  for (const auto& v : ball_vertices(q, depth_bound)) {
    const auto image_depth = g.apply(v).depth();
    const auto diff = image_depth > v.depth() ? image_depth - v.depth() : v.depth() - image_depth;
    reach = std::max(reach, diff);
  }
  return reach;
}

bool agree_on_ball(const TreeAutomorphism& g, const TreeAutomorphism& h, int q, int depth) {
  for (const auto& v : ball_vertices(q, depth))
    if (g.apply(v) != h.apply(v))
      return false;
  return true;
}

bool is_isometry_on_ball(const TreeAutomorphism& g, int q, int depth) {
  std::set<Vertex> images;
  for (const auto& v : ball_vertices(q, depth)) {
    const Vertex gv = g.apply(v);
    if (!images.insert(gv).second)
      return false;
    if (!v.is_root() && distance(gv, g.apply(v.parent())) != 1)
      return false;
  }
  return true;
}

AutKind parse_aut_kind(std::string_view name) {
  if (name == "translation")
    return AutKind::translation;
  if (name == "portrait")
    return AutKind::portrait;
  if (name == "composition")
    return AutKind::composition;
  throw ParseError("unknown automorphism kind '" + std::string(name) + "'");
}

Vertex random_word(int q, int length, std::mt19937_64& rng) {
  std::vector<Letter> word;
  word.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    const int options = word.empty() ? q : q - 1;
    auto a = static_cast<Letter>(std::uniform_int_distribution<int>(1, options)(rng));
    if (!word.empty() && a >= word.back())
      ++a;
    word.push_back(a);
  }
  return Vertex(std::move(word));
}

TreeAutomorphism random_automorphism(int q, AutKind kind, int size, std::mt19937_64& rng) {
  if (q < 2)
    throw InvalidAlphabet("alphabet size must be at least 2");
  size = std::max(size, 0);
  switch (kind) {
  case AutKind::translation: {
    const int length = std::uniform_int_distribution<int>(0, size)(rng);
    return TreeAutomorphism::translation(random_word(q, length, rng));
  }
  case AutKind::portrait: {
    const int depth = size == 0 ? 0 : std::uniform_int_distribution<int>(1, size)(rng);
    if (depth == 0)
      return TreeAutomorphism::portrait(q, 0);
    std::map<Vertex, TreeAutomorphism::Permutation> local;
    for (const auto& v : ball_vertices(q, depth - 1)) {
      TreeAutomorphism::Permutation p(child_count(v, q));
      std::iota(p.begin(), p.end(), Letter{0});
      for (std::size_t i = p.size(); i > 1; --i) {
        const auto j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        std::swap(p[i - 1], p[j]);
      }
      local.emplace(v, std::move(p));
    }
    return TreeAutomorphism::portrait(q, depth, std::move(local));
  }
  case AutKind::composition: {
    const int count = std::uniform_int_distribution<int>(1, std::max(size, 1))(rng);
    std::vector<TreeAutomorphism> factors;
    for (int i = 0; i < count; ++i) {
      const bool portrait = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
      auto f = random_automorphism(q, portrait ? AutKind::portrait : AutKind::translation, size, rng);
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 1)
        f = TreeAutomorphism::inverse(std::move(f));
      factors.push_back(std::move(f));
    }
    return TreeAutomorphism::composition(std::move(factors));
  }
  }
  throw InvalidInput("unknown automorphism kind");
}

TreeAutomorphism random_automorphism(int q, AutKind kind, int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_automorphism(q, kind, size, rng);
}

} // namespace treelab
