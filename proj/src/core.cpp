#include "mtbs/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <utility>

namespace mtbs {

namespace {

std::vector<int> collect_domain(const std::vector<Symbol>& symbols) {
  std::vector<int> dom;
  for (int i = 0; i < static_cast<int>(symbols.size()); ++i) {
    if (symbols[static_cast<std::size_t>(i)] != Symbol::star) dom.push_back(i);
  }
  return dom;
}

void require_length_match(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Pattern::Pattern(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("pattern: empty text");
  symbols_.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0': symbols_.push_back(Symbol::zero); break;
      case '1': symbols_.push_back(Symbol::one); break;
      case '*': symbols_.push_back(Symbol::star); break;
      default:
        throw std::invalid_argument(std::string("pattern: invalid character '") + c + "'");
    }
  }
  domain_ = collect_domain(symbols_);
}

Pattern::Pattern(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("pattern: empty symbol list");
  domain_ = collect_domain(symbols_);
}

Pattern Pattern::all_star(int n) {
  if (n <= 0) throw std::invalid_argument("pattern: length must be positive");
  return Pattern(std::vector<Symbol>(static_cast<std::size_t>(n), Symbol::star));
}

std::string Pattern::text() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) {
    out.push_back(s == Symbol::star ? '*' : (s == Symbol::one ? '1' : '0'));
  }
  return out;
}

BitString::BitString(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("bitstring: empty text");
  bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument(std::string("bitstring: invalid character '") + c + "'");
    }
    bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
}

BitString::BitString(int n, int fill) {
  if (n <= 0) throw std::invalid_argument("bitstring: length must be positive");
  if (fill != 0 && fill != 1) throw std::invalid_argument("bitstring: fill must be 0 or 1");
  bits_.assign(static_cast<std::size_t>(n), static_cast<std::uint8_t>(fill));
}

std::string BitString::text() const {
  std::string out;
  out.reserve(bits_.size());
  for (std::uint8_t b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

Block::Block(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) throw std::invalid_argument("block: negative index");
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw std::invalid_argument("block: duplicate index " + std::to_string(indices_[i]));
    }
  }
}

Block Block::parse(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("block: invalid index token '" + std::string(tok) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return Block(std::move(out));
}

bool Block::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool Block::intersects(const Block& other) const {
  std::size_t a = 0, b = 0;
  while (a < indices_.size() && b < other.indices_.size()) {
    if (indices_[a] == other.indices_[b]) return true;
    if (indices_[a] < other.indices_[b]) ++a; else ++b;
  }
  return false;
}

std::string Block::text() const {
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += std::to_string(indices_[i]);
  }
  return out;
}

Permutation::Permutation(std::vector<int> images)
    : n_(static_cast<int>(images.size())), images_(std::move(images)) {
  preimages_.assign(images_.size(), -1);
  for (int i = 0; i < n_; ++i) {
    int v = images_[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n_ || preimages_[static_cast<std::size_t>(v)] != -1) {
      throw std::invalid_argument("permutation: image table is not a bijection");
    }
    preimages_[static_cast<std::size_t>(v)] = i;
  }
}

Permutation Permutation::identity(int n) { return cyclic(n, 0); }

Permutation Permutation::cyclic(int n, int offset) {
  if (n <= 0) throw std::invalid_argument("permutation: length must be positive");
  int j = offset % n;
  if (j < 0) j += n;
  return Permutation(n, j);
}

Permutation Permutation::from_images(std::vector<int> images) {
  if (images.empty()) throw std::invalid_argument("permutation: empty image table");
  const int n = static_cast<int>(images.size());
  const int j = images[0];
  bool cyclic_form = j >= 0 && j < n;
  for (int i = 0; cyclic_form && i < n; ++i) {
    if (images[static_cast<std::size_t>(i)] != (i + j) % n) cyclic_form = false;
  }
  if (cyclic_form) return cyclic(n, j);
  return Permutation(std::move(images));
}

int Permutation::cyclic_offset() const {
  if (!is_cyclic()) throw std::logic_error("permutation: not in cyclic form");
  return offset_;
}

int Permutation::image(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("permutation: index out of range");
  if (is_cyclic()) {
    int v = i + offset_;
    return v >= n_ ? v - n_ : v;
  }
  return images_[static_cast<std::size_t>(i)];
}

int Permutation::preimage(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("permutation: index out of range");
  if (is_cyclic()) {
    int v = i - offset_;
    return v < 0 ? v + n_ : v;
  }
  return preimages_[static_cast<std::size_t>(i)];
}

Permutation Permutation::inverse() const {
  if (is_cyclic()) return cyclic(n_, n_ - offset_);
  return Permutation(preimages_);
}

bool Permutation::operator==(const Permutation& other) const {
  if (n_ != other.n_) return false;
  for (int i = 0; i < n_; ++i) {
    if (image(i) != other.image(i)) return false;
  }
  return true;
}

bool Permutation::operator<(const Permutation& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  for (int i = 0; i < n_; ++i) {
    int a = image(i), b = other.image(i);
    if (a != b) return a < b;
  }
  return false;
}

Permutation compose(const Permutation& tau, const Permutation& sigma) {
  require_length_match(tau.length(), sigma.length(), "compose");
  const int n = tau.length();
  if (tau.is_cyclic() && sigma.is_cyclic()) {
    return Permutation::cyclic(n, tau.cyclic_offset() + sigma.cyclic_offset());
  }
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = tau.image(sigma.image(i));
  return Permutation::from_images(std::move(images));
}

GroupSpec GroupSpec::cyclic(int n) {
  if (n <= 0) throw std::invalid_argument("group: length must be positive");
  GroupSpec g;
  g.cyclic_ = true;
  g.n_ = n;
  return g;
}

GroupSpec GroupSpec::explicit_group(std::vector<Permutation> generators,
                                    std::size_t element_cap) {
  if (generators.empty()) throw std::invalid_argument("group: no generators");
  const int n = generators.front().length();
  for (const Permutation& p : generators) require_length_match(p.length(), n, "group");
  if (element_cap == 0) throw std::invalid_argument("group: element cap must be positive");
  GroupSpec g;
  g.cyclic_ = false;
  g.n_ = n;
  g.generators_ = std::move(generators);
  g.element_cap_ = element_cap;
  return g;
}

bool agree(const Pattern& p, const Pattern& q) {
  require_length_match(p.length(), q.length(), "agree");
  const Pattern& small = p.domain_size() <= q.domain_size() ? p : q;
  const Pattern& large = p.domain_size() <= q.domain_size() ? q : p;
  for (int i : small.domain()) {
    if (large.defined(i) && large.value(i) != small.value(i)) return false;
  }
  return true;
}

bool agree(const Pattern& p, const BitString& x) {
  require_length_match(p.length(), x.length(), "agree");
  for (int i : p.domain()) {
    if (x.bit(i) != p.value(i)) return false;
  }
  return true;
}

Pattern apply_permutation(const Pattern& p, const Permutation& sigma) {
  require_length_match(p.length(), sigma.length(), "apply_permutation");
  std::vector<Symbol> out(static_cast<std::size_t>(p.length()), Symbol::star);
  for (int d : p.domain()) {
    out[static_cast<std::size_t>(sigma.image(d))] = p.symbol(d);
  }
  return Pattern(std::move(out));
}

BitString apply_permutation(const BitString& x, const Permutation& sigma) {
  require_length_match(x.length(), sigma.length(), "apply_permutation");
  std::string out(static_cast<std::size_t>(x.length()), '0');
  for (int i = 0; i < x.length(); ++i) {
    out[static_cast<std::size_t>(sigma.image(i))] = static_cast<char>('0' + x.bit(i));
  }
  return BitString(out);
}

Block apply_permutation(const Block& b, const Permutation& sigma) {
  std::vector<int> out;
  out.reserve(b.indices().size());
  for (int i : b.indices()) {
    if (i >= sigma.length()) throw std::invalid_argument("apply_permutation: block index out of range");
    out.push_back(sigma.image(i));
  }
  return Block(std::move(out));
}

BitString flip(const BitString& x, const Block& b) {
  std::string out = x.text();
  for (int i : b.indices()) {
    if (i >= x.length()) throw std::invalid_argument("flip: block index out of range");
    out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] == '0' ? '1' : '0';
  }
  return BitString(out);
}

std::vector<Permutation> enumerate_group(const GroupSpec& g) {
  if (g.is_cyclic()) {
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(g.length()));
    for (int j = 0; j < g.length(); ++j) out.push_back(Permutation::cyclic(g.length(), j));
    return out;
  }
  const int n = g.length();
  std::vector<Permutation> steps;
  for (const Permutation& gen : g.generators()) {
    steps.push_back(gen);
    steps.push_back(gen.inverse());
  }
  auto key = [n](const Permutation& p) {
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = p.image(i);
    return images;
  };
  std::vector<Permutation> out;
  std::map<std::vector<int>, bool> seen;
  std::deque<Permutation> queue;
  Permutation id = Permutation::identity(n);
  seen[key(id)] = true;
  queue.push_back(id);
  out.push_back(id);
  while (!queue.empty()) {
    Permutation cur = queue.front();
    queue.pop_front();
    for (const Permutation& step : steps) {
      Permutation next = compose(cur, step);
      auto k = key(next);
      if (seen.contains(k)) continue;
      if (out.size() >= g.element_cap()) {
        throw resource_limit_error("enumerate_group: closure exceeds element cap " +
                                   std::to_string(g.element_cap()));
      }
      seen[k] = true;
      out.push_back(next);
      queue.push_back(next);
    }
  }
  return out;
}

bool is_transitive(const GroupSpec& g) {
  if (g.is_cyclic()) return true;
  std::vector<char> orbit(static_cast<std::size_t>(g.length()), 0);
  int count = 0;
  for (const Permutation& sigma : enumerate_group(g)) {
    int v = sigma.image(0);
    if (!orbit[static_cast<std::size_t>(v)]) {
      orbit[static_cast<std::size_t>(v)] = 1;
      ++count;
    }
  }
  return count == g.length();
}

namespace {

// True when m^7 <= n^3; operands stay far below the 128-bit limit at any
// n where the comparison is close, since then m is near n^(3/7).
bool pow7_le_pow3(long long m, long long n) {
  if (m <= 1) return m >= 0;
  long double approx = 7.0L * std::log(static_cast<long double>(m)) -
                       3.0L * std::log(static_cast<long double>(n));
  if (approx > 1.0L) return false;
  if (approx < -1.0L) return true;
  unsigned __int128 lhs = 1;
  for (int i = 0; i < 7; ++i) lhs *= static_cast<unsigned __int128>(m);
  unsigned __int128 rhs = 1;
  for (int i = 0; i < 3; ++i) rhs *= static_cast<unsigned __int128>(n);
  return lhs <= rhs;
}

}  // namespace

int floor_pow_3_7(int n) {
  if (n <= 0) throw std::invalid_argument("floor_pow_3_7: n must be positive");
  int m = static_cast<int>(std::pow(static_cast<long double>(n), 3.0L / 7.0L));
  while (pow7_le_pow3(m + 1, n)) ++m;
  while (m > 0 && !pow7_le_pow3(m, n)) --m;
  return m;
}

int ceil_pow_3_7(int n) {
  int f = floor_pow_3_7(n);
  unsigned __int128 lhs = 1;
  for (int i = 0; i < 7; ++i) lhs *= static_cast<unsigned __int128>(f);
  unsigned __int128 rhs = 1;
  for (int i = 0; i < 3; ++i) rhs *= static_cast<unsigned __int128>(n);
  return lhs == rhs ? f : f + 1;
}

}  // namespace mtbs
