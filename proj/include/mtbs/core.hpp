#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Core value types for partial cyclic strings: patterns over {0,1,*},
// bit strings, index blocks, permutations of Z_N and permutation groups.
namespace mtbs {

// Thrown when an enumeration or search exceeds its configured budget.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a randomized construction exhausts its retry budget.
class construction_failure : public std::runtime_error {
 public:
  construction_failure(const std::string& what, int attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_ = 0;
};

// Thrown when a certificate fails re-verification; signals a broken invariant.
class witness_verification_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Symbol : std::uint8_t { zero = 0, one = 1, star = 2 };

// Partial assignment of {0,1} values to positions of Z_n. Immutable.
class Pattern {
 public:
  explicit Pattern(std::string_view text);
  explicit Pattern(std::vector<Symbol> symbols);
  static Pattern all_star(int n);

  int length() const { return static_cast<int>(symbols_.size()); }
  Symbol symbol(int i) const { return symbols_[static_cast<std::size_t>(i)]; }
  bool defined(int i) const { return symbols_[static_cast<std::size_t>(i)] != Symbol::star; }
  // Value at a defined position, as 0 or 1.
  int value(int i) const { return static_cast<int>(symbols_[static_cast<std::size_t>(i)]); }
  const std::vector<int>& domain() const { return domain_; }
  int domain_size() const { return static_cast<int>(domain_.size()); }
  std::string text() const;

  bool operator==(const Pattern& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::vector<int> domain_;  // sorted indices of defined positions
};

// Fully defined binary string over Z_n. Immutable after construction.
class BitString {
 public:
  explicit BitString(std::string_view text);
  BitString(int n, int fill);
  static BitString zeros(int n) { return BitString(n, 0); }
  static BitString ones(int n) { return BitString(n, 1); }

  int length() const { return static_cast<int>(bits_.size()); }
  int bit(int i) const { return bits_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string text() const;

  bool operator==(const BitString& other) const { return bits_ == other.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

// Finite set of non-negative indices, kept sorted and duplicate free.
class Block {
 public:
  Block() = default;
  explicit Block(std::vector<int> indices);
  // Parses the serialized form: sorted indices joined by commas.
  static Block parse(std::string_view text);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;
  bool intersects(const Block& other) const;
  std::string text() const;

  bool operator==(const Block& other) const { return indices_ == other.indices_; }
  bool operator<(const Block& other) const { return indices_ < other.indices_; }

 private:
  std::vector<int> indices_;
};

// Bijection on Z_n. Cyclic offsets t_j(i) = (i + j) mod n are stored
// compactly; general permutations store their image table.
class Permutation {
 public:
  static Permutation identity(int n);
  static Permutation cyclic(int n, int offset);
  static Permutation from_images(std::vector<int> images);

  int length() const { return n_; }
  bool is_cyclic() const { return images_.empty(); }
  // Offset j with image(i) = (i + j) mod n; only valid for cyclic form.
  int cyclic_offset() const;
  int image(int i) const;
  int preimage(int i) const;
  Permutation inverse() const;

  bool operator==(const Permutation& other) const;
  bool operator<(const Permutation& other) const;

 private:
  Permutation(int n, int offset) : n_(n), offset_(offset) {}
  explicit Permutation(std::vector<int> images);

  int n_ = 0;
  int offset_ = 0;             // used when images_ is empty (cyclic form)
  std::vector<int> images_;    // empty for cyclic form
  std::vector<int> preimages_; // parallel to images_
};

// tau . sigma: apply sigma first, then tau.
Permutation compose(const Permutation& tau, const Permutation& sigma);

// Cyclic group of all offsets, or the closure of explicit generators
// (capped element count; exceeding the cap raises resource_limit_error).
class GroupSpec {
 public:
  static GroupSpec cyclic(int n);
  static GroupSpec explicit_group(std::vector<Permutation> generators,
                                  std::size_t element_cap = 100000);

  bool is_cyclic() const { return cyclic_; }
  int length() const { return n_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::size_t element_cap() const { return element_cap_; }

 private:
  GroupSpec() = default;
  bool cyclic_ = false;
  int n_ = 0;
  std::vector<Permutation> generators_;
  std::size_t element_cap_ = 0;
};

// True when p and q coincide on the intersection of their domains.
bool agree(const Pattern& p, const Pattern& q);
// True when x matches every defined position of p.
bool agree(const Pattern& p, const BitString& x);

// sigma(p): value of p at sigma^{-1}(i) placed at i.
Pattern apply_permutation(const Pattern& p, const Permutation& sigma);
BitString apply_permutation(const BitString& x, const Permutation& sigma);
Block apply_permutation(const Block& b, const Permutation& sigma);

// x with the bits at block positions inverted. Involution.
BitString flip(const BitString& x, const Block& b);

// All group elements in deterministic order. Cyclic(n) yields t_0..t_{n-1};
// explicit groups are closed under composition and inverse via breadth-first
// closure from the identity.
std::vector<Permutation> enumerate_group(const GroupSpec& g);

// True when the orbit of index 0 under the enumerated group is all of Z_n.
bool is_transitive(const GroupSpec& g);

// Largest integer m >= 0 with m^7 <= n^3, i.e. floor(n^(3/7)) computed exactly.
int floor_pow_3_7(int n);
// Smallest integer m with m^7 >= n^3, i.e. ceil(n^(3/7)) computed exactly.
int ceil_pow_3_7(int n);

}  // namespace mtbs
