#ifndef RELHYP_WORDS_HPP
#define RELHYP_WORDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relhyp {

// Letter 2i is generator i, letter 2i+1 its formal inverse.
using Letter = std::uint16_t;

constexpr Letter inverseLetter(Letter x) noexcept { return x ^ Letter{1}; }

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> generatorNames);

  std::size_t generatorCount() const noexcept { return names_.size(); }
  std::size_t letterCount() const noexcept { return 2 * names_.size(); }
  bool valid(Letter x) const noexcept { return x < letterCount(); }

  const std::string& generatorName(std::size_t i) const { return names_.at(i); }
  // "a" for a generator, "a'" for its inverse.
  std::string letterName(Letter x) const;
  std::optional<std::size_t> generatorIndex(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  Word(std::initializer_list<Letter> ls) : letters(ls) {}
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const noexcept { return letters.empty(); }
  std::size_t size() const noexcept { return letters.size(); }

  // Plain lexicographic order; see shortlexLess for the enumeration order.
  friend auto operator<=>(const Word&, const Word&) = default;
};

bool shortlexLess(const Word& u, const Word& v) noexcept;
Word concat(const Word& u, const Word& v);
// Reversed sequence with every letter replaced by its formal inverse.
Word formalInverse(const Word& w);
Word freelyReduce(std::span<const Letter> w);

// Word syntax: generator names, "'" for inverses (also after a "(...)"
// group), "[u,v]" for the commutator u v u' v', "1" or "" for the
// identity. Throws InputError.
Word parseWord(const Alphabet& alphabet, std::string_view text);
// Identity prints as "1".
std::string formatWord(const Alphabet& alphabet, const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

enum class FamilyKind { Free, Abelian, Surface, Direct, FreeProduct };

// Built-in group families with a solvable word problem. `rank` is the
// number of generators for Free/Abelian and the genus for Surface.
struct Family {
  FamilyKind kind = FamilyKind::Free;
  int rank = 0;
  std::vector<Family> factors;

  static Family free(int n);
  static Family abelian(int n);
  static Family surface(int genus);
  static Family direct(std::vector<Family> fs);
  static Family freeProduct(std::vector<Family> fs);

  std::size_t generatorCount() const;
  std::string describe() const;

  friend bool operator==(const Family&, const Family&) = default;
};

// Parses "free(2)", "abelian(2)", "surface(2)", "direct(free(1),free(1))",
// "freeproduct(abelian(2),free(1))". Throws InputError.
Family parseFamily(std::string_view text);

class GroupOracle {
 public:
  // Generators are named a, b, c, ... in factor order.
  explicit GroupOracle(Family family);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Family& family() const noexcept { return family_; }

  // Throws InputError on a letter outside the alphabet.
  void validate(const Word& w) const;

  // Canonical normal form: the shortlex-least geodesic representative.
  Word normalize(const Word& w) const;
  Word multiply(const Word& u, const Word& v) const;
  Word invert(const Word& w) const;
  bool isIdentity(const Word& w) const { return normalize(w).empty(); }

  Word parseWord(std::string_view text) const { return relhyp::parseWord(alphabet_, text); }
  std::string format(const Word& w) const { return formatWord(alphabet_, w); }

  // Top-level factors of a Direct or FreeProduct family; otherwise one.
  std::size_t factorCount() const noexcept;
  // Half-open generator range [first, last) of top-level factor i.
  std::pair<std::size_t, std::size_t> factorGenerators(std::size_t i) const;

  // Upper bound on words explored per element when normalizing surface
  // group words (equal-length half-relator rewrites).
  static constexpr std::size_t kSurfaceClassCap = 200000;

 private:
  Family family_;
  Alphabet alphabet_;
};

// Dehn's algorithm for the genus-g presentation <a1,b1,...| [a1,b1]...>:
// letters are local to the surface (generator 2j = a_j, 2j+1 = b_j).
// Output never longer than the input; empty iff w is trivial.
Word dehnReduce(int genus, const Word& w);
// Relator [a1,b1]...[ag,bg] in local letters.
Word surfaceRelator(int genus);

enum class PeripheralKind { Cyclic, Factor, Whole };

// A peripheral subgroup P <= G given by a membership test and a coset
// canonicalizer. Cyclic <w>, a top-level direct factor, or G itself.
class PeripheralSpec {
 public:
  static PeripheralSpec cyclic(const GroupOracle& oracle, std::string label, const Word& w);
  static PeripheralSpec factor(const GroupOracle& oracle, std::string label, std::size_t index);
  static PeripheralSpec whole(const GroupOracle& oracle, std::string label);

  const std::string& label() const noexcept { return label_; }
  PeripheralKind kind() const noexcept { return kind_; }
  const std::vector<Word>& generators() const noexcept { return generators_; }
  const GroupOracle& oracle() const noexcept { return oracle_; }
  std::size_t factorIndex() const noexcept { return factor_; }

  bool contains(const Word& g) const;
  // Shortlex-least element of the coset gP.
  Word cosetKey(const Word& g) const;
  // True when the single letter x lies in P.
  bool containsLetter(Letter x) const;

 private:
  PeripheralSpec(const GroupOracle& oracle, std::string label, PeripheralKind kind)
      : oracle_(oracle), label_(std::move(label)), kind_(kind) {}

  GroupOracle oracle_;
  std::string label_;
  PeripheralKind kind_;
  std::vector<Word> generators_;
  std::size_t factor_ = 0;
};

// Finite list of peripheral representatives with distinct labels.
class PeripheralFamily {
 public:
  PeripheralFamily() = default;
  explicit PeripheralFamily(std::vector<PeripheralSpec> reps);

  const std::vector<PeripheralSpec>& representatives() const noexcept { return reps_; }
  bool empty() const noexcept { return reps_.empty(); }
  std::size_t size() const noexcept { return reps_.size(); }
  const PeripheralSpec& operator[](std::size_t i) const { return reps_.at(i); }

 private:
  std::vector<PeripheralSpec> reps_;
};

// Free-function spellings of the oracle operations.
inline Word normalize(const GroupOracle& o, const Word& w) { return o.normalize(w); }
inline Word multiply(const GroupOracle& o, const Word& u, const Word& v) { return o.multiply(u, v); }
inline Word invert(const GroupOracle& o, const Word& w) { return o.invert(w); }
inline Word cosetKeyOf(const PeripheralSpec& p, const Word& w) { return p.cosetKey(w); }

}  // namespace relhyp

#endif  // RELHYP_WORDS_HPP
