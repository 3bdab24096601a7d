#include "relhyp/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <memory>
#include <set>
#include <unordered_set>

#include "relhyp/errors.hpp"

namespace relhyp {

// ---------------------------------------------------------------------------
// Alphabet and plain word operations

Alphabet::Alphabet(std::vector<std::string> generatorNames) : names_(std::move(generatorNames)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("alphabet: empty generator name");
    if (!seen.insert(n).second) throw InputError("alphabet: duplicate generator name '" + n + "'");
  }
}

std::string Alphabet::letterName(Letter x) const {
  if (!valid(x)) throw InputError("alphabet: invalid letter index " + std::to_string(x));
  std::string s = names_[x / 2];
  if (x & 1) s += '\'';
  return s;
}

std::optional<std::size_t> Alphabet::generatorIndex(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

bool shortlexLess(const Word& u, const Word& v) noexcept {
  if (u.size() != v.size()) return u.size() < v.size();
  return u.letters < v.letters;
}

Word concat(const Word& u, const Word& v) {
  Word r;
  r.letters.reserve(u.size() + v.size());
  r.letters.insert(r.letters.end(), u.letters.begin(), u.letters.end());
  r.letters.insert(r.letters.end(), v.letters.begin(), v.letters.end());
  return r;
}

Word formalInverse(const Word& w) {
  Word r;
  r.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(inverseLetter(*it));
  return r;
}

Word freelyReduce(std::span<const Letter> w) {
  Word r;
  r.letters.reserve(w.size());
  for (Letter x : w) {
    if (!r.letters.empty() && r.letters.back() == inverseLetter(x)) {
      r.letters.pop_back();
    } else {
      r.letters.push_back(x);
    }
  }
  return r;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Letter x : w.letters) {
    h ^= x + 1;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Families

Family Family::free(int n) { return Family{FamilyKind::Free, n, {}}; }
Family Family::abelian(int n) { return Family{FamilyKind::Abelian, n, {}}; }
Family Family::surface(int genus) { return Family{FamilyKind::Surface, genus, {}}; }
Family Family::direct(std::vector<Family> fs) { return Family{FamilyKind::Direct, 0, std::move(fs)}; }
Family Family::freeProduct(std::vector<Family> fs) {
  return Family{FamilyKind::FreeProduct, 0, std::move(fs)};
}

std::size_t Family::generatorCount() const {
  switch (kind) {
    case FamilyKind::Free:
    case FamilyKind::Abelian:
      return static_cast<std::size_t>(rank);
    case FamilyKind::Surface:
      return static_cast<std::size_t>(2 * rank);
    case FamilyKind::Direct:
    case FamilyKind::FreeProduct: {
      std::size_t n = 0;
      for (const auto& f : factors) n += f.generatorCount();
      return n;
    }
  }
  return 0;
}

std::string Family::describe() const {
  auto list = [this](const char* head) {
    std::string s = head;
    s += '(';
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += ',';
      s += factors[i].describe();
    }
    return s + ')';
  };
  switch (kind) {
    case FamilyKind::Free:
      return "free(" + std::to_string(rank) + ")";
    case FamilyKind::Abelian:
      return "abelian(" + std::to_string(rank) + ")";
    case FamilyKind::Surface:
      return "surface(" + std::to_string(rank) + ")";
    case FamilyKind::Direct:
      return list("direct");
    case FamilyKind::FreeProduct:
      return list("freeproduct");
  }
  return {};
}

namespace {

class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : text_(text) {}

  Family parse() {
    Family f = parseOne();
    skipSpace();
    if (pos_ != text_.size()) fail("trailing characters");
    return f;
  }

 private:
  Family parseOne() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string head(text_.substr(start, pos_ - start));
    std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
    expect('(');
    Family f;
    if (head == "free" || head == "abelian" || head == "surface") {
      int n = parseInt();
      expect(')');
      if (head == "free") {
        if (n < 1) fail("free rank must be >= 1");
        f = Family::free(n);
      } else if (head == "abelian") {
        if (n < 1) fail("abelian rank must be >= 1");
        f = Family::abelian(n);
      } else {
        if (n < 2) fail("surface genus must be >= 2");
        f = Family::surface(n);
      }
      return f;
    }
    if (head == "direct" || head == "freeproduct") {
      std::vector<Family> fs;
      fs.push_back(parseOne());
      skipSpace();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        fs.push_back(parseOne());
        skipSpace();
      }
      expect(')');
      if (fs.size() < 2) fail(head + " needs at least two factors");
      return head == "direct" ? Family::direct(std::move(fs)) : Family::freeProduct(std::move(fs));
    }
    fail("unknown family '" + head + "'");
    return f;
  }

  int parseInt() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("family '" + std::string(text_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Family parseFamily(std::string_view text) { return FamilyParser(text).parse(); }

// ---------------------------------------------------------------------------
// Surface groups: Dehn's algorithm plus a shortlex choice among geodesics

Word surfaceRelator(int genus) {
  Word r;
  for (int j = 0; j < genus; ++j) {
    auto a = static_cast<Letter>(2 * (2 * j));
    auto b = static_cast<Letter>(2 * (2 * j + 1));
    r.letters.insert(r.letters.end(), {a, b, inverseLetter(a), inverseLetter(b)});
  }
  return r;
}

namespace {

// All cyclic rotations of the relator and its inverse, bucketed by first
// letter. Every letter occurs exactly once in the relator, so each bucket
// holds two words.
struct SymmetrizedRelators {
  int genus;
  std::size_t length;
  std::vector<std::vector<Word>> byFirst;

  explicit SymmetrizedRelators(int g) : genus(g), length(static_cast<std::size_t>(4 * g)) {
    byFirst.resize(4 * static_cast<std::size_t>(g));
    Word r = surfaceRelator(g);
    for (const Word& base : {r, formalInverse(r)}) {
      for (std::size_t s = 0; s < length; ++s) {
        Word rot;
        for (std::size_t i = 0; i < length; ++i) rot.letters.push_back(base.letters[(s + i) % length]);
        byFirst[rot.letters[0]].push_back(std::move(rot));
      }
    }
  }
};

const SymmetrizedRelators& relatorsFor(int genus) {
  static thread_local std::vector<std::unique_ptr<SymmetrizedRelators>> cache;
  for (const auto& c : cache) {
    if (c->genus == genus) return *c;
  }
  cache.push_back(std::make_unique<SymmetrizedRelators>(genus));
  return *cache.back();
}

// Replaces w[pos, pos+m) == rel[0, m) by the inverse of rel[m, L).
Word replaceByComplement(const Word& w, std::size_t pos, std::size_t m, const Word& rel) {
  Word out;
  out.letters.reserve(w.size() + rel.size() - 2 * m);
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(pos));
  for (std::size_t i = rel.size(); i > m; --i) out.letters.push_back(inverseLetter(rel.letters[i - 1]));
  out.letters.insert(out.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(pos + m), w.letters.end());
  return out;
}

Word dehnReduceWith(const SymmetrizedRelators& rels, Word w) {
  const std::size_t half = rels.length / 2;
  for (;;) {
    w = freelyReduce(w.letters);
    bool replaced = false;
    for (std::size_t i = 0; i < w.size() && !replaced; ++i) {
      for (const Word& rel : rels.byFirst[w.letters[i]]) {
        std::size_t m = 0;
        while (m < rel.size() && i + m < w.size() && w.letters[i + m] == rel.letters[m]) ++m;
        if (m > half) {
          w = replaceByComplement(w, i, m, rel);
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) return w;
  }
}

Word surfaceNormalForm(int genus, const Word& input) {
  const auto& rels = relatorsFor(genus);
  const std::size_t half = rels.length / 2;
  Word start = dehnReduceWith(rels, input);
restart:
  std::set<std::vector<Letter>> seen{start.letters};
  std::deque<Word> queue{start};
  Word best = start;
  while (!queue.empty()) {
    Word x = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + half <= x.size(); ++i) {
      for (const Word& rel : rels.byFirst[x.letters[i]]) {
        if (!std::equal(rel.letters.begin(), rel.letters.begin() + static_cast<std::ptrdiff_t>(half),
                        x.letters.begin() + static_cast<std::ptrdiff_t>(i))) {
          continue;
        }
        Word z = dehnReduceWith(rels, replaceByComplement(x, i, half, rel));
        if (z.size() < x.size()) {
          start = std::move(z);
          goto restart;
        }
        if (seen.insert(z.letters).second) {
          if (seen.size() > GroupOracle::kSurfaceClassCap) {
            throw ResourceError("surface normal form: rewrite class exceeds cap " +
                                std::to_string(GroupOracle::kSurfaceClassCap));
          }
          if (z.letters < best.letters) best = z;
          queue.push_back(std::move(z));
        }
      }
    }
  }
  return best;
}

// Recursive normalizer over the family tree. `firstGen` is the global index
// of the family's first generator; input letters are global.
Word normalizeIn(const Family& f, std::size_t firstGen, std::span<const Letter> w) {
  const auto offset = static_cast<Letter>(2 * firstGen);
  switch (f.kind) {
    case FamilyKind::Free:
      return freelyReduce(w);
    case FamilyKind::Abelian: {
      std::vector<long> exps(static_cast<std::size_t>(f.rank), 0);
      for (Letter x : w) exps[(x - offset) / 2] += (x & 1) ? -1 : 1;
      Word out;
      for (std::size_t g = 0; g < exps.size(); ++g) {
        auto letter = static_cast<Letter>(offset + 2 * g + (exps[g] < 0 ? 1 : 0));
        out.letters.insert(out.letters.end(), static_cast<std::size_t>(std::labs(exps[g])), letter);
      }
      return out;
    }
    case FamilyKind::Surface: {
      Word local;
      local.letters.reserve(w.size());
      for (Letter x : w) local.letters.push_back(static_cast<Letter>(x - offset));
      Word nf = surfaceNormalForm(f.rank, local);
      for (Letter& x : nf.letters) x = static_cast<Letter>(x + offset);
      return nf;
    }
    case FamilyKind::Direct: {
      Word out;
      std::size_t g0 = firstGen;
      for (const Family& sub : f.factors) {
        std::size_t g1 = g0 + sub.generatorCount();
        std::vector<Letter> part;
        for (Letter x : w) {
          if (x / 2 >= g0 && x / 2 < g1) part.push_back(x);
        }
        Word nf = normalizeIn(sub, g0, part);
        out.letters.insert(out.letters.end(), nf.letters.begin(), nf.letters.end());
        g0 = g1;
      }
      return out;
    }
    case FamilyKind::FreeProduct: {
      std::vector<std::size_t> starts;
      std::size_t g0 = firstGen;
      for (const Family& sub : f.factors) {
        starts.push_back(g0);
        g0 += sub.generatorCount();
      }
      auto factorOf = [&](Letter x) {
        std::size_t g = x / 2;
        std::size_t k = 0;
        while (k + 1 < starts.size() && g >= starts[k + 1]) ++k;
        return k;
      };
      // Stack of reduced syllables; adjacent syllables lie in different factors.
      std::vector<std::pair<std::size_t, Word>> syllables;
      std::size_t i = 0;
      while (i < w.size()) {
        std::size_t k = factorOf(w[i]);
        std::size_t j = i;
        while (j < w.size() && factorOf(w[j]) == k) ++j;
        Word s = normalizeIn(f.factors[k], starts[k], w.subspan(i, j - i));
        i = j;
        if (s.empty()) continue;
        if (!syllables.empty() && syllables.back().first == k) {
          Word merged = normalizeIn(f.factors[k], starts[k], concat(syllables.back().second, s).letters);
          syllables.pop_back();
          if (!merged.empty()) syllables.emplace_back(k, std::move(merged));
        } else {
          syllables.emplace_back(k, std::move(s));
        }
      }
      Word out;
      for (const auto& [k, s] : syllables) out.letters.insert(out.letters.end(), s.letters.begin(), s.letters.end());
      return out;
    }
  }
  return Word(std::vector<Letter>(w.begin(), w.end()));
}

}  // namespace

Word dehnReduce(int genus, const Word& w) {
  if (genus < 2) throw InputError("dehnReduce: genus must be >= 2");
  for (Letter x : w.letters) {
    if (x >= 8 * genus) throw InputError("dehnReduce: letter outside the surface alphabet");
  }
  return dehnReduceWith(relatorsFor(genus), w);
}

// ---------------------------------------------------------------------------
// GroupOracle

GroupOracle::GroupOracle(Family family) : family_(std::move(family)) {
  std::size_t n = family_.generatorCount();
  if (n == 0) throw InputError("group: family has no generators");
  if (n > 26) throw InputError("group: at most 26 generators are supported");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  alphabet_ = Alphabet(std::move(names));
}

void GroupOracle::validate(const Word& w) const {
  for (Letter x : w.letters) {
    if (!alphabet_.valid(x)) {
      throw InputError("word: letter index " + std::to_string(x) + " outside alphabet of " +
                       std::to_string(alphabet_.letterCount()) + " letters");
    }
  }
}

Word GroupOracle::normalize(const Word& w) const {
  validate(w);
  return normalizeIn(family_, 0, w.letters);
}

Word GroupOracle::multiply(const Word& u, const Word& v) const { return normalize(concat(u, v)); }

Word GroupOracle::invert(const Word& w) const {
  validate(w);
  return normalize(formalInverse(w));
}

namespace {

class WordParser {
 public:
  WordParser(const Alphabet& alphabet, std::string_view text) : alphabet_(alphabet), text_(text) {}

  Word parse() {
    Word w = parseSequence();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  Word parseSequence() {
    Word w;
    for (;;) {
      skipSpace();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == ',' || c == ']' || c == ')') break;
      Word item;
      if (c == '1') {
        ++pos_;
      } else if (c == '[') {
        ++pos_;
        Word u = parseSequence();
        expect(',');
        Word v = parseSequence();
        expect(']');
        item = concat(concat(u, v), concat(formalInverse(u), formalInverse(v)));
      } else if (c == '(') {
        ++pos_;
        item = parseSequence();
        expect(')');
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        auto g = alphabet_.generatorIndex(std::string_view(&text_[pos_], 1));
        if (!g) fail("unknown generator '" + std::string(1, c) + "'");
        ++pos_;
        item = Word{static_cast<Letter>(2 * *g)};
      } else {
        fail("unexpected '" + std::string(1, c) + "'");
      }
      while (pos_ < text_.size() && text_[pos_] == '\'') {
        item = formalInverse(item);
        ++pos_;
      }
      w = concat(w, item);
    }
    return w;
  }

  void expect(char c) {
    skipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("word '" + std::string(text_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  const Alphabet& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parseWord(const Alphabet& alphabet, std::string_view text) { return WordParser(alphabet, text).parse(); }

std::string formatWord(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter x : w.letters) s += alphabet.letterName(x);
  return s;
}

std::size_t GroupOracle::factorCount() const noexcept {
  if (family_.kind == FamilyKind::Direct || family_.kind == FamilyKind::FreeProduct) return family_.factors.size();
  return 1;
}

std::pair<std::size_t, std::size_t> GroupOracle::factorGenerators(std::size_t i) const {
  if (i >= factorCount()) throw InputError("factor index " + std::to_string(i) + " out of range");
  if (factorCount() == 1) return {0, family_.generatorCount()};
  std::size_t g0 = 0;
  for (std::size_t k = 0; k < i; ++k) g0 += family_.factors[k].generatorCount();
  return {g0, g0 + family_.factors[i].generatorCount()};
}

// ---------------------------------------------------------------------------
// Peripherals

PeripheralSpec PeripheralSpec::cyclic(const GroupOracle& oracle, std::string label, const Word& w) {
  PeripheralSpec p(oracle, std::move(label), PeripheralKind::Cyclic);
  p.generators_.push_back(oracle.normalize(w));
  return p;
}

PeripheralSpec PeripheralSpec::factor(const GroupOracle& oracle, std::string label, std::size_t index) {
  auto kind = oracle.family().kind;
  if (kind != FamilyKind::Direct && kind != FamilyKind::FreeProduct) {
    throw InputError("peripheral '" + label + "': factor peripherals need a direct or free product");
  }
  auto [g0, g1] = oracle.factorGenerators(index);
  PeripheralSpec p(oracle, std::move(label), PeripheralKind::Factor);
  p.factor_ = index;
  for (std::size_t g = g0; g < g1; ++g) p.generators_.push_back(Word{static_cast<Letter>(2 * g)});
  return p;
}

PeripheralSpec PeripheralSpec::whole(const GroupOracle& oracle, std::string label) {
  PeripheralSpec p(oracle, std::move(label), PeripheralKind::Whole);
  for (std::size_t g = 0; g < oracle.alphabet().generatorCount(); ++g) {
    p.generators_.push_back(Word{static_cast<Letter>(2 * g)});
  }
  return p;
}

bool PeripheralSpec::contains(const Word& g) const {
  switch (kind_) {
    case PeripheralKind::Whole:
      oracle_.validate(g);
      return true;
    case PeripheralKind::Factor: {
      auto [g0, g1] = oracle_.factorGenerators(factor_);
      Word nf = oracle_.normalize(g);
      return std::all_of(nf.letters.begin(), nf.letters.end(), [&](Letter x) { return x / 2 >= g0 && x / 2 < g1; });
    }
    case PeripheralKind::Cyclic:
      return cosetKey(g).empty();
  }
  return false;
}

bool PeripheralSpec::containsLetter(Letter x) const { return contains(Word{x}); }

Word PeripheralSpec::cosetKey(const Word& g) const {
  Word nf = oracle_.normalize(g);
  switch (kind_) {
    case PeripheralKind::Whole:
      return {};
    case PeripheralKind::Factor: {
      auto [g0, g1] = oracle_.factorGenerators(factor_);
      if (oracle_.family().kind == FamilyKind::Direct) {
        std::erase_if(nf.letters, [&](Letter x) { return x / 2 >= g0 && x / 2 < g1; });
        return nf;
      }
      // Free product: drop a trailing syllable from the factor.
      while (!nf.letters.empty() && nf.letters.back() / 2 >= g0 && nf.letters.back() / 2 < g1) nf.letters.pop_back();
      return nf;
    }
    case PeripheralKind::Cyclic: {
      const Word& w = generators_.front();
      if (w.empty()) return nf;
      // Scan g w^k for |k| up to the first power with |w^k| > 2|g|; beyond
      // it |g w^k| >= |w^k| - |g| > |g| (powers grow monotonically in the
      // built-in families).
      Word best = nf;
      Word winv = oracle_.invert(w);
      Word up = nf, down = nf, power;
      const std::size_t limit = 2 * nf.size();
      const std::size_t maxSteps = 4 * nf.size() + 64;
      for (std::size_t k = 1; k <= maxSteps; ++k) {
        power = oracle_.multiply(power, w);
        up = oracle_.multiply(up, w);
        down = oracle_.multiply(down, winv);
        if (shortlexLess(up, best)) best = up;
        if (shortlexLess(down, best)) best = down;
        if (power.size() > limit) return best;
      }
      throw ResourceError("peripheral '" + label_ + "': powers of the generator did not outgrow the word");
    }
  }
  return nf;
}

PeripheralFamily::PeripheralFamily(std::vector<PeripheralSpec> reps) : reps_(std::move(reps)) {
  std::unordered_set<std::string> labels;
  for (const auto& p : reps_) {
    if (p.label().empty()) throw InputError("peripheral family: empty label");
    if (!labels.insert(p.label()).second) throw InputError("peripheral family: duplicate label '" + p.label() + "'");
    if (!reps_.empty() && !(p.oracle().family() == reps_.front().oracle().family())) {
      throw InputError("peripheral family: peripherals over different groups");
    }
  }
}

}  // namespace relhyp
