#include "tfree/families.hpp"

#include <array>
#include <cctype>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfree {

Arrangement boolean_arrangement(std::size_t dim) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Integer> n(dim, 0);
    n[i] = 1;
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(n)));
  }
  return Arrangement(dim, std::move(hs));
}

Arrangement braid_arrangement(std::size_t dim) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      std::vector<Integer> n(dim, 0);
      n[i] = 1;
      n[j] = -1;
      hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(n)));
    }
  return Arrangement(dim, std::move(hs));
}

Arrangement generic_arrangement(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n > 0 && dim == 0) throw std::invalid_argument("no hyperplanes exist in dimension 0");
  if (n > 1 && dim == 1) throw std::invalid_argument("dimension 1 holds a single hyperplane");
  if (n > 200) throw std::invalid_argument("generic family limited to 200 hyperplanes");

  std::mt19937_64 rng(seed);
  const long range = static_cast<long>(std::max<std::size_t>(3, n));
  std::uniform_int_distribution<long> coeff(-range, range);
  const std::size_t pair_rank = std::min<std::size_t>(2, dim);
  const std::size_t triple_rank = std::min<std::size_t>(3, dim);

  std::vector<Hyperplane> hs;
  Arrangement current(dim);
  for (std::size_t attempts = 0; hs.size() < n; ++attempts) {
    if (attempts > 100'000) throw std::invalid_argument("could not place generic hyperplanes");
    std::vector<Integer> normal(dim);
    bool nonzero = false;
    for (auto& c : normal) {
      c = coeff(rng);
      nonzero = nonzero || c != 0;
    }
    if (!nonzero) continue;
    std::vector<Hyperplane> trial = hs;
    trial.push_back(Hyperplane::from_coefficients(std::span<const Integer>(normal)));
    bool ok = true;
    for (std::size_t i = 0; i < hs.size() && ok; ++i) {
      if (trial[i] == trial.back()) ok = false;
    }
    if (!ok) continue;
    const Arrangement cand(dim, trial);
    const std::size_t last = hs.size();
    for (std::size_t i = 0; i < last && ok; ++i) {
      const std::array<std::size_t, 2> p{i, last};
      if (cand.rank_of(p) < pair_rank) ok = false;
      for (std::size_t j = i + 1; j < last && ok; ++j) {
        const std::array<std::size_t, 3> t{i, j, last};
        if (cand.rank_of(t) < triple_rank) ok = false;
      }
    }
    if (ok) hs = std::move(trial);
  }
  return Arrangement(dim, std::move(hs));
}

namespace {

class FamilyParser {
 public:
  FamilyParser(std::string_view s, std::optional<std::uint64_t> seed) : s_(s), seed_(seed) {}

  Arrangement parse() {
    Arrangement a = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("family '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::uint64_t number() {
    const std::string w = word();
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
      fail("expected a number, got '" + w + "'");
    try {
      return std::stoull(w);
    } catch (const std::exception&) {
      fail("number out of range");
    }
  }
  bool number_follows() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  Arrangement parenthesized() {
    ++pos_;
    Arrangement a = expr();
    if (!peek(')')) fail("missing ')'");
    ++pos_;
    return a;
  }

  Arrangement expr() {
    if (peek('(')) return parenthesized();
    const std::string name = word();
    if (name == "boolean") return boolean_arrangement(dim_arg());
    if (name == "braid") return braid_arrangement(dim_arg());
    if (name == "generic") {
      const std::size_t n = number();
      const std::size_t dim = dim_arg();
      std::optional<std::uint64_t> seed = seed_;
      if (number_follows()) seed = number();
      if (!seed) fail("generic needs a seed");
      return generic_arrangement(n, dim, *seed);
    }
    if (name == "product") {
      if (!peek('(')) fail("product needs parenthesized factors");
      Arrangement a = parenthesized();
      while (peek('(')) a = product(a, parenthesized());
      return a;
    }
    fail(name.empty() ? "missing family name" : "unknown family '" + name + "'");
  }

  std::size_t dim_arg() {
    const std::uint64_t d = number();
    if (d > 64) fail("dimension too large");
    return static_cast<std::size_t>(d);
  }

  std::string_view s_;
  std::optional<std::uint64_t> seed_;
  std::size_t pos_ = 0;
};

}  // namespace

Arrangement generate_family(std::string_view expr, std::optional<std::uint64_t> default_seed) {
  return FamilyParser(expr, default_seed).parse();
}

}  // namespace tfree
