#include "tfree/text_format.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tfree/error.hpp"

namespace tfree {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

unsigned long parse_count(const std::string& s, std::size_t line, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("expected a nonnegative integer for ") + what + ", got '" +
                               s + "'");
  try {
    return std::stoul(s);
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " is too large");
  }
}

}  // namespace

MultiArrangement parse_arrangement(std::string_view text) {
  const auto lines = split_lines(text);
  bool have_dim = false;
  std::size_t dim = 0;
  std::vector<Hyperplane> hs;
  std::vector<std::size_t> line_of;
  std::vector<unsigned> mult;

  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    const auto tok = tokens(strip_comment(lines[ln - 1]));
    if (tok.empty()) continue;
    if (tok[0] == "dim") {
      if (have_dim) throw ParseError(ln, "repeated 'dim' line");
      if (tok.size() != 2) throw ParseError(ln, "expected 'dim <n>'");
      dim = parse_count(tok[1], ln, "dim");
      have_dim = true;
    } else if (tok[0] == "hyperplane") {
      if (!have_dim) throw ParseError(ln, "'hyperplane' before 'dim'");
      std::size_t end = tok.size();
      unsigned k = 1;
      if (tok.size() >= 2 && tok[tok.size() - 2] == "mult") {
        const unsigned long v = parse_count(tok.back(), ln, "mult");
        if (v == 0 || v > 1'000'000ul) throw ParseError(ln, "mult must be in 1..1000000");
        k = static_cast<unsigned>(v);
        end -= 2;
      }
      if (end - 1 != dim)
        throw ParseError(ln, "expected " + std::to_string(dim) + " coefficients, got " +
                                 std::to_string(end - 1));
      std::vector<Rational> coeffs;
      for (std::size_t i = 1; i < end; ++i) {
        try {
          coeffs.push_back(parse_rational(tok[i]));
        } catch (const std::invalid_argument& e) {
          throw ParseError(ln, e.what());
        }
      }
      Hyperplane h;
      try {
        h = Hyperplane::from_coefficients(std::span<const Rational>(coeffs));
      } catch (const std::invalid_argument&) {
        throw ParseError(ln, "zero normal vector");
      }
      for (std::size_t j = 0; j < hs.size(); ++j) {
        if (hs[j] == h)
          throw ParseError(ln, "hyperplane duplicates the one on line " +
                                   std::to_string(line_of[j]));
      }
      hs.push_back(std::move(h));
      line_of.push_back(ln);
      mult.push_back(k);
    } else {
      throw ParseError(ln, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!have_dim) throw ParseError(lines.size() + 1, "missing 'dim' line");
  return MultiArrangement(Arrangement(dim, std::move(hs)), Multiplicity(std::move(mult)));
}

std::string format_arrangement(const Arrangement& a, const Multiplicity* m) {
  std::ostringstream out;
  out << "dim " << a.dim() << "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << "hyperplane";
    for (const auto& c : a[i].normal()) out << " " << c.get_str();
    if (m && (*m)[i] != 1) out << " mult " << (*m)[i];
    out << "\n";
  }
  return out.str();
}

Multiplicity parse_multiplicity_list(std::string_view text, std::size_t n) {
  std::vector<unsigned> values;
  std::string cur;
  auto flush = [&] {
    if (cur.empty() || cur.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad multiplicity entry '" + cur + "'");
    const unsigned long v = std::stoul(cur);
    if (v == 0 || v > 1'000'000ul) throw std::invalid_argument("multiplicity out of range");
    values.push_back(static_cast<unsigned>(v));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  if (values.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " multiplicities, got " +
                                std::to_string(values.size()));
  return Multiplicity(std::move(values));
}

// ---- polynomial parser ------------------------------------------------------

namespace {

/// Non-homogeneous intermediate: terms of any degree.
using Terms = HomPoly::Terms;

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t vars) : s_(text), vars_(vars) {}

  Terms parse() {
    Terms t = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + std::string(s_) + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static void add_into(Terms& acc, const Terms& t, int sign) {
    for (const auto& [e, c] : t) {
      auto [it, inserted] = acc.try_emplace(e, 0);
      it->second += sign > 0 ? c : Rational(-c);
      if (it->second == 0) acc.erase(it);
    }
  }

  Terms mul(const Terms& a, const Terms& b) const {
    Terms out;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        HomPoly::Exponent e(vars_);
        for (std::size_t i = 0; i < vars_; ++i) e[i] = ea[i] + eb[i];
        auto [it, inserted] = out.try_emplace(e, 0);
        it->second += ca * cb;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  Terms constant(const Rational& c) const {
    Terms t;
    if (c != 0) t.emplace(HomPoly::Exponent(vars_, 0), c);
    return t;
  }

  Terms expr() {
    Terms acc;
    int sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    add_into(acc, term(), sign);
    while (true) {
      if (accept('+')) add_into(acc, term(), 1);
      else if (accept('-')) add_into(acc, term(), -1);
      else return acc;
    }
  }

  Terms term() {
    Terms acc = power();
    while (accept('*')) acc = mul(acc, power());
    return acc;
  }

  Terms power() {
    Terms base = primary();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent after '^'");
    const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (e > 10'000) fail("exponent too large");
    Terms out = constant(1);
    for (unsigned long k = 0; k < e; ++k) out = mul(out, base);
    return out;
  }

  Terms primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      Terms t = expr();
      if (!accept(')')) fail("missing ')'");
      return t;
    }
    if (accept('-')) {
      Terms t = primary();
      for (auto& [e, c] : t) c = -c;
      return t;
    }
    const char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("variable needs an index, e.g. x1");
      const unsigned long idx = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (idx == 0 || idx > vars_) fail("variable x" + std::to_string(idx) + " out of range");
      HomPoly::Exponent e(vars_, 0);
      e[idx - 1] = 1;
      Terms t;
      t.emplace(std::move(e), 1);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
        ++pos_;
      try {
        return constant(parse_rational(std::string(s_.substr(start, pos_ - start))));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t vars_;
  std::size_t pos_ = 0;
};

}  // namespace

HomPoly parse_polynomial(std::string_view text, std::size_t num_vars) {
  return HomPoly::from_terms(num_vars, PolyParser(text, num_vars).parse());
}

std::vector<Derivation> parse_basis(std::string_view text, std::size_t dim) {
  const auto lines = split_lines(text);
  std::vector<Derivation> out;
  bool open = false;
  std::vector<bool> seen;
  auto close_block = [&] { open = false; };

  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    const std::string line = strip_comment(lines[ln - 1]);
    const auto tok = tokens(line);
    if (tok.empty()) {
      close_block();
      continue;
    }
    if (tok.size() == 1 && tok[0] == "derivation") {
      close_block();
      continue;
    }
    if (tok[0] != "component") throw ParseError(ln, "expected 'component i: <polynomial>'");
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(ln, "missing ':'");
    const auto idx_tokens = tokens(line.substr(0, colon));
    if (idx_tokens.size() != 2) throw ParseError(ln, "expected 'component i:'");
    const unsigned long idx = parse_count(idx_tokens[1], ln, "component index");
    if (idx == 0 || idx > dim)
      throw ParseError(ln, "component index must be in 1.." + std::to_string(dim));
    if (!open) {
      out.push_back(Derivation::zero(dim));
      seen.assign(dim, false);
      open = true;
    }
    if (seen[idx - 1]) throw ParseError(ln, "component " + std::to_string(idx) + " given twice");
    seen[idx - 1] = true;
    try {
      out.back().components[idx - 1] = parse_polynomial(line.substr(colon + 1), dim);
      out.back().degree();
    } catch (const std::invalid_argument& e) {
      throw ParseError(ln, e.what());
    }
  }
  return out;
}

}  // namespace tfree
