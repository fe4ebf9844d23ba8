#include "tfree/hompoly.hpp"

#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tfree {

namespace {

unsigned exponent_degree(const HomPoly::Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

void require_same_vars(const HomPoly& a, const HomPoly& b) {
  if (a.num_vars() != b.num_vars())
    throw std::invalid_argument("polynomials over different numbers of variables");
}

}  // namespace

HomPoly HomPoly::constant(std::size_t num_vars, const Rational& c) {
  return monomial(Exponent(num_vars, 0), c);
}

HomPoly HomPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw std::out_of_range("variable index");
  Exponent e(num_vars, 0);
  e[index] = 1;
  return monomial(std::move(e), 1);
}

HomPoly HomPoly::monomial(Exponent e, const Rational& c) {
  HomPoly p(e.size());
  if (c != 0) {
    p.degree_ = static_cast<int>(exponent_degree(e));
    p.terms_.emplace(std::move(e), c);
  }
  return p;
}

HomPoly HomPoly::linear_form(std::span<const Rational> coeffs) {
  HomPoly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Exponent e(coeffs.size(), 0);
    e[i] = 1;
    p.terms_.emplace(std::move(e), coeffs[i]);
  }
  if (!p.terms_.empty()) p.degree_ = 1;
  return p;
}

HomPoly HomPoly::linear_form(std::span<const Integer> coeffs) {
  std::vector<Rational> q(coeffs.begin(), coeffs.end());
  return linear_form(q);
}

HomPoly HomPoly::from_terms(std::size_t num_vars, const Terms& terms) {
  HomPoly p(num_vars);
  for (const auto& [e, c] : terms) {
    if (e.size() != num_vars) throw std::invalid_argument("exponent length mismatch");
    if (c == 0) continue;
    const int d = static_cast<int>(exponent_degree(e));
    if (p.degree_ >= 0 && d != p.degree_)
      throw std::invalid_argument("polynomial is not homogeneous");
    p.degree_ = d;
    p.terms_.emplace(e, c);
  }
  return p;
}

Rational HomPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomPoly::add_scaled(const HomPoly& o, const Rational& c) {
  require_same_vars(*this, o);
  if (o.is_zero() || c == 0) return;
  if (!is_zero() && degree_ != o.degree_)
    throw std::invalid_argument("sum of homogeneous polynomials of different degrees");
  for (const auto& [e, v] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(e, 0);
    it->second += c * v;
    if (it->second == 0) terms_.erase(it);
  }
  degree_ = terms_.empty() ? -1 : o.degree_;
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
  add_scaled(o, 1);
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) {
  add_scaled(o, -1);
  return *this;
}

HomPoly& HomPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    degree_ = -1;
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

HomPoly HomPoly::operator-() const {
  HomPoly p = *this;
  for (auto& [e, v] : p.terms_) v = -v;
  return p;
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  require_same_vars(a, b);
  HomPoly p(a.num_vars_);
  if (a.is_zero() || b.is_zero()) return p;
  HomPoly::Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = p.terms_.try_emplace(e, 0);
      it->second += ca * cb;
    }
  }
  std::erase_if(p.terms_, [](const auto& kv) { return kv.second == 0; });
  p.degree_ = p.terms_.empty() ? -1 : a.degree_ + b.degree_;
  return p;
}

HomPoly HomPoly::pow(unsigned e) const {
  HomPoly result = constant(num_vars_, 1);
  HomPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational HomPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

HomPoly HomPoly::substitute(const Matrix& t) const {
  if (t.rows() != num_vars_) throw std::invalid_argument("substitution shape mismatch");
  const std::size_t new_vars = t.cols();
  HomPoly result(new_vars);
  if (is_zero()) return result;

  // powers[i][k] = (sum_j t(i, j) y_j)^k
  std::vector<std::vector<HomPoly>> powers(num_vars_);
  for (std::size_t i = 0; i < num_vars_; ++i) {
    const Vector row = t.row(i);
    powers[i].push_back(constant(new_vars, 1));
    const HomPoly form = linear_form(row);
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * form);
  }
  for (const auto& [e, c] : terms_) {
    HomPoly term = constant(new_vars, c);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] > 0) term = term * powers[i][e[i]];
    }
    if (term.is_zero()) continue;
    if (result.is_zero()) {
      result = std::move(term);
    } else {
      result += term;
    }
  }
  return result;
}

std::string HomPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = exponent_degree(e) == 0;
    bool need_star = false;
    if (mag != 1 || is_const) {
      out << tfree::to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << "*";
      out << "x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      need_star = true;
    }
  }
  return out.str();
}

namespace {

void enumerate_monomials(std::size_t pos, unsigned remaining, HomPoly::Exponent& cur,
                         std::vector<HomPoly::Exponent>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    cur[pos] = k;
    enumerate_monomials(pos + 1, remaining - k, cur, out);
  }
}

void require_linear(const HomPoly& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("divisor linear form is zero");
  if (alpha.degree() != 1) throw std::invalid_argument("divisor is not a linear form");
}

}  // namespace

std::vector<HomPoly::Exponent> monomials(std::size_t num_vars, unsigned degree) {
  std::vector<HomPoly::Exponent> out;
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  HomPoly::Exponent cur(num_vars, 0);
  enumerate_monomials(0, degree, cur, out);
  return out;
}

Matrix straightening_map(const HomPoly& alpha) {
  require_linear(alpha);
  const std::size_t n = alpha.num_vars();
  Vector a(n);
  for (std::size_t i = 0; i < n; ++i) {
    HomPoly::Exponent e(n, 0);
    e[i] = 1;
    a[i] = alpha.coefficient(e);
  }
  std::size_t p = 0;
  while (a[p] == 0) ++p;
  Matrix t(n, n);
  t(p, 0) = 1;
  std::size_t col = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    t(j, col) = a[p];
    t(p, col) = -a[j];
    ++col;
  }
  return t;
}

bool divisible_by_power(const HomPoly& f, const HomPoly& alpha, unsigned m) {
  require_linear(alpha);
  require_same_vars(f, alpha);
  if (f.is_zero() || m == 0) return true;
  if (f.degree() < static_cast<int>(m)) return false;
  const HomPoly g = f.substitute(straightening_map(alpha));
  for (const auto& [e, c] : g.terms()) {
    if (e[0] < m) return false;
  }
  return true;
}

Matrix divisibility_conditions(const HomPoly& alpha, unsigned m, unsigned degree) {
  require_linear(alpha);
  const std::size_t n = alpha.num_vars();
  const auto source = monomials(n, degree);
  const Matrix t = straightening_map(alpha);

  // Target monomials whose y1-exponent is below m; those coefficients must vanish.
  std::vector<HomPoly::Exponent> targets;
  for (auto& e : monomials(n, degree)) {
    if (e[0] < m) targets.push_back(std::move(e));
  }
  std::map<HomPoly::Exponent, std::size_t, std::greater<>> row_of;
  for (std::size_t r = 0; r < targets.size(); ++r) row_of.emplace(targets[r], r);
  Matrix cond(targets.size(), source.size());
  if (targets.empty()) return cond;

  // Under x = T y: x_p = y1 - sum_{j != p} a_j y_c(j) and x_j = a_p y_c(j).
  // Expanding x^e directly only for the y1-powers below m avoids building
  // every full image.
  std::size_t p = 0;
  while (t(p, 0) == 0) ++p;
  std::vector<std::size_t> col_of(n, 0);
  std::vector<Rational> neg_a(n);  // -a_j, read off column c(j)
  Rational a_p;
  for (std::size_t j = 0, c = 1; j < n; ++j) {
    if (j == p) continue;
    col_of[j] = c;
    neg_a[j] = t(p, c);
    a_p = t(j, c);
    ++c;
  }
  if (n == 1) a_p = 1;
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < n; ++j)
    if (j != p && neg_a[j] != 0) others.push_back(j);

  std::vector<std::vector<Rational>> neg_pow(n);
  for (std::size_t j : others) {
    neg_pow[j].assign(degree + 1, Rational(1));
    for (unsigned k = 1; k <= degree; ++k) neg_pow[j][k] = neg_pow[j][k - 1] * neg_a[j];
  }
  auto choose = [](unsigned long a, unsigned long b) { return Rational(binomial(a, b)); };

  HomPoly::Exponent target(n, 0);
  for (std::size_t c = 0; c < source.size(); ++c) {
    const auto& e = source[c];
    const unsigned u = e[p];
    Rational scale = 1;
    for (unsigned k = 0; k < degree - u; ++k) scale *= a_p;
    for (unsigned k = 0; k < m && k <= u; ++k) {
      // Spread the remaining u - k powers over the y_c(j) with a_j != 0.
      std::fill(target.begin(), target.end(), 0);
      target[0] = k;
      for (std::size_t j = 0; j < n; ++j)
        if (j != p) target[col_of[j]] = e[j];
      const Rational base = scale * choose(u, k);
      auto spread = [&](auto& self, std::size_t idx, unsigned left, const Rational& coeff) -> void {
        if (idx + 1 >= others.size()) {
          if (others.empty()) {
            if (left != 0) return;
            cond(row_of.at(target), c) += coeff;
            return;
          }
          const std::size_t j = others[idx];
          target[col_of[j]] += left;
          cond(row_of.at(target), c) += coeff * neg_pow[j][left];
          target[col_of[j]] -= left;
          return;
        }
        const std::size_t j = others[idx];
        for (unsigned s = 0; s <= left; ++s) {
          target[col_of[j]] += s;
          self(self, idx + 1, left - s, coeff * choose(left, s) * neg_pow[j][s]);
          target[col_of[j]] -= s;
        }
      };
      spread(spread, 0, u - k, base);
    }
  }
  return cond;
}

HomPoly poly_det(const std::vector<std::vector<HomPoly>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("poly_det of non-square grid");
  if (n == 0) return HomPoly::constant(0, 1);
  if (n > 20) throw std::invalid_argument("poly_det grid too large");
  const std::size_t vars = m[0][0].num_vars();

  // minors[S]: determinant of the first |S| rows restricted to the columns in S.
  std::vector<HomPoly> minors(std::size_t{1} << n, HomPoly(vars));
  minors[0] = HomPoly::constant(vars, 1);
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask)) - 1;  // row being expanded
    std::size_t pos = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (std::size_t{1} << c))) continue;
      const HomPoly& entry = m[k][c];
      const HomPoly& sub = minors[mask & ~(std::size_t{1} << c)];
      if (!entry.is_zero() && !sub.is_zero()) {
        HomPoly term = entry * sub;
        if ((k + pos) % 2 == 1) term = -term;
        minors[mask] += term;
      }
      ++pos;
    }
  }
  return minors.back();
}

}  // namespace tfree
