// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tfree/certificates.hpp"
#include "tfree/error.hpp"
#include "tfree/families.hpp"
#include "tfree/rank2.hpp"

using namespace tfree;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

struct Entry {
  std::string name;
  Arrangement a;
};

Arrangement lines2(std::initializer_list<std::array<long, 2>> ls) {
  std::vector<Hyperplane> hs;
  for (const auto& l : ls) {
    const std::vector<Integer> v{l[0], l[1]};
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(v)));
  }
  return Arrangement(2, hs);
}

Arrangement triple() { return lines2({{1, 0}, {0, 1}, {1, -1}}); }

std::vector<Entry> corpus() {
  std::vector<Entry> c;
  for (std::size_t l = 1; l <= 5; ++l) c.push_back({"boolean " + std::to_string(l), boolean_arrangement(l)});
  for (std::size_t l = 3; l <= 5; ++l) c.push_back({"braid " + std::to_string(l), braid_arrangement(l)});
  c.push_back({"product (braid 3) (boolean 1)", generate_family("product (braid 3) (boolean 1)", std::nullopt)});
  c.push_back({"triple x triple", product(triple(), triple())});
  c.push_back({"triple x line x line", product(product(triple(), boolean_arrangement(1)), boolean_arrangement(1))});
  c.push_back({"generic 4 2 x boolean 2", product(generic_arrangement(4, 2, 3), boolean_arrangement(2))});
  c.push_back({"generic 5 2 x triple", product(generic_arrangement(5, 2, 8), triple())});
  c.push_back({"generic 4 3", generic_arrangement(4, 3, 1)});
  c.push_back({"generic 6 3", generic_arrangement(6, 3, 2)});
  c.push_back({"generic 6 4", generic_arrangement(6, 4, 3)});
  c.push_back({"generic 7 5", generic_arrangement(7, 5, 4)});
  c.push_back({"generic 5 3 x boolean 1", product(generic_arrangement(5, 3, 5), boolean_arrangement(1))});
  return c;
}

bool oracle_totally_free(const Arrangement& a) {
  for (const auto& block : oracle::bipartition_decomposition(a))
    if (a.rank_of(block) > 2) return false;
  return true;
}

Multiplicity random_multiplicity(std::size_t n, unsigned max, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> d(1, max);
  std::vector<unsigned> m(n);
  for (auto& v : m) v = d(rng);
  return Multiplicity(m);
}

// Criterion 1
void decision(Check& c) {
  for (const auto& e : corpus()) {
    const bool got = is_totally_free(decide_totally_free(e.a));
    c.expect(got == oracle_totally_free(e.a), e.name + ": verdict disagrees with the bipartition oracle");
  }
}

// Criterion 2
void mixed_products(Check& c) {
  std::mt19937 rng(2);
  std::size_t arrangements = 0, samples = 0;
  for (const auto& e : corpus()) {
    if (!is_totally_free(decide_totally_free(e.a)) || e.a.empty()) continue;
    ++arrangements;
    for (int t = 0; t < 8; ++t, ++samples) {
      const Multiplicity m = random_multiplicity(e.a.size(), 5, rng);
      const Integer local = lmp2(e.a, m);
      const Integer global = gmp2_from_exponents(exponents_totally_free(e.a, m));
      c.expect(local == global, e.name + ": LMP2 " + to_string(local) + " != GMP2 " + to_string(global));
    }
  }
  c.expect(arrangements >= 5 && samples >= 50, "too few samples");
  c.detail << (c.ok ? std::to_string(samples) + " samples on " + std::to_string(arrangements) + " arrangements" : "");
}

// Criterion 3
void rank_two(Check& c) {
  const auto spot = [&](std::vector<unsigned> m, ExponentPair want) {
    c.expect(rank2_exponents({triple(), Multiplicity(m)}) == want, "spot value mismatch");
  };
  spot({1, 1, 1}, {1, 2});
  spot({2, 2, 2}, {3, 3});
  std::vector<Arrangement> pool{triple(), lines2({{1, 0}})};
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::uint64_t seed : {11u, 12u}) pool.push_back(generic_arrangement(n, 2, seed));
  std::size_t count = 0;
  for (const auto& a : pool) {
    const std::size_t n = a.size();
    std::vector<unsigned> m(n, 1);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i == n) {
        const Multiplicity mm(m);
        const MultiArrangement ma(a, mm);
        const ExponentPair e = rank2_exponents(ma);
        c.expect(e.d1 + e.d2 == mm.total(), "d1 + d2 != |m|");
        if (n >= 2) {
          const auto [t1, t2] = rank2_basis(ma);
          const std::vector<Derivation> b{t1, t2};
          c.expect(saito_verify(a, mm, b), "basis fails the Saito check");
        } else {
          c.expect(e == ExponentPair{0, mm.total()}, "single line");
        }
        ++count;
        return;
      }
      for (unsigned v = 1; v + (n - i - 1) <= left; ++v) {
        m[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, 10);
  }
  if (c.ok) c.detail << count << " multiarrangements";
}

// Criterion 4
void witness(Check& c) {
  for (std::size_t l = 3; l <= 5; ++l) {
    const Arrangement a = essentialize(braid_arrangement(l + 1)).arrangement;
    for (const auto& circ : {find_generic_circuit(a), find_generic_circuit_brute_force(a)}) {
      c.expect(circ.indices.size() == l + 1, "wrong circuit size");
      for (std::size_t i = 0; i < circ.indices.size(); ++i)
        for (std::size_t j = i + 1; j < circ.indices.size(); ++j)
          for (std::size_t k = j + 1; k < circ.indices.size(); ++k) {
            const std::vector<std::size_t> t{circ.indices[i], circ.indices[j], circ.indices[k]};
            c.expect(rank(a.normal_matrix(t)) == 3, "triple of rank < 3");
          }
    }
    const CircuitGap g = circuit_is_nonfree_check(l);
    c.expect(g.gap == make_rational(l + 1, 2 * l), "gap differs from (l+1)/(2l)");
    c.expect(Rational(g.lmp2) - g.gmp2_bound == g.gap, "gap arithmetic");
  }
}

// Criterion 5
void thresholds(Check& c) {
  struct Case {
    std::size_t braid;
    unsigned long k0;
  };
  for (const Case& cs : {Case{4, 9}, Case{5, 31}}) {
    const Arrangement a = braid_arrangement(cs.braid);
    const std::size_t l = a.rank(), n = a.size();
    const Integer pairs = binomial(l + 1, 2);
    const auto side = [&](unsigned long k) {
      const Integer lhs = pairs * Integer(k) * Integer(k);
      const Integer rhs = oracle::gmp2_max_exhaustive(l, static_cast<long>((k - 1) * (l + 1) + n));
      return lhs > rhs;
    };
    c.expect(side(cs.k0) && !side(cs.k0 - 1), "inequality does not switch at the listed k0");
    const Verdict v = decide_totally_free(a);
    c.expect(!is_totally_free(v), "verdict");
    if (is_totally_free(v)) return;
    const auto& w = std::get<NotTotallyFreeWitness>(v);
    c.expect(w.k0 == cs.k0, "k0 = " + std::to_string(w.k0));
    c.expect(audit_certificate(a, w.certificate), "certificate fails the audit");
    for (unsigned long k : {cs.k0 + 1, cs.k0 + 5}) {
      const auto cert = nonfree_by_lmp_gmp(a, circuit_multiplicity(n, w.circuit.indices, static_cast<unsigned>(k)));
      c.expect(cert.has_value() && audit_certificate(a, *cert), "no certificate at k = " + std::to_string(k));
    }
  }
}

// Criterion 6
void closure(Check& c) {
  for (const auto& e : corpus()) {
    if (!is_totally_free(decide_totally_free(e.a))) continue;
    for (std::size_t h = 0; h < e.a.size(); ++h) {
      c.expect(is_totally_free(decide_totally_free(deletion(e.a, h))), e.name + ": deletion");
      c.expect(is_totally_free(decide_totally_free(restriction(e.a, h).arrangement)), e.name + ": restriction");
    }
  }
  const Arrangement b4 = braid_arrangement(4);
  c.expect(!is_totally_free(decide_totally_free(b4)), "braid-S4 verdict");
  bool some = false;
  for (std::size_t h = 0; h < b4.size(); ++h) {
    const Arrangement r = restriction(b4, h).arrangement;
    some = some || (r.rank() == 2 && is_totally_free(decide_totally_free(r)));
  }
  c.expect(some, "no totally free restriction of braid-S4");
}

// Criterion 7
void invariance(Check& c) {
  std::mt19937 rng(7);
  for (const auto& e : corpus()) {
    const bool tag = is_totally_free(decide_totally_free(e.a));
    for (int t = 0; t < 10; ++t) {
      const Arrangement b = change_coordinates(e.a, oracle::random_invertible(e.a.dim(), rng));
      c.expect(is_totally_free(decide_totally_free(b)) == tag, e.name + ": verdict changed");
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
    double limit_seconds;
  };
  const Criterion criteria[] = {
      {"1 decision matches factor ranks", decision, 5},
      {"2 LMP2 = GMP2 on totally free", mixed_products, 30},
      {"3 rank-2 bases pass Saito", rank_two, 60},
      {"4 generic circuits and gap", witness, 5},
      {"5 thresholds k0 and certificates", thresholds, 30},
      {"6 closure under deletion/restriction", closure, 10},
      {"7 invariance under coordinate change", invariance, 10},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) c.expect(false, "over the time limit");
    std::printf("%s  criterion %-40s %7.2fs / %2.0fs  %s\n", c.ok ? "PASS" : "FAIL", cr.name, secs,
                cr.limit_seconds, c.detail.str().c_str());
    failures += c.ok ? 0 : 1;
  }
  return failures ? 1 : 0;
}
