// tfree: total freeness of hyperplane arrangements from the command line.
//
// Every subcommand builds one JSON report {command, version, input_summary,
// result}; --json prints it as is, otherwise it is flattened into aligned
// "key  value" lines. Exit codes: 0 success, 1 input error, 3 NotTotallyFree
// under --strict.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tfree/certificates.hpp"
#include "tfree/error.hpp"
#include "tfree/families.hpp"
#include "tfree/matroid.hpp"
#include "tfree/rank2.hpp"
#include "tfree/text_format.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tfree;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitInputError = 1;
constexpr int kExitNotTotallyFree = 3;

constexpr const char* kDecompositionCondition = "product decomposition into factors of rank <= 2";
constexpr const char* kCertificateCondition = "LMP2>GMP2max certificate";

/// Integers that fit in 64 bits stay JSON numbers; larger ones become strings.
ordered_json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

ordered_json rational_json(const Rational& q) { return to_string(q); }

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json normal_json(const Hyperplane& h) {
  ordered_json n = ordered_json::array();
  for (const auto& c : h.normal()) n.push_back(integer_json(c));
  return n;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Input {
  MultiArrangement ma;
};

Input load(const std::string& path, const std::string& mult_override) {
  MultiArrangement ma = parse_arrangement(read_file(path));
  if (!mult_override.empty())
    ma.multiplicity = parse_multiplicity_list(mult_override, ma.arrangement.size());
  return Input{std::move(ma)};
}

ordered_json make_report(const std::string& command, const Arrangement* a) {
  ordered_json r;
  r["command"] = command;
  r["version"] = kVersion;
  if (a) {
    r["input_summary"] = {{"dim", a->dim()}, {"n", a->size()}, {"rank", a->rank()}};
  } else {
    r["input_summary"] = nullptr;
  }
  return r;
}

ordered_json decomposition_json(const Decomposition& d) {
  ordered_json factors = ordered_json::array();
  for (const auto& f : d.factors) {
    ordered_json normals = ordered_json::array();
    for (const auto& h : f.arrangement.hyperplanes()) normals.push_back(normal_json(h));
    factors.push_back({{"rank", f.rank()}, {"indices", f.indices}, {"normals", normals}});
  }
  return {{"factors", factors},
          {"trivial_directions", d.trivial_directions},
          {"change_of_basis", matrix_json(d.change_of_basis)}};
}

std::vector<std::size_t> factor_ranks(const Decomposition& d) {
  std::vector<std::size_t> ranks;
  for (const auto& f : d.factors) ranks.push_back(f.rank());
  return ranks;
}

ordered_json certificate_json(const NonFreenessCertificate& c) {
  ordered_json j;
  j["theorem"] = NonFreenessCertificate::theorem;
  j["lmp2"] = integer_json(c.lmp2_lower());
  j["lmp2_exact"] = c.lmp2_exact();
  j["gmp2_max"] = integer_json(c.gmp2_upper());
  j["gmp2_real_bound"] = rational_json(c.gmp2_real_bound());
  j["total_multiplicity"] = integer_json(c.total_multiplicity());
  j["rank"] = c.rank();
  j["scope_indices"] = c.scope();
  j["circuit_indices"] = c.circuit_indices;
  j["k0"] = c.k0 ? ordered_json(*c.k0) : ordered_json(nullptr);
  j["multiplicity_vector"] = c.multiplicity().values();
  return j;
}

ordered_json verdict_json(const Verdict& v) {
  if (const auto* tf = std::get_if<TotallyFree>(&v)) {
    return {{"verdict", "TotallyFree"},
            {"condition", kDecompositionCondition},
            {"factor_ranks", factor_ranks(tf->decomposition)},
            {"decomposition", decomposition_json(tf->decomposition)}};
  }
  const auto& w = std::get<NotTotallyFreeWitness>(v);
  return {{"verdict", "NotTotallyFree"},
          {"condition", kCertificateCondition},
          {"factor_ranks", factor_ranks(w.decomposition)},
          {"factor", {{"rank", w.factor().rank()}, {"indices", w.factor().indices}}},
          {"circuit", w.circuit.indices},
          {"k0", w.k0},
          {"certificate", certificate_json(w.certificate)}};
}

// ---- human-readable rendering -------------------------------------------

void flatten(const ordered_json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  const bool scalar_array =
      j.is_array() && std::none_of(j.begin(), j.end(), [](const ordered_json& e) {
        return e.is_object() || e.is_array();
      });
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !scalar_array) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "-");
  } else {
    std::string s = j.dump();
    if (scalar_array) {
      s.erase(std::remove(s.begin(), s.end(), '"'), s.end());
      std::replace(s.begin(), s.end(), ',', ' ');
    }
    out.emplace_back(prefix, s);
  }
}

void emit(const ordered_json& report, bool json) {
  if (json) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> lines;
  flatten(report, "", lines);
  std::size_t width = 0;
  for (const auto& [k, v] : lines) width = std::max(width, k.size());
  for (const auto& [k, v] : lines) std::cout << k << std::string(width + 2 - k.size(), ' ') << v << "\n";
}

// ---- subcommands -----------------------------------------------------------

struct Options {
  std::string input;
  std::string basis;
  std::string mult;
  bool json = false;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> rank;
  std::optional<std::string> total;
  std::vector<std::string> family;
};

int cmd_analyze(const Options& o) {
  const Input in = load(o.input, o.mult);
  const Arrangement& a = in.ma.arrangement;
  ordered_json report = make_report("analyze", &a);
  const Verdict v = decide_totally_free(a);
  const Decomposition& d = std::visit([](const auto& x) -> const Decomposition& { return x.decomposition; }, v);

  std::map<std::size_t, std::size_t> census;
  const auto flats = rank2_flats(a);
  for (const auto& f : flats) ++census[f.members.size()];
  ordered_json census_json = ordered_json::object();
  for (auto it = census.rbegin(); it != census.rend(); ++it)
    census_json[std::to_string(it->first)] = it->second;

  ordered_json factors = ordered_json::array();
  for (const auto& f : d.factors) factors.push_back({{"rank", f.rank()}, {"indices", f.indices}});
  report["result"] = {{"factor_count", d.factors.size()},
                      {"factors", factors},
                      {"trivial_directions", d.trivial_directions},
                      {"rank2_flats", flats.size()},
                      {"flat_sizes", census_json},
                      {"totally_free", verdict_json(v)}};
  emit(report, o.json);
  return 0;
}

int cmd_totally_free(const Options& o) {
  const Input in = load(o.input, o.mult);
  ordered_json report = make_report("totally-free", &in.ma.arrangement);
  const Verdict v = decide_totally_free(in.ma.arrangement);
  report["result"] = verdict_json(v);
  emit(report, o.json);
  return (o.strict && !is_totally_free(v)) ? kExitNotTotallyFree : 0;
}

ordered_json saito_json(const SaitoReport& s, const Arrangement& a, const Multiplicity& m) {
  ordered_json factors = ordered_json::array();
  for (std::size_t h = 0; h < a.size(); ++h) {
    std::string f = "(" + a[h].form().to_string() + ")";
    if (m[h] != 1) f += "^" + std::to_string(m[h]);
    factors.push_back(f);
  }
  return {{"determinant", s.determinant.to_string()},
          {"constant", s.constant ? rational_json(*s.constant) : ordered_json(nullptr)},
          {"product_of_forms", factors},
          {"all_members", s.all_members()},
          {"verified", s.verified()}};
}

int cmd_exponents(const Options& o) {
  const Input in = load(o.input, o.mult);
  const Arrangement& a = in.ma.arrangement;
  const Multiplicity& m = in.ma.multiplicity;
  ordered_json report = make_report("exponents", &a);
  const Verdict v = decide_totally_free(a);
  if (!is_totally_free(v)) {
    report["result"] = verdict_json(v);
    emit(report, o.json);
    return o.strict ? kExitNotTotallyFree : 0;
  }
  const Decomposition& d = std::get<TotallyFree>(v).decomposition;
  ordered_json factors = ordered_json::array();
  for (const auto& f : d.factors) {
    const Multiplicity local = m.restrict_to(f.indices);
    ordered_json fj = {{"rank", f.rank()}, {"indices", f.indices}, {"multiplicities", local.values()}};
    if (f.rank() == 1) {
      fj["exponents"] = {local[0]};
    } else {
      const MultiArrangement ma(f.arrangement, local);
      const ExponentPair e = rank2_exponents(ma);
      fj["exponents"] = {e.d1, e.d2};
      const auto [t1, t2] = rank2_basis(ma);
      ordered_json basis = ordered_json::array();
      for (const Derivation* t : {&t1, &t2}) {
        ordered_json comps = ordered_json::array();
        for (const auto& c : t->components) comps.push_back(c.to_string());
        basis.push_back({{"degree", t->degree()}, {"components", comps}});
      }
      ordered_json normals = ordered_json::array();
      for (const auto& h : f.arrangement.hyperplanes()) normals.push_back(normal_json(h));
      fj["normals"] = normals;
      fj["basis"] = basis;
      const std::vector<Derivation> thetas{t1, t2};
      fj["saito"] = saito_json(saito_check(f.arrangement, local, thetas), f.arrangement, local);
    }
    factors.push_back(fj);
  }
  report["result"] = {{"verdict", "TotallyFree"},
                      {"condition", kDecompositionCondition},
                      {"exponents", exponents_totally_free(a, m)},
                      {"trivial_directions", d.trivial_directions},
                      {"factors", factors}};
  emit(report, o.json);
  return 0;
}

int cmd_lmp2(const Options& o) {
  const Input in = load(o.input, o.mult);
  const Arrangement& a = in.ma.arrangement;
  const Multiplicity& m = in.ma.multiplicity;
  ordered_json report = make_report("lmp2", &a);
  const Lmp2Breakdown b = lmp2_breakdown(a, m);
  ordered_json flats = ordered_json::array();
  for (const auto& f : b.flats) {
    flats.push_back({{"members", f.flat.members},
                     {"multiplicities", m.restrict_to(f.flat.members).values()},
                     {"exponents", {f.exponents.d1, f.exponents.d2}},
                     {"product", integer_json(Integer(f.exponents.d1) * f.exponents.d2)}});
  }
  const Integer total(m.total());
  const auto cert = nonfree_by_lmp_gmp(a, m);
  report["result"] = {{"lmp2", integer_json(b.total)},
                      {"rank", a.rank()},
                      {"total_multiplicity", integer_json(total)},
                      {"gmp2_max", integer_json(gmp2_max(a.rank(), total))},
                      {"gmp2_real_bound", rational_json(gmp2_real_bound(a.rank(), total))},
                      {"outcome", cert ? "certificate" : "inconclusive"},
                      {"certificate", cert ? certificate_json(*cert) : ordered_json(nullptr)},
                      {"flats", flats}};
  emit(report, o.json);
  return 0;
}

int cmd_gmp2max(const Options& o) {
  std::size_t rank = 0;
  Integer total;
  ordered_json report;
  if (!o.input.empty()) {
    const Input in = load(o.input, o.mult);
    report = make_report("gmp2max", &in.ma.arrangement);
    rank = in.ma.arrangement.rank();
    total = Integer(in.ma.multiplicity.total());
  } else {
    if (!o.rank || !o.total) throw std::invalid_argument("give --input or both --rank and --total");
    report = make_report("gmp2max", nullptr);
    rank = *o.rank;
    total = parse_rational(*o.total).get_num();
    if (parse_rational(*o.total).get_den() != 1 || total < 0)
      throw std::invalid_argument("--total must be a nonnegative integer");
  }
  ordered_json parts = ordered_json::array();
  if (rank > 0) {
    const Integer q = total / Integer(static_cast<unsigned long>(rank));
    const Integer s = total % Integer(static_cast<unsigned long>(rank));
    for (std::size_t i = 0; i < rank; ++i)
      parts.push_back(integer_json(Integer(i) < s ? Integer(q + 1) : q));
  }
  report["result"] = {{"rank", rank},
                      {"total_multiplicity", integer_json(total)},
                      {"gmp2_max", integer_json(gmp2_max(rank, total))},
                      {"balanced_partition", parts},
                      {"gmp2_real_bound", rational_json(gmp2_real_bound(rank, total))}};
  emit(report, o.json);
  return 0;
}

int cmd_witness(const Options& o) {
  const Input in = load(o.input, o.mult);
  const Arrangement& a = in.ma.arrangement;
  ordered_json report = make_report("witness", &a);
  const Decomposition d = decompose(a);
  const auto it = std::find_if(d.factors.begin(), d.factors.end(),
                               [](const Factor& f) { return f.rank() >= 3; });
  if (it == d.factors.end()) throw ReducibleInput("no irreducible factor of rank >= 3");
  const Factor& f = *it;

  auto lift = [&](const GenericCircuit& c) {
    std::vector<std::size_t> idx;
    for (auto i : c.indices) idx.push_back(f.indices[i]);
    return idx;
  };
  const GenericCircuit proof = find_generic_circuit(f.arrangement);
  const GenericCircuit brute = find_generic_circuit_brute_force(f.arrangement);
  const CircuitGap gap = circuit_is_nonfree_check(f.rank());
  const Verdict v = decide_totally_free(a);
  const auto& w = std::get<NotTotallyFreeWitness>(v);

  report["result"] = {
      {"input_was_irreducible", d.factors.size() == 1 && d.trivial_directions == 0},
      {"factor", {{"rank", f.rank()}, {"indices", f.indices}}},
      {"circuit_proof_following", lift(proof)},
      {"circuit_brute_force", lift(brute)},
      {"circuit_lmp2", integer_json(gap.lmp2)},
      {"circuit_gmp2_bound", rational_json(gap.gmp2_bound)},
      {"gap", rational_json(gap.gap)},
      {"k0", w.k0},
      {"multiplicity_vector", w.certificate.multiplicity().values()},
      {"certificate", certificate_json(w.certificate)}};
  emit(report, o.json);
  return 0;
}

int cmd_generate(const Options& o) {
  std::string expr;
  for (const auto& t : o.family) expr += (expr.empty() ? "" : " ") + t;
  std::cout << format_arrangement(generate_family(expr, o.seed));
  return 0;
}

int cmd_saito_verify(const Options& o) {
  const Input in = load(o.input, o.mult);
  const Arrangement& a = in.ma.arrangement;
  const Multiplicity& m = in.ma.multiplicity;
  ordered_json report = make_report("saito-verify", &a);
  const auto thetas = parse_basis(read_file(o.basis), a.dim());
  if (thetas.size() != a.dim())
    throw std::invalid_argument("basis file has " + std::to_string(thetas.size()) +
                                " derivations, expected " + std::to_string(a.dim()));
  const SaitoReport s = saito_check(a, m, thetas);
  ordered_json membership = ordered_json::array();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    ordered_json comps = ordered_json::array();
    for (const auto& c : thetas[i].components) comps.push_back(c.to_string());
    membership.push_back({{"components", comps}, {"member_at", s.membership[i]}});
  }
  report["result"] = saito_json(s, a, m);
  report["result"]["derivations"] = membership;
  report["result"]["status"] = s.verified() ? "verified"
                               : !s.all_members() ? "rejected: not all derivations are members"
                               : s.determinant.is_zero() ? "rejected: zero determinant"
                                                         : "rejected: determinant is not c * product";
  emit(report, o.json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total freeness of central hyperplane arrangements"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* c) {
    c->add_option("-i,--input,input", o.input, "Arrangement file")->required();
    c->add_option("--mult", o.mult, "Comma-separated multiplicities overriding the file");
    c->add_flag("--json", o.json, "Emit the JSON report");
  };

  auto* analyze = app.add_subcommand("analyze", "Factors, rank-2 flats and verdict");
  add_input(analyze);
  auto* tf = app.add_subcommand("totally-free", "Decide total freeness");
  add_input(tf);
  tf->add_flag("--strict", o.strict, "Exit 3 when not totally free");
  auto* ex = app.add_subcommand("exponents", "Exponents and rank-2 bases of a totally free arrangement");
  add_input(ex);
  ex->add_flag("--strict", o.strict, "Exit 3 when not totally free");
  auto* lmp = app.add_subcommand("lmp2", "Second local mixed product and the LMP2 > GMP2max test");
  add_input(lmp);
  auto* gmp = app.add_subcommand("gmp2max", "Largest GMP2 for a rank and total multiplicity");
  gmp->add_option("-i,--input,input", o.input, "Arrangement file (rank and |m| taken from it)");
  gmp->add_option("--mult", o.mult, "Comma-separated multiplicities overriding the file");
  gmp->add_option("--rank", o.rank, "Rank");
  gmp->add_option("--total", o.total, "Total multiplicity");
  gmp->add_flag("--json", o.json, "Emit the JSON report");
  auto* wit = app.add_subcommand("witness", "Generic circuit, threshold k0 and non-free multiplicity");
  add_input(wit);
  auto* gen = app.add_subcommand("generate", "Print a named arrangement family");
  gen->add_option("family", o.family, "boolean L | braid L | generic N L [SEED] | product (F) (F) ...")
      ->required();
  gen->add_option("--seed", o.seed, "Seed for random families");
  auto* sv = app.add_subcommand("saito-verify", "Check a candidate basis with Saito's criterion");
  add_input(sv);
  sv->add_option("--basis", o.basis, "Basis file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*tf) return cmd_totally_free(o);
    if (*ex) return cmd_exponents(o);
    if (*lmp) return cmd_lmp2(o);
    if (*gmp) return cmd_gmp2max(o);
    if (*wit) return cmd_witness(o);
    if (*gen) return cmd_generate(o);
    if (*sv) return cmd_saito_verify(o);
  } catch (const InternalInvariant& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
