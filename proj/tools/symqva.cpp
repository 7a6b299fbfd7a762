// symqva: compute family polynomials, vertex operators and braidings, and run
// the verification suites. Exit codes: 0 success, 1 check failure or
// computation error, 2 usage or configuration error.

#include <CLI11.hpp>

#include <iostream>

#include "symqva/qva_checks.hpp"

using namespace symqva;
using nlohmann::json;

namespace {

struct Options {
  std::string preset;
  std::optional<int> order;
  std::optional<int> weight_cap;
  int zmin = -4;
  int zmax = 3;
  std::string output = "json";
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  std::vector<int> partition;
  std::string basis = "p";
  std::vector<std::string> pair;
  std::string suite;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

VFamily family(const Options& o) {
  if (o.preset.empty()) throw UsageError("--preset is required for this command");
  return VFamily::by_name(o.preset);
}

Partition partition_arg(const Options& o) {
  for (int p : o.partition)
    if (p <= 0) throw UsageError("partition parts must be positive");
  const Partition lam = Partition::from_multiset(o.partition);
  if (lam.weight() > RunConfig::max_weight)
    throw UsageError("partition weight " + std::to_string(lam.weight()) + " exceeds " + std::to_string(RunConfig::max_weight));
  return lam;
}

int order_arg(const Options& o, int fallback) {
  const int n = o.order.value_or(fallback);
  if (n < 0 || n > RunConfig::max_order) throw UsageError("--order must lie in [0, " + std::to_string(RunConfig::max_order) + "]");
  return n;
}

std::string monomial_text(const MonomialCoeffs& f) {
  if (f.empty()) return "0";
  std::string s;
  for (const auto& [lam, c] : f) s += (s.empty() ? "" : " + ") + ("[" + c.to_string() + "]m" + lam.to_string());
  return s;
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.output == "json") std::cout << j.dump() << '\n';
  else std::cout << text << '\n';
}

int cmd_poly(const Options& o) {
  const VFamily v = family(o);
  const Partition lam = partition_arg(o);
  const auto fam = cached_family(v, lam.weight());
  const SymFunc& P = fam->P.at(lam);
  const SymFunc& Q = fam->Q.at(lam);
  json j{{"family", v.name()}, {"weight", lam.weight()}, {"partition", json_io::to_json(lam)}, {"basis", o.basis}};
  std::string text;
  if (o.basis == "m") {
    j["P"] = json_io::to_json(to_monomial_basis(P));
    j["Q"] = json_io::to_json(to_monomial_basis(Q));
    text = "P = " + monomial_text(to_monomial_basis(P)) + "\nQ = " + monomial_text(to_monomial_basis(Q));
  } else {
    j["P"] = json_io::to_json(P);
    j["Q"] = json_io::to_json(Q);
    text = "P = " + P.to_string() + "\nQ = " + Q.to_string();
  }
  emit(o, j, text);
  return 0;
}

int cmd_vertex(const Options& o) {
  const VFamily v = family(o);
  const Partition lam = partition_arg(o);
  const SymFunc f = FockOperators(v).phi_product(lam);
  emit(o, {{"family", v.name()}, {"partition", json_io::to_json(lam)}, {"phi_product", json_io::to_json(f)}}, f.to_string());
  return 0;
}

int cmd_braiding(const Options& o) {
  const VFamily v = family(o);
  if (o.pair.size() != 2) throw UsageError("--pair expects two monomials, e.g. --pair h,h");
  const VMono a = VMono::parse(o.pair[0]), b = VMono::parse(o.pair[1]);
  const int order = order_arg(o, 4);
  const Bicharacter bc(v, order);
  const RTensor r = Braiding(bc).apply(a, b);
  std::string text;
  for (const auto& [key, k] : r)
    text += (text.empty() ? "" : "\n") + key.first.to_string() + " (x) " + key.second.to_string() + " : " + k.to_string();
  emit(o, {{"family", v.name()}, {"order", order}, {"left", a.to_string()}, {"right", b.to_string()}, {"R", json_io::to_json(r)}},
       text.empty() ? "0" : text);
  return 0;
}

int cmd_sigma(const Options& o) {
  const VFamily v = family(o);
  const int order = order_arg(o, 4);
  const KElement s = Bicharacter(v, order).sigma();
  emit(o, {{"family", v.name()}, {"order", order}, {"sigma", json_io::to_json(s)}}, s.to_string());
  return 0;
}

int cmd_verify(const Options& o) {
  RunConfig cfg;
  if (!o.preset.empty()) cfg.presets = {VFamily::by_name(o.preset).name()};
  cfg.order = o.order;
  cfg.weight_cap = o.weight_cap;
  cfg.zmin = o.zmin;
  cfg.zmax = o.zmax;
  cfg.seed = o.seed;
  cfg.jobs = std::max(1u, o.jobs);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto reports = run_suite(o.suite, cfg);
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    if (o.output == "json") {
      std::cout << r.to_json_line() << '\n';
    } else {
      std::cout << to_string(r.status) << ' ' << r.check_name << ' ' << r.preset << ' ' << r.parameters.dump();
      if (!r.witness.empty()) std::cout << " : " << r.witness;
      std::cout << '\n';
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with deformed vertex operators and braided vertex algebras"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file mirroring the flags; flags on the command line win");
  Options o;
  app.add_option("--preset", o.preset, "schur, hall_littlewood (hl) or macdonald (mac)");
  app.add_option("--order", o.order, "truncation order in the parameters (total degree in q, t)");
  app.add_option("--weight-cap", o.weight_cap, "largest weight of test states");
  app.add_option("--zmin", o.zmin, "lowest relative z-mode in field windows")->capture_default_str();
  app.add_option("--zmax", o.zmax, "highest relative z-mode in field windows")->capture_default_str();
  app.add_option("--output", o.output, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads for verify")->capture_default_str();

  auto* poly = app.add_subcommand("poly", "P_lambda and Q_lambda of a family");
  poly->add_option("--partition", o.partition, "parts separated by commas")->delimiter(',')->required();
  poly->add_option("--basis", o.basis, "p or m")->check(CLI::IsMember({"p", "m"}))->capture_default_str();
  auto* vertex = app.add_subcommand("vertex", "Phi_{l_1} ... Phi_{l_k} applied to 1");
  vertex->add_option("--partition", o.partition, "parts separated by commas")->delimiter(',')->required();
  auto* braiding = app.add_subcommand("braiding", "R(z, w) on a pair of monomials of V");
  braiding->add_option("--pair", o.pair, "two monomials such as h,e or h2*e^-1,h")->delimiter(',')->required();
  auto* sigma = app.add_subcommand("sigma", "the series sigma(z, w)");
  auto* verify = app.add_subcommand("verify", "run a verification suite, one JSON line per check");
  verify->add_option("suite", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  for (auto* sub : {poly, vertex, braiding, sigma, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (poly->parsed()) return cmd_poly(o);
    if (vertex->parsed()) return cmd_vertex(o);
    if (braiding->parsed()) return cmd_braiding(o);
    if (sigma->parsed()) return cmd_sigma(o);
    return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const DomainError& e) {
    // bad preset names and monomials are input errors
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
