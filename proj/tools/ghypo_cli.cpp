#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ghypo/report.hpp"

namespace {

void emit(const ghypo::Json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ghypo::Error(ghypo::ErrorCode::Precondition, "cli_report", "cannot write " + out_path);
  out << text;
}

void emit_error(int code, const std::string& module, const std::string& message,
                const std::vector<std::string>& violations = {}) {
  ghypo::Json err{{"code", code}, {"module", module}, {"message", message}};
  if (!violations.empty()) err["violations"] = violations;
  std::cerr << ghypo::Json{{"error", err}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global hypoellipticity analysis of invariant operators on the 2-torus and SU(2)"};
  app.require_subcommand(1);

  ghypo::CommandArgs args;
  std::string out_path;
  std::string spec, cutoff, csv, c, imag;
  double tol = 0, s = 0, m = 0;
  std::uint64_t seed = 0;
  int probes = 0, k = 0;

  auto global = [&](CLI::App* sub) {
    sub->add_option("--spec", spec, "Operator spec file (JSON)");
    sub->add_option("--cutoff", cutoff, "Window: X (lambda <= X), ell:X, or l1:R");
    sub->add_option("--tol", tol, "Relative singularity threshold");
    sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    sub->add_option("--seed", seed, "RNG seed for random probes");
    sub->add_option("--probes", probes, "Number of random probes");
    sub->add_option("--csv", csv, "Side CSV (gain samples or coefficients)");
  };

  auto* analyze = app.add_subcommand("analyze", "Verdict, growth fit and order estimate");
  auto* scan = app.add_subcommand("singular-scan", "Frequencies where the symbol is singular");
  auto* fit = app.add_subcommand("fit-exponent", "Lower-bound growth fit (L, m, R)");
  auto* counter = app.add_subcommand("counterexample", "Non-smooth f with smooth Pf");
  auto* sub = app.add_subcommand("subelliptic", "Best constants in the subelliptic estimates");
  auto* dioph = app.add_subcommand("diophantine", "Classify a coefficient and expand it as a continued fraction");
  auto* pell = app.add_subcommand("pell", "Solutions of u^2 - D m^2 = 1");
  auto* tgain = app.add_subcommand("torus-gain", "Certified min |xi + c eta| (1 + |xi| + |eta|)^-N");
  for (auto* cmd : {analyze, scan, fit, counter, sub, dioph, pell, tgain}) global(cmd);

  counter->add_option("--k", k, "Number of resonant frequencies K");
  sub->add_option("--s", s, "Sobolev index s");
  sub->add_option("--m", m, "Exponent m");
  dioph->add_option("--c", c, "Real part (p/q, (a+b*sqrt(d))/c, dec:X~tol, range:lo:hi, liouville:K)")->required();
  dioph->add_option("--imag", imag, "Imaginary part (same grammar)");
  dioph->add_option("--cf-terms", args.cf_terms, "Continued fraction terms");
  pell->add_option("--d", args.d, "D, positive nonsquare");
  pell->add_option("--count", args.count, "Number of solutions");
  tgain->add_option("--c", c, "Real coefficient c")->required();
  tgain->add_option("--radius", args.radius, "Search radius in |xi| + |eta|");
  tgain->add_option("--exp", args.exp, "Exponent N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ghypo::ErrorCode::Schema);
  }

  const CLI::App* chosen = app.get_subcommands().front();
  args.command = chosen->get_name();
  auto given = [&](const char* name) { return chosen->count(name) > 0; };
  if (given("--spec")) args.spec_path = spec;
  if (given("--cutoff")) args.cutoff = cutoff;
  if (given("--tol")) args.tol = tol;
  if (given("--seed")) args.seed = seed;
  if (given("--probes")) args.probes = probes;
  if (given("--csv")) args.csv_path = csv;
  if (args.command == "counterexample" && given("--k")) args.k = k;
  if (args.command == "subelliptic") {
    if (given("--s")) args.s = s;
    if (given("--m")) args.m = m;
  }
  if (args.command == "diophantine" || args.command == "torus-gain") args.c = c;
  if (args.command == "diophantine" && given("--imag")) args.imag = imag;

  try {
    emit(ghypo::run_command(args), out_path);
  } catch (const ghypo::SchemaError& e) {
    emit_error(static_cast<int>(e.code()), e.module(), e.what(), e.violations());
    return static_cast<int>(e.code());
  } catch (const ghypo::Error& e) {
    emit_error(static_cast<int>(e.code()), e.module(), e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    emit_error(static_cast<int>(ghypo::ErrorCode::Precondition), "cli_report", e.what());
    return static_cast<int>(ghypo::ErrorCode::Precondition);
  }
  return 0;
}
