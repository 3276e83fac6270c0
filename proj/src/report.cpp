#include "ghypo/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

namespace ghypo {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(const FrequencyIndex& f) {
  Json j;
  j["ordinal"] = f.ordinal;
  j["label"] = to_string(f.label);
  if (const auto* t = std::get_if<Torus2Label>(&f.label)) {
    j["xi"] = t->xi;
    j["eta"] = t->eta;
  } else {
    j["twice_ell"] = std::get<Su2Label>(f.label).twice_ell;
  }
  j["lambda"] = f.lambda;
  j["dim"] = f.dim;
  return j;
}

namespace {

Json freq_list(std::span<const FrequencyIndex> freqs) {
  Json a = Json::array();
  for (const auto& f : freqs) a.push_back(to_json(f));
  return a;
}

Json complex_vector(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

std::string big(const Integer& x) { return x.str(); }

}  // namespace

Json to_json(const GrowthFit& fit) {
  return {{"L", number(fit.L)},
          {"m", number(fit.m)},
          {"R", fit.R},
          {"residual", number(fit.residual)},
          {"samples_used", fit.samples_used}};
}

Json to_json(const Certificate& cert) {
  return {{"family", to_string(cert.family)}, {"description", cert.description}, {"witnesses", freq_list(cert.witnesses)}};
}

Json to_json(const Verdict& v) {
  Json j;
  if (const auto* c = std::get_if<Certificate>(&v.kind)) {
    j["kind"] = "CertifiedNotGH";
    const Json body = to_json(*c);
    for (const auto& [k, val] : body.items()) j[k] = val;
  } else if (const auto* e = std::get_if<EmpiricalGH>(&v.kind)) {
    j["kind"] = "EmpiricalGH";
    j["h_hat"] = number(e->h_hat);
    j["fit"] = to_json(e->fit);
    j["singular"] = freq_list(v.singular);
  } else {
    const auto& in = std::get<Inconclusive>(v.kind);
    j["kind"] = "Inconclusive";
    j["reason"] = in.reason;
    j["singular"] = freq_list(in.singular);
  }
  return j;
}

Json to_json(const RegularityReport& r) {
  Json j;
  if (const auto* s = std::get_if<SmoothEvidence>(&r.kind)) {
    j["kind"] = "SmoothEvidence";
    j["n_probe"] = s->n_probe;
  } else if (const auto* d = std::get_if<DistributionOrder>(&r.kind)) {
    j["kind"] = "DistributionOrder";
    j["N"] = d->N;
  } else {
    j["kind"] = "Indeterminate";
    j["reason"] = std::get<Indeterminate>(r.kind).reason;
  }
  j["decay_slope"] = number(r.decay_slope);
  j["window"] = r.window;
  return j;
}

Json to_json(const Counterexample& c) {
  Json certs = Json::array();
  for (const auto& cert : c.certificates)
    certs.push_back({{"k", cert.k},
                     {"frequency", to_json(cert.freq)},
                     {"residual", cert.residual},
                     {"bound", cert.bound},
                     {"exact_zero", cert.exact_zero},
                     {"strict", cert.exact_zero || cert.residual < cert.bound}});
  Json coeffs = Json::array();
  for (const auto& [ordinal, entry] : c.f.support())
    coeffs.push_back({{"ordinal", ordinal}, {"label", to_string(entry.freq.label)}, {"value", complex_vector(entry.value)}});
  return {{"frequencies", freq_list(c.frequencies)}, {"certificates", certs}, {"coefficients", coeffs}};
}

Json to_json(const SubellipticReport& r) {
  Json kernel = Json::array();
  for (const auto& kb : r.kernel.per_frequency) kernel.push_back({{"frequency", to_json(kb.freq)}, {"nullity", kb.dim()}});
  return {{"s", r.s},
          {"m", r.m},
          {"C_star", number(r.C_star)},
          {"K1", number(r.K1)},
          {"K_star", number(r.K_star)},
          {"witness", {{"frequency", to_json(r.witness_freq)}, {"vector", complex_vector(r.witness_vector)}}},
          {"kernel", {{"total_dim", r.kernel.total_dim}, {"reaches_boundary", r.kernel.reaches_boundary}, {"blocks", kernel}}},
          {"window", r.window}};
}

Json to_json(const ProbeSummary& p) {
  return {{"probes", p.probes},
          {"seed", p.seed},
          {"alpha_failures", p.alpha_failures},
          {"beta_failures", p.beta_failures},
          {"vacuous", p.vacuous},
          {"min_alpha_ratio", number(p.min_alpha_ratio)},
          {"max_beta_ratio", number(p.max_beta_ratio)}};
}

Json to_json(const ContinuedFraction& cf) {
  Json q = Json::array();
  for (const auto& a : cf.partial_quotients) q.push_back(big(a));
  Json conv = Json::array();
  for (const auto& c : cf.convergents) conv.push_back(Json::array({big(c.p), big(c.q)}));
  Json j{{"partial_quotients", q}, {"convergents", conv}, {"terminated", cf.terminated},
         {"limited_by_precision", cf.limited_by_precision}};
  if (cf.period_start) {
    j["period_start"] = *cf.period_start;
    j["period_length"] = *cf.period_length;
  }
  return j;
}

Json to_json(const PellSolution& s) { return {{"u", big(s.u)}, {"m", big(s.m)}, {"D", big(s.D)}}; }

Json to_json(const TorusMinGain& g) {
  return {{"lo", to_string(g.lo)},
          {"hi", to_string(g.hi)},
          {"approx", g.approx},
          {"exact_zero", g.exact_zero},
          {"argmin", {{"xi", g.argmin.xi}, {"eta", g.argmin.eta}}}};
}

Json to_json(const CoefficientClass& c) {
  if (std::holds_alternative<ImNonzero>(c)) return {{"kind", "ImNonzero"}};
  if (const auto* r = std::get_if<RationalCoefficient>(&c)) return {{"kind", "Rational"}, {"p", big(r->p)}, {"q", big(r->q)}};
  const auto& e = std::get<IrrationalEvidence>(c);
  Json w = Json::array();
  for (const auto& x : e.witnesses) w.push_back({{"p", big(x.p)}, {"q", big(x.q)}, {"N_achieved", x.n_achieved}});
  return {{"kind", "IrrationalEvidence"}, {"mu_hat", number(e.mu_hat)}, {"convergents_used", e.convergents_used}, {"witnesses", w}};
}

void write_gain_csv(std::ostream& os, std::span<const GainSample> samples) {
  os << "ordinal,label,lambda,dim,gain,opnorm\n" << std::setprecision(17);
  for (const auto& s : samples)
    os << s.freq.ordinal << ",\"" << to_string(s.freq.label) << "\"," << s.freq.lambda << ',' << s.freq.dim << ','
       << s.gain << ',' << s.opnorm << '\n';
}

namespace {

struct Context {
  ParsedSpec spec;
  Window window;
  double tol;
  std::uint64_t seed;
};

template <typename T>
std::optional<T> option(const ParsedSpec& spec, const char* key) {
  if (!spec.options.contains(key)) return std::nullopt;
  return spec.options[key].get<T>();
}

Context load(const CommandArgs& args) {
  if (!args.spec_path) throw Error(ErrorCode::Precondition, "cli_report", args.command + " needs --spec");
  ParsedSpec spec = parse_spec_file(*args.spec_path);
  std::optional<Window> window;
  if (args.cutoff) {
    window = parse_window(*args.cutoff);
  } else if (spec.options.contains("cutoff")) {
    const Json& c = spec.options["cutoff"];
    window = c.is_string() ? parse_window(c.get<std::string>()) : Window::lambda(c.get<double>());
  }
  if (!window) throw Error(ErrorCode::Precondition, "cli_report", args.command + " needs --cutoff");
  const double tol = args.tol.value_or(option<double>(spec, "tol").value_or(kSingularTol));
  const std::uint64_t seed = args.seed.value_or(option<std::uint64_t>(spec, "seed").value_or(0));
  return {std::move(spec), *window, tol, seed};
}

Json header(const CommandArgs& args, const Context& ctx) {
  return {{"tool_version", kToolVersion},
          {"command", args.command},
          {"seed", ctx.seed},
          {"spec_echo", to_json(ctx.spec)},
          {"window", ctx.window.describe()},
          {"tol", ctx.tol}};
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Precondition, "cli_report", "cannot write " + path);
  return out;
}

Json run_analyze(const CommandArgs& args) {
  const Context ctx = load(args);
  const MatrixSymbol symbol = make_symbol(ctx.spec.op, ctx.spec.model);
  const auto samples = gain_samples(symbol, ctx.spec.model, ctx.window);
  Json report = header(args, ctx);
  report["verdict"] = to_json(verdict(ctx.spec.op, samples, ctx.spec.model.nu, ctx.tol));
  try {
    const OrderEstimate order = estimate_order(samples, ctx.spec.model.nu, ctx.window.complete_lambda());
    report["order_hat"] = number(order.order_hat);
    report["C_hat"] = number(order.C_hat);
  } catch (const Error& e) {
    report["order_hat"] = nullptr;
    report["order_error"] = e.what();
  }
  report["samples"] = samples.size();
  if (args.csv_path) {
    auto out = open_csv(*args.csv_path);
    write_gain_csv(out, samples);
    report["samples_csv_path"] = *args.csv_path;
  } else {
    report["samples_csv_path"] = nullptr;
  }
  return report;
}

Json run_singular_scan(const CommandArgs& args) {
  const Context ctx = load(args);
  const auto singular = singular_scan(make_symbol(ctx.spec.op, ctx.spec.model), ctx.spec.model, ctx.window, ctx.tol);
  Json report = header(args, ctx);
  report["count"] = singular.size();
  report["singular"] = freq_list(singular);
  return report;
}

Json run_fit(const CommandArgs& args) {
  const Context ctx = load(args);
  const auto samples = gain_samples(make_symbol(ctx.spec.op, ctx.spec.model), ctx.spec.model, ctx.window);
  Json report = header(args, ctx);
  report["fit"] = to_json(fit_growth(samples, ctx.spec.model.nu, ctx.tol));
  report["singular"] = freq_list(singular_scan(samples, ctx.tol));
  return report;
}

Json run_counterexample(const CommandArgs& args) {
  const Context ctx = load(args);
  const int K = args.k.value_or(option<int>(ctx.spec, "k").value_or(5));
  const MatrixSymbol symbol = make_symbol(ctx.spec.op, ctx.spec.model);
  const Counterexample ce = build_counterexample(symbol, ctx.spec.model, K, ctx.window);
  Json report = header(args, ctx);
  report["K"] = K;
  report["counterexample"] = to_json(ce);
  report["f_regularity"] = to_json(classify_regularity(ce.f, ctx.spec.model, ctx.window));
  report["Pf_regularity"] = to_json(classify_regularity(apply_symbol(symbol, ce.f, ctx.window), ctx.spec.model, ctx.window));
  if (args.csv_path) {
    auto out = open_csv(*args.csv_path);
    write_coefficients_csv(out, ce.f);
    report["coefficients_csv_path"] = *args.csv_path;
  }
  return report;
}

Json run_subelliptic(const CommandArgs& args) {
  const Context ctx = load(args);
  const double s = args.s.value_or(option<double>(ctx.spec, "s").value_or(0.0));
  const double m = args.m.value_or(option<double>(ctx.spec, "m").value_or(0.0));
  const int probes = args.probes.value_or(option<int>(ctx.spec, "probes").value_or(100));
  const MatrixSymbol symbol = make_symbol(ctx.spec.op, ctx.spec.model);
  const SubellipticReport rep = best_alpha_constant(symbol, ctx.spec.model, s, m, ctx.window, ctx.tol);
  const InequalityCheck at_witness =
      check_alpha(symbol, ctx.spec.model, witness_field(rep, ctx.spec.model.kind), s, m, rep.C_star, ctx.window, ctx.tol);
  Json report = header(args, ctx);
  report["subelliptic"] = to_json(rep);
  report["witness_ratio"] = number(at_witness.ratio);
  report["probes"] = to_json(run_probes(symbol, ctx.spec.model, rep, ctx.window, probes, ctx.seed));
  return report;
}

RealSpec real_arg(const std::optional<std::string>& text, const char* flag) {
  if (!text) throw Error(ErrorCode::Precondition, "cli_report", std::string("missing ") + flag);
  return RealSpec::parse(*text);
}

Json run_diophantine(const CommandArgs& args) {
  const RealSpec re = real_arg(args.c, "--c");
  const RealSpec im = args.imag ? RealSpec::parse(*args.imag) : RealSpec::rational(0);
  Json report{{"tool_version", kToolVersion}, {"command", args.command}, {"c", re.to_string()}, {"imag", im.to_string()}};
  const CoefficientClass cls = classify_coefficient({re, im});
  report["classification"] = to_json(cls);
  report["continued_fraction"] = to_json(continued_fraction(re, static_cast<std::size_t>(args.cf_terms)));
  return report;
}

Json run_pell(const CommandArgs& args) {
  const Integer D(args.d);
  Json sols = Json::array();
  for (const auto& s : pell_solutions(D, static_cast<std::size_t>(args.count))) sols.push_back(to_json(s));
  Json report{{"tool_version", kToolVersion}, {"command", args.command}, {"D", args.d}, {"solutions", sols}};
  if (D == 8) {
    Json levels = Json::array();
    for (const auto& l : pell_levels(static_cast<std::size_t>(args.count))) levels.push_back(big(l));
    report["levels"] = levels;
  }
  return report;
}

Json run_torus_gain(const CommandArgs& args) {
  const RealSpec c = real_arg(args.c, "--c");
  return {{"tool_version", kToolVersion},
          {"command", args.command},
          {"c", c.to_string()},
          {"radius", args.radius},
          {"N", args.exp},
          {"min_gain", to_json(torus_min_gain(c, args.radius, args.exp))}};
}

}  // namespace

Json run_command(const CommandArgs& args) {
  if (args.command == "analyze") return run_analyze(args);
  if (args.command == "singular-scan") return run_singular_scan(args);
  if (args.command == "fit-exponent") return run_fit(args);
  if (args.command == "counterexample") return run_counterexample(args);
  if (args.command == "subelliptic") return run_subelliptic(args);
  if (args.command == "diophantine") return run_diophantine(args);
  if (args.command == "pell") return run_pell(args);
  if (args.command == "torus-gain") return run_torus_gain(args);
  throw Error(ErrorCode::Precondition, "cli_report", "unknown command " + args.command);
}

}  // namespace ghypo
