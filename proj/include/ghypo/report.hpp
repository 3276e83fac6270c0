#ifndef GHYPO_REPORT_HPP
#define GHYPO_REPORT_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "ghypo/coefficients.hpp"
#include "ghypo/diophantine.hpp"
#include "ghypo/hypo.hpp"
#include "ghypo/spec_io.hpp"
#include "ghypo/subelliptic.hpp"

namespace ghypo {

inline constexpr const char* kToolVersion = "0.1.0";

/// Finite doubles as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
Json number(double x);

Json to_json(const FrequencyIndex& f);
Json to_json(const GrowthFit& fit);
Json to_json(const Certificate& cert);
Json to_json(const Verdict& v);
Json to_json(const RegularityReport& r);
Json to_json(const Counterexample& c);
Json to_json(const SubellipticReport& r);
Json to_json(const ProbeSummary& p);
Json to_json(const ContinuedFraction& cf);
Json to_json(const PellSolution& s);
Json to_json(const TorusMinGain& g);
Json to_json(const CoefficientClass& c);

/// CSV rows: ordinal,label,lambda,dim,gain,opnorm.
void write_gain_csv(std::ostream& os, std::span<const GainSample> samples);

/// Options shared by every command. Unset fields fall back to the spec file's "options" block.
struct CommandArgs {
  std::string command;
  std::optional<std::string> spec_path;
  std::optional<std::string> cutoff;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> probes;
  /// Side CSV (gain samples or coefficients).
  std::optional<std::string> csv_path;
  std::optional<int> k;
  std::optional<double> s;
  std::optional<double> m;
  // diophantine / pell / torus-gain
  std::optional<std::string> c;
  std::optional<std::string> imag;
  int cf_terms = 20;
  std::string d = "8";
  int count = 4;
  int radius = 13;
  int exp = -1;
};

/// Runs one command and returns its JSON report. Errors propagate as ghypo::Error.
Json run_command(const CommandArgs& args);

}  // namespace ghypo

#endif  // GHYPO_REPORT_HPP
