#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "sqcert/comblemma.hpp"
#include "sqcert/exactlp.hpp"
#include "sqcert/rational.hpp"

namespace sqcert::report_io {

using Json = nlohmann::ordered_json;

// Rationals travel as {"num": "...", "den": "..."} so reports round-trip
// exactly; no decimal forms anywhere.
Json rational_json(const Rational& q);
std::optional<Rational> rational_from_json(const Json& j);

Json lp_problem_json(const exactlp::LpProblem& p);
// error message instead of a problem when the JSON is malformed
std::optional<exactlp::LpProblem> lp_problem_from_json(const Json& j, std::string* error);
Json lp_solution_json(const exactlp::LpSolution& s);

struct Manifest {
  std::string subcommand;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string started;
  std::string finished;
  double wall_seconds = 0.0;
};

Json manifest_json(const Manifest& m);
std::string iso_timestamp();

Json base_case_report_json(const comblemma::BaseCaseReport& r);
Json adversary_report_json(const comblemma::AdversaryReport& r, bool include_cases);
Json property_report_json(const comblemma::PropertyReport& r);

std::uint64_t certificate_digest(const exactlp::LpCertificate& cert);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sqcert::report_io
