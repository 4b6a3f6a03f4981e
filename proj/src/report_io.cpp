#include "sqcert/report_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "sqcert/calibration.hpp"

namespace sqcert::report_io {

Json rational_json(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

std::optional<Rational> rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) return std::nullopt;
  if (!j["num"].is_string() || !j["den"].is_string()) return std::nullopt;
  const auto text = j["num"].get<std::string>() + "/" + j["den"].get<std::string>();
  return parse_rational(text);
}

Json lp_problem_json(const exactlp::LpProblem& p) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    Json vals = Json::array();
    for (const auto& v : p.rows[i].val) vals.push_back(rational_json(v));
    rows.push_back(Json{{"idx", p.rows[i].idx}, {"val", vals}, {"rhs", rational_json(p.rhs[i])}});
  }
  Json bounds = Json::array();
  for (const auto& b : p.bounds) {
    Json jb;
    jb["lo"] = b.lo ? rational_json(*b.lo) : Json(nullptr);
    jb["hi"] = b.hi ? rational_json(*b.hi) : Json(nullptr);
    bounds.push_back(jb);
  }
  Json objective = Json::array();
  for (const auto& c : p.objective) objective.push_back(rational_json(c));
  return Json{{"label", p.label},
              {"num_vars", p.num_vars},
              {"objective", objective},
              {"rows", rows},
              {"bounds", bounds}};
}

std::optional<exactlp::LpProblem> lp_problem_from_json(const Json& j, std::string* error) {
  auto fail = [&](const std::string& why) {
    if (error) *error = why;
    return std::nullopt;
  };
  try {
    exactlp::LpProblem p;
    p.label = j.value("label", std::string{});
    p.num_vars = j.at("num_vars").get<std::int32_t>();
    for (const auto& c : j.at("objective")) {
      const auto q = rational_from_json(c);
      if (!q) return fail("malformed rational in objective");
      p.objective.push_back(*q);
    }
    for (const auto& row : j.at("rows")) {
      exactlp::SparseRow r;
      r.idx = row.at("idx").get<std::vector<std::int32_t>>();
      for (const auto& v : row.at("val")) {
        const auto q = rational_from_json(v);
        if (!q) return fail("malformed rational in row");
        r.val.push_back(*q);
      }
      const auto rhs = rational_from_json(row.at("rhs"));
      if (!rhs) return fail("malformed rational in rhs");
      p.rows.push_back(std::move(r));
      p.rhs.push_back(*rhs);
    }
    for (const auto& b : j.at("bounds")) {
      exactlp::Bound bound;
      if (!b.at("lo").is_null()) {
        const auto q = rational_from_json(b.at("lo"));
        if (!q) return fail("malformed rational in lower bound");
        bound.lo = *q;
      }
      if (!b.at("hi").is_null()) {
        const auto q = rational_from_json(b.at("hi"));
        if (!q) return fail("malformed rational in upper bound");
        bound.hi = *q;
      }
      p.bounds.push_back(bound);
    }
    p.validate();
    return p;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

Json lp_solution_json(const exactlp::LpSolution& s) {
  Json out;
  out["status"] = exactlp::to_string(s.status);
  out["pivots"] = s.pivots;
  out["max_coeff_bits"] = s.max_coeff_bits;
  if (s.status != exactlp::LpStatus::Optimal) return out;
  out["value"] = rational_json(s.value);
  Json primal = Json::array();
  for (const auto& x : s.primal) primal.push_back(rational_json(x));
  out["primal"] = primal;
  Json duals = Json::array();
  for (const auto& [row, y] : s.certificate.row_duals)
    duals.push_back(Json{{"row", row}, {"y", rational_json(y)}});
  Json reduced = Json::array();
  for (const auto& d : s.certificate.reduced_costs) reduced.push_back(rational_json(d));
  out["certificate"] = Json{{"value", rational_json(s.certificate.value)},
                            {"row_duals", duals},
                            {"reduced_costs", reduced},
                            {"digest", exactlp::certificate_digest(s.certificate)}};
  return out;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json manifest_json(const Manifest& m) {
  return Json{{"tool", "sqcert"},
              {"version", SQCERT_VERSION},
              {"subcommand", m.subcommand},
              {"args", m.args},
              {"seed", m.seed},
              {"threads", m.threads},
              {"calibration_digest", sqcert::calibration_digest()},
              {"timing", Json{{"started", m.started},
                              {"finished", m.finished},
                              {"wall_seconds", m.wall_seconds}}}};
}

std::uint64_t certificate_digest(const exactlp::LpCertificate& cert) {
  return exactlp::certificate_digest(cert);
}

Json base_case_report_json(const comblemma::BaseCaseReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    char digest[24];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(c.certificate_digest));
    cases.push_back(Json{{"t", c.t},
                         {"optimum", rational_json(c.optimum)},
                         {"bounded", c.bounded},
                         {"certificate_ok", c.certificate_ok},
                         {"certificate_digest", digest},
                         {"rows", c.rows},
                         {"pivots", c.pivots},
                         {"separation_rounds", c.separation_rounds},
                         {"max_coeff_bits", c.max_coeff_bits},
                         {"wall_seconds", c.wall_seconds}});
  }
  return Json{{"s", r.s},
              {"n", r.n},
              {"d", rational_json(r.d)},
              {"case_count", r.cases.size()},
              {"all_bounded", r.all_bounded},
              {"all_certified", r.all_certified},
              {"max_optimum", rational_json(r.max_optimum)},
              {"cases", cases}};
}

Json adversary_report_json(const comblemma::AdversaryReport& r, bool include_cases) {
  Json out{{"s", r.s},
           {"m", r.m},
           {"d", rational_json(r.d)},
           {"D", rational_json(r.D)},
           {"case_count", r.cases.size()},
           {"all_within", r.all_within},
           {"all_certified", r.all_certified},
           {"max_optimum", rational_json(r.max_optimum)}};
  if (include_cases) {
    Json cases = Json::array();
    for (const auto& c : r.cases) {
      cases.push_back(Json{{"y", c.y},
                           {"support", c.support},
                           {"optimum", rational_json(c.optimum)},
                           {"within", c.within},
                           {"constraints", c.constraints},
                           {"binding_rows", c.binding_rows},
                           {"binding_counts", c.binding_counts}});
    }
    out["cases"] = cases;
  }
  return out;
}

Json property_report_json(const comblemma::PropertyReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"trial", f.trial}, {"y", f.y}, {"detail", f.detail}});
  return Json{{"name", r.name}, {"trials", r.trials}, {"ok", r.ok()}, {"failures", failures}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace sqcert::report_io
