#include "sqcert/calibration.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sqcert {

std::string calibration_path() {
  if (const char* env = std::getenv("SQCERT_CALIBRATION"); env && *env) return env;
  return std::string(SQCERT_SOURCE_DIR) + "/data/calibration.json";
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("calibration: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Calibration load() {
  const auto text = read_file(calibration_path());
  const auto j = nlohmann::json::parse(text);
  Calibration c;
  c.version = j.at("version").get<std::string>();
  c.gauss_bound_c = j.at("gauss_bound_c").get<double>();
  c.nu_hat_statistic_bound = j.at("nu_hat_statistic_bound").get<double>();
  c.qr_equidistribution_bound = j.at("qr_equidistribution_bound").get<double>();
  c.restriction_ratio_k = j.at("restriction_ratio_k").get<double>();
  for (const auto& p : j.at("majorant_deviation_bounds")) {
    MajorantDeviationPoint pt;
    pt.W = p.at("W").get<std::uint64_t>();
    pt.b = p.at("b").get<std::uint64_t>();
    pt.N = p.at("N").get<std::uint64_t>();
    pt.max_relative_deviation = p.at("max_relative_deviation").get<double>();
    c.majorant_points.push_back(pt);
  }
  return c;
}

}  // namespace

const Calibration& calibration() {
  static const Calibration c = load();
  return c;
}

std::string calibration_digest() {
  std::string bytes;
  try {
    bytes = read_file(calibration_path());
  } catch (const std::exception&) {
    return "missing";
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sqcert
