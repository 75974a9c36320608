// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "wrconv/errors.hpp"
#include "wrconv/experiments.hpp"

namespace wrconv {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

std::string join(std::initializer_list<std::string> fields) {
  std::string line;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) line += ',';
    line += f;
    first = false;
  }
  line += '\n';
  return line;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Header-indexed CSV rows.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) throw InvalidParameter("CSV row has " + std::to_string(fields.size()) +
                                                               " fields, header has " + std::to_string(header.size()));
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
    rows.push_back(std::move(row));
  }
  if (header.empty()) throw InvalidParameter("CSV input is empty");
  return rows;
}

const std::string& field(const std::map<std::string, std::string>& row, const std::string& key) {
  auto it = row.find(key);
  if (it == row.end()) throw InvalidParameter("CSV is missing column '" + key + "'");
  return it->second;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidParameter("not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InvalidParameter("not a count: '" + s + "'");
  return v;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

// ---- CSV ---------------------------------------------------------------------

std::string phase_transition_csv(const ExperimentConfig& cfg, const std::vector<PhaseTransitionCell>& cells) {
  std::string out = "n,basis,ensemble,omega,m,S,trials,successes,success_rate,stderr,mean_relative_error,"
                    "mean_certificate_sup,skipped\n";
  const std::string omega = cfg.omega_scheme == SubsampleScheme::EqualInterval ? "equal" : "explicit";
  for (const auto& c : cells) {
    out += join({num(cfg.n), to_string(cfg.basis), to_string(cfg.ensemble), omega, num(c.m), num(c.s), num(c.trials),
                 num(c.successes), num(c.success_rate), num(c.stderr_rate()), num(c.mean_relative_error),
                 c.mean_certificate_sup ? num(*c.mean_certificate_sup) : std::string(), flag(c.skipped)});
  }
  return out;
}

std::string concentration_csv(const ConcentrationTable& t) {
  std::string out = "variant,ensemble,n,m,S,mu,r,empirical,bound,stderr,valid\n";
  for (const auto& r : t.rows) {
    out += join({to_string(t.variant), to_string(t.ensemble), num(t.n), num(t.m), num(t.s), num(t.mu), num(r.r),
                 num(r.empirical), num(r.bound), num(r.stderr_mc), flag(r.valid)});
  }
  return out;
}

std::string certificate_csv(const CertificateStudy& study) {
  std::string out = "trial,S,m,n,sup_offsupport,gram_condition_ok,certified,exact,relative_error,converged,iterations\n";
  for (const auto& t : study.trials) {
    out += join({num(t.trial), num(study.s), num(study.m), num(study.n), num(t.sup_offsupport), flag(t.gram_condition_ok),
                 flag(t.certified), flag(t.exact), num(t.relative_error), flag(t.converged), num(t.iterations)});
  }
  return out;
}

std::string coded_aperture_csv(const CodedApertureStudy& study) {
  std::string out = "run,seed,side,rate,cs_relative_error,cs_psnr,backprojection_relative_error,backprojection_psnr,"
                    "iterations,converged\n";
  for (std::size_t i = 0; i < study.runs.size(); ++i) {
    const auto& r = study.runs[i];
    out += join({num(i), std::to_string(r.seed), num(study.side), num(study.rate), num(r.cs_relative_error),
                 num(r.cs_psnr), num(r.backprojection_relative_error), num(r.backprojection_psnr), num(r.iterations),
                 flag(r.converged)});
  }
  return out;
}

std::string bounds_csv(const BoundsReport& report) {
  std::string out =
      "kind,ensemble,n,S,mu,delta,K,theorem_value,theorem_m,sharp_value,sharp_m,fit_points,fit_residual\n";
  for (const auto& r : report.rows) {
    out += join({"bound", to_string(r.ensemble), num(report.n), num(r.s), num(r.mu), num(report.delta), num(report.k),
                 num(r.bound.theorem_value), num(r.bound.theorem_m),
                 r.bound.sharp_value ? num(*r.bound.sharp_value) : std::string(),
                 r.bound.sharp_m ? num(*r.bound.sharp_m) : std::string(), "", ""});
  }
  if (report.fit) {
    out += join({"fit", "", num(report.n), "", "", num(report.delta), num(report.fit->k), "", "", "", "",
                 num(report.fit->points), num(report.fit->residual)});
  }
  return out;
}

// ---- JSON --------------------------------------------------------------------

nlohmann::json phase_transition_json(const std::vector<PhaseTransitionCell>& cells) {
  auto arr = nlohmann::json::array();
  for (const auto& c : cells) {
    arr.push_back({{"m", c.m},
                   {"S", c.s},
                   {"trials", c.trials},
                   {"successes", c.successes},
                   {"success_rate", c.success_rate},
                   {"stderr", c.stderr_rate()},
                   {"mean_relative_error", c.mean_relative_error},
                   {"mean_certificate_sup", c.mean_certificate_sup ? finite_or_null(*c.mean_certificate_sup) : nullptr},
                   {"skipped", c.skipped}});
  }
  return arr;
}

nlohmann::json concentration_json(const ConcentrationTable& t) {
  nlohmann::json j{{"variant", to_string(t.variant)},
                   {"ensemble", to_string(t.ensemble)},
                   {"n", t.n},
                   {"m", t.m},
                   {"S", t.s},
                   {"mu", t.mu},
                   {"trials", t.trials},
                   {"mean_statistic", t.mean_statistic}};
  auto rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"r", r.r}, {"empirical", r.empirical}, {"bound", r.bound}, {"stderr", r.stderr_mc}, {"valid", r.valid}});
  }
  j["rows"] = rows;
  return j;
}

nlohmann::json certificate_json(const CertificateStudy& study) {
  nlohmann::json j{{"n", study.n},
                   {"m", study.m},
                   {"S", study.s},
                   {"certified", study.certified()},
                   {"soundness_violations", study.soundness_violations()}};
  auto arr = nlohmann::json::array();
  for (const auto& t : study.trials) {
    arr.push_back({{"trial", t.trial},
                   {"sup_offsupport", finite_or_null(t.sup_offsupport)},
                   {"gram_condition_ok", t.gram_condition_ok},
                   {"certified", t.certified},
                   {"exact", t.exact},
                   {"relative_error", t.relative_error},
                   {"converged", t.converged},
                   {"iterations", t.iterations}});
  }
  j["trials"] = arr;
  return j;
}

nlohmann::json coded_aperture_json(const CodedApertureStudy& study) {
  nlohmann::json j{{"side", study.side}, {"rate", study.rate}};
  auto arr = nlohmann::json::array();
  for (const auto& r : study.runs) {
    arr.push_back({{"seed", r.seed},
                   {"cs_relative_error", r.cs_relative_error},
                   {"cs_psnr", finite_or_null(r.cs_psnr)},
                   {"backprojection_relative_error", r.backprojection_relative_error},
                   {"backprojection_psnr", finite_or_null(r.backprojection_psnr)},
                   {"iterations", r.iterations},
                   {"converged", r.converged}});
  }
  j["runs"] = arr;
  return j;
}

nlohmann::json bounds_json(const BoundsReport& report) {
  nlohmann::json j{{"n", report.n}, {"delta", report.delta}, {"K", report.k}};
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row{{"ensemble", to_string(r.ensemble)},
                       {"S", r.s},
                       {"mu", r.mu},
                       {"theorem_value", r.bound.theorem_value},
                       {"theorem_m", r.bound.theorem_m}};
    if (r.bound.sharp_value) {
      row["sharp_value"] = *r.bound.sharp_value;
      row["sharp_m"] = *r.bound.sharp_m;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  if (report.fit) j["fit"] = {{"K", report.fit->k}, {"residual", report.fit->residual}, {"points", report.fit->points}};
  return j;
}

std::string json_document(const ExperimentConfig& cfg, const nlohmann::json& results) {
  nlohmann::json doc{{"config", cfg.to_json()}, {"results", results}};
  return doc.dump(2) + "\n";
}

// ---- parsing -----------------------------------------------------------------

std::vector<PhaseTransitionCell> parse_phase_transition_csv(const std::string& text) {
  std::vector<PhaseTransitionCell> cells;
  for (const auto& row : parse_csv(text)) {
    PhaseTransitionCell c;
    c.m = to_size(field(row, "m"));
    c.s = to_size(field(row, "S"));
    c.trials = to_size(field(row, "trials"));
    c.successes = to_size(field(row, "successes"));
    c.success_rate = to_double(field(row, "success_rate"));
    c.mean_relative_error = to_double(field(row, "mean_relative_error"));
    if (auto it = row.find("mean_certificate_sup"); it != row.end() && !it->second.empty()) {
      c.mean_certificate_sup = to_double(it->second);
    }
    c.skipped = field(row, "skipped") == "1";
    cells.push_back(c);
  }
  return cells;
}

std::vector<ConcentrationRow> parse_concentration_csv(const std::string& text) {
  std::vector<ConcentrationRow> rows;
  for (const auto& row : parse_csv(text)) {
    ConcentrationRow r;
    r.r = to_double(field(row, "r"));
    r.empirical = to_double(field(row, "empirical"));
    r.bound = to_double(field(row, "bound"));
    r.stderr_mc = to_double(field(row, "stderr"));
    r.valid = field(row, "valid") == "1";
    rows.push_back(r);
  }
  return rows;
}

// ---- files -------------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidParameter("write to '" + path + "' failed");
}

std::vector<std::size_t> read_index_file(const std::string& path) {
  std::string text = read_text_file(path);
  for (auto& ch : text) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(text);
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    out.push_back(to_size(tok));
  }
  return out;
}

}  // namespace wrconv
