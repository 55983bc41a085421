// SPDX-License-Identifier: Apache-2.0

#include "json_io.hpp"

#include <stdexcept>

namespace pcc::cli {

namespace {

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const CorrMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (m.mode() == Mode::real) {
        row.push_back(m.real(i, j));
      } else {
        row.push_back(complex_json(m(i, j)));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const PsdReport& r) {
  Json j;
  j["eigenvalues"] = r.eigenvalues;
  j["min_eig"] = r.min_eig;
  j["is_psd"] = r.is_psd;
  j["tolerance"] = r.tolerance;
  return j;
}

Json to_json(const EnumerationSummary& s, std::size_t max_witnesses) {
  Json j;
  j["command"] = "enumerate";
  j["mode"] = to_string(s.mode);
  j["p"] = s.p;
  j["n"] = s.n;
  j["symmetry_reduced"] = s.symmetry_reduced;
  j["tolerance"] = s.tolerance;
  j["total_configs"] = s.total_configs;
  j["violations"] = s.violations;
  j["violation_fraction"] = static_cast<double>(s.violations) / static_cast<double>(s.total_configs);
  j["min_min_eig"] = s.min_min_eig;
  j["max_witnesses"] = max_witnesses;
  Json witnesses = Json::array();
  for (const auto& w : s.witnesses) {
    Json wj;
    wj["index"] = w.index;
    wj["channels"] = w.channels;
    wj["matrix"] = to_json(w.matrix);
    wj["eigenvalues"] = w.eigenvalues;
    witnesses.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

Json to_json(const McReport& r) {
  const bool real = r.mode == Mode::real;
  auto value = [&](std::complex<double> z) -> Json { return real ? Json(z.real()) : complex_json(z); };
  Json j;
  j["command"] = "validate";
  j["mode"] = to_string(r.mode);
  j["distribution"] = r.student_t_dof ? "student-t" : "gaussian";
  if (r.student_t_dof) j["dof"] = *r.student_t_dof;
  j["target"] = value(r.target);
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["empirical_sign_moment"] = value(r.empirical_sign_moment);
  j["predicted_sign_moment"] = value(r.predicted_sign_moment);
  j["recovered"] = value(r.recovered);
  j["moment_stddev"] = r.moment_stddev;
  j["abs_error"] = r.abs_error;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

CorrMatrix matrix_from_json(const nlohmann::json& j) {
  const nlohmann::json* rows = &j;
  std::optional<Mode> mode;
  if (j.is_object()) {
    if (!j.contains("matrix")) throw std::invalid_argument("JSON object has no \"matrix\" field");
    rows = &j.at("matrix");
    if (j.contains("mode")) {
      const auto m = j.at("mode").get<std::string>();
      if (m == "real") {
        mode = Mode::real;
      } else if (m == "complex") {
        mode = Mode::complex;
      } else {
        throw std::invalid_argument("unknown mode \"" + m + "\"");
      }
    }
  }
  if (!rows->is_array() || rows->empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const std::size_t p = rows->size();
  const bool complex_entries = rows->at(0).is_array() && !rows->at(0).empty() && rows->at(0).at(0).is_array();
  if (!mode) mode = complex_entries ? Mode::complex : Mode::real;

  std::vector<std::complex<double>> entries;
  entries.reserve(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto& row = rows->at(i);
    if (!row.is_array() || row.size() != p) {
      throw std::invalid_argument("matrix row " + std::to_string(i) + " must have " + std::to_string(p) + " entries");
    }
    for (const auto& e : row) {
      if (e.is_number()) {
        entries.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        entries.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return CorrMatrix::from_entries(p, *mode, entries);
}

}  // namespace pcc::cli
