// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "csv.hpp"
#include "json_io.hpp"
#include "pcc/enumeration.hpp"
#include "pcc/estimator.hpp"
#include "pcc/psd.hpp"
#include "pcc/sampling.hpp"
#include "pcc/signs.hpp"

namespace pcc::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::size_t kMaxCounterexampleDim = 24;

struct EstimateArgs {
  std::string input;
  bool complex = false;
  bool center = false;
  bool baseline = false;
  bool fail_on_npsd = false;
  double tolerance = kDefaultPsdTolerance;
  std::string format = "json";
  std::string output;
  int workers = 0;
};

struct CheckPsdArgs {
  std::string input;
  bool complex = false;
  bool fail_on_npsd = false;
  double tolerance = kDefaultPsdTolerance;
};

struct EnumerateArgs {
  std::size_t p = 0;
  std::size_t n = 0;
  bool complex = false;
  bool no_reduce = false;
  double tolerance = kDefaultPsdTolerance;
  std::uint64_t budget = kDefaultConfigBudget;
  std::size_t max_witnesses = kDefaultMaxWitnesses;
  int workers = 0;
};

struct CounterexampleArgs {
  std::size_t p = 0;
  bool complex = false;
};

struct ValidateArgs {
  bool complex = false;
  double r = 0.0;
  double r_im = 0.0;
  std::size_t n = 1000000;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<unsigned> student_t;
  int workers = 0;
};

void print_json(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

NumericTable read_table(const std::string& path) {
  std::istringstream in(read_all(path));
  return read_numeric_csv(in, path == "-" ? "<stdin>" : path);
}

bool all_signs(const NumericTable& t) {
  for (const auto& col : t.columns)
    for (double v : col)
      if (v != 1.0 && v != -1.0) return false;
  return true;
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), mid));
  return m;
}

void center_in_place(std::vector<double>& v) {
  const double m = median(v);
  for (auto& x : v) x -= m;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print_matrix_csv(const CorrMatrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out << ',';
      if (m.mode() == Mode::real) {
        out << format_number(m.real(i, j));
      } else {
        out << format_number(m(i, j).real()) << ',' << format_number(m(i, j).imag());
      }
    }
    out << '\n';
  }
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  auto table = read_table(a.input);
  const std::size_t cols = table.columns.size();
  if (a.complex && cols % 2 != 0) {
    throw InputError(a.input + ": complex mode needs an even number of columns (re, im per channel), found " +
                     std::to_string(cols));
  }
  const bool signs_only = all_signs(table);
  const bool centered = a.center && !signs_only;
  if (centered)
    for (auto& col : table.columns) center_in_place(col);

  Json j;
  j["command"] = "estimate";
  j["mode"] = a.complex ? "complex" : "real";

  std::optional<CorrMatrix> matrix;
  std::optional<CorrMatrix> baseline;
  if (!a.complex) {
    std::vector<SignSequence> seqs;
    for (const auto& col : table.columns) seqs.push_back(SignSequence::from_samples(col));
    matrix = pcc_matrix_real(seqs, a.workers);
    if (a.baseline) baseline = sample_corr_matrix(std::span<const std::vector<double>>(table.columns));
  } else {
    std::vector<std::vector<std::complex<double>>> channels(cols / 2);
    std::vector<ComplexSignSequence> seqs;
    for (std::size_t c = 0; c < cols / 2; ++c) {
      auto& ch = channels[c];
      ch.resize(table.rows);
      for (std::size_t i = 0; i < table.rows; ++i) ch[i] = {table.columns[2 * c][i], table.columns[2 * c + 1][i]};
      seqs.push_back(ComplexSignSequence::from_samples(ch));
    }
    matrix = pcc_matrix_complex(seqs, a.workers);
    if (a.baseline) baseline = sample_corr_matrix(std::span<const std::vector<std::complex<double>>>(channels));
  }
  const auto report = check_psd(*matrix, a.tolerance);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::binary);
    if (!file) throw InputError("cannot write '" + a.output + "'");
    sink = &file;
  }

  if (a.format == "csv") {
    print_matrix_csv(*matrix, *sink);
  } else {
    j["channels"] = matrix->dim();
    j["samples"] = table.rows;
    j["input"] = signs_only ? "signs" : "samples";
    j["centered"] = centered;
    j["matrix"] = to_json(*matrix);
    j["psd"] = to_json(report);
    if (baseline) {
      Json b;
      b["matrix"] = to_json(*baseline);
      b["psd"] = to_json(check_psd(*baseline, a.tolerance));
      j["baseline"] = std::move(b);
    }
    print_json(j, *sink);
  }
  return (a.fail_on_npsd && !report.is_psd) ? kExitNotPsd : kExitOk;
}

CorrMatrix matrix_from_csv(const NumericTable& t, bool complex) {
  const std::size_t p = t.rows;
  const std::size_t expected = complex ? 2 * p : p;
  if (t.columns.size() != expected) {
    throw InputError("matrix CSV with " + std::to_string(p) + " rows needs " + std::to_string(expected) +
                     " columns, found " + std::to_string(t.columns.size()));
  }
  std::vector<std::complex<double>> entries(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      entries[i * p + j] = complex ? std::complex<double>(t.columns[2 * j][i], t.columns[2 * j + 1][i])
                                   : std::complex<double>(t.columns[j][i], 0.0);
    }
  }
  return CorrMatrix::from_entries(p, complex ? Mode::complex : Mode::real, entries);
}

int cmd_check_psd(const CheckPsdArgs& a, std::ostream& out) {
  const auto text = read_all(a.input);
  const auto first = text.find_first_not_of(" \t\r\n");
  std::optional<CorrMatrix> m;
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(a.input + ": " + e.what());
    }
    m = matrix_from_json(parsed);
  } else {
    std::istringstream in(text);
    m = matrix_from_csv(read_numeric_csv(in, a.input), a.complex);
  }
  const auto report = check_psd(*m, a.tolerance);
  Json j;
  j["command"] = "check-psd";
  j["mode"] = to_string(m->mode());
  j["p"] = m->dim();
  j["psd"] = to_json(report);
  print_json(j, out);
  return (a.fail_on_npsd && !report.is_psd) ? kExitNotPsd : kExitOk;
}

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
  EnumerationOptions opts;
  opts.tolerance = a.tolerance;
  opts.symmetry_reduce = !a.no_reduce;
  opts.budget = a.budget;
  opts.max_witnesses = a.max_witnesses;
  opts.workers = a.workers;
  const auto summary = a.complex ? enumerate_complex(a.p, a.n, opts) : enumerate_real(a.p, a.n, opts);
  print_json(to_json(summary, a.max_witnesses), out);
  return kExitOk;
}

int cmd_counterexample(const CounterexampleArgs& a, std::ostream& out, std::ostream& err) {
  const std::size_t base = a.complex ? 3 : 4;
  if (a.p < base) {
    err << "error: " << (a.complex ? "complex PCC matrices with p <= 2" : "real PCC matrices with p <= 3")
        << " are always positive semidefinite, so no counterexample exists; use p >= " << base << '\n';
    return kExitError;
  }
  if (a.p > kMaxCounterexampleDim) {
    err << "error: counterexample dimension is limited to p <= " << kMaxCounterexampleDim << '\n';
    return kExitError;
  }

  Json j;
  j["command"] = "counterexample";
  j["mode"] = a.complex ? "complex" : "real";
  j["p"] = a.p;
  std::vector<std::string> channels;
  std::optional<CorrMatrix> matrix;
  std::size_t n = 0;
  if (!a.complex) {
    auto seqs = table1_real().seqs;
    while (seqs.size() < a.p) seqs = augment_real(seqs);
    for (const auto& s : seqs) channels.push_back(s.to_string());
    n = seqs.front().size();
    matrix = pcc_matrix_real(seqs);
  } else {
    auto seqs = table1_complex().seqs;
    while (seqs.size() < a.p) seqs = augment_complex(seqs);
    for (const auto& s : seqs) channels.push_back(s.to_string());
    n = seqs.front().size();
    matrix = pcc_matrix_complex(seqs);
  }
  const auto report = check_psd(*matrix);
  if (report.is_psd) {
    err << "error: constructed configuration is unexpectedly PSD\n";
    return kExitError;
  }
  j["n"] = n;
  j["augmentations"] = a.p - base;
  j["channels"] = channels;
  j["matrix"] = to_json(*matrix);
  j["psd"] = to_json(report);
  print_json(j, out);
  return kExitOk;
}

std::uint64_t seed_from_env() {
  const char* env = std::getenv("PCC_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InputError("PCC_SEED must be an unsigned integer, got '" + std::string(s) + "'");
  }
  return v;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = a.seed ? *a.seed : seed_from_env();
  McOptions opts;
  opts.tolerance = a.tolerance;
  opts.student_t_dof = a.student_t;
  opts.workers = a.workers;
  if (!a.complex && a.r_im != 0.0) throw InputError("--r-im requires --complex");
  const auto report = a.complex ? mc_arcsine_complex({a.r, a.r_im}, a.n, seed, opts)
                                : mc_arcsine_real(a.r, a.n, seed, opts);
  print_json(to_json(report), out);
  if (!report.pass) {
    err << "validation failed: abs_error " << report.abs_error << " >= tolerance " << report.tolerance << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarity coincidence correlation toolkit"};
  app.name("pcc");
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "PCC correlation matrix of a CSV signal file");
  estimate->add_option("input", est.input, "CSV file (rows = samples, columns = channels); '-' for stdin")
      ->required();
  estimate->add_flag("--complex", est.complex, "Column pairs (re, im) form one complex channel");
  estimate->add_flag("--center", est.center, "Subtract each column's median before taking signs");
  estimate->add_flag("--baseline", est.baseline, "Also emit the sample correlation matrix");
  estimate->add_flag("--fail-on-npsd", est.fail_on_npsd, "Exit with code 2 when the estimate is not PSD");
  estimate->add_option("--tolerance", est.tolerance, "PSD tolerance on the minimum eigenvalue")
      ->check(CLI::NonNegativeNumber);
  estimate->add_option("--format", est.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  estimate->add_option("-o,--output", est.output, "Write to a file instead of standard output");
  estimate->add_option("--workers", est.workers, "Worker threads (0 = runtime default)");

  CheckPsdArgs chk;
  auto* check = app.add_subcommand("check-psd", "Eigenvalues and PSD verdict of a correlation matrix");
  check->add_option("input", chk.input, "JSON (estimate output or {\"matrix\": ...}) or CSV matrix")->required();
  check->add_flag("--complex", chk.complex, "CSV matrix rows hold (re, im) pairs");
  check->add_flag("--fail-on-npsd", chk.fail_on_npsd, "Exit with code 2 when not PSD");
  check->add_option("--tolerance", chk.tolerance, "PSD tolerance")->check(CLI::NonNegativeNumber);

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Check every sign configuration at (p, N)");
  enumerate->add_option("--p", en.p, "Number of channels")->required()->check(CLI::Range(2, 64));
  enumerate->add_option("--n", en.n, "Samples per channel")->required()->check(CLI::PositiveNumber);
  enumerate->add_flag("--complex", en.complex, "Quadrant signs per sample");
  enumerate->add_flag("--no-reduce", en.no_reduce, "Disable the channel-0 symmetry reduction (real mode)");
  enumerate->add_option("--tolerance", en.tolerance, "Violation threshold on the minimum eigenvalue")
      ->check(CLI::NonNegativeNumber);
  enumerate->add_option("--budget", en.budget, "Maximum number of configurations");
  enumerate->add_option("--max-witnesses", en.max_witnesses, "Violations to store (0 = all)");
  enumerate->add_option("--workers", en.workers, "Worker threads (0 = runtime default)");

  CounterexampleArgs ce;
  auto* counterexample = app.add_subcommand("counterexample", "Emit a non-PSD PCC configuration of dimension p");
  counterexample->add_option("--p", ce.p, "Dimension (real >= 4, complex >= 3)")->required();
  counterexample->add_flag("--complex", ce.complex, "Complex-valued counterexample");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Monte Carlo check of the arcsine law");
  validate->add_flag("--complex", va.complex, "Circular complex Gaussian pairs");
  validate->add_option("--r", va.r, "Target correlation (real part in complex mode)")->required();
  validate->add_option("--r-im", va.r_im, "Imaginary part of the target (complex mode)");
  validate->add_option("--n", va.n, "Number of samples")->check(CLI::PositiveNumber);
  validate->add_option("--seed", va.seed, "Generator seed (default: $PCC_SEED or 1)");
  validate->add_option("--tol", va.tolerance, "Pass threshold on the moment error (default 5 sigma)");
  validate->add_option("--student-t", va.student_t, "Use Student-t pairs with this many degrees of freedom")
      ->check(CLI::PositiveNumber);
  validate->add_option("--workers", va.workers, "Worker threads (0 = runtime default)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*estimate) return cmd_estimate(est, out);
    if (*check) return cmd_check_psd(chk, out);
    if (*enumerate) return cmd_enumerate(en, out);
    if (*counterexample) return cmd_counterexample(ce, out, err);
    if (*validate) return cmd_validate(va, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pcc::cli
