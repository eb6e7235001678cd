#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sinqpe/verify.hpp"

namespace {

using nlohmann::json;
using namespace sinqpe;

constexpr std::uint64_t kDefaultSeed = 12345;
constexpr double kBackendGapTolerance = 1e-10;

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SINQPE_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return parsed;
    std::cerr << "warning: ignoring malformed SINQPE_SEED value\n";
  }
  return kDefaultSeed;
}

// Sends table output to a file when requested, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Either one literal phase or "grid:P" for P evenly spaced phases in [0, 2pi).
std::vector<double> parse_phases(const std::string& text) {
  if (text.rfind("grid:", 0) == 0) {
    int points = 0;
    try {
      points = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed --phase grid specification: " + text);
    }
    if (points < 2 || points > 4096) {
      throw std::invalid_argument("--phase grid size must be in [2, 4096]");
    }
    std::vector<double> phases(static_cast<std::size_t>(points));
    for (int t = 0; t < points; ++t) {
      phases[static_cast<std::size_t>(t)] = kTwoPi * static_cast<double>(t) / points;
    }
    return phases;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed --phase value: " + text);
  }
  if (used != text.size()) throw std::invalid_argument("malformed --phase value: " + text);
  return {wrap_two_pi(value)};
}

StateKind parse_state_kind(const std::string& name) {
  if (name == "optimal") return StateKind::optimal;
  if (name == "uniform") return StateKind::uniform;
  throw std::invalid_argument("--state must be 'optimal' or 'uniform'");
}

int cmd_prepare(int m, const std::string& format, const std::string& output) {
  const auto params = SineStateParams::for_qubits(m);
  const StateVector prepared = prepare_full(params);
  const std::vector<double> target = amplitudes(params);

  std::vector<Complex> target_cplx(target.begin(), target.end());
  const double fidelity = fidelity_up_to_global_phase(
      prepared, StateVector::from_amplitudes(std::move(target_cplx)));
  double max_abs_error = 0.0;
  for (std::size_t n = 0; n < prepared.dim(); ++n) {
    max_abs_error = std::max(max_abs_error,
                             std::abs(prepared[n] - Complex{target[n], 0.0}));
  }

  OutputTarget out(output);
  if (format == "json") {
    json rows = json::array();
    for (std::size_t n = 0; n < prepared.dim(); ++n) {
      rows.push_back({{"n", n},
                      {"target", target[n]},
                      {"re", prepared[n].real()},
                      {"im", prepared[n].imag()}});
    }
    out.stream() << json{{"m", m},
                         {"fidelity", fidelity},
                         {"max_abs_error", max_abs_error},
                         {"rows", rows}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "n,target,prepared_re,prepared_im,abs_error\n";
    for (std::size_t n = 0; n < prepared.dim(); ++n) {
      out.stream() << n << ',' << fmt17(target[n]) << ',' << fmt17(prepared[n].real())
                   << ',' << fmt17(prepared[n].imag()) << ','
                   << fmt17(std::abs(prepared[n] - Complex{target[n], 0.0})) << "\n";
    }
    out.stream() << "# fidelity=" << fmt17(fidelity)
                 << " max_abs_error=" << fmt17(max_abs_error) << "\n";
  }
  return fidelity >= 1.0 - 1e-10 ? 0 : 1;
}

int cmd_verify(int max_m, const std::string& format, double tamper_mu,
               const std::string& output) {
  VerifyOptions options;
  options.max_qubits = max_m;
  options.tamper_mu = tamper_mu;
  const std::vector<CheckResult> results = run_invariant_suite(options);
  const bool ok = all_passed(results);

  OutputTarget out(output);
  if (format == "text") {
    for (const auto& r : results) {
      out.stream() << (r.passed ? "PASS " : "FAIL ") << r.name << "  worst "
                   << fmt17(r.worst) << " vs tolerance " << fmt17(r.tolerance) << "  ("
                   << r.detail << ")\n";
    }
    out.stream() << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  } else {
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name},
                        {"passed", r.passed},
                        {"worst", r.worst},
                        {"tolerance", r.tolerance},
                        {"detail", r.detail}});
    }
    out.stream() << json{{"max_qubits", max_m}, {"all_passed", ok}, {"checks", checks}}
                        .dump(2)
                 << "\n";
  }
  if (!ok) {
    std::cerr << "verify: failed checks:";
    for (const auto& r : results) {
      if (!r.passed) std::cerr << ' ' << r.name;
    }
    std::cerr << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_distribution(int m, const std::string& phase_text, const std::string& state,
                     bool covariant, double offset, const std::string& format,
                     const std::string& output) {
  const auto params = SineStateParams::for_qubits(m);
  const StateKind kind = parse_state_kind(state);
  const std::vector<double> phases = parse_phases(phase_text);
  const double cell = kTwoPi / static_cast<double>(params.dim());
  const double used_offset = covariant ? offset : 0.0;
  if (used_offset < 0.0 || used_offset >= cell) {
    throw std::invalid_argument("--offset must lie in [0, 2*pi/2^m)");
  }

  double max_gap = 0.0;
  int max_live = 0;
  json phase_blocks = json::array();
  OutputTarget out(output);
  const bool as_json = format == "json";
  if (!as_json) {
    out.stream() << "phase,k,estimate,p_streaming,p_canonical,p_qft\n";
  }
  for (const double phi : phases) {
    ProtocolConfig config;
    config.params = params;
    config.true_phase = phi;
    config.state_kind = kind;
    config.covariant = covariant;
    config.offset = used_offset;
    const OutcomeDistribution streamed = enumerate_branches(config);
    const OutcomeDistribution canonical =
        canonical_distribution(params, phi, used_offset, kind);
    const OutcomeDistribution dense = inverse_qft_reference(params, phi, used_offset, kind);
    max_live = std::max(max_live, streamed.max_live_qubits);

    json rows = json::array();
    for (std::size_t k = 0; k < params.dim(); ++k) {
      max_gap = std::max({max_gap,
                          std::abs(streamed.probabilities[k] - canonical.probabilities[k]),
                          std::abs(streamed.probabilities[k] - dense.probabilities[k])});
      if (as_json) {
        rows.push_back({{"k", k},
                        {"estimate", streamed.grid[k]},
                        {"p_streaming", streamed.probabilities[k]},
                        {"p_canonical", canonical.probabilities[k]},
                        {"p_qft", dense.probabilities[k]}});
      } else {
        out.stream() << fmt17(phi) << ',' << k << ',' << fmt17(streamed.grid[k]) << ','
                     << fmt17(streamed.probabilities[k]) << ','
                     << fmt17(canonical.probabilities[k]) << ','
                     << fmt17(dense.probabilities[k]) << "\n";
      }
    }
    if (as_json) phase_blocks.push_back({{"phase", phi}, {"rows", rows}});
  }
  if (as_json) {
    out.stream() << json{{"m", m},
                         {"state", state},
                         {"covariant", covariant},
                         {"offset", used_offset},
                         {"max_backend_gap", max_gap},
                         {"max_live_qubits", max_live},
                         {"phases", phase_blocks}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "# max_backend_gap=" << fmt17(max_gap)
                 << " max_live_qubits=" << max_live << "\n";
  }
  return max_gap <= kBackendGapTolerance ? 0 : 1;
}

int cmd_simulate(int m, const std::string& phase_text, std::int64_t trials,
                 const std::string& state, bool covariant, std::uint64_t seed,
                 int threads, const std::string& records_path,
                 const std::string& output) {
  const auto params = SineStateParams::for_qubits(m);
  const StateKind kind = parse_state_kind(state);
  const std::vector<double> phases = parse_phases(phase_text);

  std::ofstream records_file;
  if (!records_path.empty()) {
    records_file.open(records_path);
    if (!records_file) {
      throw std::invalid_argument("cannot open records file: " + records_path);
    }
    records_file << "phase,trial,outcome,estimate,error,bits\n";
  }

  json results = json::array();
  for (const double phi : phases) {
    ProtocolConfig config;
    config.params = params;
    config.true_phase = phi;
    config.state_kind = kind;
    config.covariant = covariant;
    config.seed = seed;
    const std::vector<MeasurementRecord> records = run_trials(config, trials, threads);
    const ErrorStats stats = stats_from_samples(records);
    int max_live = 0;
    for (const auto& record : records) {
      max_live = std::max(max_live, record.max_live_qubits);
    }
    if (records_file.is_open()) {
      for (std::size_t t = 0; t < records.size(); ++t) {
        std::string bits;
        for (const int b : records[t].bits) bits.push_back(b ? '1' : '0');
        records_file << fmt17(phi) << ',' << t << ',' << records[t].outcome << ','
                     << fmt17(records[t].estimate) << ',' << fmt17(records[t].error)
                     << ',' << bits << "\n";
      }
    }
    results.push_back({{"phase", phi},
                       {"sharpness",
                        {{"re", stats.sharpness.real()},
                         {"im", stats.sharpness.imag()},
                         {"abs", std::abs(stats.sharpness)}}},
                       {"holevo", stats.holevo},
                       {"holevo_unbiased", stats.holevo_unbiased},
                       {"cost_luis", stats.cost_luis},
                       {"sample_count", stats.sample_count},
                       {"min_holevo_variance", min_holevo_variance(params.max_index)},
                       {"max_live_qubits", max_live}});
  }

  OutputTarget out(output);
  out.stream() << json{{"m", m},
                       {"state", state},
                       {"covariant", covariant},
                       {"trials", trials},
                       {"seed", seed},
                       {"threads", threads},
                       {"results", results}}
                      .dump(2)
               << "\n";
  return 0;
}

int cmd_sweep(std::int64_t max_index, int points, const std::string& format,
              const std::string& output) {
  const DensityCurve optimal = density_curve(max_index, points, StateKind::optimal);
  const DensityCurve uniform = density_curve(max_index, points, StateKind::uniform);
  const double integral_optimal = trapezoid(optimal.thetas, optimal.densities);
  const double integral_uniform = trapezoid(uniform.thetas, uniform.densities);

  OutputTarget out(output);
  if (format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < optimal.thetas.size(); ++i) {
      rows.push_back({{"theta", optimal.thetas[i]},
                      {"pdf_optimal", optimal.densities[i]},
                      {"pdf_uniform", uniform.densities[i]}});
    }
    out.stream() << json{{"max_index", max_index},
                         {"points", points},
                         {"integral_optimal", integral_optimal},
                         {"integral_uniform", integral_uniform},
                         {"rows", rows}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "theta,pdf_optimal,pdf_uniform\n";
    for (std::size_t i = 0; i < optimal.thetas.size(); ++i) {
      out.stream() << fmt17(optimal.thetas[i]) << ',' << fmt17(optimal.densities[i])
                   << ',' << fmt17(uniform.densities[i]) << "\n";
    }
    out.stream() << "# integral_optimal=" << fmt17(integral_optimal)
                 << " integral_uniform=" << fmt17(integral_uniform) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-control-qubit optimal phase estimation laboratory"};
  app.set_version_flag("--version", "sinqpe 1.0.0");
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  std::string records_path;
  std::string state = "optimal";
  std::string phase_text = "0";
  bool covariant = false;
  double offset = 0.0;
  int m = 2;
  int max_m = 8;
  double tamper_mu = 0.0;
  std::int64_t trials = 10000;
  std::int64_t max_index = 10;
  int points = 2001;
  int threads = 1;
  std::uint64_t seed = default_seed();

  CLI::App* prepare = app.add_subcommand(
      "prepare", "Sequentially prepare the window state and compare to the target");
  prepare->add_option("--m", m, "Number of control qubits")
      ->required()
      ->check(CLI::Range(1, 14));
  prepare->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  prepare->add_option("--output", output, "Write the table to a file instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--max-m", max_m, "Largest register the suite exercises")
      ->check(CLI::Range(1, 12));
  verify->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--output", output, "Write the report to a file instead of stdout");
  verify->add_option("--tamper-mu", tamper_mu, "Fault-injection offset (testing hook)")
      ->group("");

  CLI::App* distribution = app.add_subcommand(
      "distribution", "Exact outcome distribution from all three backends");
  distribution->add_option("--m", m, "Number of control qubits")
      ->required()
      ->check(CLI::Range(1, 12));
  distribution->add_option("--phase", phase_text, "True phase in radians, or grid:P");
  distribution->add_option("--state", state, "Control-register state")
      ->check(CLI::IsMember({"optimal", "uniform"}));
  distribution->add_flag("--covariant", covariant, "Offset the measurement grid");
  CLI::Option* dist_offset =
      distribution->add_option("--offset", offset, "Grid offset in [0, 2*pi/2^m)");
  dist_offset->needs("--covariant");
  distribution->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  distribution->add_option("--output", output, "Write the table to a file instead of stdout");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo phase estimation with streaming preparation");
  simulate->add_option("--m", m, "Number of control qubits")
      ->required()
      ->check(CLI::Range(1, 14));
  simulate->add_option("--phase", phase_text, "True phase in radians, or grid:P");
  simulate->add_option("--trials", trials, "Number of independent runs")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  simulate->add_option("--state", state, "Control-register state")
      ->check(CLI::IsMember({"optimal", "uniform"}));
  simulate->add_flag("--covariant", covariant,
                     "Draw a fresh uniform grid offset for every trial");
  simulate->add_option("--seed", seed, "Master seed (default: SINQPE_SEED or 12345)");
  simulate->add_option("--threads", threads, "Worker threads (results identical)")
      ->check(CLI::Range(1, 64));
  simulate->add_option("--records", records_path, "Write one CSV row per trial to a file");
  simulate->add_option("--output", output, "Write the JSON report to a file instead of stdout");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Error-density curves for the window and uniform states");
  sweep->add_option("--n,--N", max_index, "Largest excitation index N")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
  sweep->add_option("--points", points, "Grid points over [-pi, pi]")
      ->check(CLI::Range(3, 2000001));
  sweep->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--output", output, "Write the table to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (prepare->parsed()) return cmd_prepare(m, format, output);
    if (verify->parsed()) {
      if (format == "csv") format = "json";  // verify's default report is JSON
      return cmd_verify(max_m, format, tamper_mu, output);
    }
    if (distribution->parsed()) {
      return cmd_distribution(m, phase_text, state, covariant, offset, format, output);
    }
    if (simulate->parsed()) {
      return cmd_simulate(m, phase_text, trials, state, covariant, seed, threads,
                          records_path, output);
    }
    if (sweep->parsed()) return cmd_sweep(max_index, points, format, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
