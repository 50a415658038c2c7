#include "hatano/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hatano/bands.hpp"
#include "hatano/cli/manifest.hpp"
#include "hatano/cli/plot.hpp"
#include "hatano/cli/sweep.hpp"
#include "hatano/csv.hpp"
#include "hatano/errors.hpp"
#include "hatano/flow.hpp"
#include "hatano/parallel.hpp"
#include "hatano/spectrum.hpp"
#include "hatano/verify.hpp"

namespace hatano::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

template <class T>
T parse_number(const std::string& s, const char* flag) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(std::string(flag) + ": cannot parse '" + s + "'");
  return v;
}

double parse_real(const std::string& s, const char* flag) {
  try {
    return parse_double(s);
  } catch (const SchemaError&) {
    throw ConfigError(std::string(flag) + ": cannot parse '" + s + "'");
  }
}

std::string n_dir(std::size_t n) { return "n" + std::to_string(n); }

// Ring length for single-sample commands: the sample's own, else the first configured.
PotentialSample command_sample(const ExperimentConfig& c, const Overrides& o) {
  if (!o.sample_path.empty()) return load_sample(o.sample_path);
  return sample_potential(c.spec, c.n.front(), realization_seed(c.seed, 0));
}

// A loaded sample fixes n and the law recorded in the manifest.
ExperimentConfig adopt(ExperimentConfig c, const PotentialSample& s) {
  c.n = {s.n};
  c.spec = s.spec;
  return c;
}

// Growth bound log(3 + 2 sup|v|) >= gamma(E) on K, for runs without a profile.
Precision precision_for(const ExperimentConfig& c, const PotentialSample& s) {
  return resolve_precision(c.precision, s.n, std::log(3.0 + 2.0 * s.spec.bound()));
}

RunRecorder single_sample_run(const std::string& command, const ExperimentConfig& c, const PotentialSample& s) {
  RunRecorder rec(command, adopt(c, s), c.output_dir);
  rec.set_generator(s.generator_id);
  rec.write("sample.json", sample_to_json(s));
  return rec;
}

std::string spectrum_csv(const std::vector<SpectrumResult>& spectra) {
  CsvWriter w({"g", "j", "re", "im", "is_real"});
  for (const SpectrumResult& r : spectra)
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
      w.row(r.g, static_cast<int>(k) + 1, r.eigenvalues[k].real(), r.eigenvalues[k].imag(), bool(r.is_real[k]));
  return w.str();
}

GammaProfile profile_for(const ExperimentConfig& c, std::ostream& log) {
  if (c.spec.degenerate())
    throw DegenerateSpec("law " + c.spec.describe() + " is a point mass; Lyapunov exponent is not positive");
  const Interval k = spectral_interval(c.spec.bound());
  log << "lyapunov profile on [" << format_double(k.lo) << ", " << format_double(k.hi) << "]\n";
  return gamma_profile_for(c, k);
}

double profile_max(const GammaProfile& p) {
  double m = 0.0;
  for (const LyapunovEstimate& e : p.points()) m = std::max(m, e.gamma_hat);
  return m;
}

int exit_code(std::ostream& err) {
  try {
    throw;
  } catch (const CapabilityExceeded& e) {
    err << "capability exceeded: " << e.what() << '\n';
    return 2;
  } catch (const ToleranceUnreachable& e) {
    err << "capability exceeded: " << e.what() << '\n';
    return 2;
  } catch (const StructureViolation& e) {
    err << "structure violation: " << e.what() << '\n';
    return 3;
  } catch (const NoConvergence& e) {
    err << "no convergence: " << e.what() << '\n';
    return 3;
  } catch (const BracketInvalid& e) {
    err << "structure violation: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

ExperimentConfig resolve_config(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (!o.n.empty()) c.n = o.n;
  if (!o.g.empty()) c.g_grid = o.g;
  if (!o.eps.empty()) c.epsilon = parse_real(o.eps, "--eps");
  if (!o.seed.empty()) c.seed = parse_number<std::uint64_t>(o.seed, "--seed");
  if (!o.realizations.empty()) c.realizations = parse_number<std::size_t>(o.realizations, "--realizations");
  if (!o.precision.empty()) c.precision = precision_policy_from_string(o.precision);
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.zero_potential) c.spec = DistributionSpec::constant(0.0);
  c.validate();
  return c;
}

fs::path cmd_sample(const ExperimentConfig& c, const Overrides&, std::ostream& log) {
  RunRecorder rec("sample", c, c.output_dir);
  for (std::size_t n : c.n) {
    const PotentialSample s = sample_potential(c.spec, n, realization_seed(c.seed, 0));
    rec.write(c.n.size() == 1 ? "sample.json" : "sample_" + n_dir(n) + ".json", sample_to_json(s));
    log << "sampled n = " << n << '\n';
  }
  return rec.finish();
}

fs::path cmd_lyapunov(const ExperimentConfig& c, const Overrides&, std::ostream& log) {
  RunRecorder rec("lyapunov", c, c.output_dir);
  rec.write("profile.csv", profile_for(c, log).to_csv());
  const std::uint64_t ld_seed = derive_seed(c.seed, 0x1d);
  json ld = json::object();
  for (std::size_t n : c.n) {
    log << "large deviations at n = " << n << '\n';
    const auto s = large_deviation_stats(c.spec, c.large_deviation.energy, n, c.large_deviation.replicas, ld_seed);
    ld[std::to_string(n)] = json::parse(large_deviation_json(s));
  }
  rec.write("large_deviation.json", ld.dump(2) + "\n");
  return rec.finish();
}

fs::path cmd_bands(const ExperimentConfig& c, const Overrides& o, std::ostream& log) {
  const PotentialSample s = command_sample(c, o);
  RunRecorder rec = single_sample_run("bands", c, s);
  const Precision p = precision_for(c, s);
  log << "band structure, n = " << s.n << " (" << to_string(p) << " precision)\n";
  rec.write("bands.csv", bands_csv(band_structure(s, p)));
  return rec.finish();
}

fs::path cmd_spectrum(const ExperimentConfig& c, const Overrides& o, std::ostream& log) {
  const PotentialSample s = command_sample(c, o);
  RunRecorder rec = single_sample_run("spectrum", c, s);
  const BandStructure bs = band_structure(s, precision_for(c, s));
  std::vector<SpectrumResult> spectra;
  for (double g : c.g_grid) {
    log << "spectrum at g = " << format_double(g) << '\n';
    spectra.push_back(eigvals_g(s, bs, SpectralParams::make(g, s.n)));
  }
  rec.write("spectrum.csv", spectrum_csv(spectra));
  return rec.finish();
}

fs::path cmd_flow(const ExperimentConfig& c, const Overrides& o, std::ostream& log) {
  const PotentialSample s = command_sample(c, o);
  RunRecorder rec = single_sample_run("flow", c, s);
  const BandStructure bs = band_structure(s, precision_for(c, s));
  std::vector<double> grid{0.0};
  for (double g : c.g_grid)
    if (g > 0.0) grid.push_back(g);
  log << "flow over " << grid.size() << " values of g\n";
  const SpectrumFlow f = flow(s, bs, grid);
  rec.write("flow.csv", f.to_csv());
  rec.write("flow.json", f.summary_json());
  return rec.finish();
}

fs::path cmd_verify(const ExperimentConfig& c, const Overrides& o, std::ostream& log) {
  if (!o.sample_path.empty()) {
    const PotentialSample s = load_sample(o.sample_path);
    const ExperimentConfig cs = adopt(c, s);
    RunRecorder rec = single_sample_run("verify", c, s);
    const GammaProfile gamma = profile_for(cs, log);
    const BandStructure bs = band_structure(s, resolve_precision(c.precision, s.n, profile_max(gamma)));
    const std::vector<CheckRecord> records = verify_sample(cs, s, bs, gamma, "sample");
    rec.write("profile.csv", gamma.to_csv());
    rec.write("records.csv", records_csv(records));
    rec.write("summary.json", summary_json(summarize(records)));
    return rec.finish();
  }

  RunRecorder rec("verify", c, c.output_dir);
  const GammaProfile gamma = profile_for(c, log);
  rec.write("profile.csv", gamma.to_csv());
  for (std::size_t n : c.n) {
    const Precision p = resolve_precision(c.precision, n, profile_max(gamma));
    log << "verifying " << c.realizations << " realizations at n = " << n << '\n';
    std::vector<std::vector<CheckRecord>> parts(c.realizations);
    parallel_for(c.realizations, [&](std::size_t r) {
      const PotentialSample s = sample_potential(c.spec, n, realization_seed(c.seed, r));
      parts[r] = verify_sample(c, s, band_structure(s, p), gamma, std::to_string(r));
    });
    std::vector<CheckRecord> records;
    for (auto& part : parts) records.insert(records.end(), part.begin(), part.end());
    const std::string prefix = c.n.size() == 1 ? "" : n_dir(n) + "/";
    rec.write(prefix + "records.csv", records_csv(records));
    rec.write(prefix + "summary.json", summary_json(summarize(records)));
  }
  return rec.finish();
}

fs::path cmd_sweep(const ExperimentConfig& c, const Overrides&, std::ostream& log) {
  RunRecorder rec("sweep", c, c.output_dir);
  for (std::size_t n : c.n) {
    const SweepResult r = run_sweep(c, n, [&](const std::string& m) { log << m << '\n'; });
    const std::string sub = c.n.size() == 1 ? "" : n_dir(n);
    for (const std::string& f : write_sweep(r, c, rec.dir() / sub)) rec.add(sub.empty() ? f : sub + "/" + f);
    log << "n = " << n << ": reality " << format_double(r.metrics.reality_frequency) << ", joint bounds "
        << format_double(r.metrics.joint_bound_frequency) << '\n';
  }
  return rec.finish();
}

fs::path cmd_plot(const ExperimentConfig& c, const Overrides& o, std::ostream& log) {
  const fs::path in = o.input_dir.empty() ? fs::path(c.output_dir) : fs::path(o.input_dir);
  const fs::path out = o.out.empty() ? in / "plots" : fs::path(o.out);
  if (!fs::is_directory(in)) throw IoError("input directory '" + in.string() + "' does not exist");
  ExperimentConfig cp = c;
  cp.output_dir = out.string();
  RunRecorder rec("plot", cp, out);
  auto table = [&](const char* name) { return parse_csv(read_text(in / name)); };
  auto has = [&](const char* name) { return fs::exists(in / name); };

  std::size_t figures = 0;
  auto emit = [&](const std::string& name, const std::string& svg) {
    rec.write(name, svg);
    log << "wrote " << (out / name).string() << '\n';
    ++figures;
  };
  if (has("spectrum.csv")) emit("spectrum.svg", spectrum_svg(table("spectrum.csv"), "Spectrum of H_n(g)"));
  if (has("flow.csv")) emit("flow.svg", spectrum_svg(table("flow.csv"), "Spectral flow"));
  if (has("flows.csv")) {
    // First realization only; the ensemble overlay is unreadable.
    const CsvTable all = table("flows.csv");
    CsvTable first{all.header, {}};
    const std::size_t cs = all.column("sample_id");
    for (const auto& row : all.rows)
      if (!all.rows.empty() && row[cs] == all.rows.front()[cs]) first.rows.push_back(row);
    emit("spectrum.svg", spectrum_svg(first, "Spectrum of H_n(g), realization " + all.rows.front()[cs]));
  }
  if (has("rates.csv")) emit("rates.svg", rate_svg(table("rates.csv")));
  if (has("band_rates.csv")) {
    const CsvTable t = table("band_rates.csv");
    const std::size_t cr = t.column("rate"), cg = t.column("gamma_hat");
    std::vector<double> dev;
    for (const auto& row : t.rows) dev.push_back(parse_double(row[cr]) - parse_double(row[cg]));
    emit("bandwidth_rates.svg", histogram_svg(dev, "Bandwidth rate minus Lyapunov exponent",
                                              "-(1/n) log|B_j| - gamma(lambda_j)", 0.0));
  }
  if (has("bands.csv")) {
    const CsvTable t = table("bands.csv");
    const std::size_t cl = t.column("logwidth");
    const double n = static_cast<double>(t.rows.size());
    std::vector<double> rates;
    for (const auto& row : t.rows) rates.push_back(-parse_double(row[cl]) / n);
    emit("bandwidth_rates.svg",
         histogram_svg(rates, "Bandwidth rates", "-(1/n) log|B_j|", std::numeric_limits<double>::quiet_NaN()));
  }
  if (figures == 0) throw IoError("no plottable CSV found in '" + in.string() + "'");
  return rec.finish();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Hermitian Anderson model on a ring: simulation and verification", "hatano"};
  app.require_subcommand(1);
  app.set_version_flag("--version", build_info().version);
  Overrides o;

  using Command = fs::path (*)(const ExperimentConfig&, const Overrides&, std::ostream&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands{
      {"sample", "draw a potential realization", cmd_sample},
      {"lyapunov", "Lyapunov exponent profile and large deviations", cmd_lyapunov},
      {"bands", "band structure of one realization", cmd_bands},
      {"spectrum", "eigenvalues of H_n(g) for each g", cmd_spectrum},
      {"flow", "eigenvalue trajectories over g", cmd_flow},
      {"verify", "check the inequalities over an ensemble or one sample", cmd_verify},
      {"sweep", "full pipeline over the realization ensemble", cmd_sweep},
      {"plot", "SVG figures from CSV output", cmd_plot},
  };
  Command chosen = nullptr;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config_path, "experiment config JSON (or a manifest.json)");
    sub->add_option("--n", o.n, "ring length(s)")->delimiter(',');
    sub->add_option("--g", o.g, "non-Hermiticity values")->delimiter(',');
    sub->add_option("--eps", o.eps, "epsilon of the Lyapunov window");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--realizations", o.realizations, "ensemble size");
    sub->add_option("--precision", o.precision, "auto, standard or extended");
    sub->add_option("--out", o.out, "output directory");
    sub->add_flag("--zero-potential", o.zero_potential, "use v = 0");
    sub->add_option("--sample", o.sample_path, "potential sample JSON");
    if (std::string_view(name) == "plot") sub->add_option("--in", o.input_dir, "directory holding CSV output");
    sub->callback([&chosen, f = fn] { chosen = f; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig c = resolve_config(o);
    const fs::path manifest = chosen(c, o, err);
    out << manifest.string() << '\n';
    return 0;
  } catch (...) {
    return exit_code(err);
  }
}

}  // namespace hatano::cli
