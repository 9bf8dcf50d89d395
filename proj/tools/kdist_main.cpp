#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "kdist/csv.hpp"
#include "kdist/errors.hpp"
#include "kdist/experiments.hpp"
#include "kdist/fields.hpp"
#include "kdist/version.hpp"

namespace {

using namespace kdist;

struct OutputTarget {
  std::string path;  // empty -> stdout
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw validation_error("cannot open output file: " + path);
    }
    return file;
  }
};

std::string metadata_string(const DistanceEstimate& est) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : est.metadata) {
    if (!first) os << ';';
    os << k << '=' << v;
    first = false;
  }
  if (est.scale_factor != 1.0) {
    if (!first) os << ';';
    os << "scale_factor=" << format_double(est.scale_factor);
    first = false;
  }
  if (first) os << '-';
  return os.str();
}

struct GridSpec {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::stringstream ss(text);
  std::string part;
  try {
    if (!std::getline(ss, part, ':')) throw validation_error("");
    g.start = std::stod(part);
    if (!std::getline(ss, part, ':')) throw validation_error("");
    g.step = std::stod(part);
    if (!std::getline(ss, part, ':')) throw validation_error("");
    g.count = std::stoul(part);
  } catch (const std::exception&) {
    throw validation_error("grid: expected start:step:count");
  }
  if (g.count < 1 || !(g.step > 0.0)) throw validation_error("grid: need count >= 1, step > 0");
  return g;
}

FieldSpec field_from_kernel(const KernelSpec& kernel, int modes) {
  if (const auto* f = std::get_if<Fractional>(&kernel)) {
    if (!(f->hurst > 0.0 && f->hurst < 1.0))
      throw validation_error("field-mc: fractional field needs H in (0,1)");
    return Fbm{f->hurst, f->dim};
  }
  if (const auto* a = std::get_if<AdditiveL1>(&kernel)) return AdditiveBm{a->dim};
  if (const auto* d = std::get_if<DiscreteKernel>(&kernel)) return DiscreteField{d->levels};
  if (const auto* g = std::get_if<GreenGff>(&kernel)) {
    if (g->dim == 1) return GffNeumann1d{modes};
    throw validation_error("field-mc: no sampler for the green kernel in d >= 2");
  }
  throw validation_error("field-mc: no sampler for this kernel");
}

void set_inferred_dim(KernelSpec& kernel, int dim) {
  if (auto* f = std::get_if<Fractional>(&kernel)) {
    if (f->dim == 0) f->dim = dim;
  } else if (auto* a = std::get_if<AdditiveL1>(&kernel)) {
    if (a->dim == 0) a->dim = dim;
  }
  validate_kernel(kernel);
}

void write_run_header(std::ostream& out, const SeedSpec& seed, const std::string& convention) {
  out << "# kdist " << kVersion << "\n";
  out << "# seed=" << seed.base_seed << " stream=" << seed.stream_index << "\n";
  out << "# convention=" << convention << "\n";
}

int run_distance(const std::string& x_path, const std::string& y_path,
                 const std::string& kernel_text, const std::string& estimator,
                 const std::string& convention, const std::string& cross_text,
                 std::size_t replications, SeedSpec seed, const std::string& precision,
                 OutputTarget& out_target) {
  const EmpiricalMeasure x = read_points_csv_file(x_path);
  const EmpiricalMeasure y = read_points_csv_file(y_path);

  std::optional<KernelSpec> kernel;
  if (!kernel_text.empty()) {
    kernel = parse_kernel_spec(kernel_text);
    set_inferred_dim(*kernel, x.dim());
  }
  const Convention conv = convention == "paper" ? Convention::paper : Convention::corrected;
  const CrossTerm cross = cross_text == "full" ? CrossTerm::full : CrossTerm::paired;
  const SumPrecision prec =
      precision == "float32" ? SumPrecision::f32 : SumPrecision::f64;

  auto need_kernel = [&]() -> const KernelSpec& {
    if (!kernel) throw validation_error("this estimator requires --kernel");
    return *kernel;
  };

  DistanceEstimate est;
  if (estimator == "unbiased") {
    est = unbiased_kernel_distance(x, y, need_kernel(), conv, cross, prec);
  } else if (estimator == "biased") {
    est = biased_kernel_distance(x, y, need_kernel(), prec);
  } else if (estimator == "vstat") {
    est = v_statistic_distance(x, y, need_kernel());
  } else if (estimator == "field-mc") {
    est = field_mc_distance(x, y, field_from_kernel(need_kernel(), 1000), replications, seed);
  } else if (estimator == "fourier") {
    const auto* f = std::get_if<Fractional>(&need_kernel());
    if (f == nullptr) throw validation_error("fourier estimator needs a fractional kernel");
    est = fourier_distance_1d(x, y, f->hurst);
  } else if (estimator == "cvm") {
    est = cvm_distance(x, y);
  } else {
    throw validation_error("unknown estimator: " + estimator);
  }

  std::ostream& out = out_target.stream();
  write_run_header(out, seed, convention);
  out << "estimator,kernel,value,std_error,n_x,n_y,metadata\n";
  out << estimator_name(est.kind) << ',' << (kernel ? kernel_name(*kernel) : std::string("-"))
      << ',' << format_double(est.value) << ','
      << (est.std_error ? format_double(*est.std_error) : std::string()) << ',' << est.n_x << ','
      << est.n_y << ',' << metadata_string(est) << "\n";
  return 0;
}

int run_sample_field(const std::string& spec, double hurst, int modes,
                     const std::string& grid_text, SeedSpec seed, OutputTarget& out_target) {
  const GridSpec grid = parse_grid(grid_text);
  FieldRealization realization{EmpiricalMeasure::from_1d({0.0}), {}, seed};
  if (spec == "fbm") {
    FbmGridSampler sampler(hurst, grid.start, grid.step, grid.count, 0);
    realization = FieldRealization{EmpiricalMeasure(sampler.grid(), 1),
                                   sampler.sample(seed, 0), seed};
  } else if (spec == "gff") {
    std::vector<double> points(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i)
      points[i] = grid.start + grid.step * static_cast<double>(i);
    realization = sample_gff_series(modes, points, seed);
  } else {
    throw validation_error("sample-field: spec must be fbm or gff");
  }
  std::ostream& out = out_target.stream();
  write_run_header(out, seed, "-");
  out << "t,value\n";
  for (std::size_t i = 0; i < realization.locations.size(); ++i)
    out << format_double(realization.locations.coord(i, 0)) << ','
        << format_double(realization.values[i]) << "\n";
  return 0;
}

int run_verify(const std::string& verify_case, SeedSpec seed, int sets, std::size_t replications,
               OutputTarget& out_target) {
  if (verify_case != "equivalence")
    throw validation_error("verify: unknown case '" + verify_case + "'");
  const std::vector<VerifyRow> rows = verify_equivalence(seed, sets, replications);
  Provenance prov;
  prov.emplace_back("kdist", kVersion);
  prov.emplace_back("seed", std::to_string(seed.base_seed));
  prov.emplace_back("stream", std::to_string(seed.stream_index));
  prov.emplace_back("convention", "corrected");
  prov.emplace_back("case", verify_case);
  write_verify_csv(out_target.stream(), rows, prov);
  for (const auto& row : rows)
    if (!row.pass) return 2;
  return 0;
}

int run_experiment(const std::string& config_path, const std::vector<std::string>& overrides,
                   std::optional<std::uint64_t> seed_flag, OutputTarget& out_target) {
  std::ifstream in(config_path);
  if (!in) throw validation_error("cannot open config file: " + config_path);
  SweepConfig config = parse_sweep_config(in);
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw validation_error("--set: expected key=value, got '" + item + "'");
    apply_config_override(config, item.substr(0, eq), item.substr(eq + 1));
  }
  if (seed_flag) config.seed.base_seed = *seed_flag;

  std::ostream& out = out_target.stream();
  out << "# kdist " << kVersion << "\n";
  if (config.experiment == "moment-sweep") {
    write_moment_csv(out, moment_sweep(config));
  } else if (config.experiment == "snr-sweep") {
    write_snr_csv(out, snr_sweep(config));
  } else if (config.experiment == "student-t") {
    write_student_csv(out, student_t_comparison(config));
  } else if (config.experiment == "limit-checks") {
    write_limit_checks_csv(out, limit_checks(config.seed));
  } else {
    throw validation_error("experiment: unknown experiment '" + config.experiment + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel distances via kernel sums, sampled random fields and Fourier quadrature"};
  app.require_subcommand(1);

  // distance
  auto* dist = app.add_subcommand("distance", "distance between two point-cloud csv files");
  std::string x_path;
  std::string y_path;
  std::string kernel_text;
  std::string estimator;
  std::string convention = "corrected";
  std::string cross = "paired";
  std::string precision = "double";
  std::size_t replications = 100000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out_path;
  dist->add_option("--x", x_path, "points csv for the first sample")->required();
  dist->add_option("--y", y_path, "points csv for the second sample")->required();
  dist->add_option("--kernel", kernel_text,
                   "fractional:H=.. | green:d=.. | riesz:alpha=..,d=.. | additive | discrete:K=..");
  dist->add_option("--estimator", estimator, "unbiased|biased|vstat|field-mc|fourier|cvm")
      ->required();
  dist->add_option("--convention", convention, "paper|corrected")
      ->check(CLI::IsMember({"paper", "corrected"}));
  dist->add_option("--cross", cross, "paired|full")->check(CLI::IsMember({"paired", "full"}));
  dist->add_option("--precision", precision, "double|float32")
      ->check(CLI::IsMember({"double", "float32"}));
  dist->add_option("--replications", replications, "field-mc replications");
  dist->add_option("--seed", seed, "base seed");
  dist->add_option("--stream", stream, "stream index");
  dist->add_option("--out", out_path, "output csv path (default stdout)");

  // sample-field
  auto* field = app.add_subcommand("sample-field", "emit one field realization as csv");
  std::string field_spec;
  double hurst = 0.5;
  int modes = 1000;
  std::string grid_text;
  std::string field_out;
  std::uint64_t field_seed = 0;
  std::uint64_t field_stream = 0;
  field->add_option("--spec", field_spec, "fbm|gff")->required();
  field->add_option("--hurst", hurst, "Hurst index for fbm");
  field->add_option("--modes", modes, "series truncation for gff");
  field->add_option("--grid", grid_text, "start:step:count")->required();
  field->add_option("--seed", field_seed, "base seed");
  field->add_option("--stream", field_stream, "stream index");
  field->add_option("--out", field_out, "output csv path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the representation equivalence suite");
  std::string verify_case = "equivalence";
  std::uint64_t verify_seed = 7;
  std::uint64_t verify_stream = 0;
  int verify_sets = 5;
  std::size_t verify_reps = 100000;
  std::string verify_out;
  verify->add_option("--case", verify_case, "equivalence");
  verify->add_option("--seed", verify_seed, "base seed");
  verify->add_option("--stream", verify_stream, "stream index");
  verify->add_option("--sets", verify_sets, "number of random point sets");
  verify->add_option("--replications", verify_reps, "field mc replications");
  verify->add_option("--out", verify_out, "output csv path (default stdout)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a sweep from a key=value config");
  std::string config_path;
  std::vector<std::string> overrides;
  std::string experiment_out;
  std::optional<std::uint64_t> experiment_seed;
  experiment->add_option("--config", config_path, "key=value config file")->required();
  experiment->add_option("--set", overrides, "override config entries (key=value)");
  experiment->add_option("--seed", experiment_seed, "override the config seed");
  experiment->add_option("--out", experiment_out, "output csv path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    OutputTarget out;
    if (dist->parsed()) {
      out.path = out_path;
      return run_distance(x_path, y_path, kernel_text, estimator, convention, cross, replications,
                          SeedSpec{seed, stream}, precision, out);
    }
    if (field->parsed()) {
      out.path = field_out;
      return run_sample_field(field_spec, hurst, modes, grid_text,
                              SeedSpec{field_seed, field_stream}, out);
    }
    if (verify->parsed()) {
      out.path = verify_out;
      return run_verify(verify_case, SeedSpec{verify_seed, verify_stream}, verify_sets,
                        verify_reps, out);
    }
    if (experiment->parsed()) {
      out.path = experiment_out;
      return run_experiment(config_path, overrides, experiment_seed, out);
    }
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
