#include "ganlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "ganlab/dynamics.hpp"
#include "ganlab/empirical.hpp"
#include "ganlab/error.hpp"
#include "ganlab/matching.hpp"
#include "ganlab/parallel.hpp"
#include "ganlab/robust.hpp"
#include "ganlab/stats.hpp"
#include "ganlab/w2gan.hpp"

namespace ganlab {

const std::vector<std::string>& ExperimentConfig::known_experiments() {
  static const std::vector<std::string> names{
      "matching", "naive-vs-quadratic", "robust",        "cascade",
      "dynamics-naive", "dynamics-shared", "duality-table", "sqrt2-ratio",
      "nn-rate"};
  return names;
}

std::vector<std::pair<std::string, std::string>> experiment_catalog() {
  return {
      {"matching", "sample-splitting distance between empirical halves over an (n, d) grid, with fitted rate"},
      {"naive-vs-quadratic", "plain-W2 projection objective at the true generator vs the moment-matching gap"},
      {"robust", "contaminated location estimation: halfspace and Tukey fits vs the plain mean"},
      {"cascade", "two-stage fit of a contaminated low-rank Gaussian vs plain spectral truncation"},
      {"dynamics-naive", "direct-game gradient flow from a perturbed equilibrium (trajectory export)"},
      {"dynamics-shared", "parameter-sharing flow with monitored descent certificate (trajectory export)"},
      {"duality-table", "minimax and maximin values of the rank-1 quadratic game"},
      {"sqrt2-ratio", "unit-scale vs best-scale W2 fit ratio for the three-atom family"},
      {"nn-rate", "nearest-neighbor distance from Gaussian probes to the sample, with fitted rate"},
  };
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& value, int line, const std::string& key);

template <>
double parse_number<double>(const std::string& value, int line, const std::string& key) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadValue,
                "line " + std::to_string(line) + ": key '" + key +
                    "' expects a number, got '" + value + "'");
  }
}

template <>
int parse_number<int>(const std::string& value, int line, const std::string& key) {
  double v = parse_number<double>(value, line, key);
  int iv = static_cast<int>(std::llround(v));
  if (static_cast<double>(iv) != v) {
    throw Error(ErrorCode::BadValue, "line " + std::to_string(line) + ": key '" + key +
                                         "' expects an integer, got '" + value + "'");
  }
  return iv;
}

template <typename T>
std::vector<T> parse_list(const std::string& value, int line, const std::string& key) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw Error(ErrorCode::BadValue,
                  "line " + std::to_string(line) + ": key '" + key + "' has an empty list entry");
    }
    out.push_back(parse_number<T>(item, line, key));
  }
  if (out.empty()) {
    throw Error(ErrorCode::BadValue,
                "line " + std::to_string(line) + ": key '" + key + "' has an empty list");
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::BadValue, "line " + std::to_string(line) + ": key '" + key +
                                       "' expects true/false, got '" + value + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool have_experiment = false;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::BadValue,
                  "line " + std::to_string(line) + ": expected 'key = value'");
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::BadValue,
                  "line " + std::to_string(line) + ": empty key or value");
    }
    if (key == "experiment") {
      cfg.experiment = value;
      have_experiment = true;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_number<int>(value, line, key));
    } else if (key == "n") {
      cfg.n = parse_list<int>(value, line, key);
    } else if (key == "d") {
      cfg.d = parse_list<int>(value, line, key);
    } else if (key == "reps") {
      cfg.reps = parse_number<int>(value, line, key);
    } else if (key == "h") {
      cfg.h = parse_number<double>(value, line, key);
    } else if (key == "T") {
      cfg.t_end = parse_number<double>(value, line, key);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_number<double>(value, line, key);
    } else if (key == "lambda") {
      cfg.lambda = parse_number<double>(value, line, key);
    } else if (key == "rank") {
      cfg.rank = parse_number<int>(value, line, key);
    } else if (key == "a") {
      cfg.a_values = parse_list<double>(value, line, key);
    } else if (key == "probes") {
      cfg.probes = parse_number<int>(value, line, key);
    } else if (key == "distance") {
      if (value != "moment-w2" && value != "assignment-w2") {
        throw Error(ErrorCode::BadValue, "line " + std::to_string(line) +
                                             ": distance must be moment-w2 or assignment-w2");
      }
      cfg.distance = value;
    } else if (key == "k_diag") {
      cfg.k_diag = parse_list<double>(value, line, key);
      std::reverse(cfg.k_diag.begin(), cfg.k_diag.end());  // descending diagonal
    } else if (key == "outlier_distance") {
      cfg.outlier_distance = parse_number<double>(value, line, key);
    } else if (key == "perturbation") {
      cfg.perturbation = parse_number<double>(value, line, key);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "svg") {
      cfg.svg = parse_bool(value, line, key);
    } else {
      throw Error(ErrorCode::UnknownKey,
                  "line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!have_experiment) {
    throw Error(ErrorCode::MissingRequired, "missing required key 'experiment'");
  }
  const auto& names = ExperimentConfig::known_experiments();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
    throw Error(ErrorCode::BadValue, "unknown experiment '" + cfg.experiment + "'");
  }
  if (cfg.reps < 1) throw Error(ErrorCode::BadValue, "reps must be >= 1");
  for (int v : cfg.n)
    if (v < 1) throw Error(ErrorCode::BadValue, "n entries must be positive");
  for (int v : cfg.d)
    if (v < 1) throw Error(ErrorCode::BadValue, "d entries must be positive");
  if (cfg.h <= 0) throw Error(ErrorCode::BadValue, "h must be positive");
  return cfg;
}

namespace {

struct CellError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Medians over replicates for a grid of (d, n) cells; the per-cell value is
// computed by `cell(d, n, stream)` with a stream unique to (cell, rep).
std::vector<RateCell> run_grid(const ExperimentConfig& cfg,
                               const std::function<double(int, int, std::uint64_t)>& cell) {
  struct Job {
    int d, n, rep;
    std::uint64_t stream;
  };
  std::vector<Job> jobs;
  for (size_t di = 0; di < cfg.d.size(); ++di) {
    for (size_t ni = 0; ni < cfg.n.size(); ++ni) {
      for (int rep = 0; rep < cfg.reps; ++rep) {
        std::uint64_t stream = (di * 64 + ni) * 4096 + static_cast<std::uint64_t>(rep);
        jobs.push_back({cfg.d[di], cfg.n[ni], rep, stream});
      }
    }
  }
  std::vector<double> values(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int j) {
    try {
      values[j] = cell(jobs[j].d, jobs[j].n, jobs[j].stream);
    } catch (const std::exception& e) {
      throw CellError("cell (d=" + std::to_string(jobs[j].d) +
                      ", n=" + std::to_string(jobs[j].n) +
                      ", rep=" + std::to_string(jobs[j].rep) + "): " + e.what());
    }
  });
  std::vector<RateCell> cells;
  size_t j = 0;
  for (size_t di = 0; di < cfg.d.size(); ++di) {
    for (size_t ni = 0; ni < cfg.n.size(); ++ni) {
      std::vector<double> reps(values.begin() + j, values.begin() + j + cfg.reps);
      j += cfg.reps;
      cells.push_back({cfg.n[ni], cfg.d[di], median(reps), iqr(reps)});
    }
  }
  return cells;
}

void echo_config(ResultTable& table, const ExperimentConfig& cfg) {
  auto list_to_string = [](const auto& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += format_double(static_cast<double>(v[i]));
    }
    return s;
  };
  table.add_meta("artifact", "ganlab 0.1.0");
  table.add_meta("experiment", cfg.experiment);
  table.add_meta("seed", std::to_string(cfg.seed));
  if (!cfg.n.empty()) table.add_meta("n", list_to_string(cfg.n));
  if (!cfg.d.empty()) table.add_meta("d", list_to_string(cfg.d));
  table.add_meta("reps", std::to_string(cfg.reps));
  if (cfg.experiment.rfind("dynamics", 0) == 0) {
    table.add_meta("h", format_double(cfg.h));
    table.add_meta("T", format_double(cfg.t_end));
  }
  if (cfg.experiment == "robust" || cfg.experiment == "cascade") {
    table.add_meta("epsilon", format_double(cfg.epsilon));
    table.add_meta("outlier_distance", format_double(cfg.outlier_distance));
  }
  if (cfg.experiment == "cascade") {
    table.add_meta("lambda", format_double(cfg.lambda));
    table.add_meta("rank", std::to_string(cfg.rank));
  }
  if (cfg.experiment == "matching") table.add_meta("distance", cfg.distance);
  if (cfg.experiment == "nn-rate") table.add_meta("probes", std::to_string(cfg.probes));
  if (!cfg.k_diag.empty()) table.add_meta("k_diag", list_to_string(cfg.k_diag));
  if (cfg.experiment == "dynamics-naive") {
    table.add_meta("perturbation", format_double(cfg.perturbation));
  }
}

void add_rate_fit_meta(ResultTable& table, const RateFit& fit) {
  table.add_meta("fit.model", fit.model == RateModel::PowerLaw ? "C*d^beta*n^alpha"
                                                               : "C*d^beta*n^(gamma/d)");
  table.add_meta("fit.n_exponent", format_double(fit.n_exponent));
  if (fit.d_exponent) table.add_meta("fit.d_exponent", format_double(*fit.d_exponent));
  table.add_meta("fit.intercept", format_double(fit.intercept));
  table.add_meta("fit.r_squared", format_double(fit.r_squared));
  // Slope/intercept in log10 space for the convenience plot.
  if (fit.model == RateModel::PowerLaw) {
    table.add_meta("fit.loglog_slope", format_double(fit.n_exponent));
    double shift = fit.d_exponent ? *fit.d_exponent * std::log(static_cast<double>(fit.grid.front().d)) : 0.0;
    table.add_meta("fit.loglog_intercept",
                   format_double((fit.intercept + shift) / std::log(10.0)));
  }
}

ResultTable run_matching(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.n.empty()) cfg.n = {64, 128, 256, 512, 1024, 2048, 4096};
  if (cfg.d.empty()) cfg.d = {10, 20};
  const bool assignment = cfg.distance == "assignment-w2";
  SampleDistance dist;
  if (assignment) {
    dist = [](const EmpiricalSample& a, const EmpiricalSample& b) {
      return w2_assignment(a, b);
    };
  } else {
    dist = [](const EmpiricalSample& a, const EmpiricalSample& b) {
      return moment_w2(a, b);
    };
  }
  auto cell = [&](int d, int n, std::uint64_t stream) {
    Rng rng(cfg.seed, stream);
    EmpiricalSample source = gaussian_sample(GaussianModel::standard(d), 2 * n, rng);
    return matching_proxy(source, n, dist, mix_seed(cfg.seed, stream));
  };
  std::vector<RateCell> cells = run_grid(cfg, cell);
  ResultTable table({"d", "n", "median", "iqr"});
  echo_config(table, cfg);
  if (cfg.n.size() >= 3) {
    RateFit fit = fit_rate(cells, assignment ? RateModel::DimScaledExponent
                                             : RateModel::PowerLaw);
    add_rate_fit_meta(table, fit);
  }
  for (const auto& c : cells) {
    table.add_row({static_cast<double>(c.d), static_cast<double>(c.n), c.median, c.iqr});
  }
  return table;
}

ResultTable run_nn_rate(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.n.empty()) cfg.n = {16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  if (cfg.d.empty()) cfg.d = {10};
  auto cell = [&](int d, int n, std::uint64_t stream) {
    Rng rng(cfg.seed, stream);
    EmpiricalSample sample = gaussian_sample(GaussianModel::standard(d), n, rng);
    return nn_distance_mean(sample, cfg.probes, mix_seed(cfg.seed, stream + 1));
  };
  std::vector<RateCell> cells = run_grid(cfg, cell);
  ResultTable table({"d", "n", "median", "iqr"});
  echo_config(table, cfg);
  if (cfg.n.size() >= 3) add_rate_fit_meta(table, fit_rate(cells, RateModel::PowerLaw));
  for (const auto& c : cells) {
    table.add_row({static_cast<double>(c.d), static_cast<double>(c.n), c.median, c.iqr});
  }
  return table;
}

ResultTable run_naive_vs_quadratic(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.n.empty()) cfg.n = {256};
  if (cfg.d.empty()) cfg.d = {10};
  ResultTable table({"d", "n", "naive_median", "moment_gap_median", "ratio"});
  echo_config(table, cfg);
  std::uint64_t cell_base = 0;
  for (int d : cfg.d) {
    GaussianModel truth = GaussianModel::standard(d);
    RankRGenerator true_gen{Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d)};
    for (int n : cfg.n) {
      cell_base += 8192;
      std::vector<double> naive(cfg.reps), gap(cfg.reps);
      parallel_for(cfg.reps, [&](int rep) {
        Rng rng(cfg.seed, cell_base + static_cast<std::uint64_t>(rep));
        EmpiricalSample sample = gaussian_sample(truth, n, rng);
        naive[rep] = naive_w2_objective(
            sample, true_gen, n, mix_seed(cfg.seed, cell_base + 4096 + rep));
        gap[rep] = gauss_w2(sample_moments(sample), truth);
      });
      double m_naive = median(naive), m_gap = median(gap);
      table.add_row({static_cast<double>(d), static_cast<double>(n), m_naive, m_gap,
                     m_naive / m_gap});
    }
  }
  return table;
}

ResultTable run_robust(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.n.empty()) cfg.n = {5000};
  if (cfg.d.empty()) cfg.d = {5};
  const int d = cfg.d.front();
  const int n = cfg.n.front();
  ResultTable table({"seed", "err_tv_prime", "err_tukey", "err_mean"});
  echo_config(table, cfg);
  std::vector<std::array<double, 3>> errs(cfg.reps);
  DirectionBank bank = DirectionBank::make(d, std::max(96, 20 * d), cfg.seed);
  parallel_for(cfg.reps, [&](int rep) {
    ContaminationSpec spec;
    spec.epsilon = cfg.epsilon;
    spec.mode = OutlierMode::PointMass;
    spec.outlier_location = Eigen::VectorXd::Zero(d);
    spec.outlier_location(0) = cfg.outlier_distance;
    spec.true_mean = Eigen::VectorXd::Zero(d);
    spec.dim = d;
    spec.n = n;
    spec.seed = mix_seed(cfg.seed, 100 + rep);
    Contaminated data = contaminate(spec);
    LocationFitOptions opts;
    opts.evals_per_start = 60 * d;
    LocationFit tv = fit_location(data.sample, LocationDistance::TvPrime, bank, opts);
    LocationFit tk = fit_location(data.sample, LocationDistance::Tukey, bank, opts);
    Eigen::VectorXd mean_est = data.sample.points().colwise().mean();
    errs[rep] = {(tv.mean - data.true_mean).norm(), (tk.mean - data.true_mean).norm(),
                 (mean_est - data.true_mean).norm()};
  });
  std::vector<double> c0, c1, c2;
  for (int rep = 0; rep < cfg.reps; ++rep) {
    table.add_row({static_cast<double>(rep), errs[rep][0], errs[rep][1], errs[rep][2]});
    c0.push_back(errs[rep][0]);
    c1.push_back(errs[rep][1]);
    c2.push_back(errs[rep][2]);
  }
  table.add_meta("median.err_tv_prime", format_double(median(c0)));
  table.add_meta("median.err_tukey", format_double(median(c1)));
  table.add_meta("median.err_mean", format_double(median(c2)));
  return table;
}

ResultTable run_cascade(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.n.empty()) cfg.n = {2000};
  const int n = cfg.n.front();
  const int d = 2;
  ResultTable table({"seed", "angle_cascade", "angle_quadratic"});
  echo_config(table, cfg);
  std::vector<std::array<double, 2>> angles(cfg.reps);
  DirectionBank bank = DirectionBank::make(d, 64, cfg.seed);
  const Eigen::Vector2d signal(1.0, 0.0);
  parallel_for(cfg.reps, [&](int rep) {
    Rng rng(cfg.seed, 500 + static_cast<std::uint64_t>(rep));
    int n_out = static_cast<int>(std::floor(cfg.epsilon * n));
    Eigen::MatrixXd pts(n, d);
    for (int i = 0; i < n - n_out; ++i) {
      pts(i, 0) = 2.0 * rng.normal();   // signal direction
      pts(i, 1) = 0.1 * rng.normal();   // in-plane W2 noise
    }
    for (int i = n - n_out; i < n; ++i) {
      pts(i, 0) = 0.0;
      pts(i, 1) = cfg.outlier_distance;  // orthogonal contamination
    }
    EmpiricalSample sample{std::move(pts)};
    CascadeConfig ccfg;
    ccfg.lambda = cfg.lambda;
    ccfg.rank = cfg.rank;
    CascadeFit fit = cascade_fit(sample, ccfg, bank);
    RankRGenerator plain = quadratic_gan_fit(sample, cfg.rank);
    auto angle_of = [&](const Eigen::MatrixXd& A) {
      Eigen::VectorXd dir = A.col(0).normalized();
      return std::acos(std::min(1.0, std::abs(dir.dot(signal))));
    };
    angles[rep] = {angle_of(fit.outer.A), angle_of(plain.A)};
  });
  for (int rep = 0; rep < cfg.reps; ++rep) {
    table.add_row({static_cast<double>(rep), angles[rep][0], angles[rep][1]});
  }
  return table;
}

ResultTable run_dynamics_naive(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.t_end <= 0) cfg.t_end = 50.0;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2, 2);
  K(0, 0) = 1.0;
  NaiveFlowState s0;
  const double p = cfg.perturbation;
  s0.A.resize(2, 2);
  s0.A << 1.0 + p, p, p, p;
  s0.v.resize(2);
  s0.v << 1.0 + p, -p;
  FlowOptions opts;
  opts.h = cfg.h;
  opts.t_end = cfg.t_end;
  int steps = static_cast<int>(std::llround(cfg.t_end / cfg.h));
  opts.record_stride = std::max(1, steps / 2000);
  NaiveTrajectory traj = naive_flow_run(s0, K, opts);
  ResultTable table({"t", "a11", "a12", "a22", "v1", "v2", "objective"});
  echo_config(table, cfg);
  table.add_meta("min_step_increment_a22",
                 format_double(traj.min_step_increment_a_last));
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const auto& st = traj.states[i];
    table.add_row({traj.times[i], st.A(0, 0), st.A(0, 1), st.A(1, 1), st.v(0), st.v(1),
                   traj.objective[i]});
  }
  return table;
}

ResultTable run_dynamics_shared(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.t_end <= 0) cfg.t_end = 200.0;
  std::vector<double> diag = cfg.k_diag.empty() ? std::vector<double>{2.0, 1.0}
                                                : cfg.k_diag;
  const int d = static_cast<int>(diag.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) K(i, i) = diag[i];
  Rng rng(cfg.seed, 0x696e6974ULL);
  SharedFlowState s0;
  s0.v = rng.normal_vector(d).normalized();
  if (std::abs(s0.v(0)) < 1e-6) s0.v(0) = 0.1;  // keep overlap with the top direction
  s0.v.normalize();
  s0.b = 0.5 + rng.uniform();
  s0.lambda = 0.5 + rng.uniform();
  FlowOptions opts;
  opts.h = cfg.h;
  opts.t_end = cfg.t_end;
  int steps = static_cast<int>(std::llround(cfg.t_end / cfg.h));
  opts.record_stride = std::max(1, steps / 2000);
  SharedTrajectory traj = shared_flow_run(s0, K, opts);
  std::vector<std::string> header{"t"};
  for (int j = 0; j < d; ++j) header.push_back("v" + std::to_string(j + 1));
  header.insert(header.end(), {"b", "lambda", "vKv", "objective", "lyapunov"});
  ResultTable table(header);
  echo_config(table, cfg);
  table.add_meta("max_lyapunov_increase", format_double(traj.max_lyapunov_increase));
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const auto& st = traj.states[i];
    std::vector<double> row{traj.times[i]};
    for (int j = 0; j < d; ++j) row.push_back(st.v(j));
    row.push_back(st.b);
    row.push_back(st.lambda);
    row.push_back(st.v.dot(K * st.v));
    row.push_back(traj.objective[i]);
    row.push_back(traj.lyapunov[i]);
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_duality_table(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  std::vector<double> diag = cfg.k_diag.empty() ? std::vector<double>{2.0, 1.0}
                                                : cfg.k_diag;
  const int d = static_cast<int>(diag.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) K(i, i) = diag[i];
  double mm = minimax_value(K, 1);
  double mx = maximin_value_numeric(K);
  ResultTable table({"minimax", "maximin", "gap"});
  echo_config(table, cfg);
  table.add_row({mm, mx, mm - mx});
  return table;
}

ResultTable run_sqrt2_ratio(const ExperimentConfig& base) {
  ExperimentConfig cfg = base;
  if (cfg.a_values.empty()) cfg.a_values = {10.0, 100.0, 1000.0, 100000.0};
  ResultTable table({"a", "rho_a", "ratio"});
  echo_config(table, cfg);
  for (double a : cfg.a_values) {
    QaRatio r = qa_ratio(a);
    table.add_row({a, r.rho_a, r.ratio});
  }
  return table;
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& config) {
  ResultTable table = [&] {
    if (config.experiment == "matching") return run_matching(config);
    if (config.experiment == "nn-rate") return run_nn_rate(config);
    if (config.experiment == "naive-vs-quadratic") return run_naive_vs_quadratic(config);
    if (config.experiment == "robust") return run_robust(config);
    if (config.experiment == "cascade") return run_cascade(config);
    if (config.experiment == "dynamics-naive") return run_dynamics_naive(config);
    if (config.experiment == "dynamics-shared") return run_dynamics_shared(config);
    if (config.experiment == "duality-table") return run_duality_table(config);
    if (config.experiment == "sqrt2-ratio") return run_sqrt2_ratio(config);
    throw Error(ErrorCode::BadValue, "unknown experiment '" + config.experiment + "'");
  }();

  std::filesystem::create_directories(config.out);
  RunOutput out{std::move(table), "", ""};
  out.csv_path = (std::filesystem::path(config.out) / (config.experiment + ".csv")).string();
  write_csv(out.table, out.csv_path);
  if (config.svg) {
    out.svg_path =
        (std::filesystem::path(config.out) / (config.experiment + ".svg")).string();
    bool series = config.experiment.rfind("dynamics", 0) == 0;
    write_svg(out.table, out.svg_path,
              series ? PlotKind::TimeSeries : PlotKind::LogLogScatter);
  }
  return out;
}

}  // namespace ganlab
