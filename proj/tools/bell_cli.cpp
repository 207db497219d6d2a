// Command-line front end: every computation in the library, with
// deterministic, machine-readable CSV/JSON outputs.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bell/degenerate.hpp"
#include "bell/eigensolver.hpp"
#include "bell/inequality.hpp"
#include "bell/kernel.hpp"
#include "bell/quantum.hpp"
#include "bell/variational.hpp"

namespace {

using json = nlohmann::ordered_json;

// Locale-independent, up to 17 significant digits.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

int default_threads() {
  if (const char* env = std::getenv("BKL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double default_lanczos_tol(long d) { return d > 100000 ? 1e-6 : 1e-8; }

bell::EigenResult solve_min_eig(long d, const std::string& method, double tol,
                                std::uint64_t seed, int max_iter) {
  const bell::KernelMatrix kernel = bell::kernel_matrix(static_cast<int>(d));
  if (method == "dense" || (method.empty() && d <= 2000)) {
    return bell::dense_min_eig(kernel);
  }
  if (tol <= 0.0) tol = default_lanczos_tol(d);
  return bell::lanczos_min_eig(kernel, tol, max_iter, seed);
}

std::string eigenvector_csv(const Eigen::VectorXd& v) {
  std::ostringstream out;
  out << "i,lambda_i\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << i << ',' << fmt(v[i]) << '\n';
  }
  return out.str();
}

json basis_to_json(const bell::MeasurementBasis& basis) {
  json cols = json::array();
  for (int c = 0; c < basis.d; ++c) {
    json col = json::array();
    for (int r = 0; r < basis.d; ++r) {
      col.push_back({basis.vectors(r, c).real(), basis.vectors(r, c).imag()});
    }
    cols.push_back(std::move(col));
  }
  return json{{"party", basis.party == bell::Party::Alice ? "Alice" : "Bob"},
              {"setting", basis.setting},
              {"vectors", std::move(cols)}};
}

std::vector<long> parse_grid(const std::string& spec) {
  std::vector<long> grid;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) grid.push_back(std::stol(item));
  }
  return grid;
}

std::vector<long> default_grid(bool allow_slow) {
  std::vector<long> grid;
  for (long d = 2; d <= 20; ++d) grid.push_back(d);
  for (long d : {50L, 100L, 500L, 1000L, 10000L, 100000L}) grid.push_back(d);
  if (allow_slow) grid.push_back(1000000L);
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CGLMP 2x2xd Bell-inequality violation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 42;
  int threads = default_threads();
  std::string out_path;
  std::string format = "csv";
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--threads", threads, "worker thread cap");
  app.add_option("--out", out_path, "output file (stdout if omitted)");
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  long d = 0;

  auto* cmd_kernel = app.add_subcommand("kernel", "emit the Toeplitz kernel first column");
  cmd_kernel->add_option("--d", d, "dimension")->required();

  auto* cmd_mineig = app.add_subcommand("mineig", "minimal eigenpair of the kernel");
  std::string method;
  double tol = 0.0;
  int max_iter = 400;
  std::string eigvec_path;
  cmd_mineig->add_option("--d", d, "dimension")->required();
  cmd_mineig->add_option("--method", method, "dense|lanczos")
      ->check(CLI::IsMember({"dense", "lanczos"}));
  cmd_mineig->add_option("--tol", tol, "Lanczos residual tolerance");
  cmd_mineig->add_option("--max-iter", max_iter, "Lanczos iteration cap");
  cmd_mineig->add_option("--eigenvector-out", eigvec_path,
                         "write the eigenvector as CSV i,lambda_i");

  auto* cmd_var = app.add_subcommand("variational", "optimize state and measurements");
  int restarts = 8;
  double var_tol = 1e-9;
  int var_max_iter = 200000;
  bool with_trace = false;
  cmd_var->add_option("--d", d, "dimension (2..8)")->required();
  cmd_var->add_option("--restarts", restarts, "multistart count");
  cmd_var->add_option("--tol", var_tol, "simplex spread tolerance");
  cmd_var->add_option("--max-iter", var_max_iter, "objective evaluations per restart");
  cmd_var->add_flag("--trace", with_trace, "include the convergence trace");

  auto* cmd_deg = app.add_subcommand("degenerate", "d outcomes on a dimension-D system");
  long big_d = 0;
  std::string deg_mode = "exhaustive";
  int samples = 500;
  cmd_deg->add_option("--d", d, "outcome count")->required();
  cmd_deg->add_option("--bigd", big_d, "Hilbert dimension D")->required();
  cmd_deg->add_option("--mode", deg_mode, "exhaustive|random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  cmd_deg->add_option("--samples", samples, "random-mode sample count");

  auto* cmd_lr = app.add_subcommand("lr-check", "exhaustive local-realistic bound check");
  int lr_cap = 20;
  cmd_lr->add_option("--d", d, "dimension")->required();
  cmd_lr->add_option("--cap", lr_cap, "enumeration cap on d");

  auto* cmd_scan = app.add_subcommand("scan", "minimal eigenvalue over a d grid");
  std::string grid_spec;
  bool include_maxent = false;
  bool allow_slow = false;
  cmd_scan->add_option("--grid", grid_spec, "comma-separated d values");
  cmd_scan->add_flag("--include-maxent", include_maxent,
                     "add the maximally-entangled column");
  cmd_scan->add_flag("--allow-slow", allow_slow, "include d = 10^6 in the default grid");

  auto* cmd_state = app.add_subcommand("optimal-state", "Schmidt coefficients of the optimum");
  cmd_state->add_option("--d", d, "dimension")->required();

  auto* cmd_table = app.add_subcommand("table1", "variational optimum for d = 2..dmax");
  long dmax = 5;
  int t_restarts = 8;
  cmd_table->add_option("--dmax", dmax, "largest dimension");
  cmd_table->add_option("--restarts", t_restarts, "multistart count per d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_kernel->parsed()) {
      const bell::KernelMatrix kernel = bell::kernel_matrix(static_cast<int>(d));
      std::ostringstream csv;
      csv << "k,t_k\n";
      for (int k = 0; k < kernel.d; ++k) {
        csv << k << ',' << fmt(kernel.first_col[k]) << '\n';
      }
      write_text(out_path, csv.str());
    } else if (cmd_mineig->parsed()) {
      const bell::EigenResult r = solve_min_eig(d, method, tol, seed, max_iter);
      bell::SchmidtState state{static_cast<int>(d), r.eigenvector};
      json j{{"d", d},
             {"method", r.method == bell::EigMethod::Dense ? "dense" : "lanczos"},
             {"eigenvalue", r.eigenvalue},
             {"residual", r.residual},
             {"iterations", r.iterations},
             {"entropy_normalized", bell::entropy_normalized(state)}};
      if (!eigvec_path.empty()) {
        write_text(eigvec_path, eigenvector_csv(r.eigenvector));
        j["eigenvector_path"] = eigvec_path;
      }
      write_json(out_path, j);
    } else if (cmd_var->parsed()) {
      bell::VariationalOptions options;
      options.restarts = restarts;
      options.seed = seed;
      options.tol = var_tol;
      options.max_iter = var_max_iter;
      options.keep_trace = with_trace;
      const bell::OptimizationResult r = bell::optimize_full(static_cast<int>(d), options);
      json state = json::array();
      for (int i = 0; i < r.d; ++i) state.push_back(r.state.coeffs[i]);
      json bases = json::array();
      for (const auto& b : r.bases) bases.push_back(basis_to_json(b));
      json j{{"d", r.d},
             {"value", r.value},
             {"state", std::move(state)},
             {"bases", std::move(bases)},
             {"restarts_used", r.restarts_used},
             {"best_restart_seed", r.best_restart_seed},
             {"converged", r.converged},
             {"entropy_normalized", bell::entropy_normalized(r.state)}};
      if (with_trace) {
        json trace = json::array();
        for (const auto& [it, v] : r.trace) trace.push_back({it, v});
        j["trace"] = std::move(trace);
      }
      write_json(out_path, j);
    } else if (cmd_deg->parsed()) {
      const auto mode = deg_mode == "random" ? bell::DegenerateMode::Random
                                             : bell::DegenerateMode::Exhaustive;
      const bell::DegenerateResult r = bell::degenerate_min(
          static_cast<int>(d), static_cast<int>(big_d), mode, samples, seed, threads);
      json groupings = json::array();
      for (const auto& g : r.groupings) groupings.push_back(g);
      write_json(out_path, json{{"d", r.d},
                                {"D", r.D},
                                {"mode", deg_mode},
                                {"min_value", r.min_value},
                                {"grouping", std::move(groupings)},
                                {"seed", r.seed},
                                {"samples", r.samples}});
    } else if (cmd_lr->parsed()) {
      const bell::LRMinResult r = bell::lr_min(static_cast<int>(d), lr_cap);
      std::ostringstream line;
      line << "lr-check d=" << d << ": min=" << r.value << " over " << r.searched
           << " strategies, strategy=(" << r.strategy.outcomes[0] << ','
           << r.strategy.outcomes[1] << ',' << r.strategy.outcomes[2] << ','
           << r.strategy.outcomes[3] << ")\n";
      std::cout << line.str();
      if (!out_path.empty()) {
        write_json(out_path, json{{"d", d},
                                  {"min", r.value},
                                  {"strategy", r.strategy.outcomes},
                                  {"searched", r.searched}});
      }
    } else if (cmd_scan->parsed()) {
      const std::vector<long> grid =
          grid_spec.empty() ? default_grid(allow_slow) : parse_grid(grid_spec);
      std::ostringstream csv;
      csv << (include_maxent
                  ? "d,min_eig,maxent_value,entropy_normalized,residual,iterations\n"
                  : "d,min_eig,entropy_normalized,residual,iterations\n");
      for (long dim : grid) {
        const bell::EigenResult r =
            solve_min_eig(dim, dim <= 500 ? "dense" : "lanczos", 0.0, seed, max_iter);
        bell::SchmidtState state{static_cast<int>(dim), r.eigenvector};
        csv << dim << ',' << fmt(r.eigenvalue) << ',';
        if (include_maxent) csv << fmt(bell::maxent_value(static_cast<int>(dim))) << ',';
        csv << fmt(bell::entropy_normalized(state)) << ',' << fmt(r.residual) << ','
            << r.iterations << '\n';
      }
      write_text(out_path, csv.str());
    } else if (cmd_state->parsed()) {
      const bell::EigenResult r =
          solve_min_eig(d, d <= 2000 ? "dense" : "lanczos", 0.0, seed, max_iter);
      write_text(out_path, eigenvector_csv(r.eigenvector));
    } else if (cmd_table->parsed()) {
      if (dmax < 2 || dmax > 8) {
        throw std::invalid_argument("table1: --dmax must be in [2, 8]");
      }
      std::ostringstream csv;
      csv << "d,min_value";
      for (long i = 0; i < dmax; ++i) csv << ",lambda_" << i;
      csv << '\n';
      for (long dim = 2; dim <= dmax; ++dim) {
        bell::VariationalOptions options;
        options.restarts = t_restarts;
        options.seed = seed;
        options.keep_trace = false;
        const bell::OptimizationResult r = bell::optimize_full(static_cast<int>(dim), options);
        csv << dim << ',' << fmt(r.value);
        for (long i = 0; i < dmax; ++i) {
          csv << ',';
          if (i < dim) csv << fmt(std::abs(r.state.coeffs[static_cast<int>(i)]));
        }
        csv << '\n';
      }
      write_text(out_path, csv.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
