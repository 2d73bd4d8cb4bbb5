// pursuit: persistence exponents and crossing-time Monte Carlo for a pair
// of squared Bessel processes.  Subcommands: theta, fplot, simulate, verify.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pursuit/besq.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/estimate.hpp"
#include "pursuit/theta.hpp"
#include "pursuit/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitVerifyFail = 4;

struct Range {
  double lo, hi, step;
};

Range parse_range(const std::string& s) {
  Range r{};
  char sep1 = 0, sep2 = 0;
  std::istringstream in(s);
  if (!(in >> r.lo >> sep1 >> r.hi >> sep2 >> r.step) || sep1 != ':' ||
      sep2 != ':' || !(r.step > 0.0))
    throw std::invalid_argument("range must be lo:hi:step with step > 0");
  return r;
}

// JSON output mirrors the CSV one-to-one: an array of row objects with
// numeric values where the cell parses as a number.
std::string csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  nlohmann::json rows = nlohmann::json::array();
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      header = cells;
      first = false;
      continue;
    }
    nlohmann::json row;
    for (std::size_t i = 0; i < cells.size() && i < header.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (end && *end == '\0' && end != cells[i].c_str())
        row[header[i]] = v;
      else
        row[header[i]] = cells[i];
    }
    rows.push_back(row);
  }
  return rows.dump(2) + "\n";
}

void emit(const std::string& csv, const std::string& out_path,
          const std::string& format) {
  const std::string payload = format == "json" ? csv_to_json(csv) : csv;
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + out_path);
  f << payload;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squared-Bessel pursuit toolkit"};
  app.require_subcommand(1);

  double alpha = 2.0, beta = 2.0, x = 0.0, y = 1.0;
  double dt = 1e-3, tmax = 100.0;
  int refine = 0, threads = 1;
  std::uint64_t seed = 1;
  std::size_t replicates = 10000;
  std::string out_path, format = "csv", grid_spec, window_spec, suite;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out_path, "output file (default: stdout)");
    c->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* c_theta = app.add_subcommand("theta", "persistence exponent");
  c_theta->add_option("--alpha", alpha, "dimension of the lower process");
  c_theta->add_option("--beta", beta, "dimension of the upper process");
  c_theta->add_option("--grid", grid_spec, "grid lo:hi:step over both axes");
  c_theta->add_option("--threads", threads, "worker threads for the grid");
  add_common(c_theta);

  auto* c_fplot = app.add_subcommand("fplot", "tabulate F_{alpha,beta}(s)");
  c_fplot->add_option("--alpha", alpha, "dimension of the lower process");
  c_fplot->add_option("--beta", beta, "dimension of the upper process");
  c_fplot->add_option("--grid", grid_spec, "s range lo:hi:step");
  add_common(c_fplot);

  auto* c_sim = app.add_subcommand("simulate", "crossing-time ensemble");
  c_sim->add_option("--alpha", alpha, "dimension of the lower process");
  c_sim->add_option("--beta", beta, "dimension of the upper process");
  c_sim->add_option("--x", x, "start of the lower process");
  c_sim->add_option("--y", y, "start of the upper process");
  c_sim->add_option("--dt", dt, "base time step");
  c_sim->add_option("--tmax", tmax, "censoring horizon");
  c_sim->add_option("--refine", refine, "refinement levels");
  c_sim->add_option("--replicates", replicates, "ensemble size");
  c_sim->add_option("--seed", seed, "master seed");
  c_sim->add_option("--threads", threads, "worker threads");
  add_common(c_sim);

  auto* c_ver = app.add_subcommand("verify", "identity check suites");
  c_ver->add_option("suite", suite,
                    "mellin|tail|charfn|quadrature|asymptotics|hitting")
      ->required();
  c_ver->add_option("--alpha", alpha, "dimension of the lower process");
  c_ver->add_option("--beta", beta, "dimension of the upper process");
  c_ver->add_option("--replicates", replicates, "ensemble size");
  c_ver->add_option("--seed", seed, "master seed");
  c_ver->add_option("--threads", threads, "worker threads");
  c_ver->add_option("--window", window_spec, "tail fit window lo:hi");
  add_common(c_ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_theta->parsed()) {
      if (!grid_spec.empty()) {
        const Range r = parse_range(grid_spec);
        const auto grid =
            pursuit::theta::theta_grid(r.lo, r.hi, r.lo, r.hi, r.step, threads);
        emit(pursuit::theta::grid_csv(grid), out_path, format);
      } else {
        const auto res = pursuit::theta::find_theta({alpha, beta});
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "alpha,beta,theta,residual,m,m_undetermined\n"
                      "%.17g,%.17g,%.17g,%.17g,%d,%d\n",
                      alpha, beta, res.theta, res.residual, res.zero_order_m,
                      res.m_undetermined ? 1 : 0);
        emit(buf, out_path, format);
      }
    } else if (c_fplot->parsed()) {
      const Range r =
          grid_spec.empty() ? Range{0.0, 6.0, 0.01} : parse_range(grid_spec);
      std::string csv = "s,F\n";
      char buf[96];
      for (double s = r.lo; s <= r.hi + 1e-12 * r.step; s += r.step) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s,
                      pursuit::theta::f_ab({alpha, beta}, s));
        csv += buf;
      }
      emit(csv, out_path, format);
    } else if (c_sim->parsed()) {
      const pursuit::theta::ProcessParams params{alpha, beta};
      const pursuit::besq::StartState start{x, y};
      const pursuit::besq::GridPolicy grid{dt, tmax, refine};
      const auto ens = pursuit::besq::run_crossing_ensemble(
          params, start, grid, seed, replicates, threads);
      emit(pursuit::besq::ensemble_csv(ens), out_path, format);
      if (alpha > beta) {
        const auto m =
            pursuit::estimate::mean_t(ens.samples, params, start, tmax);
        std::fprintf(stderr,
                     "# mean_t: estimate=%.10g se=%.3g raw=%.10g "
                     "censored_frac=%.3g expected=%.10g\n",
                     m.estimate, m.se, m.raw, m.censored_frac,
                     (y - x) / (alpha - beta));
      }
    } else if (c_ver->parsed()) {
      pursuit::verify::SuiteOptions opt;
      opt.seed = seed;
      opt.replicates = replicates;
      opt.threads = threads;
      opt.alpha = alpha;
      opt.beta = beta;
      if (!window_spec.empty()) {
        std::istringstream in(window_spec);
        char sep = 0;
        if (!(in >> opt.window_lo >> sep >> opt.window_hi) || sep != ':')
          throw std::invalid_argument("--window must be lo:hi");
      }
      const auto rows = pursuit::verify::run_suite(suite, opt);
      emit(pursuit::verify::report_csv(rows), out_path, format);
      if (!pursuit::verify::all_pass(rows)) {
        for (const auto& r : rows)
          if (!r.pass)
            std::fprintf(stderr, "# out of band: %s\n", r.name.c_str());
        return kExitVerifyFail;
      }
    }
  } catch (const pursuit::NonConvergenceError& e) {
    std::fprintf(stderr, "error: %s (achieved %.3g)\n", e.what(),
                 e.achieved_error);
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitOk;
}
