#include <memory>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "furst/equidistribution.hpp"
#include "furst/semigroup.hpp"
#include "parse.hpp"

namespace furst_cli {

namespace {

struct FreqArgs {
  std::vector<std::string> freqs;
  std::vector<unsigned long> basis{2, 3};
  std::size_t count = 0;

  std::vector<mpz_class> resolve(Doc& doc) const {
    if (!freqs.empty()) {
      std::vector<mpz_class> out;
      out.reserve(freqs.size());
      Json echo = Json::array();
      for (const auto& f : freqs) {
        out.push_back(parse_mpz(f));
        echo.push_back(f);
      }
      doc.config["freqs"] = echo;
      return out;
    }
    if (count == 0)
      throw std::invalid_argument("needs --freqs or --basis with --count");
    furst::SemigroupBasis b(basis);
    Json echo = Json::array();
    for (unsigned long g : b.generators()) echo.push_back(g);
    doc.config["basis"] = echo;
    doc.config["count"] = count;
    std::vector<mpz_class> out;
    for (const auto& t : furst::enumerate_first(b, count))
      out.push_back(t.value);
    return out;
  }
};

void add_freq_options(CLI::App* cmd, const std::shared_ptr<FreqArgs>& fa) {
  cmd->add_option("--freqs", fa->freqs, "Explicit frequency list")
      ->delimiter(',');
  cmd->add_option("--basis", fa->basis, "Semigroup generators")->delimiter(',');
  cmd->add_option("--count", fa->count, "Number of leading semigroup terms");
}

struct ShrinkArgs {
  std::string lambda = "log-log";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  bool force_zero = false;
  std::vector<std::size_t> n_list;
  std::size_t paths = 1000;
};

}  // namespace

void register_equidistribution(CLI::App& app, Ctx& ctx) {
  {
    auto fa = std::make_shared<FreqArgs>();
    auto x_text = std::make_shared<std::string>("log2/log3");
    auto h = std::make_shared<long long>(1);
    CLI::App* cmd = app.add_subcommand(
        "weyl", "Exponential-sum average over a frequency list");
    add_freq_options(cmd, fa);
    cmd->add_option("--x", *x_text, "Circle point")->capture_default_str();
    cmd->add_option("--mult", *h, "Integer multiplier")->capture_default_str();
    cmd->callback([fa, x_text, h, &ctx] {
      Doc doc;
      doc.command = "weyl";
      const auto freqs = fa->resolve(doc);
      doc.config["x"] = *x_text;
      doc.config["mult"] = *h;
      const auto avg = furst::weyl_sum(
          freqs, furst::CirclePoint::from_real(parse_real(*x_text)), *h);
      doc.summary["count"] = avg.count;
      doc.summary["multiplier"] = avg.multiplier;
      doc.summary["real"] = avg.value.real();
      doc.summary["imag"] = avg.value.imag();
      doc.summary["magnitude"] = std::abs(avg.value);
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto x_text = std::make_shared<std::string>("log2/log3");
    CLI::App* cmd =
        app.add_subcommand("orbit", "frac(freq * x) for each frequency");
    add_freq_options(cmd, fa);
    cmd->add_option("--x", *x_text, "Circle point")->capture_default_str();
    cmd->callback([fa, x_text, &ctx] {
      Doc doc;
      doc.command = "orbit";
      const auto freqs = fa->resolve(doc);
      doc.config["x"] = *x_text;
      const auto points = furst::orbit_points(
          freqs, furst::CirclePoint::from_real(parse_real(*x_text)));
      doc.columns = {"n", "freq", "point"};
      for (std::size_t i = 0; i < points.size(); ++i)
        doc.rows.push_back(
            Json::array({i + 1, freqs[i].get_str(), points[i]}));
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto x_text = std::make_shared<std::string>("log2/log3");
    CLI::App* cmd = app.add_subcommand(
        "discrepancy", "Star discrepancy of the orbit points");
    add_freq_options(cmd, fa);
    cmd->add_option("--x", *x_text, "Circle point")->capture_default_str();
    cmd->callback([fa, x_text, &ctx] {
      Doc doc;
      doc.command = "discrepancy";
      const auto freqs = fa->resolve(doc);
      doc.config["x"] = *x_text;
      const auto points = furst::orbit_points(
          freqs, furst::CirclePoint::from_real(parse_real(*x_text)));
      doc.summary["count"] = points.size();
      doc.summary["discrepancy"] = furst::star_discrepancy(points);
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto den = std::make_shared<unsigned long>(8);
    auto grid = std::make_shared<std::size_t>(4096);
    CLI::App* cmd = app.add_subcommand(
        "hartman",
        "Sup of the average over irrational-leaning offsets, with exact "
        "low-denominator audit");
    add_freq_options(cmd, fa);
    cmd->add_option("--den-bound", *den, "Denominator cutoff for the audit")
        ->capture_default_str();
    cmd->add_option("--grid", *grid, "Offset grid size")->capture_default_str();
    cmd->callback([fa, den, grid, &ctx] {
      Doc doc;
      doc.command = "hartman";
      const auto freqs = fa->resolve(doc);
      doc.config["den_bound"] = *den;
      doc.config["grid"] = *grid;
      const auto report = furst::hartman_profile(freqs, *den, *grid);
      doc.columns = {"point", "magnitude"};
      for (const auto& r : report.excluded)
        doc.rows.push_back(Json::array({r.point.get_str(), r.magnitude}));
      doc.summary["grid_sup"] = report.grid_sup;
      doc.summary["grid_size"] = report.grid_size;
      doc.summary["grid_points_used"] = report.grid_points_used;
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto n_max = std::make_shared<std::size_t>(50);
    CLI::App* cmd = app.add_subcommand(
        "del-series", "Mean-square averages along the frequency list");
    add_freq_options(cmd, fa);
    cmd->add_option("--n-max", *n_max, "Series length")->capture_default_str();
    cmd->callback([fa, n_max, &ctx] {
      Doc doc;
      doc.command = "del-series";
      if (fa->freqs.empty() && fa->count == 0) fa->count = *n_max;
      const auto freqs = fa->resolve(doc);
      doc.config["n_max"] = *n_max;
      const auto series = furst::del_series(freqs, *n_max);
      doc.columns = {"n", "integral_exact", "integral_quadrature",
                     "partial_sum_exact", "partial_sum_quadrature"};
      for (const auto& t : series)
        doc.rows.push_back(Json::array(
            {t.n, t.integral_exact.get_str(), t.integral_quadrature,
             t.partial_sum_exact.get_str(), t.partial_sum_quadrature}));
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<ShrinkArgs>();
    CLI::App* cmd = app.add_subcommand(
        "shrink-sim", "Shrinking-target path of the binary shift");
    cmd->add_option("--lambda", sa->lambda, "Target-size spec")
        ->capture_default_str();
    cmd->add_option("--n", sa->n, "Horizon")->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->add_flag("--force-zero", sa->force_zero, "All-zero digit path");
    cmd->callback([sa, &ctx] {
      Doc doc;
      doc.command = "shrink-sim";
      doc.config["lambda"] = sa->lambda;
      doc.config["n"] = sa->n;
      doc.config["force_zero"] = sa->force_zero;
      doc.seed = sa->seed;
      const auto path = furst::shrinking_target_sim(parse_lambda(sa->lambda),
                                                    sa->n, sa->seed,
                                                    sa->force_zero);
      doc.columns = {"n", "window_average", "hit"};
      std::size_t hit_idx = 0;
      for (std::size_t n = 1; n <= sa->n; ++n) {
        while (hit_idx < path.hits.size() && path.hits[hit_idx] < n) ++hit_idx;
        const bool hit = hit_idx < path.hits.size() && path.hits[hit_idx] == n;
        doc.rows.push_back(
            Json::array({n, path.window_averages[n - 1], hit}));
      }
      doc.summary["hits"] = path.hits.size();
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<ShrinkArgs>();
    CLI::App* cmd = app.add_subcommand(
        "hit-freq", "Monte-Carlo shrinking-target event frequencies");
    cmd->add_option("--lambda", sa->lambda, "Target-size spec")
        ->capture_default_str();
    cmd->add_option("--n-list", sa->n_list, "Evaluation indices")
        ->delimiter(',')
        ->required();
    cmd->add_option("--paths", sa->paths, "Independent paths")
        ->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->callback([sa, &ctx] {
      Doc doc;
      doc.command = "hit-freq";
      doc.config["lambda"] = sa->lambda;
      Json ns = Json::array();
      for (std::size_t n : sa->n_list) ns.push_back(n);
      doc.config["n_list"] = ns;
      doc.config["paths"] = sa->paths;
      doc.seed = sa->seed;
      const auto rows = furst::ensemble_hit_frequency(
          parse_lambda(sa->lambda), sa->n_list, sa->paths, sa->seed);
      doc.columns = {"n", "empirical", "exact", "sigma"};
      for (const auto& r : rows)
        doc.rows.push_back(Json::array({r.n, r.empirical, r.exact, r.sigma}));
      ctx.emit(doc);
    });
  }
}

}  // namespace furst_cli
