#include <memory>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "furst/semigroup.hpp"
#include "parse.hpp"

namespace furst_cli {

namespace {

Json basis_json(const std::vector<unsigned long>& gens) {
  Json arr = Json::array();
  for (unsigned long g : gens) arr.push_back(g);
  return arr;
}

std::vector<std::string> term_columns(const furst::SemigroupBasis& basis) {
  std::vector<std::string> cols{"n", "value"};
  for (unsigned long g : basis.generators())
    cols.push_back("exp_" + std::to_string(g));
  return cols;
}

Json term_row(std::size_t n, const furst::SmoothNumber& t) {
  Json row = Json::array();
  row.push_back(n);
  row.push_back(t.value.get_str());
  for (unsigned e : t.exponents) row.push_back(e);
  return row;
}

struct EnumerateArgs {
  std::vector<unsigned long> basis{2, 3};
  std::string limit;
  std::size_t count = 0;
  bool include_unit = false;
};

struct GapArgs {
  std::vector<unsigned long> basis{2, 3};
  std::size_t n_max = 1000;
  double rho = 4.116;
  double r = 0.0977;
};

}  // namespace

void register_semigroup(CLI::App& app, Ctx& ctx) {
  auto en = std::make_shared<EnumerateArgs>();
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "List semigroup elements in increasing order");
  enumerate->add_option("--basis", en->basis, "Generators")->delimiter(',');
  auto* lim_opt =
      enumerate->add_option("--limit", en->limit, "Largest value to include");
  enumerate->add_option("--count", en->count, "Number of leading terms")
      ->excludes(lim_opt);
  enumerate->add_flag("--include-unit", en->include_unit,
                      "Count 1 as the empty product");
  enumerate->callback([en, &ctx] {
    furst::SemigroupBasis basis(en->basis);
    std::vector<furst::SmoothNumber> terms;
    Doc doc;
    doc.command = "enumerate";
    doc.config["basis"] = basis_json(basis.generators());
    if (!en->limit.empty()) {
      terms = furst::enumerate_upto(basis, parse_mpz(en->limit), en->include_unit);
      doc.config["limit"] = en->limit;
    } else if (en->count > 0) {
      terms = furst::enumerate_first(basis, en->count, en->include_unit);
      doc.config["count"] = en->count;
    } else {
      throw std::invalid_argument("enumerate needs --limit or --count");
    }
    doc.config["include_unit"] = en->include_unit;
    doc.columns = term_columns(basis);
    for (std::size_t i = 0; i < terms.size(); ++i)
      doc.rows.push_back(term_row(i + 1, terms[i]));
    doc.summary["count"] = terms.size();
    ctx.emit(doc);
  });

  auto cn = std::make_shared<EnumerateArgs>();
  CLI::App* count = app.add_subcommand("count", "Count elements up to a limit");
  count->add_option("--basis", cn->basis, "Generators")->delimiter(',');
  count->add_option("--limit", cn->limit, "Largest value counted")->required();
  count->add_flag("--include-unit", cn->include_unit,
                  "Count 1 as the empty product");
  count->callback([cn, &ctx] {
    furst::SemigroupBasis basis(cn->basis);
    Doc doc;
    doc.command = "count";
    doc.config["basis"] = basis_json(basis.generators());
    doc.config["limit"] = cn->limit;
    doc.config["include_unit"] = cn->include_unit;
    doc.summary["count"] =
        furst::count_upto(basis, parse_mpz(cn->limit), cn->include_unit);
    ctx.emit(doc);
  });

  auto nt = std::make_shared<EnumerateArgs>();
  CLI::App* nth = app.add_subcommand("nth", "n-th element (1-based)");
  nth->add_option("--basis", nt->basis, "Generators")->delimiter(',');
  nth->add_option("--index", nt->count, "1-based rank")->required();
  nth->callback([nt, &ctx] {
    furst::SemigroupBasis basis(nt->basis);
    const furst::SmoothNumber t = furst::nth_term(basis, nt->count);
    Doc doc;
    doc.command = "nth";
    doc.config["basis"] = basis_json(basis.generators());
    doc.config["index"] = nt->count;
    doc.summary["value"] = t.value.get_str();
    Json exps = Json::array();
    for (unsigned e : t.exponents) exps.push_back(e);
    doc.summary["exponents"] = exps;
    ctx.emit(doc);
  });

  auto ra = std::make_shared<EnumerateArgs>();
  CLI::App* ram = app.add_subcommand(
      "ramanujan", "Closed-form count approximation for the (2,3) semigroup");
  ram->add_option("--limit", ra->limit, "Evaluation point")->required();
  ram->callback([ra, &ctx] {
    const mpz_class limit = parse_mpz(ra->limit);
    furst::SemigroupBasis basis({2, 3});
    const double estimate = furst::ramanujan_estimate(limit.get_d());
    const unsigned long long exact = furst::count_upto(basis, limit, true);
    Doc doc;
    doc.command = "ramanujan";
    doc.config["limit"] = ra->limit;
    doc.summary["estimate"] = estimate;
    doc.summary["count_with_unit"] = exact;
    doc.summary["difference"] = estimate - static_cast<double>(exact);
    ctx.emit(doc);
  });

  auto ga = std::make_shared<GapArgs>();
  CLI::App* gaps = app.add_subcommand(
      "gap-stats", "Consecutive-gap statistics with growth normalizers");
  gaps->add_option("--basis", ga->basis, "Generators")->delimiter(',');
  gaps->add_option("--n-max", ga->n_max, "Number of leading terms")
      ->capture_default_str();
  gaps->add_option("--rho", ga->rho, "Exponent in the log-power normalizer")
      ->capture_default_str();
  gaps->add_option("--r", ga->r, "Exponent in the index-power normalizer")
      ->capture_default_str();
  gaps->callback([ga, &ctx] {
    furst::SemigroupBasis basis(ga->basis);
    const auto report = furst::gap_stats(basis, ga->n_max, ga->rho, ga->r);
    Doc doc;
    doc.command = "gap-stats";
    doc.config["basis"] = basis_json(basis.generators());
    doc.config["n_max"] = ga->n_max;
    doc.config["rho"] = ga->rho;
    doc.config["r"] = ga->r;
    doc.columns = {"n", "gap", "relative_gap", "lower_norm", "upper_norm"};
    double max_lower = 0.0, max_upper = 0.0;
    for (const auto& g : report) {
      doc.rows.push_back(Json::array({g.index, g.gap.get_str(), g.relative_gap,
                                      g.lower_norm, g.upper_norm}));
      max_lower = std::max(max_lower, g.lower_norm);
      max_upper = std::max(max_upper, g.upper_norm);
    }
    doc.summary["max_lower_norm"] = max_lower;
    doc.summary["max_upper_norm"] = max_upper;
    ctx.emit(doc);
  });
}

}  // namespace furst_cli
