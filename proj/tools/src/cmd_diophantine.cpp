#include <memory>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "furst/diophantine.hpp"
#include "parse.hpp"

namespace furst_cli {

namespace {

Json basis_json(const std::vector<unsigned long>& gens) {
  Json arr = Json::array();
  for (unsigned long g : gens) arr.push_back(g);
  return arr;
}

struct CfArgs {
  unsigned long a = 0, b = 0;
  std::string x;
  std::size_t depth = 10;
  long bits = 256;
};

struct SturmianArgs {
  std::size_t n = 20;
  std::string word = "count";
};

struct IrrArgs {
  std::string x = "log2/log3";
  unsigned long q_max = 19;
  double rho = 4.116;
  long bits = 256;
};

struct BohrArgs {
  std::string m;
  std::vector<unsigned long> basis{2, 3};
  std::string verify_limit;
};

}  // namespace

void register_diophantine(CLI::App& app, Ctx& ctx) {
  auto cf = std::make_shared<CfArgs>();
  CLI::App* cf_cmd = app.add_subcommand(
      "cf", "Continued fraction with convergents (certified arithmetic)");
  auto* a_opt = cf_cmd->add_option("--a", cf->a, "Numerator base for log a/log b");
  cf_cmd->add_option("--b", cf->b, "Denominator base for log a/log b")
      ->needs(a_opt);
  cf_cmd->add_option("--x", cf->x, "Real argument (see parse forms)")
      ->excludes(a_opt);
  cf_cmd->add_option("--depth", cf->depth, "Partial quotients after a0")
      ->capture_default_str();
  cf_cmd->add_option("--bits", cf->bits, "Working precision for --x")
      ->capture_default_str();
  cf_cmd->callback([cf, &ctx] {
    furst::ContinuedFraction result;
    Doc doc;
    doc.command = "cf";
    if (cf->a != 0) {
      if (cf->b == 0) throw std::invalid_argument("--a needs --b");
      result = furst::log_ratio_continued_fraction(cf->a, cf->b, cf->depth);
      doc.config["a"] = cf->a;
      doc.config["b"] = cf->b;
    } else if (!cf->x.empty()) {
      result = furst::continued_fraction(parse_real(cf->x, cf->bits), cf->depth);
      doc.config["x"] = cf->x;
      doc.config["bits"] = cf->bits;
    } else {
      throw std::invalid_argument("cf needs --a/--b or --x");
    }
    doc.config["depth"] = cf->depth;
    doc.columns = {"k", "quotient", "p", "q"};
    for (std::size_t k = 0; k < result.quotients.size(); ++k) {
      doc.rows.push_back(Json::array({k, result.quotients[k].get_str(),
                                      result.convergents[k].first.get_str(),
                                      result.convergents[k].second.get_str()}));
    }
    Json quotients = Json::array();
    for (const auto& q : result.quotients) quotients.push_back(q.get_str());
    doc.summary["quotients"] = quotients;
    doc.summary["truncated_by_precision"] = result.truncated_by_precision;
    doc.summary["terminated_rational"] = result.terminated_rational;
    ctx.emit(doc);
  });

  auto lr = std::make_shared<CfArgs>();
  CLI::App* lr_cmd =
      app.add_subcommand("log-ratio", "Certified value of log a / log b");
  lr_cmd->add_option("--a", lr->a, "Numerator base")->required();
  lr_cmd->add_option("--b", lr->b, "Denominator base")->required();
  lr_cmd->add_option("--bits", lr->bits, "Precision")->capture_default_str();
  lr_cmd->callback([lr, &ctx] {
    const auto x = furst::CertifiedReal::log_ratio(lr->a, lr->b, lr->bits);
    Doc doc;
    doc.command = "log-ratio";
    doc.config["a"] = lr->a;
    doc.config["b"] = lr->b;
    doc.config["bits"] = lr->bits;
    doc.summary["value"] = x.value();
    doc.summary["error_radius"] = x.error_radius();
    doc.summary["exact_rational"] = x.is_exact_rational();
    if (x.is_exact_rational())
      doc.summary["rational"] = x.rational().get_str();
    ctx.emit(doc);
  });

  auto pp = std::make_shared<BohrArgs>();
  CLI::App* pp_cmd = app.add_subcommand(
      "pure-pairs", "Adjacent pure-power pairs in the (2,3) semigroup");
  pp_cmd->add_option("--limit", pp->m, "Scan bound")->required();
  pp_cmd->callback([pp, &ctx] {
    const auto pairs = furst::pure_pairs(parse_mpz(pp->m));
    Doc doc;
    doc.command = "pure-pairs";
    doc.config["limit"] = pp->m;
    doc.columns = {"first", "second", "three_exponent", "two_exponent",
                   "exponent_ratio"};
    for (const auto& p : pairs) {
      const double ratio =
          p.two_exponent == 0
              ? 0.0
              : static_cast<double>(p.three_exponent) /
                    static_cast<double>(p.two_exponent);
      doc.rows.push_back(Json::array({p.first.get_str(), p.second.get_str(),
                                      p.three_exponent, p.two_exponent, ratio}));
    }
    doc.summary["count"] = pairs.size();
    ctx.emit(doc);
  });

  auto st = std::make_shared<SturmianArgs>();
  CLI::App* st_cmd =
      app.add_subcommand("sturmian", "Coding words of the power lattice");
  st_cmd->add_option("--n", st->n, "Word length")->capture_default_str();
  st_cmd->add_option("--word", st->word, "count | merged-power | merged-rotation")
      ->check(CLI::IsMember({"count", "merged-power", "merged-rotation"}))
      ->capture_default_str();
  st_cmd->callback([st, &ctx] {
    std::vector<int> word;
    if (st->word == "count")
      word = furst::sturmian_code(st->n);
    else if (st->word == "merged-power")
      word = furst::merged_power_word(st->n);
    else
      word = furst::merged_rotation_word(st->n);
    Doc doc;
    doc.command = "sturmian";
    doc.config["n"] = st->n;
    doc.config["word"] = st->word;
    doc.columns = {"n", "symbol"};
    for (std::size_t i = 0; i < word.size(); ++i)
      doc.rows.push_back(Json::array({i + 1, word[i]}));
    std::string flat;
    for (int s : word) flat += static_cast<char>('0' + s);
    doc.summary["word"] = flat;
    ctx.emit(doc);
  });

  auto ir = std::make_shared<IrrArgs>();
  CLI::App* ir_cmd = app.add_subcommand(
      "irrationality", "min over q of ||q x|| q^rho with certification");
  ir_cmd->add_option("--x", ir->x, "Real argument")->capture_default_str();
  ir_cmd->add_option("--q-max", ir->q_max, "Denominator bound")
      ->capture_default_str();
  ir_cmd->add_option("--rho", ir->rho, "Power weight")->capture_default_str();
  ir_cmd->add_option("--bits", ir->bits, "Precision")->capture_default_str();
  ir_cmd->callback([ir, &ctx] {
    const auto profile = furst::irrationality_profile(
        parse_real(ir->x, ir->bits), ir->q_max, ir->rho);
    Doc doc;
    doc.command = "irrationality";
    doc.config["x"] = ir->x;
    doc.config["q_max"] = ir->q_max;
    doc.config["rho"] = ir->rho;
    doc.config["bits"] = ir->bits;
    doc.summary["min_value"] = profile.min_value;
    doc.summary["argmin_q"] = profile.argmin_q;
    doc.summary["certified"] = profile.certified;
    ctx.emit(doc);
  });

  auto bo = std::make_shared<BohrArgs>();
  CLI::App* bo_cmd = app.add_subcommand(
      "bohr", "Arithmetic-progression certificate that m avoids the semigroup");
  bo_cmd->add_option("--m", bo->m, "Target integer")->required();
  bo_cmd->add_option("--basis", bo->basis, "Prime generators")->delimiter(',');
  bo_cmd->add_option("--verify-limit", bo->verify_limit,
                     "Scan bound for an explicit verification (0 = skip)");
  bo_cmd->callback([bo, &ctx] {
    furst::SemigroupBasis basis(bo->basis);
    const auto cert = furst::bohr_certificate(parse_mpz(bo->m), basis);
    Doc doc;
    doc.command = "bohr";
    doc.config["m"] = bo->m;
    doc.config["basis"] = basis_json(basis.generators());
    doc.summary["target"] = cert.target.get_str();
    Json exps = Json::array();
    for (unsigned long e : cert.semigroup_exponents) exps.push_back(e);
    doc.summary["semigroup_exponents"] = exps;
    doc.summary["residual"] = cert.residual.get_str();
    doc.summary["semigroup_factor"] = cert.semigroup_factor.get_str();
    doc.summary["modulus"] = cert.modulus.get_str();
    if (!bo->verify_limit.empty() && bo->verify_limit != "0") {
      const mpz_class limit = parse_mpz(bo->verify_limit);
      doc.config["verify_limit"] = bo->verify_limit;
      doc.summary["verified"] = furst::verify_certificate(cert, basis, limit);
    }
    ctx.emit(doc);
  });

  auto co = std::make_shared<BohrArgs>();
  CLI::App* co_cmd =
      app.add_subcommand("contains", "Semigroup membership (unit included)");
  co_cmd->add_option("--m", co->m, "Candidate")->required();
  co_cmd->add_option("--basis", co->basis, "Generators")->delimiter(',');
  co_cmd->callback([co, &ctx] {
    furst::SemigroupBasis basis(co->basis);
    Doc doc;
    doc.command = "contains";
    doc.config["m"] = co->m;
    doc.config["basis"] = basis_json(basis.generators());
    doc.summary["contains"] =
        furst::semigroup_contains(basis, parse_mpz(co->m));
    ctx.emit(doc);
  });
}

}  // namespace furst_cli
