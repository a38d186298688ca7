#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "furst/selectors.hpp"
#include "parse.hpp"

namespace furst_cli {

namespace {

struct SampleArgs {
  std::string profile = "furstenberg";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  unsigned modulus = 2;
  unsigned offset = 0;
  double delta = 1.0;
  unsigned l_max = 8;
  unsigned n_blocks = 16;
};

std::string relation_text(const furst::SignedRelation& r) {
  std::string out;
  for (std::size_t i = 0; i < r.support.size(); ++i) {
    if (r.signs[i] == 0) continue;
    out += r.signs[i] > 0 ? '+' : '-';
    out += std::to_string(r.support[i]);
  }
  return out;
}

}  // namespace

void register_selectors(CLI::App& app, Ctx& ctx) {
  {
    auto sa = std::make_shared<SampleArgs>();
    CLI::App* cmd =
        app.add_subcommand("sample", "Draw a Bernoulli selector sample");
    cmd->add_option("--profile", sa->profile, "Inclusion-probability profile")
        ->capture_default_str();
    cmd->add_option("--n", sa->n, "Horizon")->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->callback([sa, &ctx] {
      const auto sample =
          furst::sample_selector(parse_profile(sa->profile), sa->n, sa->seed);
      Doc doc;
      doc.command = "sample";
      doc.config["profile"] = sample.profile_id;
      doc.config["n"] = sa->n;
      doc.seed = sa->seed;
      doc.columns = {"member"};
      for (std::uint64_t v : sample.members)
        doc.rows.push_back(Json::array({v}));
      doc.summary["size"] = sample.members.size();
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SampleArgs>();
    CLI::App* cmd = app.add_subcommand(
        "dilute", "Arithmetic-subsequence piece {k : k m + j in R}");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--n", sa->n, "Horizon")->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->add_option("--modulus", sa->modulus, "m")->capture_default_str();
    cmd->add_option("--offset", sa->offset, "j")->capture_default_str();
    cmd->callback([sa, &ctx] {
      const auto sample =
          furst::sample_selector(parse_profile(sa->profile), sa->n, sa->seed);
      const auto piece = furst::dilute(sample, sa->modulus, sa->offset);
      Doc doc;
      doc.command = "dilute";
      doc.config["profile"] = sample.profile_id;
      doc.config["n"] = sa->n;
      doc.config["modulus"] = sa->modulus;
      doc.config["offset"] = sa->offset;
      doc.seed = sa->seed;
      doc.columns = {"member"};
      for (std::uint64_t v : piece.members) doc.rows.push_back(Json::array({v}));
      doc.summary["size"] = piece.members.size();
      doc.summary["horizon"] = piece.horizon;
      doc.summary["piece_id"] = piece.profile_id;
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SampleArgs>();
    CLI::App* cmd =
        app.add_subcommand("growth", "Sample size against its expectation");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--n", sa->n, "Horizon")->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->callback([sa, &ctx] {
      const auto profile = parse_profile(sa->profile);
      const auto sample = furst::sample_selector(profile, sa->n, sa->seed);
      const auto report = furst::growth_report(sample, profile);
      Doc doc;
      doc.command = "growth";
      doc.config["profile"] = sample.profile_id;
      doc.config["n"] = sa->n;
      doc.seed = sa->seed;
      doc.summary["horizon"] = report.horizon;
      doc.summary["size"] = report.size;
      doc.summary["expected"] = report.expected;
      doc.summary["ratio"] = report.ratio;
      doc.summary["normalized"] = report.normalized;
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SampleArgs>();
    CLI::App* cmd = app.add_subcommand(
        "gaps", "Consecutive-gap records with the growth normalizers");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--n", sa->n, "Horizon")->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->add_option("--delta", sa->delta, "Shift in the liminf exponent")
        ->capture_default_str();
    cmd->callback([sa, &ctx] {
      const auto sample =
          furst::sample_selector(parse_profile(sa->profile), sa->n, sa->seed);
      const auto records = furst::gap_report(sample, sa->delta);
      Doc doc;
      doc.command = "gaps";
      doc.config["profile"] = sample.profile_id;
      doc.config["n"] = sa->n;
      doc.config["delta"] = sa->delta;
      doc.seed = sa->seed;
      doc.columns = {"index", "value",          "next",
                     "gap",   "limsup_normalized", "liminf_normalized",
                     "successive_ratio"};
      for (const auto& g : records)
        doc.rows.push_back(Json::array({g.index, g.value, g.next, g.gap,
                                        g.limsup_normalized,
                                        g.liminf_normalized,
                                        g.successive_ratio}));
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SampleArgs>();
    auto n_list = std::make_shared<std::vector<std::size_t>>();
    CLI::App* cmd = app.add_subcommand(
        "bourgain", "Expected-size-to-log ratio along horizons");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--n-list", *n_list, "Increasing horizons")
        ->delimiter(',')
        ->required();
    cmd->callback([sa, n_list, &ctx] {
      const auto profile = parse_profile(sa->profile);
      const auto ratios = furst::bourgain_ratio(profile, *n_list);
      Doc doc;
      doc.command = "bourgain";
      doc.config["profile"] = profile.id();
      Json ns = Json::array();
      for (std::size_t n : *n_list) ns.push_back(n);
      doc.config["n_list"] = ns;
      doc.columns = {"n", "ratio"};
      for (std::size_t i = 0; i < ratios.size(); ++i)
        doc.rows.push_back(Json::array({(*n_list)[i], ratios[i]}));
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SampleArgs>();
    auto n_rel = std::make_shared<unsigned>(4);
    auto a = std::make_shared<double>(0.0);
    auto a_exp = std::make_shared<double>(0.0);
    CLI::App* cmd = app.add_subcommand(
        "relation-bound",
        "Probability bound for a length-n relation beyond the cut point");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--n", *n_rel, "Relation length")->capture_default_str();
    auto* a_opt = cmd->add_option("--a", *a, "Cut point");
    cmd->add_option("--a-exp", *a_exp, "Cut point as exp(value)")
        ->excludes(a_opt);
    cmd->callback([sa, n_rel, a, a_exp, &ctx] {
      const double cut = *a_exp > 0.0 ? std::exp(*a_exp) : *a;
      if (cut <= 0.0)
        throw std::invalid_argument("relation-bound needs --a or --a-exp");
      const auto profile = parse_profile(sa->profile);
      Doc doc;
      doc.command = "relation-bound";
      doc.config["profile"] = profile.id();
      doc.config["n"] = *n_rel;
      doc.config["a"] = cut;
      doc.summary["bound"] = furst::relation_bound(*n_rel, cut, profile);
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SampleArgs>();
    CLI::App* cmd = app.add_subcommand(
        "kk-blocks",
        "Per-block head counts and bounded relation scans on a sample");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--n", sa->n, "Horizon")->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->add_option("--l-max", sa->l_max, "Relation-length cap")
        ->capture_default_str();
    cmd->callback([sa, &ctx] {
      const auto sample =
          furst::sample_selector(parse_profile(sa->profile), sa->n, sa->seed);
      const auto blocks = furst::kk_block_analysis(sample, sa->l_max);
      Doc doc;
      doc.command = "kk-blocks";
      doc.config["profile"] = sample.profile_id;
      doc.config["n"] = sa->n;
      doc.config["l_max"] = sa->l_max;
      doc.seed = sa->seed;
      doc.columns = {"block",     "threshold",      "head_count", "scan_length",
                     "tail_size", "relation_found", "relation"};
      for (const auto& b : blocks)
        doc.rows.push_back(Json::array(
            {b.block, b.threshold, b.head_count, b.scan_length, b.tail_size,
             b.relation.has_value(),
             b.relation ? relation_text(*b.relation) : std::string()}));
      ctx.emit(doc);
    });
  }
}

}  // namespace furst_cli
