#include <memory>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "furst/quasi_independence.hpp"
#include "furst/selectors.hpp"
#include "furst/semigroup.hpp"
#include "parse.hpp"

namespace furst_cli {

namespace {

struct SetArgs {
  std::vector<std::uint64_t> set;
  std::vector<int> blocks;
  unsigned n = 0;
  std::string profile = "furstenberg";
  std::size_t horizon = 1 << 17;
  std::uint64_t seed = 0;
  unsigned n_max = 16;
  std::vector<std::string> points;
  std::vector<unsigned long> basis{2, 3};
  std::vector<std::size_t> n_list;
};

Json u64_array(const std::vector<std::uint64_t>& values) {
  Json arr = Json::array();
  for (std::uint64_t v : values) arr.push_back(v);
  return arr;
}

void fill_extraction(Doc& doc, const furst::ExtractionReport& report) {
  doc.summary["input_size"] = report.input.size();
  doc.summary["subset"] = u64_array(report.subset);
  doc.summary["subset_size"] = report.subset.size();
  doc.summary["method"] = report.method;
  doc.summary["certification"] =
      furst::certification_name(report.certification);
  doc.summary["certified_length"] = report.certified_length;
  doc.summary["ratio"] = report.ratio;
  doc.summary["exponent"] = report.exponent;
}

}  // namespace

void register_qi(CLI::App& app, Ctx& ctx) {
  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd = app.add_subcommand(
        "qi-test", "Exact quasi-independence test with witness");
    cmd->add_option("--set", sa->set, "Distinct positive integers")
        ->delimiter(',')
        ->required();
    cmd->callback([sa, &ctx] {
      const auto result = furst::is_quasi_independent(sa->set);
      Doc doc;
      doc.command = "qi-test";
      doc.config["set"] = u64_array(sa->set);
      doc.summary["quasi_independent"] = result.quasi_independent;
      if (result.witness) {
        Json signs = Json::array();
        for (int s : result.witness->signs) signs.push_back(s);
        doc.summary["witness_support"] = u64_array(result.witness->support);
        doc.summary["witness_signs"] = signs;
        doc.summary["witness_length"] = result.witness->length;
      }
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd = app.add_subcommand(
        "qi-max", "Maximum quasi-independent subset (branch and bound)");
    cmd->add_option("--set", sa->set, "Distinct positive integers")
        ->delimiter(',')
        ->required();
    cmd->callback([sa, &ctx] {
      Doc doc;
      doc.command = "qi-max";
      doc.config["set"] = u64_array(sa->set);
      fill_extraction(doc, furst::max_quasi_independent_exact(sa->set));
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd = app.add_subcommand(
        "qi-extract", "Greedy quasi-independent extraction");
    cmd->add_option("--set", sa->set, "Distinct positive integers")
        ->delimiter(',')
        ->required();
    cmd->callback([sa, &ctx] {
      Doc doc;
      doc.command = "qi-extract";
      doc.config["set"] = u64_array(sa->set);
      fill_extraction(doc, furst::extract_greedy(sa->set));
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd =
        app.add_subcommand("dyadic", "Slice a sorted set to [2^n, 2^{n+1})");
    cmd->add_option("--set", sa->set, "Sorted set")->delimiter(',')->required();
    cmd->add_option("--n", sa->n, "Dyadic index")->required();
    cmd->callback([sa, &ctx] {
      const auto block = furst::dyadic_block(sa->set, sa->n);
      Doc doc;
      doc.command = "dyadic";
      doc.config["set_size"] = sa->set.size();
      doc.config["n"] = sa->n;
      doc.columns = {"value"};
      for (std::uint64_t v : block) doc.rows.push_back(Json::array({v}));
      doc.summary["size"] = block.size();
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd = app.add_subcommand(
        "case-split", "Square-root extraction via the block dichotomy");
    cmd->add_option("--values", sa->set, "Set elements")
        ->delimiter(',')
        ->required();
    cmd->add_option("--blocks", sa->blocks,
                    "Block index of each element (aligned)")
        ->delimiter(',')
        ->required();
    cmd->callback([sa, &ctx] {
      furst::BlockedSet blocked{sa->set, sa->blocks};
      Doc doc;
      doc.command = "case-split";
      doc.config["size"] = sa->set.size();
      fill_extraction(doc, furst::case_split_extract(blocked));
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd = app.add_subcommand(
        "big-subset",
        "Union of greedy extractions over dyadic blocks of a sample");
    cmd->add_option("--profile", sa->profile, "Profile")->capture_default_str();
    cmd->add_option("--horizon", sa->horizon, "Sample horizon")
        ->capture_default_str();
    cmd->add_option("--seed", sa->seed, "RNG seed")->capture_default_str();
    cmd->add_option("--n-max", sa->n_max, "Last dyadic index")
        ->capture_default_str();
    cmd->callback([sa, &ctx] {
      const auto sample = furst::sample_selector(parse_profile(sa->profile),
                                                 sa->horizon, sa->seed);
      const auto report = furst::build_big_subset(sample, sa->n_max);
      Doc doc;
      doc.command = "big-subset";
      doc.config["profile"] = sample.profile_id;
      doc.config["horizon"] = sa->horizon;
      doc.config["n_max"] = sa->n_max;
      doc.seed = sa->seed;
      doc.columns = {"n", "subset_count", "sample_count", "ratio"};
      for (const auto& d : report.density)
        doc.rows.push_back(
            Json::array({d.n, d.subset_count, d.sample_count, d.ratio}));
      Json blocks = Json::array();
      for (const auto& b : report.blocks) {
        Json item = Json::object();
        item["block"] = b.block;
        item["block_size"] = b.block_size;
        item["kept"] = b.report.subset.size();
        item["certification"] =
            furst::certification_name(b.report.certification);
        blocks.push_back(item);
      }
      doc.summary["members_total"] = report.members.size();
      doc.summary["blocks"] = blocks;
      ctx.emit(doc);
    });
  }

  {
    auto sa = std::make_shared<SetArgs>();
    CLI::App* cmd = app.add_subcommand(
        "mesh-p", "Exponent fit of block counts and the induced p bound");
    auto* pts = cmd->add_option("--points", sa->points,
                                "Data points as N=count pairs");
    pts->delimiter(',');
    cmd->add_option("--basis", sa->basis,
                    "Semigroup generators (counts computed when --points "
                    "is absent)")
        ->delimiter(',');
    cmd->add_option("--n-list", sa->n_list, "Horizons for computed counts")
        ->delimiter(',');
    cmd->callback([sa, &ctx] {
      std::vector<std::pair<std::size_t, std::size_t>> counts;
      Doc doc;
      doc.command = "mesh-p";
      if (!sa->points.empty()) {
        for (const auto& p : sa->points) {
          const auto eq = p.find('=');
          if (eq == std::string::npos)
            throw std::invalid_argument("points must look like N=count");
          counts.emplace_back(std::stoull(p.substr(0, eq)),
                              std::stoull(p.substr(eq + 1)));
        }
        doc.config["points"] = sa->points;
      } else {
        if (sa->n_list.empty())
          throw std::invalid_argument("mesh-p needs --points or --n-list");
        furst::SemigroupBasis basis(sa->basis);
        Json echo = Json::array();
        for (unsigned long g : basis.generators()) echo.push_back(g);
        doc.config["basis"] = echo;
        Json ns = Json::array();
        for (std::size_t n : sa->n_list) {
          counts.emplace_back(
              n, furst::count_upto(basis, mpz_class(static_cast<unsigned long>(n))));
          ns.push_back(n);
        }
        doc.config["n_list"] = ns;
      }
      const auto fit = furst::mesh_p_bound(counts);
      doc.columns = {"n", "count"};
      for (const auto& [n, c] : counts)
        doc.rows.push_back(Json::array({n, c}));
      doc.summary["gamma"] = fit.gamma;
      doc.summary["c"] = fit.c;
      doc.summary["p_min"] = fit.p_min;
      ctx.emit(doc);
    });
  }
}

}  // namespace furst_cli
