#include <memory>
#include <string>
#include <vector>

#include "cmds.hpp"
#include "furst/quasi_independence.hpp"
#include "furst/semigroup.hpp"
#include "furst/trig_norms.hpp"
#include "parse.hpp"

namespace furst_cli {

namespace {

struct FreqArgs {
  std::vector<std::uint64_t> freqs;
  std::vector<unsigned long> basis{2, 3};
  std::size_t count = 0;

  std::vector<std::uint64_t> resolve(Doc& doc) const {
    if (!freqs.empty()) {
      Json echo = Json::array();
      for (std::uint64_t f : freqs) echo.push_back(f);
      doc.config["freqs"] = echo;
      return freqs;
    }
    if (count == 0)
      throw std::invalid_argument("needs --freqs or --basis with --count");
    furst::SemigroupBasis b(basis);
    Json echo = Json::array();
    for (unsigned long g : b.generators()) echo.push_back(g);
    doc.config["basis"] = echo;
    doc.config["count"] = count;
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (const auto& t : furst::enumerate_first(b, count)) {
      if (!t.value.fits_ulong_p())
        throw std::invalid_argument("frequency exceeds 64 bits");
      out.push_back(t.value.get_ui());
    }
    return out;
  }
};

void add_freq_options(CLI::App* cmd, const std::shared_ptr<FreqArgs>& fa) {
  cmd->add_option("--freqs", fa->freqs, "Explicit frequency list")
      ->delimiter(',');
  cmd->add_option("--basis", fa->basis, "Semigroup generators")->delimiter(',');
  cmd->add_option("--count", fa->count, "Number of leading semigroup terms");
}

void fill_estimate(Doc& doc, const furst::NormEstimate& est) {
  doc.summary["kind"] = furst::norm_kind_name(est.kind);
  doc.summary["value"] = est.value;
  if (est.grid_size > 0) doc.summary["grid_size"] = est.grid_size;
  if (!est.q_list.empty()) {
    Json qs = Json::array();
    for (double q : est.q_list) qs.push_back(q);
    doc.summary["q_list"] = qs;
  }
  doc.summary["refinement_delta"] = est.refinement_delta;
  if (est.standard_error > 0.0)
    doc.summary["standard_error"] = est.standard_error;
}

struct NormArgs {
  double q = 4.0;
  std::string mode = "exact";
  std::size_t grid = 0;
  std::string method = "orlicz";
  std::string profile = "furstenberg";
  std::size_t horizon = 1 << 15;
  std::uint64_t seed = 0;
  unsigned block = 10;
  std::size_t trials = 200;
  std::vector<std::uint64_t> set;
};

}  // namespace

void register_norms(CLI::App& app, Ctx& ctx) {
  {
    auto fa = std::make_shared<FreqArgs>();
    auto na = std::make_shared<NormArgs>();
    CLI::App* cmd = app.add_subcommand(
        "lq", "L^q norm of a unit-coefficient trigonometric polynomial");
    add_freq_options(cmd, fa);
    cmd->add_option("--q", na->q, "Exponent")->capture_default_str();
    cmd->add_option("--mode", na->mode, "Evaluation mode")
        ->check(CLI::IsMember({"exact", "grid"}))
        ->capture_default_str();
    cmd->add_option("--grid", na->grid,
                    "Grid size (0 picks one past the bandwidth)")
        ->capture_default_str();
    cmd->callback([fa, na, &ctx] {
      Doc doc;
      doc.command = "lq";
      const auto f = furst::TrigPolynomial::characters(fa->resolve(doc));
      doc.config["q"] = na->q;
      doc.config["mode"] = na->mode;
      const auto mode =
          na->mode == "exact" ? furst::LqMode::exact : furst::LqMode::grid;
      const auto est = furst::lq_norm(f, na->q, mode, na->grid);
      doc.summary["terms"] = f.size();
      doc.summary["l2_norm"] = f.l2_norm();
      fill_estimate(doc, est);
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto na = std::make_shared<NormArgs>();
    CLI::App* cmd = app.add_subcommand("psi2", "Subgaussian norm estimate");
    add_freq_options(cmd, fa);
    cmd->add_option("--method", na->method, "Estimator")
        ->check(CLI::IsMember({"orlicz", "supq"}))
        ->capture_default_str();
    cmd->callback([fa, na, &ctx] {
      Doc doc;
      doc.command = "psi2";
      const auto f = furst::TrigPolynomial::characters(fa->resolve(doc));
      doc.config["method"] = na->method;
      const auto method = na->method == "orlicz" ? furst::Psi2Method::orlicz
                                                 : furst::Psi2Method::supq;
      doc.summary["terms"] = f.size();
      fill_estimate(doc, furst::psi2_norm(f, method));
      ctx.emit(doc);
    });
  }

  {
    auto na = std::make_shared<NormArgs>();
    CLI::App* cmd = app.add_subcommand(
        "psi-block",
        "Subgaussian norm of a dyadic block of a selector sample, scaled by "
        "the square root of the block size");
    cmd->add_option("--profile", na->profile, "Profile")->capture_default_str();
    cmd->add_option("--horizon", na->horizon, "Sample horizon")
        ->capture_default_str();
    cmd->add_option("--seed", na->seed, "RNG seed")->capture_default_str();
    cmd->add_option("--block", na->block, "Dyadic index n")
        ->capture_default_str();
    cmd->callback([na, &ctx] {
      const auto sample = furst::sample_selector(parse_profile(na->profile),
                                                 na->horizon, na->seed);
      const auto block = furst::dyadic_block(sample.members, na->block);
      Doc doc;
      doc.command = "psi-block";
      doc.config["profile"] = sample.profile_id;
      doc.config["horizon"] = na->horizon;
      doc.config["block"] = na->block;
      doc.seed = na->seed;
      doc.summary["block_size"] = block.size();
      fill_estimate(doc, furst::psi_block_ratio(sample, na->block));
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto na = std::make_shared<NormArgs>();
    CLI::App* cmd = app.add_subcommand(
        "lambda-q",
        "Monte-Carlo lower estimate of the L^q/L^2 comparison constant");
    cmd->add_option("--set", na->set, "Explicit support set")->delimiter(',');
    cmd->add_option("--basis", fa->basis, "Semigroup generators")
        ->delimiter(',');
    cmd->add_option("--take", fa->count, "Number of leading semigroup terms");
    cmd->add_option("--q", na->q, "Exponent")->capture_default_str();
    cmd->add_option("--trials", na->trials, "Random coefficient draws")
        ->capture_default_str();
    cmd->add_option("--seed", na->seed, "RNG seed")->capture_default_str();
    cmd->callback([fa, na, &ctx] {
      Doc doc;
      doc.command = "lambda-q";
      std::vector<std::uint64_t> set;
      if (!na->set.empty()) {
        set = na->set;
        Json echo = Json::array();
        for (std::uint64_t v : set) echo.push_back(v);
        doc.config["set"] = echo;
      } else {
        fa->freqs.clear();
        set = fa->resolve(doc);
      }
      doc.config["q"] = na->q;
      doc.config["trials"] = na->trials;
      doc.seed = na->seed;
      doc.summary["support"] = std::min<std::size_t>(set.size(), 64);
      doc.summary["estimate"] =
          furst::lambda_q_estimate(set, na->q, na->trials, na->seed);
      ctx.emit(doc);
    });
  }

  {
    auto fa = std::make_shared<FreqArgs>();
    auto na = std::make_shared<NormArgs>();
    CLI::App* cmd = app.add_subcommand(
        "rider", "Expected sup norm over random sign flips");
    add_freq_options(cmd, fa);
    cmd->add_option("--trials", na->trials, "Sign-flip draws")
        ->capture_default_str();
    cmd->add_option("--seed", na->seed, "RNG seed")->capture_default_str();
    cmd->callback([fa, na, &ctx] {
      Doc doc;
      doc.command = "rider";
      const auto f = furst::TrigPolynomial::characters(fa->resolve(doc));
      doc.config["trials"] = na->trials;
      doc.seed = na->seed;
      const auto est = furst::rider_functional(f, na->trials, na->seed);
      doc.summary["terms"] = f.size();
      fill_estimate(doc, est);
      const double coeff = f.coefficient_norm(1.5);
      doc.summary["coefficient_norm_3_2"] = coeff;
      doc.summary["ratio_3_2"] = est.value > 0.0 ? coeff / est.value : 0.0;
      ctx.emit(doc);
    });
  }
}

}  // namespace furst_cli
