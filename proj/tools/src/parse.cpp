#include "parse.hpp"

#include <regex>
#include <stdexcept>

namespace furst_cli {

namespace {

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

mpq_class decimal_to_rational(const std::string& text) {
  const std::regex decimal_re(R"(^([+-]?)(\d+)\.(\d+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, decimal_re))
    throw std::invalid_argument("cannot parse real parameter: " + text);
  mpz_class numerator(m[2].str() + m[3].str());
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, m[3].length());
  mpq_class q(numerator, denominator);
  q.canonicalize();
  if (m[1].str() == "-") q = -q;
  return q;
}

}  // namespace

furst::CertifiedReal parse_real(const std::string& text, long bits) {
  const std::regex log_re(R"(^log\(?(\d+)\)?/log\(?(\d+)\)?$)");
  const std::regex sqrt_re(R"(^sqrt:(\d+)$)");
  const std::regex rational_re(R"(^[+-]?\d+(/\d+)?$)");
  std::smatch m;
  if (std::regex_match(text, m, log_re))
    return furst::CertifiedReal::log_ratio(std::stoul(m[1]), std::stoul(m[2]),
                                           bits);
  if (std::regex_match(text, m, sqrt_re))
    return furst::CertifiedReal::sqrt_fraction(std::stoul(m[1]), bits);
  if (std::regex_match(text, m, rational_re)) {
    mpq_class q(text);
    q.canonicalize();
    return furst::CertifiedReal::from_rational(q, bits);
  }
  return furst::CertifiedReal::from_rational(decimal_to_rational(text), bits);
}

mpz_class parse_mpz(const std::string& text) {
  try {
    return mpz_class(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse integer parameter: " + text);
  }
}

furst::SelectorProfile parse_profile(const std::string& text) {
  if (text == "furstenberg") return furst::SelectorProfile::furstenberg();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (head == "reciprocal" && !rest.empty())
    return furst::SelectorProfile::reciprocal(std::stod(rest));
  if (head == "constant" && !rest.empty())
    return furst::SelectorProfile::constant(std::stod(rest));
  if (head == "custom" && !rest.empty())
    return furst::SelectorProfile::custom(split_doubles(rest));
  throw std::invalid_argument("cannot parse selector profile: " + text);
}

furst::LambdaSpec parse_lambda(const std::string& text) {
  if (text == "log-log") return furst::LambdaSpec::log_log();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (head == "const" && !rest.empty())
    return furst::LambdaSpec::constant(std::stoul(rest));
  if (head == "table" && !rest.empty()) {
    std::vector<unsigned> values;
    for (double v : split_doubles(rest))
      values.push_back(static_cast<unsigned>(v));
    return furst::LambdaSpec::table(values);
  }
  throw std::invalid_argument("cannot parse target-size spec: " + text);
}

std::vector<mpz_class> to_mpz_list(const std::vector<std::uint64_t>& values) {
  std::vector<mpz_class> out;
  out.reserve(values.size());
  for (std::uint64_t v : values)
    out.emplace_back(static_cast<unsigned long>(v));
  return out;
}

}  // namespace furst_cli
