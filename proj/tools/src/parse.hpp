#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "furst/diophantine.hpp"
#include "furst/equidistribution.hpp"
#include "furst/selectors.hpp"

namespace furst_cli {

// Accepted spellings for a circle/real argument:
//   "log2/log3"   log-ratio, certified at `bits`
//   "sqrt:N"      fractional part of sqrt(N)
//   "3/7"         exact rational
//   "0.625"       exact decimal (scaled integer, not a float round-trip)
//   "2"           integer
furst::CertifiedReal parse_real(const std::string& text, long bits = 256);

mpz_class parse_mpz(const std::string& text);

// "furstenberg" | "reciprocal:C" | "constant:V" | "custom:v1,v2,..."
furst::SelectorProfile parse_profile(const std::string& text);

// "log-log" | "const:K" | "table:v1,v2,..."
furst::LambdaSpec parse_lambda(const std::string& text);

std::vector<mpz_class> to_mpz_list(const std::vector<std::uint64_t>& values);

}  // namespace furst_cli
