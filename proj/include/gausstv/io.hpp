#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gausstv/discrete_pair.hpp"
#include "gausstv/gaussian_model.hpp"

namespace gausstv::io {

/// Parses "p/q" or a decimal literal. Throws InvalidInput for anything
/// else, for a zero denominator or for non-finite values.
double parse_rational(std::string_view text);

/// {"mu1": [..], "sigma1": [[..]], "mu2": [..], "sigma2": [[..]]}.
/// Syntax errors are reported as "<source>:<line>:<col>: ..." InvalidInput.
std::pair<GaussianParams, GaussianParams> parse_gaussian_pair(
    std::string_view text, std::string_view source = "input");

/// {"pairs": [{"p": [..], "q": [..]}, ...]}.
std::vector<DiscreteDistributionPair> parse_discrete_pairs(
    std::string_view text, std::string_view source = "input");

/// Shortest decimal text that reads back as the same double.
std::string format_double(double x);

}  // namespace gausstv::io
