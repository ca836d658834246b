#pragma once

#include <string>

namespace hinrisk {

// Upper tail of the chi-square distribution with one degree of freedom,
// P(X > w) = erfc(sqrt(w/2)). Accurate to ~1e-15 relative through the far
// tail; results below 1e-300 are clamped (see p_value_clamped).
double chi_square1_upper_tail(double w);

// True when the exact tail would underflow past the 1e-300 clamp.
bool p_value_clamped(double w);

// Significance stars: **** p<0.001, *** p<0.01, ** p<0.05, * p<0.1, else "".
std::string significance_stars(double p);

// p-value formatted in scientific notation with 5 significant digits.
std::string format_p_value(double p);

double sigmoid(double eta);
// log(1 + exp(eta)) without overflow.
double softplus(double eta);

}  // namespace hinrisk
