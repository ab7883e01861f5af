#pragma once

namespace memfract {

/// Gamma function, Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula for arguments below 1/2. Good to >= 12 significant
/// digits on |x| <= 50. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// 1/Gamma(x) with the pole convention: exactly 0 at non-positive integers.
/// This is what makes every closed-form fractional derivative reduce to the
/// classical derivative at integer orders without special casing.
double reciprocal_gamma(double x);

bool is_nonpositive_integer(double x);

} // namespace memfract
