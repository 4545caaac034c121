#pragma once

namespace vgp {

// Modified Bessel function of the second kind K_nu(x), x > 0, any real
// order (K_{-nu} = K_nu).  Relative accuracy is ~1e-12 over the ranges
// this library uses (order up to ~5, x from 1e-6 up to overflow of e^x);
// results below the exp underflow threshold flush to zero.
//
// Internals: closed forms for half-integer orders, a small-x series and a
// continued fraction evaluated at the fractional order in [-1/2, 1/2]
// followed by upward recurrence, and a large-x expansion fast path.
double bessel_k(double order, double x);

}  // namespace vgp
