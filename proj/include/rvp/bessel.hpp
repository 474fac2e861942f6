// Modified Bessel functions K0, K1, K2 of positive real argument, evaluated
// by composite Gauss-Legendre quadrature of the cosh-substituted defining
// integrals:
//   K0(z) = int_0^inf e^{-z cosh u} du
//   K1(z) = int_0^inf e^{-z cosh u} cosh u du
//   K2(z) = (z^2/2) int_1^inf e^{-zt}(t^2-1)^{3/2} dt
//         = (z^2/2) int_0^inf e^{-z cosh u} sinh^4 u du.
// No series switching; target relative accuracy 1e-10 or better across
// z in [1e-4, 700].
#ifndef RVP_BESSEL_HPP
#define RVP_BESSEL_HPP

namespace rvp {

double bessel_k0(double z);
double bessel_k1(double z);
double bessel_k2(double z);

} // namespace rvp

#endif
