#pragma once

#include <complex>
#include <vector>

namespace uwofdm {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

} // namespace uwofdm
