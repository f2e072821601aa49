#pragma once

#include <complex>
#include <vector>

namespace inq {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

}  // namespace inq
