#ifndef ADSOLVE_ADSOLVE_HPP_
#define ADSOLVE_ADSOLVE_HPP_

#include "adsolve/bench.hpp"
#include "adsolve/config.hpp"
#include "adsolve/detect.hpp"
#include "adsolve/errors.hpp"
#include "adsolve/io.hpp"
#include "adsolve/kernels/band.hpp"
#include "adsolve/kernels/cholesky.hpp"
#include "adsolve/kernels/lu.hpp"
#include "adsolve/kernels/norm_estimate.hpp"
#include "adsolve/kernels/svd.hpp"
#include "adsolve/kernels/triangular.hpp"
#include "adsolve/matrix.hpp"
#include "adsolve/solve.hpp"

#endif  // ADSOLVE_ADSOLVE_HPP_
