#pragma once

#include "framelet/lpoly.hpp"

namespace framelet {

// Scalar refinement masks for dilation 2, normalized to sum 1.
LPoly haar_mask();
LPoly haar_highpass();
LPoly hat_mask();

// p(xi_1) q(xi_2) ... as a mask in p.dim() + q.dim() variables
LPoly tensor_product(const LPoly& p, const LPoly& q);

}  // namespace framelet
