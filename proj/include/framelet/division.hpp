#pragma once

#include <map>
#include <optional>
#include <utility>

#include "framelet/lpoly.hpp"

namespace framelet {

// Quotients keyed by the exponent of the difference factor.
using DivisionMap = std::map<Index, LPoly>;
using PairDivisionMap = std::map<std::pair<Index, Index>, LPoly>;

enum class Flavor { plain, conj };

// Difference factor prod (1 - z_l)^{alpha_l}; conj flavor uses z_l^{-1}.
LPoly nabla_factor(int dim, const Index& alpha, Flavor f);

// c = sum_{|alpha| = m} nabla^alpha * c_alpha. Needs c = O(|xi|^m) at 0.
DivisionMap divide_at_origin(const LPoly& c, int m, Flavor f = Flavor::plain);
// c(xi) = sum_beta nabla^beta(xi + 2 pi omega) c_beta(xi). Needs c = O(|xi|^m) at -2 pi omega.
DivisionMap divide_at_point(const LPoly& c, int m, const RatVec& omega, int L);
// c(xi) = sum conj(nabla^alpha(xi)) z_{alpha,beta}(xi) nabla^beta(xi + 2 pi omega),
// |alpha| = m, |beta| = mt.
PairDivisionMap divide_two_point(const LPoly& c, int m, int mt, const RatVec& omega, int L);

// Coefficient-matching linear solve on the box [-radius, radius]^d, growing the
// radius up to max_radius. Independent check of divide_two_point.
std::optional<PairDivisionMap> divide_two_point_solve(const LPoly& c, int m, int mt, const RatVec& omega, int L,
                                                      int max_radius);

LPoly recompose_origin(const DivisionMap& parts, int dim, Flavor f = Flavor::plain);
LPoly recompose_point(const DivisionMap& parts, int dim, const RatVec& omega, int L);
LPoly recompose_two_point(const PairDivisionMap& parts, int dim, const RatVec& omega, int L);

}  // namespace framelet
