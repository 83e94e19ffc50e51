#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framelet/filterbank.hpp"
#include "framelet/jet.hpp"
#include "framelet/linalg.hpp"

namespace framelet {

// r x 1 jet of phi_hat at 0; phi_hat(0) is the 1-eigenvector of a_hat(0) with
// first nonzero entry 1.
struct RefinableJet {
    JetMatrix jet;
};

// 1 x r jet of v_hat at 0, scaled so v_hat(0) phi_hat(0) = 1.
struct MatchingJet {
    JetMatrix jet;
};

// Jets as flat coefficient vectors, for linear solves in unknown jets.
using Flat = std::vector<CycNum>;
void append_flat(Flat& out, const JetMatrix& j);
// Solve F(X) = target for X of the given shape, F affine. Returns one solution
// (free coefficients zero) or nothing if inconsistent.
std::optional<JetMatrix> solve_jet_affine(int rows, int cols, int dim, int order,
                                          const std::function<Flat(const JetMatrix&)>& f, const Flat& target);

RatMatrix rat_matrix(const IntMatrix& m);
RatMatrix rat_transpose(const RatMatrix& m);
CycMatrix value_at_zero(const LMatrix& a);

// Coefficient map of xi^mu -> (M^T xi)^mu on degree j monomials.
CycMatrix degree_composition(const DilationMatrix& M, int j);
bool simple_unit_eigenvalue(const CycMatrix& a);

RefinableJet phi_jet_from_mask(const LMatrix& a, const DilationMatrix& M, int order, int L);
// Largest m <= cap with order m sum rules; the jet has order m.
std::pair<int, MatchingJet> sum_rule_order(const LMatrix& a, const DilationMatrix& M, int cap, int L);
bool verify_matching_consistency(const MatchingJet& v, const RefinableJet& phi, int m);

int generator_vmo(const LMatrix& b, const RefinableJet& phi, const DilationMatrix& M, int cap, int L);

// (e^{i N^{-1} g_1 . xi}, ..., e^{i N^{-1} g_r . xi}) to the given order.
JetMatrix balancing_vector_jet(const IntMatrix& N, int dim, int order, int L);
int balancing_vmo(const LMatrix& b, const IntMatrix& N, int cap, int L);
// Largest m <= cap for which the lowpass invariance holds with some c, c(0) != 0.
int balancing_lowpass_order(const LMatrix& a, const DilationMatrix& M, const IntMatrix& N, int cap, int L);
int balancing_order(const LMatrix& a, const LMatrix& b, const DilationMatrix& M, const IntMatrix& N, int cap, int L);

struct ConditionResult {
    std::string name;
    bool ok = false;
    int order_found = 0;
    int obstruction_order = -1;   // -1 when none was hit
    std::string note;
};

struct Theta1Report {
    bool item_i = false, item_iii = false, item_iv = false, item_v = false;
    std::vector<ConditionResult> details;
    bool ok() const { return item_i && item_iii && item_iv && item_v; }
};

// m = sr(at), mt = sr(a).
Theta1Report check_theta1_conditions(const LMatrix& a, const LMatrix& at, const LMatrix& theta, const LMatrix& thetat,
                                     const DilationMatrix& M, const IntMatrix& N, int m, int mt, int L);
Theta1Report check_theta1_conditions(const DualFrameletBank& bank);

}  // namespace framelet
