#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "framelet/filterbank.hpp"
#include "framelet/jet.hpp"
#include "framelet/normalform.hpp"

namespace framelet {

// Input does not satisfy what the construction needs.
class HypothesisError : public std::domain_error {
public:
    HypothesisError(std::string stage, const std::string& what)
        : std::domain_error(stage + ": " + what), stage(std::move(stage)) {}
    std::string stage;
};

// An identity that must hold by construction failed.
class VerificationError : public std::runtime_error {
public:
    VerificationError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage(std::move(stage)) {}
    std::string stage;
};

struct ConstructOptions {
    int L = 0;   // 0: smallest order that fits M and both masks
};

struct ThetaPair {
    InvertiblePair theta, thetat;
    InvertiblePair W, Wt, UV;     // theta = UV^{-1} W, thetat = UV^* Wt
    JetMatrix v, vt, phi, phit;   // orders mt, m, n, n
    JetMatrix target_v, target_phi, target_vt, target_phit;
    int m = 0, mt = 0;
};

ThetaPair build_theta_pair(const LMatrix& a, const LMatrix& at, const DilationMatrix& M, const IntMatrix& N, int L);

// A_j = delta(omega_j) I - conj(a)^T at(. + 2 pi omega_j), j = 1..d_M.
// a, at in ideal normal form of orders (mt, n) and (m, n).
std::vector<LMatrix> build_Aj(const LMatrix& a, const LMatrix& at, const DilationMatrix& M, int m, int mt, int L);

// diag(nabla^mu, 1, ..., 1)
LMatrix delta_filter(int r, int dim, const Index& mu);

using CellKey = std::pair<Index, Index>;   // (alpha, beta)
using CellTable = std::map<CellKey, LMatrix>;

// A = sum conj(Delta_alpha)^T A_{alpha,beta} Delta_beta(. + 2 pi omega), |alpha| = m, |beta| = mt.
CellTable decompose_Aj(const LMatrix& A, int m, int mt, const RatVec& omega, int L);
LMatrix recompose_Aj(const CellTable& t, int r, int dim, const RatVec& omega, int L);

struct Generators {
    std::vector<CellKey> cells;   // order of the stacked blocks
    std::map<CellKey, LMatrix> E;
    LMatrix b, bt;                // s x r, s = d_M r #cells
};

Generators assemble_generators(const std::vector<CellTable>& tables, const DilationMatrix& M, int r, int L);

struct PruneResult {
    LMatrix b, bt;
    std::vector<int> dropped;   // row indices of the input stack
};
PruneResult prune_zero_rows(const LMatrix& b, const LMatrix& bt);

struct ConstructionTrace {
    ThetaPair theta;
    InvertiblePair U;
    LMatrix a_ring, at_ring;
    std::vector<LMatrix> A;
    std::vector<CellTable> cells;
    Generators gens;
    PruneResult pruned;
    DualFrameletBank bank;
    std::vector<std::pair<std::string, bool>> checks;   // every identity asserted on the way
    bool ok() const {
        for (const auto& c : checks)
            if (!c.second) return false;
        return true;
    }
};

ConstructionTrace construct_dual_multiframelet(const LMatrix& a, const LMatrix& at, const DilationMatrix& M,
                                               const IntMatrix& N, const ConstructOptions& opts = {});
// r = 1: theta = delta, thetat carries Theta; no strong invertibility.
DualFrameletBank construct_scalar(const LMatrix& a, const LMatrix& at, const DilationMatrix& M,
                                  const ConstructOptions& opts = {});

int construction_field_order(const LMatrix& a, const LMatrix& at, const DilationMatrix& M);

}  // namespace framelet
