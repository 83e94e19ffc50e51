#pragma once

#include <vector>

#include "framelet/exactfield.hpp"

namespace framelet {

using IntVec = std::vector<long long>;
using IntMatrix = std::vector<IntVec>;   // row major, square where it matters
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

Rational int_det(const IntMatrix& m);
RatMatrix rat_inverse(const IntMatrix& m);
IntMatrix transpose(const IntMatrix& m);
IntMatrix int_matmul(const IntMatrix& a, const IntMatrix& b);
IntVec int_apply(const IntMatrix& m, const IntVec& v);
RatVec rat_apply(const RatMatrix& m, const IntVec& v);
RatVec rat_apply(const RatMatrix& m, const RatVec& v);
IntMatrix identity_int(int d);

struct DilationMatrix {
    IntMatrix entries;
    int dim = 0;
    long long abs_det = 0;

    IntMatrix transposed() const { return transpose(entries); }
};

DilationMatrix validate_dilation(const IntMatrix& m);

// gamma_1 = 0, then ordered with the last coordinate most significant.
std::vector<IntVec> gamma_cosets(const IntMatrix& m);
inline std::vector<IntVec> gamma_cosets(const DilationMatrix& m) { return gamma_cosets(m.entries); }
std::vector<RatVec> omega_cosets(const DilationMatrix& m);

// index of the gamma coset containing k
size_t coset_index(const IntMatrix& m, const std::vector<IntVec>& reps, const IntVec& k);

int default_field_order(const DilationMatrix& m);

}  // namespace framelet
