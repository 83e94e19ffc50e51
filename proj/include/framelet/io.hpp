#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "framelet/construct.hpp"
#include "framelet/dfrt.hpp"
#include "framelet/moments.hpp"

namespace framelet::io {

using json = nlohmann::json;

// Malformed or inconsistent input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// CycNum as phi(L) strings "p/q" in the power basis of zeta_L. A bare string is
// read as a rational.
json to_json(const CycNum& x, int L);
CycNum cyc_from_json(const json& j, int L);

json to_json(const LPoly& p, int L);
LPoly lpoly_from_json(const json& j, int L, int dim);
// row-major grid of LPoly objects
json to_json(const LMatrix& m, int L);
LMatrix lmatrix_from_json(const json& j, int L, int dim, int cols_if_empty);

json to_json(const IntMatrix& m);
IntMatrix intmatrix_from_json(const json& j);

json to_json(const DualFrameletBank& bank);
DualFrameletBank bank_from_json(const json& j);

// {"r","d","L","entries":[{"k":[...],"v":[...]}]}
json data_to_json(const LMatrix& v, int L, int scale_exponent = 0);
TaggedSeq data_from_json(const json& j, int L);

json to_json(const Coefficients& c, int L);

// {"L", "d", "mask": grid}
struct MaskFile {
    LMatrix mask;
    int L = 4;
};
MaskFile mask_from_json(const json& j);
json mask_to_json(const LMatrix& a, int L);

json report_to_json(const Theta1Report& rep);

// Parse text, mapping every JSON or shape failure to ParseError.
json parse(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
// canonical text: sorted keys, two-space indent, trailing newline
std::string dump(const json& j);

}  // namespace framelet::io
