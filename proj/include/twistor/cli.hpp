#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "twistor/gw_quantum.hpp"

namespace twistor {

struct UnknownGenerator : ParseError {
    using ParseError::ParseError;
};

// Names a class expression may use, and what they stand for.
struct ClassContext {
    const PDAlgebra* alg = nullptr;
    std::map<std::string, AlgebraElement> generators;
    std::map<std::string, AlgebraElement> pulled;  // "tau*label" and friends
    std::set<std::string> parameters;
};

ClassContext base_context(const PDAlgebra& M);
// c1 and h name c1(H); c2, c3 the derived classes; alpha = -h (n = 3).
ClassContext twistor_context(const TwistorRing& Z);
ClassContext lines_context(const LinesRing& L);

AlgebraElement parse_class_expr(const std::string& text, const ClassContext& ctx);

struct GoldenCheck {
    std::string group;
    std::string anchor;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Every published closed-form value in the catalogue, checked bit-exactly.
std::vector<GoldenCheck> run_golden_suite();

std::string matrix_str(const PolyMatrix& m);

}  // namespace twistor
