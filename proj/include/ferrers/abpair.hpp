#pragma once

#include "complex.hpp"

namespace ferrers {

enum class AbMethod { expansion, taylor, contour, exact };

inline const char* to_string(AbMethod m) {
    switch (m) {
        case AbMethod::expansion: return "expansion";
        case AbMethod::taylor: return "taylor";
        case AbMethod::contour: return "contour";
        case AbMethod::exact: return "exact";
    }
    return "?";
}

// Slowly varying coefficient functions and their z-derivatives.
struct AbPair {
    CReal A, B;
    CReal dA, dB;  // d/dz, when has_derivative
    bool has_derivative = false;
    AbMethod method = AbMethod::expansion;
};

}  // namespace ferrers
