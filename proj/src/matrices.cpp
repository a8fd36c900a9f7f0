#include "diraclab/matrices.hpp"

#include "diraclab/errors.hpp"

#include <string>

namespace diraclab {

CMat2 pauli(int index) {
    CMat2 s;
    switch (index) {
    case 1:
        s << 0.0, 1.0, 1.0, 0.0;
        break;
    case 2:
        s << 0.0, -I_unit, I_unit, 0.0;
        break;
    case 3:
        s << 1.0, 0.0, 0.0, -1.0;
        break;
    default:
        throw ArgumentError("pauli: index must be 1, 2 or 3, got " + std::to_string(index));
    }
    return s;
}

CMat4 dirac_alpha(int index) {
    if (index < 1 || index > 3) {
        throw ArgumentError("dirac_alpha: index must be 1, 2 or 3, got " + std::to_string(index));
    }
    CMat4 a = CMat4::Zero();
    const CMat2 s = pauli(index);
    a.block<2, 2>(0, 2) = s;
    a.block<2, 2>(2, 0) = s;
    return a;
}

CMat4 dirac_beta() {
    CMat4 b = CMat4::Zero();
    b.diagonal() << 1.0, 1.0, -1.0, -1.0;
    return b;
}

} // namespace diraclab
