#include "diraclab/field.hpp"

#include "diraclab/errors.hpp"

#include <cmath>
#include <string>

namespace diraclab {

SpinorField::SpinorField(const Mesh& mesh, int components)
    : mesh_(mesh), nc_(components), n_(mesh.size()) {
    if (components != 2 && components != 4) {
        throw ArgumentError("spinor field: component count must be 2 or 4");
    }
    data_.assign(n_ * static_cast<std::size_t>(nc_), cplx{});
}

bool SpinorField::all_finite() const noexcept {
    for (const cplx& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

double SpinorField::sup_norm() const noexcept {
    double m = 0.0;
    for (const cplx& z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

SpinorField& SpinorField::operator+=(const SpinorField& o) {
    require_compatible(*this, o, "field +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& o) {
    require_compatible(*this, o, "field -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

SpinorField& SpinorField::operator*=(cplx s) {
    for (cplx& z : data_) z *= s;
    return *this;
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(cplx s, SpinorField a) { return a *= s; }

void require_compatible(const SpinorField& a, const SpinorField& b, const char* who) {
    if (!(a.mesh() == b.mesh()) || a.components() != b.components()) {
        throw ArgumentError(std::string(who) + ": fields live on different grids");
    }
}

} // namespace diraclab
