#include "stormfield/geometry.hpp"

#include <cmath>
#include <sstream>

namespace stormfield {

std::string rotation_diagnostics(const Mat3& r, double tol) {
    std::ostringstream out;
    const char* axis_name[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
        const Vec3 row{r(i, 0), r(i, 1), r(i, 2)};
        const double len_err = std::abs(row.norm() - 1.0);
        if (len_err > tol) out << " row " << axis_name[i] << " norm deviates by " << len_err << ";";
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const Vec3 a{r(i, 0), r(i, 1), r(i, 2)};
            const Vec3 b{r(j, 0), r(j, 1), r(j, 2)};
            const double d = std::abs(a.dot(b));
            if (d > tol) out << " rows " << axis_name[i] << "/" << axis_name[j] << " dot " << d << ";";
        }
    const double dd = std::abs(r.det() - 1.0);
    if (dd > tol) out << " det deviates from +1 by " << dd << ";";
    return out.str();
}

RigidTransform RigidTransform::validated(const Mat3& r, const Vec3& t) {
    for (double v : r.m)
        if (!std::isfinite(v)) throw ValidationError("rigid transform: non-finite rotation entry");
    if (!t.finite()) throw ValidationError("rigid transform: non-finite translation");
    const std::string diag = rotation_diagnostics(r, kOrthoTol);
    if (!diag.empty()) throw ValidationError("rigid transform: rotation not SO(3):" + diag);
    return {r, t};
}

}  // namespace stormfield
