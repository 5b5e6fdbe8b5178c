#pragma once
//
// Classification of F in GL(2, C) by the eigenvalue ratio of F*F, and the
// one-parameter rotation group t -> R(t ln q^2) on R^2.
//

#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "awf/scalar.hpp"

namespace awf {

using FMatrix = Eigen::Matrix2cd;

struct ClassificationResult {
    double lambda1 = 0.0;  ///< smaller eigenvalue of F*F
    double lambda2 = 0.0;
    double rho = 0.0;      ///< lambda1 / lambda2, in (0, 1]
    double q = 0.0;        ///< sqrt(rho)
    bool boundary = false; ///< rho == 1 up to 1e-12: the free group factor case
    double rotation_speed = 0.0;  ///< ln(q^2); 0 on the boundary
    std::optional<std::string> warning;
};

inline ClassificationResult classify_F(const FMatrix& F)
{
    const Complex det = F.determinant();
    const double d = std::norm(det);           // det(F*F) = |det F|^2
    const double tr = F.squaredNorm();         // tr(F*F)
    if (det == Complex{} || !(d > 0.0) || !std::isfinite(tr))
        throw domain_error("F is singular");
    // closed-form eigenvalues of the Hermitian 2x2 F*F; the small one from
    // det / large avoids cancellation
    const double disc = std::max(0.0, tr * tr - 4.0 * d);
    const double l2 = 0.5 * (tr + std::sqrt(disc));
    const double l1 = d / l2;
    ClassificationResult r;
    r.lambda1 = l1;
    r.lambda2 = l2;
    r.rho = std::min(1.0, l1 / l2);
    r.q = std::sqrt(r.rho);
    r.boundary = std::abs(1.0 - r.rho) <= 1e-12;
    r.rotation_speed = r.boundary ? 0.0 : std::log(r.rho);
    const double cond = std::sqrt(l2 / l1);
    if (cond > 1e12)
        r.warning = "F is near-singular (condition number " + std::to_string(cond) + ")";
    return r;
}

struct RotationReport {
    double q = 0.0;
    double speed = 0.0;  ///< ln(q^2) = 2 ln q
    double t = 0.0;
    Eigen::Matrix2d matrix;  ///< [[cos, -sin], [sin, cos]] at angle t ln q^2

    std::string describe() const
    {
        return "t -> rotation by t*ln(q^2) on R^2, ln(q^2) = " + std::to_string(speed);
    }
};

inline RotationReport rotation_report(double q, double t = 0.0)
{
    const DeformationParameter p(q);
    RotationReport r;
    r.q = p.value();
    r.speed = 2.0 * std::log(r.q);
    r.t = t;
    const double th = t * r.speed;
    r.matrix << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return r;
}

}  // namespace awf
