#pragma once

// Closed-form hyperbolic trigonometry for collars and thin parts of
// surfaces of constant curvature -1.
//
// Every function is a pure map over positive reals. Inputs outside the
// domain of a formula raise hypmath::DomainError instead of returning NaN,
// because callers branch on the thin/thick classification.

#include <stdexcept>
#include <string>

namespace cheegernet::hypmath {

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// arcsinh(1) = ln(1 + sqrt 2), the upper limit for the Margulis parameter.
inline constexpr double kArcsinhOne = 0.88137358701954302523;

/// Margulis parameter eps with 0 < eps < arcsinh(1).
class MargulisParam {
  public:
    explicit MargulisParam(double eps);

    double value() const noexcept { return eps_; }
    double sinh_eps() const noexcept { return sinh_eps_; }

    friend bool operator==(const MargulisParam&, const MargulisParam&) = default;

  private:
    double eps_;
    double sinh_eps_;
};

/// Collar of core length L and half width w around a closed geodesic.
struct CollarGeometry {
    double core_length = 0.0;
    double half_width = 0.0;
    double boundary_component_length = 0.0;  // L cosh w
    double area = 0.0;                       // 2 L sinh w

    static CollarGeometry make(double core_length, double half_width);
};

/// arccosh(1 + t) for t >= 0, accurate when t is tiny.
double arccosh1p(double t);

/// Width w of the standard collar: cosh w = coth(l / 2).
double collar_width(double l);

/// Half width h of the eps-thin collar: cosh h = sinh(eps) / sinh(l / 2).
/// Requires 0 < l <= 2 eps.
double thin_half_width(double l, MargulisParam eps);

/// Length of one boundary curve of the eps-thin collar, l sinh(eps) / sinh(l/2).
double thin_boundary_length(double l, MargulisParam eps);

/// Area of the eps-thin collar, 2 l sinh(h). Always below 4 sinh(eps).
double thin_collar_area(double l, MargulisParam eps);

/// Thin collar geometry assembled from the three functions above.
CollarGeometry thin_collar(double l, MargulisParam eps);

struct ShrunkCollarBound {
    double half_width = 0.0;    // h
    double area_shrunk = 0.0;   // area of the collar of width h - delta0
    double full_area = 0.0;     // area of the collar of width h
    double floor = 0.0;         // (2d / sinh d) sqrt(sinh^2 eps - sinh^2 d)
    bool delta0_below_h = false;
    bool holds = false;         // area_shrunk > full/2 >= floor and delta0 < h
};

/// Shrinking a thin collar by delta0 <= ln(4/3) keeps more than half its area.
/// Requires l <= 2 arcsinh((sqrt 3 / 4) sinh eps).
ShrunkCollarBound shrunk_collar_area_bound(double l, MargulisParam eps, double delta0);

/// Largest l accepted by shrunk_collar_area_bound.
double shrunk_collar_max_length(MargulisParam eps);

/// Cusp collar of area 2 sinh(eps); its boundary horocycle has the same length.
struct CuspCollar {
    double lambda = 0.0;
    double boundary_length = 0.0;
    double area = 0.0;
};

CuspCollar cusp_collar(MargulisParam eps);

/// Distance between the eps-thin collar and the boundary of the standard
/// collar, collar_width(l) - thin_half_width(l, eps). Increasing in l and
/// bounded below by ln(1 / sinh eps).
double thin_separation(double l, MargulisParam eps);

/// Area of an embedded disk of radius r: 4 pi sinh^2(r/2).
double ball_area(double r);
/// Length of an embedded circle of radius r: 2 pi sinh(r).
double ball_circumference(double r);

/// Right-angled quadrilateral relation sinh(alpha) = sinh(a) cosh(beta).
double quad_relation(double a, double beta);

/// Largest admissible net spacing: min{ ln(1/sinh eps), arcsinh((sqrt 3/4) sinh eps) }.
double delta1(MargulisParam eps);

}  // namespace cheegernet::hypmath
