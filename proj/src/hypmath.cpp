#include "cheegernet/hypmath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cheegernet::hypmath {

namespace {

void require_positive(double x, const char* what) {
    if (!std::isfinite(x) || x <= 0.0) {
        std::ostringstream os;
        os << what << " must be positive and finite, got " << x;
        throw DomainError(os.str());
    }
}

void require_thin(double l, MargulisParam eps) {
    require_positive(l, "geodesic length");
    if (l > 2.0 * eps.value() * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "geodesic not eps-thin: length " << l << " > 2 eps = " << 2.0 * eps.value();
        throw DomainError(os.str());
    }
}

// sinh(eps) - sinh(l/2) without cancellation near l = 2 eps.
double sinh_gap(double eps, double half_l) {
    return 2.0 * std::cosh(0.5 * (eps + half_l)) * std::sinh(0.5 * std::max(eps - half_l, 0.0));
}

}  // namespace

MargulisParam::MargulisParam(double eps) : eps_(eps), sinh_eps_(0.0) {
    if (!std::isfinite(eps) || eps <= 0.0 || eps >= kArcsinhOne) {
        std::ostringstream os;
        os << "Margulis parameter must satisfy 0 < eps < arcsinh(1), got " << eps;
        throw DomainError(os.str());
    }
    sinh_eps_ = std::sinh(eps);
}

CollarGeometry CollarGeometry::make(double core_length, double half_width) {
    require_positive(core_length, "core length");
    if (!std::isfinite(half_width) || half_width < 0.0) {
        throw DomainError("collar half width must be finite and non-negative");
    }
    return CollarGeometry{core_length, half_width, core_length * std::cosh(half_width),
                          2.0 * core_length * std::sinh(half_width)};
}

double arccosh1p(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw DomainError("arccosh argument below 1");
    }
    if (t < 1e-8) {
        // arccosh(1+t) = sqrt(2t) (1 - t/12 + 3t^2/160 - ...)
        return std::sqrt(2.0 * t) * (1.0 - t / 12.0);
    }
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double collar_width(double l) {
    require_positive(l, "geodesic length");
    // coth(l/2) - 1 = 2 / (e^l - 1)
    return arccosh1p(2.0 / std::expm1(l));
}

double thin_half_width(double l, MargulisParam eps) {
    require_thin(l, eps);
    const double half = 0.5 * l;
    return arccosh1p(sinh_gap(eps.value(), half) / std::sinh(half));
}

double thin_boundary_length(double l, MargulisParam eps) {
    require_thin(l, eps);
    return l * eps.sinh_eps() / std::sinh(0.5 * l);
}

double thin_collar_area(double l, MargulisParam eps) {
    require_thin(l, eps);
    const double half = 0.5 * l;
    const double s = std::sinh(half);
    const double gap = sinh_gap(eps.value(), half) * (eps.sinh_eps() + s);
    return (2.0 * l / s) * std::sqrt(std::max(gap, 0.0));
}

CollarGeometry thin_collar(double l, MargulisParam eps) {
    return CollarGeometry{l, thin_half_width(l, eps), thin_boundary_length(l, eps),
                          thin_collar_area(l, eps)};
}

double shrunk_collar_max_length(MargulisParam eps) {
    return 2.0 * std::asinh(std::sqrt(3.0) / 4.0 * eps.sinh_eps());
}

ShrunkCollarBound shrunk_collar_area_bound(double l, MargulisParam eps, double delta0) {
    if (!std::isfinite(delta0) || delta0 < 0.0 || delta0 > std::log(4.0 / 3.0)) {
        throw DomainError("shrink amount must lie in [0, ln(4/3)]");
    }
    require_positive(l, "geodesic length");
    const double d = 0.5 * shrunk_collar_max_length(eps);
    if (l > 2.0 * d) {
        throw DomainError("geodesic too long for the shrunk-collar bound");
    }
    ShrunkCollarBound out;
    out.half_width = thin_half_width(l, eps);
    out.delta0_below_h = delta0 < out.half_width;
    out.full_area = thin_collar_area(l, eps);
    out.area_shrunk = 2.0 * l * std::sinh(out.half_width - delta0);
    const double se = eps.sinh_eps();
    const double sd = std::sinh(d);
    out.floor = (2.0 * d / sd) * std::sqrt(se * se - sd * sd);
    const double half = 0.5 * out.full_area;
    // The floor is attained with equality at l = 2d; allow for rounding there.
    out.holds = out.delta0_below_h && out.area_shrunk > half &&
                half >= out.floor * (1.0 - 1e-12);
    return out;
}

CuspCollar cusp_collar(MargulisParam eps) {
    const double lambda = 2.0 * eps.sinh_eps();
    return CuspCollar{lambda, lambda, lambda};
}

double thin_separation(double l, MargulisParam eps) {
    require_thin(l, eps);
    // arccosh x - arccosh y = arccosh(xy - sqrt(x^2-1) sqrt(y^2-1)) with
    // x = coth t, y = sinh eps / sinh t simplifies to the ratio below.
    const double t = 0.5 * l;
    const double se = eps.sinh_eps();
    const double st = std::sinh(t);
    const double root = std::sqrt(std::max(sinh_gap(eps.value(), t) * (se + st), 0.0));
    const double numer = se * se + 1.0;
    const double denom = std::cosh(t) * se + root;
    // numer / denom - 1 computed as (numer - denom) / denom
    const double excess = (numer - denom) / denom;
    return arccosh1p(std::max(excess, 0.0));
}

double ball_area(double r) {
    require_positive(r, "radius");
    const double s = std::sinh(0.5 * r);
    return 4.0 * std::numbers::pi * s * s;
}

double ball_circumference(double r) {
    require_positive(r, "radius");
    return 2.0 * std::numbers::pi * std::sinh(r);
}

double quad_relation(double a, double beta) {
    require_positive(a, "side a");
    if (!std::isfinite(beta) || beta < 0.0) {
        throw DomainError("side beta must be finite and non-negative");
    }
    const double v = std::sinh(a) * std::cosh(beta);
    if (!std::isfinite(v)) {
        throw DomainError("quadrilateral relation overflows");
    }
    return std::asinh(v);
}

double delta1(MargulisParam eps) {
    const double se = eps.sinh_eps();
    return std::min(std::log(1.0 / se), std::asinh(std::sqrt(3.0) / 4.0 * se));
}

}  // namespace cheegernet::hypmath
